"""Block Gauss decomposition T(u) = F(u) D(u) E(u) relative to a composition."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Dict, List, Optional, Tuple

from .context import AlgebraContext, Composition, ContextError, check_composition, restricted_parity
from .pbw import Element, supercommutator
from .series import MatrixSeries, Series, mat_inverse, mat_mul, quasideterminant, t_matrix


class GaussError(ValueError):
    pass


def _blocks(mu: Composition, a: int) -> range:
    return range(mu.offset(a), mu.offset(a) + mu.size(a))


def _prefix(mu: Composition, a: int) -> range:
    """Indices of blocks 1..a-1."""
    return range(0, mu.offset(a))


@dataclass(frozen=True)
class GaussData:
    ctx: AlgebraContext
    mu: Composition
    R: int
    T: MatrixSeries
    D: Dict[int, MatrixSeries]
    Dp: Dict[int, MatrixSeries]
    E: Dict[Tuple[int, int], MatrixSeries]
    F: Dict[Tuple[int, int], MatrixSeries]
    Et: Dict[Tuple[int, int], MatrixSeries] = field(default_factory=dict)
    Ft: Dict[Tuple[int, int], MatrixSeries] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.mu.n

    # 1-based coefficient accessors
    def d(self, a, i, j, r) -> Element:
        return self.D[a].entry(i, j).coeff((r,))

    def dp(self, a, i, j, r) -> Element:
        return self.Dp[a].entry(i, j).coeff((r,))

    def e(self, a, i, j, r, b=None) -> Element:
        return self.E[(a, a + 1 if b is None else b)].entry(i, j).coeff((r,))

    def f(self, a, i, j, r, b=None) -> Element:
        """F_{a;i,j}^{(r)}, or F_{b,a;i,j}^{(r)} when b is given."""
        return self.F[(a + 1 if b is None else b, a)].entry(i, j).coeff((r,))

    def dump_lines(self) -> List[str]:
        lines = []

        def emit(kind, a, b, m: MatrixSeries, rmin):
            for i in range(1, m.rows + 1):
                for j in range(1, m.cols + 1):
                    s = m.entry(i, j)
                    for r in range(rmin, self.R + 1):
                        lines.append(f"{kind} {a} {b} | {i} {j} {r} | {s.coeff((r,)).text()}")

        for a in range(1, self.n + 1):
            emit("D", a, a, self.D[a], 1)
        for a in range(1, self.n + 1):
            emit("Dp", a, a, self.Dp[a], 1)
        for (a, b) in sorted(self.E):
            emit("E", a, b, self.E[(a, b)], 1)
        for (b, a) in sorted(self.F, key=lambda k: (k[1], k[0])):
            emit("F", b, a, self.F[(b, a)], 1)
        return lines


def _tilde(mu_n, blocks, upper: bool):
    """Blocks of E^{-1} (upper) or F^{-1} (lower) as alternating chain sums."""
    out = {}
    for a in range(1, mu_n + 1):
        for b in range(a + 1, mu_n + 1):
            total = None
            # chains a = i0 < i1 < ... < is = b
            inner = list(range(a + 1, b))
            for mask in range(1 << len(inner)):
                chain = [a] + [x for k, x in enumerate(inner) if mask >> k & 1] + [b]
                s = len(chain) - 1
                if upper:
                    m = blocks[(chain[0], chain[1])]
                    for x, y in zip(chain[1:], chain[2:]):
                        m = mat_mul(m, blocks[(x, y)])
                else:
                    rev = chain[::-1]
                    m = blocks[(rev[0], rev[1])]
                    for x, y in zip(rev[1:], rev[2:]):
                        m = mat_mul(m, blocks[(x, y)])
                if s % 2:
                    m = -m
                total = m if total is None else total + m
            out[(a, b) if upper else (b, a)] = total
    return out


def _finish(ctx, mu, R, T, D, E, F) -> GaussData:
    Dp = {a: mat_inverse(D[a]) for a in D}
    Et = _tilde(mu.n, E, True)
    Ft = _tilde(mu.n, F, False)
    return GaussData(ctx, mu, R, T, D, Dp, E, F, Et, Ft)


def decompose_quasideterminant(ctx: AlgebraContext, mu, R: int) -> GaussData:
    mu = check_composition(ctx, mu)
    T = t_matrix(ctx, R)
    D, E, F = {}, {}, {}
    for a in range(1, mu.n + 1):
        pre = _prefix(mu, a)
        A = T.block(pre, pre)
        Ainv = mat_inverse(A) if len(pre) else None
        ra = _blocks(mu, a)

        def qd(rows, cols):
            Dm = T.block(rows, cols)
            if Ainv is None:
                return Dm
            return Dm - mat_mul(mat_mul(T.block(rows, pre), Ainv), T.block(pre, cols))

        D[a] = qd(ra, ra)
        Dpa = mat_inverse(D[a])
        for b in range(a + 1, mu.n + 1):
            rb = _blocks(mu, b)
            E[(a, b)] = mat_mul(Dpa, qd(ra, rb))
            F[(b, a)] = mat_mul(qd(rb, ra), Dpa)
    return _finish(ctx, mu, R, T, D, E, F)


def decompose_elimination(ctx: AlgebraContext, mu, R: int) -> GaussData:
    """Left-to-right block pivoting: S <- S - S[:,a] D_a^{-1} S[a,:]."""
    mu = check_composition(ctx, mu)
    T = t_matrix(ctx, R)
    n = mu.n
    S = {(a, b): T.block(_blocks(mu, a), _blocks(mu, b)) for a in range(1, n + 1) for b in range(1, n + 1)}
    D, E, F = {}, {}, {}
    for a in range(1, n + 1):
        D[a] = S[(a, a)]
        Dinv = mat_inverse(D[a])
        for b in range(a + 1, n + 1):
            E[(a, b)] = mat_mul(Dinv, S[(a, b)])
            F[(b, a)] = mat_mul(S[(b, a)], Dinv)
        for b in range(a + 1, n + 1):
            for c in range(a + 1, n + 1):
                S[(b, c)] = S[(b, c)] - mat_mul(F[(b, a)], S[(a, c)])
    return _finish(ctx, mu, R, T, D, E, F)


@lru_cache(maxsize=64)
def _cached(ctx, mu, R):
    return decompose_quasideterminant(ctx, mu, R)


def gauss_decompose(ctx: AlgebraContext, mu, R: int, method: str = "quasideterminant") -> GaussData:
    if R < 1:
        raise GaussError("truncation order must be >= 1")
    mu = check_composition(ctx, mu)
    if method == "quasideterminant":
        return _cached(ctx, mu, R)
    if method == "elimination":
        return decompose_elimination(ctx, mu, R)
    raise GaussError(f"unknown method {method!r}")


class CheckLog(list):
    """Failure list that also counts the comparisons made."""

    def __init__(self, *args):
        super().__init__(*args)
        self.checked = 0

    def extend(self, other):
        super().extend(other)
        self.checked += getattr(other, "checked", 0)


def _cmp_matrix(name, key, m1: MatrixSeries, m2: MatrixSeries, out: list):
    for i in range(m1.rows):
        for j in range(m1.cols):
            a, b = m1.entries[i][j], m2.entries[i][j]
            for e in a.exponents():
                if a.is_exact(e) and b.is_exact(e):
                    if isinstance(out, CheckLog):
                        out.checked += 1
                    d = a.coeff(e) - b.coeff(e)
                    if not d.is_zero():
                        out.append(((name,) + tuple(key) + (i + 1, j + 1) + e, d))


def uniqueness_check(g: GaussData) -> list:
    """Compare quasideterminant data against block elimination; returns failures."""
    h = decompose_elimination(g.ctx, g.mu, g.R)
    bad = CheckLog()
    for a in g.D:
        _cmp_matrix("D", (a,), g.D[a], h.D[a], bad)
    for k in g.E:
        _cmp_matrix("E", k, g.E[k], h.E[k], bad)
    for k in g.F:
        _cmp_matrix("F", k, g.F[k], h.F[k], bad)
    return bad


def _block_diag_assemble(g: GaussData, kind: str) -> MatrixSeries:
    ctx, R, mu = g.ctx, g.R, g.mu
    size = ctx.size
    m = MatrixSeries.zeros(ctx, ("u",), R, size, size)
    ent = [row[:] for row in m.entries]
    for a in range(1, mu.n + 1):
        for b in range(1, mu.n + 1):
            if kind == "D":
                blk = g.D[a] if a == b else None
            elif kind == "Dp":
                blk = g.Dp[a] if a == b else None
            elif kind == "E":
                blk = None if a > b else (g.E[(a, b)] if a < b else "I")
            elif kind == "F":
                blk = None if a < b else (g.F[(a, b)] if a > b else "I")
            elif kind == "Et":
                blk = None if a > b else (g.Et[(a, b)] if a < b else "I")
            else:
                blk = None if a < b else (g.Ft[(a, b)] if a > b else "I")
            if blk is None:
                continue
            for i, gi in enumerate(_blocks(mu, a)):
                for j, gj in enumerate(_blocks(mu, b)):
                    if blk == "I":
                        ent[gi][gj] = Series.constant(ctx, ("u",), R, 1 if i == j else 0)
                    else:
                        ent[gi][gj] = blk.entries[i][j]
    return MatrixSeries(ctx, ("u",), R, ent)


def with_fault(g: GaussData, fault: str) -> GaussData:
    """Return a corrupted copy for fault-injection runs."""
    if fault == "perturb-D2":
        a = 2 if g.n >= 2 else 1
        D = dict(g.D)
        m = D[a]
        ent = [row[:] for row in m.entries]
        ent[0][0] = ent[0][0] + Series.univariate(g.ctx, "u", g.R, [0, 1])
        D[a] = MatrixSeries(g.ctx, m.vars, g.R, ent)
        return GaussData(g.ctx, g.mu, g.R, g.T, D, g.Dp, g.E, g.F, g.Et, g.Ft)
    raise GaussError(f"unknown fault {fault!r}")


def roundtrip_check(g: GaussData) -> list:
    """F D E = T, E^{-1} D' F^{-1} = T^{-1}, and the blockwise expansions of both."""
    bad = CheckLog()
    Fm, Dm, Em = (_block_diag_assemble(g, k) for k in ("F", "D", "E"))
    _cmp_matrix("FDE", (), mat_mul(mat_mul(Fm, Dm), Em), g.T, bad)
    Tinv = mat_inverse(g.T)
    Etm, Dpm, Ftm = (_block_diag_assemble(g, k) for k in ("Et", "Dp", "Ft"))
    _cmp_matrix("EDF-inv", (), mat_mul(mat_mul(Etm, Dpm), Ftm), Tinv, bad)
    # E^{-1} and F^{-1} really are inverses
    ident = MatrixSeries.identity(g.ctx, ("u",), g.R, g.ctx.size)
    _cmp_matrix("Etilde", (), mat_mul(Etm, Em), ident, bad)
    _cmp_matrix("Ftilde", (), mat_mul(Fm, Ftm), ident, bad)
    for a in range(1, g.n + 1):
        _cmp_matrix("DDp", (a,), mat_mul(g.D[a], g.Dp[a]),
                    MatrixSeries.identity(g.ctx, ("u",), g.R, g.mu.size(a)), bad)
    bad.extend(block_identities(g, Tinv))
    return bad


def _tblock(g, M, a, b):
    return M.block(_blocks(g.mu, a), _blocks(g.mu, b))


def _sum(terms, zero):
    out = zero
    for t in terms:
        out = out + t
    return out


def block_identities(g: GaussData, Tinv: Optional[MatrixSeries] = None) -> list:
    """Blockwise expansions of T = F D E and T^{-1} = E~ D' F~ for all blocks."""
    if Tinv is None:
        Tinv = mat_inverse(g.T)
    n, mu = g.n, g.mu
    bad = CheckLog()

    def zero(a, b):
        return MatrixSeries.zeros(g.ctx, ("u",), g.R, mu.size(a), mu.size(b))

    def FDE(b, c, a):
        return mat_mul(mat_mul(g.F[(b, c)], g.D[c]), g.E[(c, a)])

    def EDF(a, c, b):
        return mat_mul(mat_mul(g.Et[(a, c)], g.Dp[c]), g.Ft[(c, b)])

    for a in range(1, n + 1):
        rhs = g.D[a] + _sum((FDE(a, c, a) for c in range(1, a)), zero(a, a))
        _cmp_matrix("td", (a,), rhs, _tblock(g, g.T, a, a), bad)
        rhs = g.Dp[a] + _sum((EDF(a, c, a) for c in range(a + 1, n + 1)), zero(a, a))
        _cmp_matrix("primed", (a,), rhs, _tblock(g, Tinv, a, a), bad)
        for b in range(a + 1, n + 1):
            rhs = mat_mul(g.D[a], g.E[(a, b)]) + _sum((FDE(a, c, b) for c in range(1, a)), zero(a, b))
            _cmp_matrix("tu", (a, b), rhs, _tblock(g, g.T, a, b), bad)
            rhs = mat_mul(g.F[(b, a)], g.D[a]) + _sum((FDE(b, c, a) for c in range(1, a)), zero(b, a))
            _cmp_matrix("tl", (b, a), rhs, _tblock(g, g.T, b, a), bad)
            rhs = mat_mul(g.Et[(a, b)], g.Dp[b]) + _sum((EDF(a, c, b) for c in range(b + 1, n + 1)), zero(a, b))
            _cmp_matrix("primeu", (a, b), rhs, _tblock(g, Tinv, a, b), bad)
            rhs = mat_mul(g.Dp[b], g.Ft[(b, a)]) + _sum((EDF(b, c, a) for c in range(b + 1, n + 1)), zero(b, a))
            _cmp_matrix("primel", (b, a), rhs, _tblock(g, Tinv, b, a), bad)
    if n == 3:
        Ep, Fp = primed_combinations(g)
        _cmp_matrix("TP31", (), mat_mul(g.Dp[3], Fp), _tblock(g, Tinv, 3, 1), bad)
        _cmp_matrix("TP32", (), -mat_mul(g.Dp[3], g.F[(3, 2)]), _tblock(g, Tinv, 3, 2), bad)
        _cmp_matrix("TP23", (), -mat_mul(g.E[(2, 3)], g.Dp[3]), _tblock(g, Tinv, 2, 3), bad)
        _cmp_matrix("T31", (), mat_mul(g.F[(3, 1)], g.D[1]), _tblock(g, g.T, 3, 1), bad)
    return bad


def primed_combinations(g: GaussData, a: int = 1) -> Tuple[MatrixSeries, MatrixSeries]:
    """E'_{a,a+2} = E_a E_{a+1} - E_{a,a+2} and F'_{a+2,a} = F_{a+1} F_a - F_{a+2,a}."""
    if g.n < a + 2:
        raise GaussError("primed combinations need three consecutive blocks")
    Ep = mat_mul(g.E[(a, a + 1)], g.E[(a + 1, a + 2)]) - g.E[(a, a + 2)]
    Fp = mat_mul(g.F[(a + 2, a + 1)], g.F[(a + 1, a)]) - g.F[(a + 2, a)]
    return Ep, Fp


def recursion_check(g: GaussData, a: int, b: int, k: int, fault: Optional[str] = None):
    """Check E_{a,b} and F_{b,a} against the bracket recursion through block b-1 with pivot k.

    Returns (checked, failures) where each failure is (indices, residual Element).
    """
    n, mu, ctx = g.n, g.mu, g.ctx
    if not (1 < a + 1 < b <= n):
        raise GaussError(f"no recursion for blocks (a, b) = ({a}, {b}) with n = {n}")
    if not 1 <= k <= mu.size(b - 1):
        raise GaussError(f"pivot k = {k} out of range for block {b - 1}")
    sign = -1 if restricted_parity(mu, ctx.sigma, b - 1, k) else 1
    if fault == "sign":
        sign = -sign
    checked, bad = 0, []
    for i in range(1, mu.size(a) + 1):
        for j in range(1, mu.size(b) + 1):
            for r in range(1, g.R + 1):
                lhs = g.E[(a, b)].entry(i, j).coeff((r,))
                rhs = supercommutator(g.E[(a, b - 1)].entry(i, k).coeff((r,)),
                                      g.E[(b - 1, b)].entry(k, j).coeff((1,))).scale(sign)
                checked += 1
                if lhs != rhs:
                    bad.append((("E", a, b, k, i, j, r), lhs - rhs))
                lhs = g.F[(b, a)].entry(j, i).coeff((r,))
                rhs = supercommutator(g.F[(b, b - 1)].entry(j, k).coeff((1,)),
                                      g.F[(b - 1, a)].entry(k, i).coeff((r,))).scale(sign)
                checked += 1
                if lhs != rhs:
                    bad.append((("F", a, b, k, j, i, r), lhs - rhs))
    return checked, bad


def recursion_all(g: GaussData, fault: Optional[str] = None):
    checked, bad = 0, []
    for a in range(1, g.n + 1):
        for b in range(a + 2, g.n + 1):
            for k in range(1, g.mu.size(b - 1) + 1):
                c, f = recursion_check(g, a, b, k, fault)
                checked += c
                bad += f
    return checked, bad


def parity_check(g: GaussData) -> list:
    """Every D/E/F coefficient is parity-homogeneous with the expected parity."""
    mu, sg = g.mu, g.ctx.sigma
    bad = CheckLog()

    def chk(tag, el, want):
        bad.checked += 1
        ps = el.parities()
        if ps and ps != {want}:
            bad.append((tag, el))

    for a in range(1, g.n + 1):
        for i, j in product(range(1, mu.size(a) + 1), repeat=2):
            want = (restricted_parity(mu, sg, a, i) + restricted_parity(mu, sg, a, j)) % 2
            for r in range(1, g.R + 1):
                chk(("D", a, i, j, r), g.d(a, i, j, r), want)
    for (a, b), m in g.E.items():
        for i in range(1, mu.size(a) + 1):
            for j in range(1, mu.size(b) + 1):
                want = (restricted_parity(mu, sg, a, i) + restricted_parity(mu, sg, b, j)) % 2
                for r in range(1, g.R + 1):
                    chk(("E", a, b, i, j, r), m.entry(i, j).coeff((r,)), want)
    for (b, a), m in g.F.items():
        for i in range(1, mu.size(b) + 1):
            for j in range(1, mu.size(a) + 1):
                want = (restricted_parity(mu, sg, b, i) + restricted_parity(mu, sg, a, j)) % 2
                for r in range(1, g.R + 1):
                    chk(("F", b, a, i, j, r), m.entry(i, j).coeff((r,)), want)
    return bad
