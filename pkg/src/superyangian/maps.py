"""Homomorphisms and anti-homomorphisms between super Yangians, level-bounded."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Optional, Tuple

from .context import AlgebraContext, ContextError, check_composition, make_context, sequence_transform
from .gauss import gauss_decompose
from .pbw import Element, Word, _add, engine, generator, supercommutator
from .series import mat_inverse, quasideterminant, t_matrix

KINDS = ("rho", "sigma_anti", "antipode", "omega", "zeta", "phi_shift", "psi_shift")
ANTI = ("sigma_anti", "antipode")
NEEDS_TPRIME = ("antipode", "omega", "zeta", "psi_shift")


class MapError(ValueError):
    pass


@dataclass(frozen=True)
class MapDescriptor:
    kind: str
    source: AlgebraContext
    target: AlgebraContext
    R: int
    L: int = 0
    fault: Optional[str] = None

    @property
    def direction(self) -> str:
        return "antihom" if self.kind in ANTI else "hom"


def dual_context(ctx: AlgebraContext) -> AlgebraContext:
    """Y_{N|M} over the flip-reversed sequence."""
    return make_context(ctx.p, ctx.N, ctx.M, sequence_transform(ctx.sigma, "flip_reverse"))


def suffix_context(ctx: AlgebraContext, L: int) -> AlgebraContext:
    """The context of the last M+N-L indices (source of the shift by L)."""
    if not 0 <= L <= ctx.size:
        raise MapError(f"shift {L} out of range for size {ctx.size}")
    tail = ctx.sigma[L:]
    return make_context(ctx.p, tail.count("0"), tail.count("1"), tail)


def make_map(kind: str, ctx: AlgebraContext, R: int, L: int = 0, target: Optional[AlgebraContext] = None,
             prefix: Optional[str] = None, fault: Optional[str] = None) -> MapDescriptor:
    """Build a map descriptor; for shifts `ctx` is the small source, target = prefix . sigma."""
    if kind not in KINDS:
        raise MapError(f"unknown map kind {kind!r}")
    if kind in ("rho", "zeta"):
        tgt = dual_context(ctx)
    elif kind in ("phi_shift", "psi_shift"):
        if target is None:
            if prefix is None:
                raise MapError("shift maps need a target context or a prefix sequence")
            seq = prefix + ctx.sigma
            target = make_context(ctx.p, seq.count("0"), seq.count("1"), seq)
        if target.p != ctx.p or target.sigma[target.size - ctx.size:] != ctx.sigma:
            raise MapError("target sequence must end with the source sequence")
        L = target.size - ctx.size
        tgt = target
    else:
        tgt = ctx
    if target is not None and kind not in ("phi_shift", "psi_shift") and target != tgt:
        raise MapError("target context does not match map kind")
    return MapDescriptor(kind, ctx, tgt, R, L, fault)


@lru_cache(maxsize=None)
def tprime_coeffs(ctx: AlgebraContext, R: int):
    """t'_{i,j}^{(r)} for r <= R, as a dict (i, j, r) -> Element."""
    Ti = mat_inverse(t_matrix(ctx, R))
    n = ctx.size
    return {(i, j, r): Ti.entry(i, j).coeff((r,))
            for i in range(1, n + 1) for j in range(1, n + 1) for r in range(R + 1)}


def tprime(ctx: AlgebraContext, i: int, j: int, r: int, R: Optional[int] = None) -> Element:
    R = max(r, 1) if R is None else R
    if r > R:
        raise MapError(f"t' level {r} beyond truncation {R}")
    return tprime_coeffs(ctx, max(R, 1))[(i, j, r)]


@lru_cache(maxsize=None)
def _pq_coeffs(big: AlgebraContext, L: int, R: int):
    """Quasideterminant image of the small T(u) in the big algebra."""
    T = t_matrix(big, R)
    n = big.size
    A = T.block(range(L), range(L))
    B = T.block(range(L), range(L, n))
    C = T.block(range(L, n), range(L))
    D = T.block(range(L, n), range(L, n))
    Q = quasideterminant(A, B, C, D)
    m = n - L
    return {(i, j, r): Q.entry(i, j).coeff((r,))
            for i in range(1, m + 1) for j in range(1, m + 1) for r in range(R + 1)}


def psi_quasideterminant(big: AlgebraContext, L: int, i: int, j: int, r: int, R: int) -> Element:
    return _pq_coeffs(big, L, R)[(i, j, r)]


@lru_cache(maxsize=None)
def _image(m: MapDescriptor, i: int, j: int, r: int) -> Element:
    n = m.source.size
    if not (1 <= i <= n and 1 <= j <= n):
        raise MapError(f"generator index ({i},{j}) out of range")
    if r == 0:
        return Element.scalar(m.target, 1 if i == j else 0)
    if m.kind in NEEDS_TPRIME and r > m.R:
        raise MapError(f"{m.kind} is only defined up to level {m.R}; got level {r}")
    sgn = -1 if r % 2 else 1
    k = m.kind
    if k == "rho":
        out = generator(m.target, n + 1 - i, n + 1 - j, r).scale(sgn)
    elif k == "sigma_anti":
        out = generator(m.target, i, j, r).scale(sgn)
    elif k == "antipode":
        out = tprime(m.source, i, j, r, m.R)
    elif k == "omega":
        out = tprime(m.source, i, j, r, m.R).scale(sgn)
    elif k == "zeta":
        out = tprime(m.target, n + 1 - i, n + 1 - j, r, m.R)
    elif k == "phi_shift":
        out = generator(m.target, m.L + i, m.L + j, r)
    else:
        out = psi_quasideterminant(m.target, m.L, i, j, r, m.R)
    if m.fault == "sign" and r == 1:
        out = -out
    return out


def image(m: MapDescriptor, i: int, j: int, r: int) -> Element:
    """Image of t_{i,j}^{(r)}."""
    return _image(m, i, j, r)


def map_word(m: MapDescriptor, w: Word, coeff: int = 1) -> Element:
    """Image of an (arbitrary, not necessarily ordered) word of source generators."""
    eng = engine(m.source)
    ctx = m.target
    factors = [eng.decode(g) for g in w]
    c = coeff
    if m.direction == "antihom":
        # Koszul sign of full reversal
        pars = [eng.gpar(g) for g in w]
        odd = sum(pars)
        if (odd * (odd - 1) // 2) % 2:
            c = -c
        factors = factors[::-1]
    out = Element.scalar(ctx, c)
    for (i, j, r) in factors:
        out = out * _image(m, i, j, r)
        if not out.terms:
            break
    return out


def apply_map(m: MapDescriptor, e: Element, R: Optional[int] = None) -> Element:
    if e.ctx.without_fault() != m.source.without_fault():
        raise ContextError("element does not live in the map's source algebra")
    if R is not None and R != m.R:
        m = MapDescriptor(m.kind, m.source, m.target, R, m.L, m.fault)
    acc: dict = {}
    p = m.target.p
    for w, c in e.terms.items():
        _add(acc, map_word(m, w, c).terms, 1, p)
    return Element(m.target, acc)


def compose(outer: MapDescriptor, inner: MapDescriptor, e: Element) -> Element:
    return apply_map(outer, apply_map(inner, e))


def psi_by_composition(small: AlgebraContext, big: AlgebraContext, i, j, r, R) -> Element:
    """omega_big . phi . omega_small applied to t_{i,j}^{(r)}."""
    om_s = make_map("omega", small, R)
    phi = make_map("phi_shift", small, R, target=big)
    om_b = make_map("omega", big, R)
    x = apply_map(om_s, generator(small, i, j, r))
    return apply_map(om_b, apply_map(phi, x))


def _failures_append(bad, idx, d):
    if not d.is_zero():
        bad.append((idx, d))


def psi_dual_path(small: AlgebraContext, big: AlgebraContext, L: int, i: int, j: int, R: int,
                  fault: Optional[str] = None):
    """Compare the composed shift with the quasideterminant formula on t_{i,j}^{(r)}, r <= R."""
    if big.size - small.size != L or big.sigma[L:] != small.sigma or big.p != small.p:
        raise MapError("incompatible contexts for the shift")
    m = make_map("psi_shift", small, R, target=big, fault=fault)
    checked, bad = 0, []
    for r in range(0, R + 1):
        lhs = psi_by_composition(small, big, i, j, r, R) if r else Element.scalar(big, 1 if i == j else 0)
        rhs = image(m, i, j, r)
        checked += 1
        _failures_append(bad, ("psi", L, i, j, r), lhs - rhs)
    return checked, bad


def psi_on_parabolic(ctx: AlgebraContext, mu, a: int, R: int, fault: Optional[str] = None):
    """psi_L sends D_1, E_1, F_1 of the suffix algebra to D_a, E_a, F_a."""
    mu = check_composition(ctx, mu)
    if not 2 <= a <= mu.n:
        raise MapError(f"block {a} out of range 2..{mu.n}")
    L = mu.offset(a)
    small = suffix_context(ctx, L)
    mu_s = type(mu)(mu.parts[a - 1:])
    gs = gauss_decompose(small, mu_s, R)
    gb = gauss_decompose(ctx, mu, R)
    m = make_map("psi_shift", small, R, target=ctx, fault=fault)
    checked, bad = 0, []
    for r in range(1, R + 1):
        for i in range(1, mu.size(a) + 1):
            for j in range(1, mu.size(a) + 1):
                checked += 1
                _failures_append(bad, ("D", a, i, j, r), apply_map(m, gs.d(1, i, j, r)) - gb.d(a, i, j, r))
            if a < mu.n:
                for j in range(1, mu.size(a + 1) + 1):
                    checked += 2
                    _failures_append(bad, ("E", a, i, j, r), apply_map(m, gs.e(1, i, j, r)) - gb.e(a, i, j, r))
                    _failures_append(bad, ("F", a, j, i, r), apply_map(m, gs.f(1, j, i, r)) - gb.f(a, j, i, r))
    return checked, bad


def zeta_on_parabolic(ctx: AlgebraContext, mu, R: int, fault: Optional[str] = None, reading: str = "tilde"):
    """zeta(D_a) = reversed D', and zeta(E_{a,b}), zeta(F_{b,a}) are reversed blocks of F^{-1}, E^{-1}.

    With reading="tilde" the off-diagonal images are the blocks of the inverse
    triangular factors (equal to -F, -E for adjacent blocks).  reading="literal"
    uses -F, -E for all blocks, which only holds for adjacent ones.
    """
    if reading not in ("tilde", "literal"):
        raise MapError(f"unknown reading {reading!r}")
    mu = check_composition(ctx, mu)
    n = mu.n
    m = make_map("zeta", ctx, R, fault=fault)
    g = gauss_decompose(ctx, mu, R)
    h = gauss_decompose(m.target, mu.reversed(), R)
    checked, bad = 0, []
    for r in range(1, R + 1):
        for a in range(1, n + 1):
            ma = mu.size(a)
            for i in range(1, ma + 1):
                for j in range(1, ma + 1):
                    checked += 1
                    lhs = apply_map(m, g.d(a, i, j, r))
                    rhs = h.dp(n + 1 - a, ma + 1 - i, ma + 1 - j, r)
                    _failures_append(bad, ("zd", a, i, j, r), lhs - rhs)
            for b in range(a + 1, n + 1):
                mb = mu.size(b)
                for i in range(1, ma + 1):
                    for j in range(1, mb + 1):
                        checked += 1
                        lhs = apply_map(m, g.E[(a, b)].entry(i, j).coeff((r,)))
                        key = (n + 1 - a, n + 1 - b)
                        if reading == "literal":
                            rhs = -h.F[key].entry(ma + 1 - i, mb + 1 - j).coeff((r,))
                        else:
                            rhs = h.Ft[key].entry(ma + 1 - i, mb + 1 - j).coeff((r,))
                        tag = "sze" if b == a + 1 else "zetae"
                        _failures_append(bad, (tag, a, b, i, j, r), lhs - rhs)
                for i in range(1, mb + 1):
                    for j in range(1, ma + 1):
                        checked += 1
                        lhs = apply_map(m, g.F[(b, a)].entry(i, j).coeff((r,)))
                        key = (n + 1 - b, n + 1 - a)
                        if reading == "literal":
                            rhs = -h.E[key].entry(mb + 1 - i, ma + 1 - j).coeff((r,))
                        else:
                            rhs = h.Et[key].entry(mb + 1 - i, ma + 1 - j).coeff((r,))
                        tag = "szf" if b == a + 1 else "zetaf"
                        _failures_append(bad, (tag, b, a, i, j, r), lhs - rhs)
    return checked, bad


def corner_commute_check(big: AlgebraContext, L: int, R: int, fault: Optional[str] = None):
    """Generators of the northwest L x L corner supercommute with the image of psi_L."""
    if L < 1:
        raise MapError("corner size must be >= 1")
    if L >= big.size:
        return 0, []
    small = suffix_context(big, L)
    kind = "phi_shift" if fault == "phi" else "psi_shift"
    m = make_map(kind, small, R, target=big)
    ns = small.size
    checked, bad = 0, []
    for r in range(1, R + 1):
        for i in range(1, L + 1):
            for j in range(1, L + 1):
                x = generator(big, i, j, r)
                for s in range(1, R + 1):
                    for k in range(1, ns + 1):
                        for l in range(1, ns + 1):
                            checked += 1
                            _failures_append(bad, (i, j, r, k, l, s), supercommutator(x, image(m, k, l, s)))
    return checked, bad


def well_definedness(m: MapDescriptor, rmax: int):
    """Images of the unreduced RTT relation words vanish for r, s <= rmax."""
    src = m.source
    eng = engine(src)
    n = src.size
    need = 2 * rmax - 1
    if m.kind in NEEDS_TPRIME and m.R < need:
        m = MapDescriptor(m.kind, m.source, m.target, need, m.L, m.fault)
    p = m.target.p
    checked, bad = 0, []
    for r in range(1, rmax + 1):
        for s in range(1, rmax + 1):
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    for k in range(1, n + 1):
                        for l in range(1, n + 1):
                            x, y = eng.gid(i, j, r), eng.gid(k, l, s)
                            sign = -1 if eng.gpar(x) & eng.gpar(y) else 1
                            acc: dict = {}
                            _add(acc, map_word(m, (x, y)).terms, 1, p)
                            _add(acc, map_word(m, (y, x)).terms, -sign, p)
                            for c, w in eng.raw_rhs(x, y):
                                _add(acc, map_word(m, w, c).terms, -1, p)
                            checked += 1
                            if acc:
                                bad.append(((i, j, r, k, l, s), Element(m.target, acc)))
    return checked, bad


def involution_check(kind: str, ctx: AlgebraContext, R: int):
    """m(m(t)) = t on every generator of level <= R (for omega and sigma_anti)."""
    m = make_map(kind, ctx, R)
    n = ctx.size
    checked, bad = 0, []
    for r in range(1, R + 1):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                checked += 1
                x = generator(ctx, i, j, r)
                _failures_append(bad, (kind, i, j, r), apply_map(m, apply_map(m, x)) - x)
    return checked, bad


def factorization_check(ctx: AlgebraContext, R: int):
    """zeta = rho . omega on generators, and psi = omega . phi . omega for every proper shift."""
    n = ctx.size
    checked, bad = 0, []
    z = make_map("zeta", ctx, R)
    om = make_map("omega", ctx, R)
    rho = make_map("rho", ctx, R)
    for r in range(1, R + 1):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                checked += 1
                x = generator(ctx, i, j, r)
                _failures_append(bad, ("zeta", i, j, r), apply_map(z, x) - apply_map(rho, apply_map(om, x)))
    for L in range(1, n):
        small = suffix_context(ctx, L)
        for i in range(1, small.size + 1):
            for j in range(1, small.size + 1):
                c, f = psi_dual_path(small, ctx, L, i, j, R)
                checked += c
                bad += f
    return checked, bad


def antipode_antihom_check(ctx: AlgebraContext, R: int):
    """S(xy) = (-1)^{|x||y|} S(y) S(x) on generator pairs with r + s <= R."""
    m = make_map("antipode", ctx, R)
    n = ctx.size
    checked, bad = 0, []
    gens = [(i, j, r) for r in range(1, R) for i in range(1, n + 1) for j in range(1, n + 1)]
    for (i, j, r) in gens:
        for (k, l, s) in gens:
            if r + s > R:
                continue
            x, y = generator(ctx, i, j, r), generator(ctx, k, l, s)
            sign = -1 if x.parity & y.parity else 1
            lhs = apply_map(m, x * y)
            rhs = (apply_map(m, y) * apply_map(m, x)).scale(sign)
            checked += 1
            _failures_append(bad, (i, j, r, k, l, s), lhs - rhs)
    return checked, bad


def parity_preservation_check(ctx: AlgebraContext, R: int):
    """Each map sends t_{i,j}^{(r)} to a homogeneous element of parity |i|+|j|."""
    checked, bad = 0, []
    n = ctx.size
    maps = [make_map(k, ctx, R) for k in ("rho", "sigma_anti", "antipode", "omega", "zeta")]
    for L in range(1, n):
        small = suffix_context(ctx, L)
        maps += [make_map(k, small, R, target=ctx) for k in ("phi_shift", "psi_shift")]
    for m in maps:
        ns = m.source.size
        for r in range(1, R + 1):
            for i in range(1, ns + 1):
                for j in range(1, ns + 1):
                    checked += 1
                    want = m.source.gen_parity(i, j)
                    ps = image(m, i, j, r).parities()
                    if ps and ps != {want}:
                        bad.append(((m.kind, m.L, i, j, r), image(m, i, j, r)))
    return checked, bad
