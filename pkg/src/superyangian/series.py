"""Truncated power series in u^-1, v^-1, w^-1 with Yangian coefficients.

A Series over variables ``vars`` (a sub-tuple of ("u", "v", "w")) stores the
coefficients at exponent tuples ``e`` with ``0 <= e_k <= R``; exponent ``e_k``
stands for ``var_k^{-e_k}``.  Coefficients are tracked as exact or inexact: a
coefficient is inexact when some input it depends on was cut off by the
truncation.  Only exact coefficients take part in comparisons.
"""

from __future__ import annotations

from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .context import AlgebraContext, ContextError
from .pbw import Element, _add, engine, generator

VARS = ("u", "v", "w")
Exp = Tuple[int, ...]


def _sort_vars(vs: Iterable[str]) -> Tuple[str, ...]:
    vs = set(vs)
    bad = vs - set(VARS)
    if bad:
        raise ContextError(f"unknown series variables {sorted(bad)}")
    return tuple(v for v in VARS if v in vs)


class SeriesError(ValueError):
    pass


class Series:
    __slots__ = ("ctx", "vars", "R", "coeffs", "inexact")

    def __init__(self, ctx: AlgebraContext, vars: Sequence[str], R: int,
                 coeffs: Optional[Dict[Exp, Element]] = None, inexact: Iterable[Exp] = ()):
        self.ctx = ctx
        self.vars = _sort_vars(vars)
        self.R = R
        self.coeffs = {e: c for e, c in (coeffs or {}).items() if c.terms}
        self.inexact = frozenset(inexact)

    # construction
    @classmethod
    def zero(cls, ctx, vars, R):
        return cls(ctx, vars, R)

    @classmethod
    def constant(cls, ctx, vars, R, c):
        if isinstance(c, int):
            c = Element.scalar(ctx, c)
        vars = _sort_vars(vars)
        return cls(ctx, vars, R, {(0,) * len(vars): c})

    @classmethod
    def univariate(cls, ctx, var: str, R: int, coeffs: Sequence[Element]):
        """sum_r coeffs[r] var^{-r}; entries beyond R are dropped."""
        d = {}
        for r, c in enumerate(coeffs):
            if r > R:
                break
            if isinstance(c, int):
                c = Element.scalar(ctx, c)
            d[(r,)] = c
        return cls(ctx, (var,), R, d)

    # access
    def exponents(self):
        return product(range(self.R + 1), repeat=len(self.vars))

    def coeff(self, *e) -> Element:
        if len(e) == 1 and isinstance(e[0], tuple):
            e = e[0]
        e = tuple(e)
        if len(e) != len(self.vars):
            raise SeriesError(f"exponent {e} does not match variables {self.vars}")
        if any(x < 0 for x in e):
            return Element(self.ctx, {})
        if any(x > self.R for x in e):
            raise SeriesError(f"exponent {e} beyond truncation order {self.R}")
        return self.coeffs.get(e) or Element(self.ctx, {})

    def is_exact(self, e: Exp) -> bool:
        if any(x < 0 for x in e):
            return True
        if any(x > self.R for x in e):
            return False
        return e not in self.inexact

    def __getitem__(self, e):
        if isinstance(e, int):
            e = (e,)
        return self.coeff(e)

    # structural
    def promote(self, vars) -> "Series":
        vars = _sort_vars(set(vars) | set(self.vars))
        if vars == self.vars:
            return self
        pos = [vars.index(v) for v in self.vars]

        def lift(e):
            out = [0] * len(vars)
            for k, x in zip(pos, e):
                out[k] = x
            return tuple(out)

        return Series(self.ctx, vars, self.R, {lift(e): c for e, c in self.coeffs.items()},
                      [lift(e) for e in self.inexact] + [
                          f for f in product(range(self.R + 1), repeat=len(vars))
                          if lift(tuple(f[k] for k in pos)) != f and tuple(f[k] for k in pos) in self.inexact
                      ])

    def rename(self, old: str, new: str) -> "Series":
        """Substitute variable `new` for `old` (`new` must not already occur)."""
        if old not in self.vars:
            return self
        if new in self.vars:
            raise SeriesError(f"cannot rename {old} to existing variable {new}")
        names = [new if v == old else v for v in self.vars]
        target = _sort_vars(names)
        perm = [names.index(v) for v in target]
        remap = lambda e: tuple(e[k] for k in perm)
        return Series(self.ctx, target, self.R, {remap(e): c for e, c in self.coeffs.items()},
                      [remap(e) for e in self.inexact])

    def _compat(self, other: "Series"):
        if other.ctx != self.ctx:
            raise SeriesError("series over different algebras")
        if other.R != self.R:
            raise SeriesError(f"incompatible truncation orders {self.R} and {other.R}")

    def _coerce(self, other):
        if isinstance(other, (int, Element)):
            return Series.constant(self.ctx, self.vars, self.R, other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        self._compat(other)
        vars = _sort_vars(set(self.vars) | set(other.vars))
        a, b = self.promote(vars), other.promote(vars)
        out = dict(a.coeffs)
        for e, c in b.coeffs.items():
            out[e] = out[e] + c if e in out else c
        return Series(self.ctx, vars, self.R, out, a.inexact | b.inexact)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: int) -> "Series":
        return Series(self.ctx, self.vars, self.R, {e: x.scale(c) for e, x in self.coeffs.items()}, self.inexact)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        return series_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return series_mul(self._coerce(other), self)

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return (self.ctx == other.ctx and self.vars == other.vars and self.R == other.R
                and self.coeffs == other.coeffs and self.inexact == other.inexact)

    def parities(self) -> set:
        out = set()
        for c in self.coeffs.values():
            out |= c.parities()
        return out

    def exact_equal(self, other: "Series") -> bool:
        """True when the two series agree at every exponent where both are exact."""
        return all(ok for _, ok in clear_denominator_compare(self, other, None))

    def serialize(self):
        """List of (exponent tuple, canonical element text, exact flag)."""
        return [(e, self.coeff(e).text(), self.is_exact(e)) for e in self.exponents()]

    def __repr__(self):
        return f"Series(vars={self.vars}, R={self.R}, nonzero={len(self.coeffs)}, inexact={len(self.inexact)})"


def _dominated(e, f):
    return all(x <= y for x, y in zip(e, f))


def series_mul(a: Series, b: Series) -> Series:
    """Truncated Cauchy product."""
    a._compat(b)
    vars = _sort_vars(set(a.vars) | set(b.vars))
    a, b = a.promote(vars), b.promote(vars)
    R = a.R
    ctx = a.ctx
    eng = engine(ctx)
    p = ctx.p
    acc: Dict[Exp, dict] = {}
    for ea, ca in a.coeffs.items():
        for eb, cb in b.coeffs.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            if any(x > R for x in e):
                continue
            t = acc.setdefault(e, {})
            _add(t, eng.mul_terms(ca.terms, cb.terms), 1, p)
    inexact = set()
    bad = list(a.inexact) + list(b.inexact)
    if bad:
        for e in product(range(R + 1), repeat=len(vars)):
            if any(_dominated(f, e) for f in bad):
                inexact.add(e)
    return Series(ctx, vars, R, {e: Element(ctx, t) for e, t in acc.items()}, inexact)


def series_supercommutator(a: Series, b: Series, parity_a: Optional[int] = None,
                           parity_b: Optional[int] = None) -> Series:
    """[a, b] for parity-homogeneous series."""
    if parity_a is None:
        pa = a.parities()
        if len(pa) > 1:
            raise SeriesError("series is not parity-homogeneous")
        parity_a = pa.pop() if pa else 0
    if parity_b is None:
        pb = b.parities()
        if len(pb) > 1:
            raise SeriesError("series is not parity-homogeneous")
        parity_b = pb.pop() if pb else 0
    sign = -1 if (parity_a & parity_b) else 1
    return series_mul(a, b) - series_mul(b, a).scale(sign)


def series_invert(a: Series) -> Series:
    """Inverse of a series whose constant coefficient is the scalar 1."""
    zero = (0,) * len(a.vars)
    if a.coeff(zero) != Element.scalar(a.ctx, 1):
        raise SeriesError("leading coefficient is not 1")
    x = Series.constant(a.ctx, a.vars, a.R, 1) - a
    out = Series.constant(a.ctx, a.vars, a.R, 1)
    power = Series.constant(a.ctx, a.vars, a.R, 1)
    for _ in range(a.R * max(len(a.vars), 1)):
        power = series_mul(power, x)
        if not power.coeffs:
            break
        out = out + power
    return out


def negate_variable(a: Series, var: str) -> Series:
    """Substitute var -> -var: the coefficient at exponent e picks up (-1)^{e_var}."""
    if var not in a.vars:
        raise SeriesError(f"{var} is not a variable of this series")
    k = a.vars.index(var)
    return Series(a.ctx, a.vars, a.R,
                  {e: (c.scale(-1) if e[k] % 2 else c) for e, c in a.coeffs.items()}, a.inexact)


FACTORS = {
    None: {(): 1},
    "none": {(): 1},
    "u-v": {("u",): 1, ("v",): -1},
    "v-u": {("v",): 1, ("u",): -1},
    "u-w": {("u",): 1, ("w",): -1},
    "v-w": {("v",): 1, ("w",): -1},
}


def _poly_factor(name):
    """Factor as dict from (positive-power exponent tuple over u,v,w) to integer coefficient."""
    def mono(vs):
        return tuple(vs.count(x) for x in VARS)

    if name in ("uvw", "(u-v)(u-w)(v-w)"):
        out = {}
        for a, ca in (("u", 1), ("v", -1)):
            for b, cb in (("u", 1), ("w", -1)):
                for c, cc in (("v", 1), ("w", -1)):
                    m = mono([a, b, c])
                    out[m] = out.get(m, 0) + ca * cb * cc
        return {m: c for m, c in out.items() if c}
    if name not in FACTORS:
        raise SeriesError(f"unknown denominator factor {name!r}")
    return {mono(list(k)): c for k, c in FACTORS[name].items()}


def _residuals(lhs: Series, rhs: Series, factor):
    """Yield (exponent, residual terms) for factor * lhs - rhs at every exact exponent."""
    if lhs.ctx != rhs.ctx or lhs.R != rhs.R:
        raise SeriesError("incompatible series")
    poly = _poly_factor(factor)
    used = {VARS[k] for m in poly for k, x in enumerate(m) if x}
    vars = _sort_vars(set(lhs.vars) | set(rhs.vars) | used)
    lhs, rhs = lhs.promote(vars), rhs.promote(vars)
    idx = [VARS.index(v) for v in vars]
    shifts = [(tuple(m[k] for k in idx), c) for m, c in poly.items()]
    lo = [-max((m[k] for m, _ in shifts), default=0) for k in range(len(vars))]
    p = lhs.ctx.p
    for e in product(*[range(l, lhs.R + 1) for l in lo]):
        acc: dict = {}
        exact = True
        for m, c in shifts:
            f = tuple(x + y for x, y in zip(e, m))
            if not lhs.is_exact(f):
                exact = False
                break
            if all(x >= 0 for x in f):
                _add(acc, lhs.coeff(f).terms, c, p)
        if not exact or not rhs.is_exact(e):
            continue
        if all(x >= 0 for x in e):
            _add(acc, rhs.coeff(e).terms, -1, p)
        yield e, acc


def clear_denominator_compare(lhs: Series, rhs: Series, factor=None) -> List[Tuple[Exp, bool]]:
    """Compare factor * lhs with rhs coefficient-wise on the exact coefficients.

    Multiplying by u moves the coefficient at u^{-e} to u^{-(e-1)}, so the
    product is indexed by exponents down to minus the factor's degree in each
    variable; product coefficients that would need lhs beyond R are inexact
    and skipped.  Returns a list of (exponent, equal?) over compared exponents.
    """
    return [(e, not acc) for e, acc in _residuals(lhs, rhs, factor)]


def compare_residuals(lhs: Series, rhs: Series, factor=None):
    """Like clear_denominator_compare, but returns (count, [(exponent, nonzero residual Element)])."""
    checked, bad = 0, []
    for e, acc in _residuals(lhs, rhs, factor):
        checked += 1
        if acc:
            bad.append((e, Element(lhs.ctx, acc)))
    return checked, bad


class MatrixSeries:
    """Matrix of Series sharing one variable set and truncation order."""

    __slots__ = ("ctx", "vars", "R", "rows", "cols", "entries")

    def __init__(self, ctx, vars, R, entries: List[List[Series]]):
        self.ctx = ctx
        self.vars = _sort_vars(vars)
        self.R = R
        self.entries = entries
        self.rows = len(entries)
        self.cols = len(entries[0]) if entries else 0

    @classmethod
    def identity(cls, ctx, vars, R, n):
        return cls(ctx, vars, R, [[Series.constant(ctx, vars, R, 1 if i == j else 0) for j in range(n)]
                                  for i in range(n)])

    @classmethod
    def zeros(cls, ctx, vars, R, rows, cols):
        return cls(ctx, vars, R, [[Series.zero(ctx, vars, R) for _ in range(cols)] for _ in range(rows)])

    def __getitem__(self, ij) -> Series:
        i, j = ij
        return self.entries[i][j]

    def entry(self, i, j) -> Series:
        """1-based entry access."""
        return self.entries[i - 1][j - 1]

    def block(self, rows: range, cols: range) -> "MatrixSeries":
        """0-based row/col ranges."""
        return MatrixSeries(self.ctx, self.vars, self.R, [[self.entries[i][j] for j in cols] for i in rows])

    def __add__(self, other):
        return MatrixSeries(self.ctx, self.vars, self.R,
                            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)])

    def __sub__(self, other):
        return MatrixSeries(self.ctx, self.vars, self.R,
                            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)])

    def __neg__(self):
        return MatrixSeries(self.ctx, self.vars, self.R, [[-a for a in r] for r in self.entries])

    def __mul__(self, other):
        return mat_mul(self, other)

    def __eq__(self, other):
        return isinstance(other, MatrixSeries) and self.entries == other.entries

    def is_identity_leading(self) -> bool:
        zero = (0,) * len(self.vars)
        for i in range(self.rows):
            for j in range(self.cols):
                if self.entries[i][j].coeff(zero) != Element.scalar(self.ctx, 1 if i == j else 0):
                    return False
        return self.rows == self.cols

    def exact_equal(self, other: "MatrixSeries") -> bool:
        return (self.rows, self.cols) == (other.rows, other.cols) and all(
            a.exact_equal(b) for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb))

    def __repr__(self):
        return f"MatrixSeries({self.rows}x{self.cols}, vars={self.vars}, R={self.R})"


def mat_mul(a: MatrixSeries, b: MatrixSeries) -> MatrixSeries:
    if a.cols != b.rows:
        raise SeriesError(f"shape mismatch {a.rows}x{a.cols} * {b.rows}x{b.cols}")
    vars = _sort_vars(set(a.vars) | set(b.vars))
    out = []
    for i in range(a.rows):
        row = []
        for j in range(b.cols):
            acc = Series.zero(a.ctx, vars, a.R)
            for k in range(a.cols):
                x, y = a.entries[i][k], b.entries[k][j]
                if x.coeffs and y.coeffs:
                    acc = acc + series_mul(x, y)
            row.append(acc)
        out.append(row)
    return MatrixSeries(a.ctx, vars, a.R, out)


def mat_inverse(m: MatrixSeries) -> MatrixSeries:
    """Inverse of a square matrix series with leading coefficient I: sum_k (I - m)^k."""
    if not m.is_identity_leading():
        raise SeriesError("leading coefficient matrix is not the identity")
    n = m.rows
    ident = MatrixSeries.identity(m.ctx, m.vars, m.R, n)
    x = ident - m
    out = ident
    power = ident
    for _ in range(m.R * max(len(m.vars), 1)):
        power = mat_mul(power, x)
        if all(not s.coeffs for r in power.entries for s in r):
            break
        out = out + power
    return out


def t_series(ctx: AlgebraContext, i: int, j: int, R: int, var: str = "u") -> Series:
    """t_{i,j}(var) = sum_{r=0}^{R} t_{i,j}^{(r)} var^{-r}."""
    return Series.univariate(ctx, var, R, [generator(ctx, i, j, r) for r in range(R + 1)])


def t_matrix(ctx: AlgebraContext, R: int, var: str = "u") -> MatrixSeries:
    if R < 1:
        raise SeriesError("truncation order must be >= 1")
    n = ctx.size
    return MatrixSeries(ctx, (var,), R, [[t_series(ctx, i, j, R, var) for j in range(1, n + 1)]
                                         for i in range(1, n + 1)])


def quasideterminant(A: MatrixSeries, B: MatrixSeries, C: MatrixSeries, D: MatrixSeries) -> MatrixSeries:
    """D - C A^{-1} B."""
    if A.rows == 0:
        return D
    return D - mat_mul(mat_mul(C, mat_inverse(A)), B)


def tprime_matrix(ctx: AlgebraContext, R: int, var: str = "u") -> MatrixSeries:
    return mat_inverse(t_matrix(ctx, R, var))
