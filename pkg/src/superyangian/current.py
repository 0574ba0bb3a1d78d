"""U(gl_{M|N}[x]) with PBW normal forms, plus the maps into it from the Yangian.

Basis symbols e_{i,j}x^r (r >= 0) are ordered lexicographically on (r, i, j);
restricting to r = 0 gives U(gl_{M|N}), the target of the evaluation map.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, Tuple

from .context import AlgebraContext, ContextError
from .pbw import Element, Terms, Word, _add, _add1, engine

__all__ = [
    "CurrentAlgebraElement",
    "current_engine",
    "basis",
    "lie_bracket",
    "gr_leading_symbol",
    "ev",
    "ev_word",
]


class CurrentEngine:
    def __init__(self, ctx: AlgebraContext):
        self.ctx = ctx
        self.p = ctx.p
        self.n = n = ctx.size
        self.n2 = n * n
        par = ctx.parities
        self._partab = tuple(par[k // n] ^ par[k % n] for k in range(self.n2)) if n else ()
        self.inv2 = pow(2, -1, self.p) if self.p != 2 else None
        self._mwg: Dict[Tuple[Word, int], Terms] = {}

    def gid(self, i, j, r):
        return r * self.n2 + (i - 1) * self.n + (j - 1)

    def decode(self, g):
        r, rem = divmod(g, self.n2)
        i, j = divmod(rem, self.n)
        return i + 1, j + 1, r

    def gpar(self, g):
        return self._partab[g % self.n2]

    def wpar(self, w):
        s = 0
        for g in w:
            s ^= self._partab[g % self.n2]
        return s

    def bracket(self, x: int, y: int) -> Terms:
        """[e_{i,j}x^r, e_{k,l}x^s] = d_{kj} e_{i,l}x^{r+s} - (-1)^{(|i|+|j|)(|k|+|l|)} d_{li} e_{k,j}x^{r+s}."""
        i, j, r = self.decode(x)
        k, l, s = self.decode(y)
        out: Terms = {}
        if k == j:
            _add1(out, (self.gid(i, l, r + s),), 1, self.p)
        if l == i:
            sign = -1 if (self.gpar(x) & self.gpar(y)) else 1
            _add1(out, (self.gid(k, j, r + s),), -sign, self.p)
        return out

    def mul_wg(self, w: Word, x: int) -> Terms:
        key = (w, x)
        hit = self._mwg.get(key)
        if hit is not None:
            return hit
        p = self.p
        if not w or w[-1] < x:
            res = {w + (x,): 1}
        else:
            y = w[-1]
            odd = self.gpar(x)
            if y == x and (not odd or p == 2):
                res = {w + (x,): 1}
            else:
                head = w[:-1]
                res = {}
                if y == x:
                    for v, c in self.bracket(x, x).items():
                        _add(res, self.mul_ww(head, v), c * self.inv2, p)
                else:
                    sgn = -1 if (odd and self.gpar(y)) else 1
                    for v, c in self.mul_wg(head, x).items():
                        _add(res, self.mul_wg(v, y), c * sgn, p)
                    for v, c in self.bracket(y, x).items():
                        _add(res, self.mul_ww(head, v), c, p)
        self._mwg[key] = res
        return res

    def mul_ww(self, a: Word, b: Word) -> Terms:
        res: Terms = {a: 1}
        for x in b:
            nxt: Terms = {}
            for v, c in res.items():
                _add(nxt, self.mul_wg(v, x), c, self.p)
            res = nxt
        return res

    def mul_terms(self, a: Terms, b: Terms) -> Terms:
        res: Terms = {}
        for wa, ca in a.items():
            for wb, cb in b.items():
                _add(res, self.mul_ww(wa, wb), ca * cb, self.p)
        return res


@lru_cache(maxsize=None)
def current_engine(ctx: AlgebraContext) -> CurrentEngine:
    return CurrentEngine(ctx.without_fault())


class CurrentAlgebraElement:
    """Element of U(gl_{M|N}[x]) in PBW normal form."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: AlgebraContext, terms: Terms = None):
        self.ctx = ctx.without_fault()
        self.terms = terms if terms is not None else {}

    @classmethod
    def scalar(cls, ctx, c):
        c %= ctx.p
        return cls(ctx, {(): c} if c else {})

    def __add__(self, other):
        terms = dict(self.terms)
        _add(terms, other.terms, 1, self.ctx.p)
        return CurrentAlgebraElement(self.ctx, terms)

    def __sub__(self, other):
        terms = dict(self.terms)
        _add(terms, other.terms, -1, self.ctx.p)
        return CurrentAlgebraElement(self.ctx, terms)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        p = self.ctx.p
        c %= p
        return CurrentAlgebraElement(self.ctx, {w: v * c % p for w, v in self.terms.items()} if c else {})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return CurrentAlgebraElement(self.ctx, current_engine(self.ctx).mul_terms(self.terms, other.terms))

    def __eq__(self, other):
        if not isinstance(other, CurrentAlgebraElement):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    @property
    def parity(self):
        eng = current_engine(self.ctx)
        ps = {eng.wpar(w) for w in self.terms}
        if len(ps) > 1:
            raise ValueError("element is not parity-homogeneous")
        return ps.pop() if ps else 0

    def text(self):
        if not self.terms:
            return "0"
        eng = current_engine(self.ctx)
        parts = []
        for w in sorted(self.terms):
            c = self.terms[w]
            if not w:
                parts.append(str(c))
            else:
                parts.append(f"{c}*" + "*".join("e(%d,%d,%d)" % eng.decode(g) for g in w))
        return " + ".join(parts)

    __str__ = text

    def __repr__(self):
        return f"CurrentAlgebraElement({self.text()})"


def basis(ctx: AlgebraContext, i: int, j: int, r: int = 0) -> CurrentAlgebraElement:
    """The basis symbol e_{i,j}x^r."""
    n = ctx.size
    if not (1 <= i <= n and 1 <= j <= n) or r < 0:
        raise ContextError(f"bad basis symbol e({i},{j})x^{r}")
    return CurrentAlgebraElement(ctx, {(current_engine(ctx).gid(i, j, r),): 1})


def lie_bracket(a: CurrentAlgebraElement, b: CurrentAlgebraElement) -> CurrentAlgebraElement:
    """Supercommutator in U(gl[x])."""
    sign = -1 if (a.parity & b.parity) else 1
    return a * b - (b * a).scale(sign)


def _image_of_word(ctx: AlgebraContext, w: Word, level_map) -> Terms:
    """Multiply out the images of the letters of a Yangian word."""
    ceng = current_engine(ctx)
    yeng = engine(ctx)
    res: Terms = {(): 1}
    for g in w:
        i, j, r = yeng.decode(g)
        img = level_map(i, j, r)
        if img is None:
            return {}
        coeff, sym = img
        nxt: Terms = {}
        for v, c in res.items():
            _add(nxt, ceng.mul_wg(v, sym), c * coeff, ctx.p)
        res = nxt
        if not res:
            break
    return res


def gr_leading_symbol(e: Element, d: int) -> CurrentAlgebraElement:
    """Degree-d component of e under gr t_{i,j}^{(r)} -> (-1)^{|i|} e_{i,j}x^{r-1}."""
    ctx = e.ctx
    yeng = engine(ctx)
    ceng = current_engine(ctx)
    out: Terms = {}

    def level_map(i, j, r):
        return (-1 if ctx.parity(i) else 1, ceng.gid(i, j, r - 1))

    for w, c in e.terms.items():
        deg = sum(yeng.level(g) - 1 for g in w)
        if deg > d:
            raise ValueError(f"element has a word of loop degree {deg} > {d}")
        if deg == d:
            _add(out, _image_of_word(ctx, w, level_map), c, ctx.p)
    return CurrentAlgebraElement(ctx, out)


def ev(e: Element) -> CurrentAlgebraElement:
    """Evaluation map Y_{M|N} -> U(gl_{M|N}): t^{(1)}_{i,j} -> (-1)^{|i|} e_{i,j}, t^{(r>=2)} -> 0."""
    ctx = e.ctx
    ceng = current_engine(ctx)
    out: Terms = {}

    def level_map(i, j, r):
        if r >= 2:
            return None
        return (-1 if ctx.parity(i) else 1, ceng.gid(i, j, 0))

    for w, c in e.terms.items():
        _add(out, _image_of_word(ctx, w, level_map), c, ctx.p)
    return CurrentAlgebraElement(ctx, out)


def ev_word(ctx: AlgebraContext, w: Word) -> CurrentAlgebraElement:
    """ev of a (not necessarily normal) word, multiplied out in U(gl)."""
    ceng = current_engine(ctx)

    def level_map(i, j, r):
        if r >= 2:
            return None
        return (-1 if ctx.parity(i) else 1, ceng.gid(i, j, 0))

    return CurrentAlgebraElement(ctx, _image_of_word(ctx, w, level_map))
