"""PBW normal forms in Y_{M|N}(sigma) over GF(p).

Elements are finite maps from PBW-ordered words to nonzero residues.  A word
is a tuple of integer generator ids; the id of t_{i,j}^{(r)} is
``(r-1)*n*n + (i-1)*n + (j-1)`` with ``n = M+N``, so integer order on ids is
the lexicographic order on (r, i, j) and tuple order on words extends it.

Straightening uses the RTT relation as a rewrite rule on adjacent pairs
``y x -> (-1)^{|x||y|} x y + [y, x]`` for ``y > x``.  For ``p != 2`` an adjacent
repeated odd generator is rewritten as ``x x -> [x, x] / 2``; for ``p == 2``
odd squares stay in the basis.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, Iterable, Optional, Tuple

from .context import AlgebraContext, ContextError

Word = Tuple[int, ...]
Terms = Dict[Word, int]


class StraighteningError(RuntimeError):
    """Raised when rewriting exceeds its step budget."""


def _add(acc: Terms, terms: Terms, c: int, p: int) -> None:
    if not c:
        return
    for w, v in terms.items():
        x = (acc.get(w, 0) + c * v) % p
        if x:
            acc[w] = x
        else:
            acc.pop(w, None)


def _add1(acc: Terms, w: Word, c: int, p: int) -> None:
    x = (acc.get(w, 0) + c) % p
    if x:
        acc[w] = x
    else:
        acc.pop(w, None)


class Engine:
    """Per-context caches for generator arithmetic."""

    def __init__(self, ctx: AlgebraContext):
        self.ctx = ctx
        self.p = ctx.p
        self.n = n = ctx.size
        self.n2 = n * n
        par = ctx.parities
        self._partab = tuple(par[k // n] ^ par[k % n] for k in range(self.n2)) if n else ()
        self.inv2 = pow(2, -1, self.p) if self.p != 2 else None
        self.fault = ctx.fault
        self._bracket: Dict[Tuple[int, int], Terms] = {}
        self._mwg: Dict[Tuple[Word, int], Terms] = {}
        self._mww: Dict[Tuple[Word, Word], Terms] = {}

    # generator ids
    def gid(self, i: int, j: int, r: int) -> int:
        return (r - 1) * self.n2 + (i - 1) * self.n + (j - 1)

    def decode(self, g: int) -> Tuple[int, int, int]:
        r, rem = divmod(g, self.n2)
        i, j = divmod(rem, self.n)
        return i + 1, j + 1, r + 1

    def gpar(self, g: int) -> int:
        return self._partab[g % self.n2]

    def wpar(self, w: Word) -> int:
        pt, n2 = self._partab, self.n2
        s = 0
        for g in w:
            s ^= pt[g % n2]
        return s

    def level(self, g: int) -> int:
        return g // self.n2 + 1

    def is_normal(self, w: Word) -> bool:
        odd_square = self.p != 2
        for a, b in zip(w, w[1:]):
            if a > b or (a == b and odd_square and self.gpar(a)):
                return False
        return True

    def rtt_sign(self, i: int, j: int, k: int) -> int:
        par = self.ctx.parities
        a, b, c = par[i - 1], par[j - 1], par[k - 1]
        return -1 if (a * b + a * c + b * c) & 1 else 1

    def raw_rhs(self, x: int, y: int):
        """Unstraightened right side of [x, y] as (coeff, word) pairs; level-0 factors become deltas."""
        i, j, r = self.decode(x)
        k, l, s = self.decode(y)
        sign = self.rtt_sign(i, j, k)
        out = []
        tmax = min(r, s)
        if self.fault == "bracket-drop":
            tmax -= 1
        for t in range(tmax):
            big = r + s - 1 - t
            for a_lv, b_lv, c in ((t, big, sign), (big, t, -sign)):
                # t_{k,j}^{(a_lv)} t_{i,l}^{(b_lv)}
                word = []
                if a_lv == 0:
                    if k != j:
                        continue
                else:
                    word.append(self.gid(k, j, a_lv))
                if b_lv == 0:
                    if i != l:
                        continue
                else:
                    word.append(self.gid(i, l, b_lv))
                out.append((c, tuple(word)))
        return out

    def bracket(self, x: int, y: int) -> Terms:
        """Normal form of the RTT right side of [x, y]."""
        key = (x, y)
        hit = self._bracket.get(key)
        if hit is not None:
            return hit
        acc: Terms = {}
        for c, w in self.raw_rhs(x, y):
            if len(w) == 2:
                _add(acc, self.mul_ww((w[0],), (w[1],)), c, self.p)
            else:
                _add1(acc, w, c, self.p)
        self._bracket[key] = acc
        return acc

    def swap_sign(self, x: int, y: int) -> int:
        if self.gpar(x) and self.gpar(y):
            return 1 if self.fault == "swap-sign" else -1
        return 1

    def mul_wg(self, w: Word, x: int) -> Terms:
        """Normal form of (normal word w) * (generator x)."""
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
                    # [x, x] = 2 x^2 for odd x
                    for v, c in self.bracket(x, x).items():
                        _add(res, self.mul_ww(head, v), c * self.inv2, p)
                else:
                    sgn = self.swap_sign(x, y)
                    for v, c in self.mul_wg(head, x).items():
                        _add(res, self.mul_wg(v, y), c * sgn, p)
                    for v, c in self.bracket(y, x).items():
                        _add(res, self.mul_ww(head, v), c, p)
        self._mwg[key] = res
        return res

    def mul_ww(self, a: Word, b: Word) -> Terms:
        """Normal form of the product of two normal words."""
        if not b:
            return {a: 1}
        if not a:
            return {b: 1}
        if len(b) == 1:
            return self.mul_wg(a, b[0])
        key = (a, b)
        hit = self._mww.get(key)
        if hit is not None:
            return hit
        p = self.p
        cur = self.mul_ww(a, b[:-1])
        res: Terms = {}
        x = b[-1]
        for v, c in cur.items():
            _add(res, self.mul_wg(v, x), c, p)
        self._mww[key] = res
        return res

    def normalize(self, w: Word) -> Terms:
        """Normal form of an arbitrary word (memoized path)."""
        if self.is_normal(w):
            return {w: 1}
        res: Terms = {(): 1}
        p = self.p
        for x in w:
            nxt: Terms = {}
            for v, c in res.items():
                _add(nxt, self.mul_wg(v, x), c, p)
            res = nxt
        return res

    def mul_terms(self, a: Terms, b: Terms) -> Terms:
        p = self.p
        res: Terms = {}
        for wa, ca in a.items():
            for wb, cb in b.items():
                _add(res, self.mul_ww(wa, wb), ca * cb, p)
        return res


@lru_cache(maxsize=None)
def engine(ctx: AlgebraContext) -> Engine:
    return Engine(ctx)


def loop_degree_word(ctx_or_engine, w: Word) -> int:
    eng = ctx_or_engine if isinstance(ctx_or_engine, Engine) else engine(ctx_or_engine)
    return sum(eng.level(g) - 1 for g in w)


class Element:
    """An element of Y_{M|N}(sigma) in PBW normal form."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: AlgebraContext, terms: Optional[Terms] = None):
        self.ctx = ctx
        self.terms = terms if terms is not None else {}

    # constructors
    @classmethod
    def zero(cls, ctx):
        return cls(ctx, {})

    @classmethod
    def scalar(cls, ctx, c: int):
        c %= ctx.p
        return cls(ctx, {(): c} if c else {})

    @classmethod
    def from_word(cls, ctx, w: Iterable[int], c: int = 1):
        eng = engine(ctx)
        terms: Terms = {}
        _add(terms, eng.normalize(tuple(w)), c, ctx.p)
        return cls(ctx, terms)

    # arithmetic
    def _check(self, other):
        if other.ctx != self.ctx:
            raise ContextError("elements belong to different algebras")

    def _coerce(self, other):
        if isinstance(other, Element):
            self._check(other)
            return other
        if isinstance(other, int):
            return Element.scalar(self.ctx, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        _add(terms, other.terms, 1, self.ctx.p)
        return Element(self.ctx, terms)

    __radd__ = __add__

    def __neg__(self):
        p = self.ctx.p
        return Element(self.ctx, {w: (-c) % p for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        _add(terms, other.terms, -1, self.ctx.p)
        return Element(self.ctx, terms)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def scale(self, c: int) -> "Element":
        p = self.ctx.p
        c %= p
        if not c:
            return Element(self.ctx, {})
        return Element(self.ctx, {w: v * c % p for w, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, Element):
            return NotImplemented
        self._check(other)
        return Element(self.ctx, engine(self.ctx).mul_terms(self.terms, other.terms))

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int):
            other = Element.scalar(self.ctx, other)
        if not isinstance(other, Element):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash((self.ctx, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def parities(self) -> set:
        eng = engine(self.ctx)
        return {eng.wpar(w) for w in self.terms}

    @property
    def parity(self) -> int:
        """Parity of a homogeneous element (0 for zero)."""
        ps = self.parities()
        if len(ps) > 1:
            raise ValueError("element is not parity-homogeneous")
        return ps.pop() if ps else 0

    def homogeneous_parts(self):
        eng = engine(self.ctx)
        parts: Dict[int, Terms] = {}
        for w, c in self.terms.items():
            parts.setdefault(eng.wpar(w), {})[w] = c
        return {k: Element(self.ctx, v) for k, v in sorted(parts.items())}

    def loop_degree(self) -> int:
        eng = engine(self.ctx)
        return max((loop_degree_word(eng, w) for w in self.terms), default=0)

    def words(self):
        return sorted(self.terms)

    def text(self) -> str:
        return element_text(self)

    def __repr__(self):
        return f"Element({self.text()})"

    __str__ = text


def word_text(ctx: AlgebraContext, w: Word) -> str:
    eng = engine(ctx)
    return "*".join("t(%d,%d,%d)" % eng.decode(g) for g in w)


def element_text(e: Element) -> str:
    """Canonical text: terms sorted by word, each `c*t(i,j,r)*t(i,j,r)...`."""
    if not e.terms:
        return "0"
    parts = []
    for w in sorted(e.terms):
        c = e.terms[w]
        parts.append(str(c) if not w else f"{c}*{word_text(e.ctx, w)}")
    return " + ".join(parts)


def generator(ctx: AlgebraContext, i: int, j: int, r: int) -> Element:
    """t_{i,j}^{(r)}; level 0 gives the scalar delta_{ij}."""
    n = ctx.size
    if not (1 <= i <= n and 1 <= j <= n):
        raise ContextError(f"generator indices ({i},{j}) out of range 1..{n}")
    if r < 0:
        raise ContextError(f"generator level {r} must be nonnegative")
    if r == 0:
        return Element.scalar(ctx, 1 if i == j else 0)
    return Element(ctx, {(engine(ctx).gid(i, j, r),): 1})


def rtt_bracket(ctx: AlgebraContext, i, j, r, k, l, s) -> Element:
    """Straightened right-hand side of the RTT relation for [t_{i,j}^{(r)}, t_{k,l}^{(s)}]."""
    if r < 1 or s < 1:
        raise ContextError("rtt_bracket needs levels r, s >= 1")
    eng = engine(ctx)
    generator(ctx, i, j, r)
    generator(ctx, k, l, s)
    return Element(ctx, dict(eng.bracket(eng.gid(i, j, r), eng.gid(k, l, s))))


def raw_rtt_rhs(ctx: AlgebraContext, i, j, r, k, l, s):
    """The same right-hand side as unstraightened (coeff, word) pairs."""
    eng = engine(ctx)
    return eng.raw_rhs(eng.gid(i, j, r), eng.gid(k, l, s))


def mul(ctx: AlgebraContext, a: Element, b: Element) -> Element:
    if a.ctx != ctx or b.ctx != ctx:
        raise ContextError("context mismatch in mul")
    return a * b


def supercommutator(a: Element, b: Element) -> Element:
    """[a, b] = ab - (-1)^{|a||b|} ba, distributed over homogeneous parts."""
    if a.ctx != b.ctx:
        raise ContextError("context mismatch in supercommutator")
    if not a.terms or not b.terms:
        return Element(a.ctx, {})
    pa, pb = a.parities(), b.parities()
    if len(pa) == 1 and len(pb) == 1:
        sign = -1 if (pa.pop() & pb.pop()) else 1
        return a * b - (b * a).scale(sign)
    out = Element(a.ctx, {})
    for x in a.homogeneous_parts().values():
        for y in b.homogeneous_parts().values():
            out = out + supercommutator(x, y)
    return out


def straighten(ctx: AlgebraContext, w, strategy: str = "rightmost", budget: Optional[int] = None) -> Element:
    """Normal form of a word by explicit pair rewriting.

    `w` is a sequence of generator ids or (i, j, r) triples.  `strategy` picks
    the leftmost or rightmost reducible adjacent pair at each step.  Raises
    StraighteningError once more than `budget` rewrite steps are taken.
    """
    eng = engine(ctx)
    word = tuple(g if isinstance(g, int) else eng.gid(*g) for g in w)
    if budget is None:
        budget = step_budget(eng, word)
    p = ctx.p
    odd_square = p != 2
    pending: Terms = {word: 1}
    done: Terms = {}
    steps = 0
    while pending:
        w0, c0 = pending.popitem()
        pos = None
        rng = range(len(w0) - 1)
        if strategy == "rightmost":
            rng = reversed(rng)
        elif strategy != "leftmost":
            raise ValueError(f"unknown strategy {strategy!r}")
        for k in rng:
            a, b = w0[k], w0[k + 1]
            if a > b or (a == b and odd_square and eng.gpar(a)):
                pos = k
                break
        if pos is None:
            _add1(done, w0, c0, p)
            continue
        steps += 1
        if steps > budget:
            raise StraighteningError(f"step budget {budget} exceeded on {w!r}")
        head, tail = w0[:pos], w0[pos + 2:]
        y, x = w0[pos], w0[pos + 1]
        if y == x:
            for c, v in eng.raw_rhs(x, x):
                _add1(pending, head + v + tail, c0 * c * eng.inv2, p)
        else:
            _add1(pending, head + (x, y) + tail, c0 * eng.swap_sign(x, y), p)
            for c, v in eng.raw_rhs(y, x):
                _add1(pending, head + v + tail, c0 * c, p)
    return Element(ctx, done)


def step_budget(eng: Engine, w: Word) -> int:
    """Generous bound on rewrite steps, growing with (loop degree, length)."""
    deg = loop_degree_word(eng, w)
    n = len(w)
    return 64 * (n + 1) ** 4 * (deg + 2) ** 4 * max(eng.n, 1) ** (deg + 2)


def loop_degree(x) -> int:
    """Loop degree of an Element (max over words); for a list of (i,j,r) triples, sum of r-1."""
    if isinstance(x, Element):
        return x.loop_degree()
    return sum(r - 1 for (_, _, r) in x)


def odd_square_selftest(ctx: AlgebraContext, max_level: int = 3):
    """For every odd generator x with level <= max_level, return those whose [x,x] right side is nonzero.

    Meaningful for p == 2, where odd squares are kept in the basis and the
    relation 2x^2 = [x,x] forces the right side to vanish.
    """
    eng = engine(ctx)
    bad = []
    n = ctx.size
    for r in range(1, max_level + 1):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if ctx.gen_parity(i, j):
                    g = eng.gid(i, j, r)
                    if eng.bracket(g, g):
                        bad.append((i, j, r))
    return bad
