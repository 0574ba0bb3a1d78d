"""The coproduct Y -> Y (x) Y on PBW normal forms."""

from __future__ import annotations

from typing import Dict, Tuple

from .context import AlgebraContext, ContextError
from .pbw import Element, Word, _add1, engine

TensorTerms = Dict[Tuple[Word, Word], int]


class TensorElement:
    """Element of Y (x) Y; both tensor legs are kept in PBW normal form."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: AlgebraContext, terms: TensorTerms = None):
        self.ctx = ctx
        self.terms = terms if terms is not None else {}

    @classmethod
    def unit(cls, ctx):
        return cls(ctx, {((), ()): 1})

    def __add__(self, other):
        p = self.ctx.p
        terms = dict(self.terms)
        for k, c in other.terms.items():
            _add1(terms, k, c, p)
        return TensorElement(self.ctx, terms)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        p = self.ctx.p
        c %= p
        return TensorElement(self.ctx, {k: v * c % p for k, v in self.terms.items()} if c else {})

    def __mul__(self, other):
        """(a (x) b)(c (x) d) = (-1)^{|b||c|} ac (x) bd."""
        if isinstance(other, int):
            return self.scale(other)
        if other.ctx != self.ctx:
            raise ContextError("context mismatch in tensor product")
        eng = engine(self.ctx)
        p = self.ctx.p
        out: TensorTerms = {}
        for (a, b), c1 in self.terms.items():
            pb = eng.wpar(b)
            for (c, d), c2 in other.terms.items():
                sign = -1 if (pb & eng.wpar(c)) else 1
                left = eng.mul_ww(a, c)
                right = eng.mul_ww(b, d)
                k = c1 * c2 * sign
                for wl, cl in left.items():
                    for wr, cr in right.items():
                        _add1(out, (wl, wr), k * cl * cr, p)
        return TensorElement(self.ctx, out)

    def __eq__(self, other):
        return isinstance(other, TensorElement) and self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def text(self):
        from .pbw import word_text

        if not self.terms:
            return "0"
        parts = []
        for (a, b) in sorted(self.terms):
            c = self.terms[(a, b)]
            parts.append(f"{c}*({word_text(self.ctx, a) or '1'})@({word_text(self.ctx, b) or '1'})")
        return " + ".join(parts)

    __str__ = text


def delta_generator(ctx: AlgebraContext, g: int) -> TensorElement:
    """Delta(t_{i,j}^{(r)}) = sum_{s=0}^{r} sum_k t_{i,k}^{(r-s)} (x) t_{k,j}^{(s)}."""
    eng = engine(ctx)
    i, j, r = eng.decode(g)
    out: TensorTerms = {}
    for s in range(r + 1):
        for k in range(1, ctx.size + 1):
            if r - s == 0 and i != k:
                continue
            if s == 0 and k != j:
                continue
            left = () if r - s == 0 else (eng.gid(i, k, r - s),)
            right = () if s == 0 else (eng.gid(k, j, s),)
            _add1(out, (left, right), 1, ctx.p)
    return TensorElement(ctx, out)


def delta_word(ctx: AlgebraContext, w: Word) -> TensorElement:
    out = TensorElement.unit(ctx)
    for g in w:
        out = out * delta_generator(ctx, g)
    return out


def delta(e: Element) -> TensorElement:
    """Coproduct, extended multiplicatively with the tensor sign rule."""
    ctx = e.ctx
    out = TensorElement(ctx, {})
    for w, c in e.terms.items():
        out = out + delta_word(ctx, w).scale(c)
    return out
