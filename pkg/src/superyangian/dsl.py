"""Expression language for elements of the super Yangian.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := INT | atom | '[' expr ',' expr ']' | '(' expr ')'
    atom   := t(i,j,r) | tp(i,j,r) | D(a;i,j;r) | Dp(a;i,j;r) | E(a;i,j;r) | F(a;i,j;r)
            | Eab(a,b;i,j;r) | Fba(b,a;i,j;r)

Brackets are supercommutators; integers are reduced mod p.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

from .context import AlgebraContext, Composition, ContextError, check_composition
from .pbw import Element, generator, supercommutator


class DSLError(ValueError):
    """Parse or resolution error; `pos` is the 0-based character offset when known."""

    def __init__(self, msg: str, pos: Optional[int] = None):
        super().__init__(msg if pos is None else f"{msg} at position {pos}")
        self.pos = pos


TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]+)|(.))")
ATOMS = {
    # name: number of integers in each ';'-separated group
    "t": (3,), "tp": (3,),
    "D": (1, 2, 1), "Dp": (1, 2, 1), "E": (1, 2, 1), "F": (1, 2, 1),
    "Eab": (2, 2, 1), "Fba": (2, 2, 1),
}


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Atom:
    name: str
    args: Tuple[int, ...]
    pos: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Bracket:
    left: "Node"
    right: "Node"


Node = Union[Num, Atom, BinOp, Bracket]


def tokenize(src: str) -> List[Tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(src):
        m = TOKEN.match(src, pos)
        if m.end() == pos or not m.group(0).strip():
            break
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("int", m.group(1), start))
        elif m.group(2):
            out.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*[](),;":
                raise DSLError(f"unexpected character {ch!r}", start)
            out.append(("sym", ch, start))
        pos = m.end()
    out.append(("end", "", len(src)))
    return out


class Parser:
    def __init__(self, src: str):
        self.toks = tokenize(src)
        self.k = 0

    def peek(self):
        return self.toks[self.k]

    def take(self, kind=None, value=None):
        tok = self.toks[self.k]
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise DSLError(f"expected {want!r}, found {got!r}", tok[2])
        self.k += 1
        return tok

    def parse(self) -> Node:
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise DSLError(f"unexpected {tok[1]!r}", tok[2])
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "sym":
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.peek()[0] == "sym" and self.peek()[1] == "*":
            self.take()
            node = BinOp("*", node, self.factor())
        return node

    def factor(self) -> Node:
        kind, val, pos = self.peek()
        if kind == "int":
            self.take()
            return Num(int(val))
        if kind == "name":
            return self.atom()
        if kind == "sym" and val == "[":
            self.take()
            left = self.expr()
            self.take("sym", ",")
            right = self.expr()
            self.take("sym", "]")
            return Bracket(left, right)
        if kind == "sym" and val == "(":
            self.take()
            node = self.expr()
            self.take("sym", ")")
            return node
        raise DSLError(f"unexpected {val or 'end of input'!r}", pos)

    def atom(self) -> Atom:
        _, name, pos = self.take("name")
        if name not in ATOMS:
            raise DSLError(f"unknown atom {name!r}", pos)
        self.take("sym", "(")
        args = []
        for g, count in enumerate(ATOMS[name]):
            if g:
                self.take("sym", ";")
            for c in range(count):
                if c:
                    self.take("sym", ",")
                args.append(int(self.take("int")[1]))
        self.take("sym", ")")
        return Atom(name, tuple(args), pos)


def parse(src: str) -> Node:
    return Parser(src).parse()


class Evaluator:
    """Resolves atoms against (ctx, mu, R); parabolic data is computed on demand."""

    def __init__(self, ctx: AlgebraContext, mu=None, R: int = 3):
        self.ctx = ctx
        self.mu: Optional[Composition] = check_composition(ctx, mu) if mu is not None else None
        self.R = R

    def gauss(self, level: int):
        from .gauss import gauss_decompose
        return gauss_decompose(self.ctx, self.mu, max(self.R, level))

    def eval(self, node: Node) -> Element:
        ctx = self.ctx
        if isinstance(node, Num):
            return Element.scalar(ctx, node.value)
        if isinstance(node, BinOp):
            a, b = self.eval(node.left), self.eval(node.right)
            return a + b if node.op == "+" else a - b if node.op == "-" else a * b
        if isinstance(node, Bracket):
            return supercommutator(self.eval(node.left), self.eval(node.right))
        return self.atom(node)

    def atom(self, node: Atom) -> Element:
        ctx, name, args = self.ctx, node.name, node.args
        n = ctx.size

        def need(cond, what):
            if not cond:
                raise DSLError(f"{name}{args}: {what}", node.pos)

        if name in ("t", "tp"):
            i, j, r = args
            need(1 <= i <= n and 1 <= j <= n, f"index out of range 1..{n}")
            if r == 0:
                return Element.scalar(ctx, 1 if i == j else 0)
            if name == "t":
                return generator(ctx, i, j, r)
            from .maps import tprime
            return tprime(ctx, i, j, r, max(self.R, r))
        need(self.mu is not None, "parabolic atoms need a composition (--mu)")
        mu = self.mu
        if name in ("Eab", "Fba"):
            x, y, i, j, r = args
            a, b = (x, y) if name == "Eab" else (y, x)
            need(1 <= a < b <= mu.n, f"blocks must satisfy 1 <= a < b <= {mu.n}")
        else:
            a, i, j, r = args
            b = a + 1 if name in ("E", "F") else a
            need(1 <= a and b <= mu.n, f"block out of range for n = {mu.n}")
        if name in ("D", "Dp"):
            rows, cols = mu.size(a), mu.size(a)
        elif name in ("E", "Eab"):
            rows, cols = mu.size(a), mu.size(b)
        else:
            rows, cols = mu.size(b), mu.size(a)
        need(1 <= i <= rows and 1 <= j <= cols, f"entry out of range {rows}x{cols}")
        g = self.gauss(r)
        if name == "D":
            return g.d(a, i, j, r)
        if name == "Dp":
            return g.dp(a, i, j, r)
        if name in ("E", "Eab"):
            return g.E[(a, b)].entry(i, j).coeff((r,))
        return g.F[(b, a)].entry(i, j).coeff((r,))


def evaluate(src: str, ctx: AlgebraContext, mu=None, R: int = 3) -> Element:
    try:
        return Evaluator(ctx, mu, R).eval(parse(src))
    except ContextError as exc:
        raise DSLError(str(exc)) from exc
