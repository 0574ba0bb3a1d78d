"""Ambient parameters of a modular super Yangian: prime, size M|N, 01-sequence."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence, Tuple

FAULTS = (None, "swap-sign", "bracket-drop")


class ContextError(ValueError):
    """Invalid algebra parameters (non-prime p, bad 01-sequence, bad composition)."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def parse_sequence(s) -> str:
    if isinstance(s, (list, tuple)):
        s = "".join(str(int(x)) for x in s)
    s = str(s).strip()
    if any(ch not in "01" for ch in s):
        raise ContextError(f"01-sequence may only contain '0' and '1': {s!r}")
    return s


def sequence_transform(s: str, kind: str) -> str:
    """Flip (0<->1), reverse, or flip_reverse a 01-sequence."""
    s = parse_sequence(s)
    flipped = s.translate(str.maketrans("01", "10"))
    if kind == "flip":
        return flipped
    if kind == "reverse":
        return s[::-1]
    if kind == "flip_reverse":
        return flipped[::-1]
    raise ContextError(f"unknown sequence transform {kind!r}")


@dataclass(frozen=True)
class Composition:
    parts: Tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        if not parts or any(x <= 0 for x in parts):
            raise ContextError(f"composition parts must be positive: {self.parts!r}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text) -> "Composition":
        if isinstance(text, Composition):
            return text
        if isinstance(text, (list, tuple)):
            return cls(tuple(text))
        try:
            return cls(tuple(int(x) for x in str(text).split(",") if x.strip()))
        except ValueError as exc:
            raise ContextError(f"bad composition {text!r}") from exc

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self):
        return ",".join(map(str, self.parts))

    @property
    def n(self) -> int:
        return len(self.parts)

    @property
    def total(self) -> int:
        return sum(self.parts)

    def size(self, a: int) -> int:
        return self.parts[a - 1]

    def offset(self, a: int) -> int:
        """n_{a-1} = mu_1 + ... + mu_{a-1} (so rows of block a are offset(a)+1..offset(a)+mu_a)."""
        return sum(self.parts[: a - 1])

    def reversed(self) -> "Composition":
        return Composition(self.parts[::-1])

    def counts(self, sigma: str, a: int) -> Tuple[int, int]:
        """(p_a, q_a): number of zeros and ones of sigma inside block a."""
        seg = sigma[self.offset(a): self.offset(a) + self.size(a)]
        return seg.count("0"), seg.count("1")


def compositions(total: int, length: Optional[int] = None):
    """All compositions of `total`, in lexicographic order; optionally of fixed length."""
    def rec(rest):
        if rest == 0:
            yield ()
            return
        for first in range(1, rest + 1):
            for tail in rec(rest - first):
                yield (first,) + tail

    for parts in rec(total):
        if length is None or len(parts) == length:
            yield Composition(parts)


@dataclass(frozen=True)
class AlgebraContext:
    """The super Yangian Y_{M|N}(sigma) over GF(p).

    Generators t_{i,j}^{(r)} (r >= 1) are totally ordered lexicographically on
    (r, i, j).  `fault` is a test hook that deliberately corrupts straightening.
    """

    p: int
    M: int
    N: int
    sigma: str
    fault: Optional[str] = field(default=None, compare=True)

    def __post_init__(self):
        if not is_prime(int(self.p)):
            raise ContextError(f"p={self.p} is not prime")
        if self.M < 0 or self.N < 0:
            raise ContextError("M and N must be nonnegative")
        sigma = parse_sequence(self.sigma)
        object.__setattr__(self, "sigma", sigma)
        if len(sigma) != self.M + self.N:
            raise ContextError(f"sigma {sigma!r} has length {len(sigma)}, expected M+N={self.M + self.N}")
        if sigma.count("0") != self.M or sigma.count("1") != self.N:
            raise ContextError(f"sigma {sigma!r} must contain {self.M} zeros and {self.N} ones")
        if self.fault not in FAULTS:
            raise ContextError(f"unknown fault hook {self.fault!r}")

    @property
    def size(self) -> int:
        return self.M + self.N

    @cached_property
    def parities(self) -> Tuple[int, ...]:
        """0-based tuple of |i|."""
        return tuple(int(c) for c in self.sigma)

    def parity(self, i: int) -> int:
        """|i| for a 1-based index."""
        if not 1 <= i <= self.size:
            raise ContextError(f"index {i} out of range 1..{self.size}")
        return self.parities[i - 1]

    def gen_parity(self, i: int, j: int) -> int:
        return (self.parity(i) + self.parity(j)) % 2

    def generator_key(self, i: int, j: int, r: int) -> Tuple[int, int, int]:
        """Sort key of t_{i,j}^{(r)} in the PBW order."""
        return (r, i, j)

    def restricted_parity(self, mu: Composition, a: int, i: int) -> int:
        return restricted_parity(mu, self.sigma, a, i)

    def without_fault(self) -> "AlgebraContext":
        return AlgebraContext(self.p, self.M, self.N, self.sigma)

    def describe(self) -> str:
        return f"Y_{{{self.M}|{self.N}}}({self.sigma}) over GF({self.p})"


def make_context(p: int, M: int, N: int, sigma, fault: Optional[str] = None) -> AlgebraContext:
    return AlgebraContext(int(p), int(M), int(N), parse_sequence(sigma), fault)


def restricted_parity(mu, sigma: str, a: int, i: int) -> int:
    """|i|_a: the parity of the i-th index inside block a."""
    mu = Composition.parse(mu)
    sigma = parse_sequence(sigma)
    if mu.total != len(sigma):
        raise ContextError(f"composition {mu} does not sum to {len(sigma)}")
    if not 1 <= a <= mu.n:
        raise ContextError(f"block {a} out of range 1..{mu.n}")
    if not 1 <= i <= mu.size(a):
        raise ContextError(f"row {i} out of range 1..{mu.size(a)} in block {a}")
    return int(sigma[mu.offset(a) + i - 1])


def check_composition(ctx: AlgebraContext, mu) -> Composition:
    mu = Composition.parse(mu)
    if mu.total != ctx.size:
        raise ContextError(f"composition {mu} sums to {mu.total}, expected M+N={ctx.size}")
    return mu


def all_sequences(M: int, N: int):
    """Every 01-sequence with M zeros and N ones, in lexicographic order."""
    from itertools import combinations

    n = M + N
    out = []
    for ones in combinations(range(n), N):
        s = ["0"] * n
        for k in ones:
            s[k] = "1"
        out.append("".join(s))
    return sorted(out)


def sort_generators(gens: Sequence[Tuple[int, int, int]]):
    """Sort (i, j, r) triples in the PBW generator order."""
    return sorted(gens, key=lambda g: (g[2], g[0], g[1]))
