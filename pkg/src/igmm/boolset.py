"""Propositions, valuations, cubes and dense valuation sets.

A valuation over ``k`` propositions is identified with an integer in
``[0, 2**k)``: bit ``j`` holds the value of proposition ``j``.  A set of
valuations is a ``2**k``-bit integer mask indexed by those integers.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

MAX_PROPS = 16


class ArityError(ValueError):
    pass


def _check_arity(a: int, b: int) -> None:
    if a != b:
        raise ArityError(f"arity mismatch: {a} != {b}")


@dataclass(frozen=True)
class PropSet:
    names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate proposition names in {names}")
        for n in names:
            if not isinstance(n, str) or not n or any(c.isspace() for c in n):
                raise ValueError(f"invalid proposition name {n!r}")

    @classmethod
    def default(cls, k: int, prefix: str) -> "PropSet":
        return cls(tuple(f"{prefix}{j}" for j in range(k)))

    @property
    def arity(self) -> int:
        return len(self.names)

    @property
    def n_valuations(self) -> int:
        return 1 << len(self.names)

    def __len__(self):
        return len(self.names)

    def format_valuation(self, v: int) -> str:
        """Human-readable valuation, e.g. ``x !y z``."""
        if not self.names:
            return "true"
        return " ".join(n if v >> j & 1 else "!" + n
                        for j, n in enumerate(self.names))


@dataclass(frozen=True)
class Cube:
    """Conjunction of literals: ``care`` marks constrained positions."""

    care: int
    value: int
    arity: int

    def __post_init__(self):
        full = (1 << self.arity) - 1
        if self.care & ~full or self.value & ~full:
            raise ArityError(f"cube bits exceed arity {self.arity}")
        if self.value & ~self.care:
            raise ValueError("cube value set on a don't-care position")

    @classmethod
    def top(cls, arity: int) -> "Cube":
        return cls(0, 0, arity)

    @classmethod
    def from_string(cls, text: str) -> "Cube":
        """Parse a KISS-style cube; leftmost character is proposition 0."""
        care = value = 0
        for j, ch in enumerate(text):
            if ch == "1":
                care |= 1 << j
                value |= 1 << j
            elif ch == "0":
                care |= 1 << j
            elif ch != "-":
                raise ValueError(f"invalid cube character {ch!r} in {text!r}")
        return cls(care, value, len(text))

    def to_string(self) -> str:
        out = []
        for j in range(self.arity):
            if not self.care >> j & 1:
                out.append("-")
            else:
                out.append("1" if self.value >> j & 1 else "0")
        return "".join(out)

    def contains(self, v: int) -> bool:
        return v & self.care == self.value

    def size(self) -> int:
        return 1 << (self.arity - bin(self.care).count("1"))

    def intersects(self, other: "Cube") -> bool:
        _check_arity(self.arity, other.arity)
        common = self.care & other.care
        return self.value & common == other.value & common


def cube_to_set(c: Cube, k: int | None = None) -> "ValuationSet":
    if k is not None:
        _check_arity(c.arity, k)
    k = c.arity
    mask = 0
    for v in range(1 << k):
        if v & c.care == c.value:
            mask |= 1 << v
    return ValuationSet(mask, k)


@dataclass(frozen=True)
class ValuationSet:
    mask: int
    arity: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> (1 << self.arity):
            raise ArityError(f"mask exceeds 2**{self.arity} valuations")

    @classmethod
    def empty(cls, k: int) -> "ValuationSet":
        return cls(0, k)

    @classmethod
    def full(cls, k: int) -> "ValuationSet":
        return cls((1 << (1 << k)) - 1, k)

    @classmethod
    def of(cls, valuations: Iterable[int], k: int) -> "ValuationSet":
        mask = 0
        for v in valuations:
            if not 0 <= v < 1 << k:
                raise ArityError(f"valuation {v} out of range for arity {k}")
            mask |= 1 << v
        return cls(mask, k)

    @classmethod
    def from_cubes(cls, cubes: Iterable[Cube], k: int) -> "ValuationSet":
        mask = 0
        for c in cubes:
            mask |= cube_to_set(c, k).mask
        return cls(mask, k)

    def _other(self, other: "ValuationSet") -> int:
        _check_arity(self.arity, other.arity)
        return other.mask

    def __and__(self, other: "ValuationSet") -> "ValuationSet":
        return ValuationSet(self.mask & self._other(other), self.arity)

    def __or__(self, other: "ValuationSet") -> "ValuationSet":
        return ValuationSet(self.mask | self._other(other), self.arity)

    def __invert__(self) -> "ValuationSet":
        return ValuationSet(self.mask ^ ((1 << (1 << self.arity)) - 1), self.arity)

    def __le__(self, other: "ValuationSet") -> bool:
        return self.mask & ~self._other(other) == 0

    def __contains__(self, v: int) -> bool:
        return bool(self.mask >> v & 1)

    def __iter__(self) -> Iterator[int]:
        m, v = self.mask, 0
        while m:
            if m & 1:
                yield v
            m >>= 1
            v += 1

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __bool__(self) -> bool:
        return self.mask != 0

    def is_empty(self) -> bool:
        return self.mask == 0

    def is_full(self) -> bool:
        return self.mask == (1 << (1 << self.arity)) - 1

    def is_subset(self, other: "ValuationSet") -> bool:
        return self <= other

    def intersect(self, other: "ValuationSet") -> "ValuationSet":
        return self & other

    def union(self, other: "ValuationSet") -> "ValuationSet":
        return self | other

    def complement(self) -> "ValuationSet":
        return ~self

    def cardinality(self) -> int:
        return len(self)

    def is_cube(self) -> bool:
        return bool(self.mask) and _as_cube(self.mask, self.arity) is not None


def _as_cube(mask: int, k: int) -> Cube | None:
    """Return the cube equal to ``mask`` if there is one."""
    all_and = (1 << k) - 1
    all_or = 0
    n = 0
    m, v = mask, 0
    while m:
        if m & 1:
            all_and &= v
            all_or |= v
            n += 1
        m >>= 1
        v += 1
    care = ((1 << k) - 1) & ~(all_and ^ all_or)
    cube = Cube(care, all_and & care, k)
    if cube.size() == n:
        return cube
    return None


def _cofactor_masks(mask: int, k: int, j: int) -> tuple[int, int]:
    lo = hi = 0
    m, v = mask, 0
    while m:
        if m & 1:
            if v >> j & 1:
                hi |= 1 << (v & ~(1 << j))
            else:
                lo |= 1 << v
        m >>= 1
        v += 1
    return lo, hi


def _split_var(mask: int, k: int, care: int) -> int:
    for j in range(k):
        if care >> j & 1:
            continue
        lo, hi = _cofactor_masks(mask, k, j)
        if lo != hi:
            return j
    raise AssertionError("set independent of all free propositions is a cube")


def _restrict(mask: int, j: int, bit: int) -> int:
    out = 0
    m, v = mask, 0
    while m:
        if m & 1 and (v >> j & 1) == bit:
            out |= 1 << v
        m >>= 1
        v += 1
    return out


def disjoint_cube_cover(s: ValuationSet) -> list[Cube]:
    """Partition ``s`` into pairwise disjoint cubes.

    Shannon expansion on the lowest-index proposition whose cofactors
    differ; a residual that already is a cube is emitted as is.  The
    ``0`` branch is listed before the ``1`` branch, so the result is a
    deterministic function of ``s``.
    """
    if s.is_empty():
        raise ValueError("cannot cover the empty set")
    k = s.arity
    out: list[Cube] = []

    def rec(mask: int, care: int) -> None:
        if not mask:
            return
        cube = _as_cube(mask, k)
        if cube is not None:
            out.append(cube)
            return
        j = _split_var(mask, k, care)
        rec(_restrict(mask, j, 0), care | 1 << j)
        rec(_restrict(mask, j, 1), care | 1 << j)

    rec(s.mask, 0)
    return out


def first_cube(s: ValuationSet) -> Cube:
    return disjoint_cube_cover(s)[0]


def format_set(s: ValuationSet) -> str:
    """Render a set as ``|``-joined cubes (``-`` for the full set)."""
    if s.is_empty():
        return "{}"
    return "|".join(c.to_string() for c in disjoint_cube_cover(s))


def cubes_pairwise_disjoint(cubes: Sequence[Cube]) -> bool:
    return all(not a.intersects(b)
               for n, a in enumerate(cubes) for b in cubes[n + 1:])
