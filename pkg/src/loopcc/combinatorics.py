"""Index sets for the solution varieties.

A *nation* is an ordered split of a subset of {1..N} into a non-empty top
county and a possibly-empty bottom county; a signed collection of nations
covering {1..N} is a labelled shape.  Forgetting the individuals leaves a
signed multiset of at-most-two-part compositions; those index the varieties
up to symmetry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidRank, SizeMismatch


@dataclass(frozen=True, slots=True, order=False)
class Composition2:
    """Composition with at most two parts: top >= 1, bottom >= 0."""

    top: int
    bottom: int = 0

    def __post_init__(self):
        if self.top < 1 or self.bottom < 0:
            raise InvalidRank(f"bad composition ({self.top},{self.bottom})")

    @property
    def total(self) -> int:
        return self.top + self.bottom

    def key(self) -> tuple:
        # Total order: ascending degree, then ascending second part.
        return (self.total, self.bottom)

    def __lt__(self, other: "Composition2") -> bool:
        return self.key() < other.key()


Multiset = tuple  # of (Composition2, multiplicity), sorted by composition key


def _multiset(pairs: Iterable[tuple[Composition2, int]]) -> Multiset:
    merged: dict[Composition2, int] = {}
    for comp, mult in pairs:
        if mult:
            merged[comp] = merged.get(comp, 0) + mult
    return tuple(sorted(merged.items(), key=lambda cm: cm[0].key()))


def multiset_total(ms: Multiset) -> int:
    return sum(c.total * m for c, m in ms)


@dataclass(frozen=True, slots=True)
class SignedShape:
    """Ordered pair of multisets of compositions (plus part, minus part)."""

    plus: Multiset
    minus: Multiset

    @classmethod
    def make(cls, plus: Iterable[Composition2], minus: Iterable[Composition2]) -> "SignedShape":
        return cls(_multiset((c, 1) for c in plus), _multiset((c, 1) for c in minus))

    @property
    def total(self) -> int:
        return multiset_total(self.plus) + multiset_total(self.minus)

    def compositions(self, sign: str) -> list[Composition2]:
        ms = self.plus if sign == "+" else self.minus
        out = []
        for comp, mult in ms:
            out.extend([comp] * mult)
        return out

    def to_json(self) -> dict:
        return {
            "plus": [[c.top, c.bottom] for c in self.compositions("+")],
            "minus": [[c.top, c.bottom] for c in self.compositions("-")],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SignedShape":
        return cls.make(
            [Composition2(t, b) for t, b in obj.get("plus", [])],
            [Composition2(t, b) for t, b in obj.get("minus", [])],
        )


@dataclass(frozen=True, slots=True)
class Nation:
    """Two ordered counties of individuals; the top county is never empty."""

    top: frozenset
    bottom: frozenset

    @classmethod
    def make(cls, top: Iterable[int], bottom: Iterable[int] = ()) -> "Nation":
        return cls(frozenset(top), frozenset(bottom))

    def __post_init__(self):
        if not self.top:
            raise InvalidRank("nation with empty top county")
        if self.top & self.bottom:
            raise InvalidRank("counties overlap")

    @property
    def individuals(self) -> frozenset:
        return self.top | self.bottom

    @property
    def size(self) -> int:
        return len(self.top) + len(self.bottom)

    def composition(self) -> Composition2:
        return Composition2(len(self.top), len(self.bottom))

    def key(self) -> tuple:
        # Size ascending, then bottom-county size, then lowest resident
        # ("child first" among equal shapes).
        return (self.size, len(self.bottom), min(self.individuals))


def _nation_json(n: Nation) -> dict:
    return {"top": sorted(n.top), "bottom": sorted(n.bottom)}


@dataclass(frozen=True, slots=True)
class LabelledShape:
    """Signed collection of nations partitioning {1..N}.

    Nations are stored sorted by (size, bottom size, lowest resident) within
    each sign, so equality is structural and parameter positions are stable.
    """

    plus: tuple
    minus: tuple

    @classmethod
    def make(cls, plus: Iterable[Nation], minus: Iterable[Nation]) -> "LabelledShape":
        shape = cls(
            tuple(sorted(plus, key=Nation.key)),
            tuple(sorted(minus, key=Nation.key)),
        )
        shape._validate()
        return shape

    def _validate(self):
        seen: set = set()
        for nation in self.nations:
            if nation.individuals & seen:
                raise InvalidRank("individual in two nations")
            seen |= nation.individuals
        n = len(seen)
        if seen != set(range(1, n + 1)):
            raise InvalidRank("individuals must be exactly 1..N")

    @property
    def nations(self) -> tuple:
        return self.plus + self.minus

    @property
    def rank(self) -> int:
        return sum(n.size for n in self.nations)

    def sign(self, s: int) -> int:
        """Sign of nation s (0-based position in self.nations)."""
        return 1 if s < len(self.plus) else -1

    def nation_of(self, individual: int) -> int:
        for s, nation in enumerate(self.nations):
            if individual in nation.individuals:
                return s
        raise IndexError(individual)

    def to_json(self) -> dict:
        return {
            "plus": [_nation_json(n) for n in self.plus],
            "minus": [_nation_json(n) for n in self.minus],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "LabelledShape":
        return cls.make(
            [Nation.make(d["top"], d.get("bottom", ())) for d in obj.get("plus", [])],
            [Nation.make(d["top"], d.get("bottom", ())) for d in obj.get("minus", [])],
        )


def enum_compositions2(k: int) -> list[Composition2]:
    """The k compositions of degree k: (k,0), (k-1,1), ..., (1,k-1)."""
    if k < 1:
        raise InvalidRank(f"degree must be >= 1, got {k}")
    return [Composition2(k - b, b) for b in range(k)]


def _all_compositions_upto(n: int) -> list[Composition2]:
    out = []
    for k in range(1, n + 1):
        out.extend(enum_compositions2(k))
    return out


def enum_multisets(n: int) -> list[Multiset]:
    """All multisets of compositions of total degree n."""
    comps = _all_compositions_upto(n)

    def rec(idx: int, remaining: int):
        if remaining == 0:
            yield ()
            return
        if idx >= len(comps):
            return
        comp = comps[idx]
        # Highest multiplicity first: matches the listed order of small cases.
        for mult in range(remaining // comp.total, -1, -1):
            for rest in rec(idx + 1, remaining - mult * comp.total):
                yield ((comp, mult),) + rest if mult else rest

    return [_multiset(ms) for ms in rec(0, n)]


def enum_signed(n: int) -> list[SignedShape]:
    """All signed multisets of total degree n, plus-degree descending."""
    by_degree = {d: enum_multisets(d) for d in range(n + 1)}
    out = []
    for p in range(n, -1, -1):
        for f in by_degree[p]:
            for g in by_degree[n - p]:
                out.append(SignedShape(f, g))
    return out


def count_series(max_n: int) -> tuple[list[int], list[int]]:
    """Coefficients of prod_k (1-x^k)^(-k) and of its square, up to x^max_n.

    The k-th factor enters k times because there are k compositions of
    degree k with at most two parts; squaring counts ordered sign splits.
    """
    coeff = [1] + [0] * max_n
    for k in range(1, max_n + 1):
        # multiply by (1 - x^k)^(-k) = sum_m C(m+k-1, k-1) x^(km)
        nxt = [0] * (max_n + 1)
        for m in range(0, max_n // k + 1):
            binom = math.comb(m + k - 1, k - 1)
            for d in range(0, max_n - k * m + 1):
                nxt[d + k * m] += binom * coeff[d]
        coeff = nxt
    squared = [
        sum(coeff[i] * coeff[d - i] for i in range(d + 1)) for d in range(max_n + 1)
    ]
    return coeff, squared


def canonical_labelling(shape: SignedShape) -> LabelledShape:
    """Fill the shape's boxes with 1..N in order, top county first."""
    plus, minus = [], []
    next_ind = 1
    for sign, target in ((1, plus), (-1, minus)):
        for comp in shape.compositions("+" if sign == 1 else "-"):
            top = range(next_ind, next_ind + comp.top)
            bottom = range(next_ind + comp.top, next_ind + comp.total)
            target.append(Nation.make(top, bottom))
            next_ind += comp.total
    return LabelledShape.make(plus, minus)


def shape_of(shape: LabelledShape) -> SignedShape:
    """Forget the individuals in the boxes."""
    return SignedShape(
        _multiset((n.composition(), 1) for n in shape.plus),
        _multiset((n.composition(), 1) for n in shape.minus),
    )


def _as_perm_map(w, n: int) -> dict:
    if isinstance(w, dict):
        mapping = dict(w)
    else:
        mapping = {i + 1: v for i, v in enumerate(w)}
    if sorted(mapping) != list(range(1, n + 1)) or sorted(mapping.values()) != list(
        range(1, n + 1)
    ):
        raise SizeMismatch(f"not a permutation of 1..{n}: {w}")
    return mapping


def perm_action(w, shape: LabelledShape) -> LabelledShape:
    """Replace every individual i by w(i); w is a dict or a sequence."""
    mapping = _as_perm_map(w, shape.rank)

    def move(nation: Nation) -> Nation:
        return Nation.make({mapping[i] for i in nation.top}, {mapping[i] for i in nation.bottom})

    return LabelledShape.make(
        [move(n) for n in shape.plus], [move(n) for n in shape.minus]
    )


def _set_partitions(items: Sequence[int]):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in _set_partitions(rest):
        for i in range(len(partition)):
            yield partition[:i] + [partition[i] + [first]] + partition[i + 1 :]
        yield [[first]] + partition


def _nonempty_top_splits(block: list[int]):
    members = sorted(block)
    k = len(members)
    for mask in range(1, 1 << k):
        top = {members[i] for i in range(k) if mask >> i & 1}
        yield Nation.make(top, set(members) - top)


def enum_labelled(n: int) -> list[LabelledShape]:
    """Every labelled shape on {1..n}: all partitions into nations, all
    top-county choices, all sign assignments."""
    if n < 1:
        raise InvalidRank(f"rank must be >= 1, got {n}")
    out = []
    for partition in _set_partitions(list(range(1, n + 1))):
        choices = [list(_nonempty_top_splits(block)) for block in partition]

        def rec(idx: int, acc: list):
            if idx == len(choices):
                k = len(acc)
                for mask in range(1 << k):
                    plus = [acc[i] for i in range(k) if mask >> i & 1]
                    minus = [acc[i] for i in range(k) if not mask >> i & 1]
                    out.append(LabelledShape.make(plus, minus))
                return
            for nation in choices[idx]:
                rec(idx + 1, acc + [nation])

        rec(0, [])
    out.sort(key=_shape_sort_key)
    return out


def _shape_sort_key(shape: LabelledShape) -> tuple:
    def nkey(n: Nation):
        return (sorted(n.top), sorted(n.bottom))

    return (
        len(shape.plus),
        [nkey(n) for n in shape.plus],
        [nkey(n) for n in shape.minus],
    )
