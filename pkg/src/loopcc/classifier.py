"""Interrogating a verified pair for its index data.

The inverse of the recipe: given (S, R) satisfying the presentation, read
off the labelled shape (nations from the zero/a-typed edges, counties and
their order from the a-edge orientations, signs from the S eigenvalues),
the parameters (vertex scalars; per nation pair the gauge-invariant pair
(p, q) = (mu C, mu/C)), and the gauge factors relating the input to the
recipe's normal form.  Everything is cross-checked: quantities that the
theory says are well defined are recomputed from every witness and compared,
and the final reconstruction is an exact equality of alpha forms.

mu itself is a square root of p q, which Q(i) need not contain; (mu, C) are
reported only when the root exists, with the lexicographically non-negative
branch as the canonical choice.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Optional

from .combinatorics import (
    LabelledShape,
    Nation,
    SignedShape,
    canonical_labelling,
    shape_of,
)
from .errors import (
    FTypeDetected,
    InconsistentParameters,
    NotARepresentation,
    RankMismatch,
    Unclassifiable,
)
from .matchcat import AlphaForm, gauge_transform, restrict, restrict_form
from .recipe import NationParams, PairParams, ParamPoint, make_recipe
from .relations import classify_n2, verify_pair
from .scalars import ExactComplex, ec

ONE = ec(1)


class EdgeType(Enum):
    ZERO = "zero"
    SLASH = "slash"
    A_TOP_FIRST = "a_top_first"
    A_TOP_SECOND = "a_top_second"


def edge_type(s2: AlphaForm, r2: AlphaForm) -> EdgeType:
    """Type of a rank-2 restriction of a pair.

    The caller guarantees the restriction satisfies the rank-2 relations;
    violations surface as Unclassifiable (or FTypeDetected for the braid
    families with no symmetric-exchange extension).
    """
    if s2.n != 2 or r2.n != 2:
        raise RankMismatch("edge typing needs rank-2 restrictions")
    sblk = s2.blocks[(1, 2)]
    rblk = r2.blocks[(1, 2)]
    if sblk.is_diagonal():
        if not (sblk.b.is_zero() and sblk.c.is_zero()) or not (
            s2.v(1) == s2.v(2) == sblk.a == sblk.d
        ):
            raise Unclassifiable("diagonal S restriction is not a scalar matrix")
        if rblk.is_diagonal() and rblk.a == rblk.d == r2.v(1) == r2.v(2):
            return EdgeType.ZERO
        raise Unclassifiable("scalar S forces a scalar R on the same edge")
    if not sblk.is_antidiagonal():
        raise Unclassifiable("S block is neither scalar nor antidiagonal")
    family = classify_n2(r2)
    if family.tag in ("Ff", "Ffbar"):
        raise FTypeDetected(f"{family.tag} restriction admits no extension")
    if family.tag == "Fslash":
        return EdgeType.SLASH
    if family.tag == "Fa":
        return EdgeType.A_TOP_FIRST
    if family.tag == "Fabar":
        return EdgeType.A_TOP_SECOND
    raise Unclassifiable("scalar R with a non-scalar S on the same edge")


@dataclass(frozen=True)
class PairInvariant:
    p: ExactComplex
    q: ExactComplex
    mu: Optional[ExactComplex]
    c_param: Optional[ExactComplex]


@dataclass(frozen=True)
class Classification:
    """Index data of a verified pair, in the input's own labelling."""

    labelled: LabelledShape
    signs: tuple  # +1/-1 per nation, aligned with labelled.nations
    nation_params: tuple  # NationParams per nation
    pair_invariants: dict  # (s, t) 0-based -> PairInvariant
    gauge: dict  # edge (i, j) -> m with gauge_transform(recipe, m) == input
    witness_perm: dict  # canonical individual -> input individual

    @property
    def shape(self) -> SignedShape:
        return shape_of(self.labelled)

    def param_point(self) -> ParamPoint:
        pairs = {
            key: PairParams(inv.p, inv.q, inv.mu, inv.c_param)
            for key, inv in self.pair_invariants.items()
        }
        return ParamPoint(self.nation_params, pairs)

    def to_json(self) -> dict:
        return {
            "shape": self.shape.to_json(),
            "labelled": self.labelled.to_json(),
            "sign": list(self.signs),
            "params": _params_json(self.nation_params, self.pair_invariants),
            "gauge": [
                {"i": i, "j": j, "m": m.to_json()}
                for (i, j), m in sorted(self.gauge.items())
            ],
            "perm": [self.witness_perm[v] for v in sorted(self.witness_perm)],
        }


def _params_json(nation_params, pair_invariants) -> dict:
    nations = [
        {
            "alpha": np.alpha.to_json(),
            "beta": None if np.beta is None else np.beta.to_json(),
        }
        for np in nation_params
    ]
    pairs = []
    for (s, t), inv in sorted(pair_invariants.items()):
        pairs.append(
            {
                "s": s + 1,
                "t": t + 1,
                "p": inv.p.to_json(),
                "q": inv.q.to_json(),
                "mu": None if inv.mu is None else inv.mu.to_json(),
                "C": None if inv.c_param is None else inv.c_param.to_json(),
            }
        )
    return {"nations": nations, "pairs": pairs}


def _edge_types(s: AlphaForm, r: AlphaForm) -> dict:
    types = {}
    for i, j in combinations(range(1, s.n + 1), 2):
        pair = restrict((s, r), {1: i, 2: j})
        types[(i, j)] = edge_type(*pair)
    return types


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        self.parent[self.find(x)] = self.find(y)


def interrogate(s: AlphaForm, r: AlphaForm) -> Classification:
    """Full index data of a verified pair; rejects non-representations."""
    if s.n != r.n:
        raise RankMismatch(f"ranks differ: {s.n} vs {r.n}")
    n = s.n
    if any(x.is_zero() for x in r.vertex) or any(
        (blk.a * blk.d - blk.b * blk.c).is_zero() for blk in r.blocks.values()
    ):
        raise NotARepresentation("R is singular")
    report = verify_pair(s, r, method="subsets")
    if not report.all_hold():
        failing = [k for k, v in report.flags().items() if not v]
        raise NotARepresentation(f"relations {failing} fail")

    types = _edge_types(s, r)

    # Nations: components under zero- and a-typed edges.
    uf = _UnionFind(range(1, n + 1))
    for (i, j), t in types.items():
        if t != EdgeType.SLASH:
            uf.union(i, j)
    members: dict = {}
    for i in range(1, n + 1):
        members.setdefault(uf.find(i), []).append(i)

    nations = []
    for root, group in members.items():
        nations.append(_split_counties(group, types))
    # County splits known; now read signs and parameters per nation.
    entries = []
    for top, bottom in nations:
        sign = _nation_sign(s, top, bottom)
        alpha = _county_value(r, top, "alpha")
        beta = _county_value(r, bottom, "beta") if bottom else None
        entries.append((Nation.make(top, bottom), sign, NationParams(alpha, beta)))

    labelled = LabelledShape.make(
        [e[0] for e in entries if e[1] == 1], [e[0] for e in entries if e[1] == -1]
    )
    # Align entry order with the shape's stored nation order.
    by_nation = {e[0]: e for e in entries}
    ordered = [by_nation[nation] for nation in labelled.nations]
    signs = tuple(e[1] for e in ordered)
    nation_params = tuple(e[2] for e in ordered)

    gauge = _gauge_map(s, types)
    pair_invariants = _pair_invariants(r, labelled, gauge)

    classification = Classification(
        labelled=labelled,
        signs=signs,
        nation_params=nation_params,
        pair_invariants=pair_invariants,
        gauge=gauge,
        witness_perm=_canonical_witness(labelled),
    )
    # Final well-definedness check: the degauged pair is exactly the recipe.
    rebuilt = make_recipe(labelled, classification.param_point())
    if gauge_transform(rebuilt[0], gauge) != s or gauge_transform(rebuilt[1], gauge) != r:
        raise InconsistentParameters("degauged pair does not match the recipe form")
    return classification


def _split_counties(group: list, types: dict) -> tuple:
    """Top/bottom split of a nation's members from the a-edge orientations."""
    same = _UnionFind(group)
    for i, j in combinations(sorted(group), 2):
        if types[(i, j)] == EdgeType.ZERO:
            same.union(i, j)
    county: dict = {}
    for i, j in combinations(sorted(group), 2):
        t = types[(i, j)]
        if t == EdgeType.A_TOP_FIRST:
            constraints = ((i, True), (j, False))
        elif t == EdgeType.A_TOP_SECOND:
            constraints = ((i, False), (j, True))
        else:
            continue
        for ind, in_top in constraints:
            root = same.find(ind)
            if county.get(root, in_top) != in_top:
                raise InconsistentParameters(
                    f"county orientation conflict at individuals {i},{j}"
                )
            county[root] = in_top
    top = [i for i in group if county.get(same.find(i), True)]
    bottom = [i for i in group if not county.get(same.find(i), True)]
    if not top:
        raise InconsistentParameters("nation with empty top county")
    # Every same-county pair must be zero-typed and every cross pair a-typed.
    for i, j in combinations(sorted(group), 2):
        same_side = (i in top) == (j in top)
        if same_side != (types[(i, j)] == EdgeType.ZERO):
            raise InconsistentParameters(f"edge {(i, j)} type contradicts the split")
    return top, bottom


def _nation_sign(s: AlphaForm, top: list, bottom: list) -> int:
    lead = s.v(min(top))
    if lead == ONE:
        sign = 1
    elif lead == -ONE:
        sign = -1
    else:
        raise InconsistentParameters(f"S eigenvalue {lead} is not +-1")
    for i in top:
        if s.v(i) != lead:
            raise InconsistentParameters("S eigenvalue varies over a county")
    for i in bottom:
        if s.v(i) != -lead:
            raise InconsistentParameters("S eigenvalues of the two counties must differ")
    return sign


def _county_value(r: AlphaForm, county: list, label: str) -> ExactComplex:
    values = {r.v(i) for i in county}
    if len(values) != 1:
        raise InconsistentParameters(f"{label} varies over a county")
    return values.pop()


def _gauge_map(s: AlphaForm, types: dict) -> dict:
    # The recipe normalizes every swap-type S block to off-diagonals 1, so
    # the gauge factor of an edge is just the b entry of the input S block.
    gauge = {}
    for (i, j), t in types.items():
        gauge[(i, j)] = ONE if t == EdgeType.ZERO else s.blocks[(i, j)].b
    return gauge


def _pair_invariants(r: AlphaForm, labelled: LabelledShape, gauge: dict) -> dict:
    invariants: dict = {}
    nation_of = {i: labelled.nation_of(i) for i in range(1, labelled.rank + 1)}
    for (i, j), m in gauge.items():
        si, sj = nation_of[i], nation_of[j]
        if si == sj:
            continue
        blk = r.blocks[(i, j)]
        b0, c0 = blk.b / m, blk.c * m
        pq = (c0, b0) if si < sj else (b0, c0)
        key = (min(si, sj), max(si, sj))
        if key in invariants and invariants[key] != pq:
            raise InconsistentParameters(
                f"pair invariants differ between representative edges of nations {key}"
            )
        invariants[key] = pq
    out = {}
    for key, (p, q) in invariants.items():
        mu = (p * q).sqrt()
        if mu is None or mu.is_zero():
            out[key] = PairInvariant(p, q, None, None)
        else:
            out[key] = PairInvariant(p, q, mu, p / mu)
    return out


def _canonical_witness(labelled: LabelledShape) -> dict:
    """w with restrict(pair, w) labelled by the canonical filling.

    Nations of the input shape and of the canonical labelling are both
    sorted by (size, bottom size, lowest resident), so they correspond
    positionally; within a county the individuals map in increasing order.
    """
    canonical = canonical_labelling(shape_of(labelled))
    w = {}
    for ours, target in zip(labelled.nations, canonical.nations):
        for v, i in zip(sorted(target.top), sorted(ours.top)):
            w[v] = i
        for v, i in zip(sorted(target.bottom), sorted(ours.bottom)):
            w[v] = i
    return w


@dataclass(frozen=True)
class CanonicalForm:
    shape: SignedShape
    perm: dict  # canonical individual -> input individual, feed to restrict
    gauge: dict  # gauge_transform(restrict(input, perm), gauge) == recipe
    params: ParamPoint

    def to_json(self) -> dict:
        return {
            "shape": self.shape.to_json(),
            "perm": [self.perm[v] for v in sorted(self.perm)],
            "gauge": [
                {"i": i, "j": j, "m": m.to_json()}
                for (i, j), m in sorted(self.gauge.items())
            ],
            "params": self.params.to_json(),
        }


def canonicalize(s: AlphaForm, r: AlphaForm) -> CanonicalForm:
    """Normal form under the symmetric-group and gauge symmetries.

    Returns (shape, w, m, params) with
    gauge_transform(restrict((S, R), w), m) == make_recipe(canonical, params)
    exactly; the equality is checked before returning.
    """
    cls = interrogate(s, r)
    w = cls.witness_perm
    moved_s, moved_r = restrict((s, r), w)
    moved_cls = interrogate(moved_s, moved_r)
    gauge = {key: m.inv() for key, m in moved_cls.gauge.items()}
    params = moved_cls.param_point()
    rebuilt = make_recipe(moved_cls.labelled, params)
    if (
        gauge_transform(moved_s, gauge) != rebuilt[0]
        or gauge_transform(moved_r, gauge) != rebuilt[1]
    ):
        raise InconsistentParameters("canonical reconstruction failed")
    return CanonicalForm(cls.shape, w, gauge, params)


def x_equivalent(pair_a, pair_b) -> Optional[dict]:
    """Gauge map m with gauge_transform(A, m) == B, or None.

    Existence is decided edge by edge: vertex scalars and block diagonals
    must agree outright, the off-diagonal zero patterns must match, and a
    single factor must reconcile all four off-diagonal entries of the S and
    R blocks simultaneously.
    """
    sa, ra = pair_a
    sb, rb = pair_b
    if sa.n != sb.n or ra.n != rb.n or sa.n != ra.n:
        raise RankMismatch("pairs must share one rank")
    if sa.vertex != sb.vertex or ra.vertex != rb.vertex:
        return None
    gauge = {}
    for edge in sa.edges():
        blocks = [(sa.blocks[edge], sb.blocks[edge]), (ra.blocks[edge], rb.blocks[edge])]
        for a, b in blocks:
            if a.a != b.a or a.d != b.d:
                return None
        m = None
        for a, b in blocks:
            if not a.b.is_zero():
                m = b.b / a.b
                break
            if not a.c.is_zero():
                m = a.c / b.c if not b.c.is_zero() else None
                break
        if m is None:
            candidates = [x for a, b in blocks for x in (a.b, a.c, b.b, b.c)]
            if any(not x.is_zero() for x in candidates):
                return None
            gauge[edge] = ONE
            continue
        if m.is_zero():
            return None
        for a, b in blocks:
            if b.b != m * a.b or b.c != a.c / m:
                return None
        gauge[edge] = m
    return gauge
