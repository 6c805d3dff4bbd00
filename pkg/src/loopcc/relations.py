"""Verification of the loop-braid presentation on a candidate pair (S, R).

The presentation has width 3, so a pair induces a representation iff five
identities hold: s^2 = 1x1, the two braid relations SSS and RRR, the mixed
relation RRS (r1 r2 s1 = s2 r1 r2) and the mixed relation RSS
(r1 s2 s1 = s2 s1 r2).  The reverse of RRS (s1 r2 r1 = r2 r1 s2) is *not*
part of the presentation; `verify_pair` reports whether it happens to hold.

Two independent verification routes are provided:

* "dense"   -- build the width-3 anomaly matrices explicitly and test zero;
* "subsets" -- check every 2-subset at rank 2 and every 3-subset through the
  named cubic residuals of the generalized braid equation
  z1 Z2 zeta1 = zeta2 Z1 z2 evaluated by ket calculus.

Residual naming: the equations read off basis kets are labelled rel1..rel5
(input word ijk, distinct letters), w112_1/w112_2 (input iij), w121_1..3
(input iji) and w121_4..5 (input jii); the mirrored families from input
words on (j, i) carry an m prefix.  Identically-zero coefficients keep a
_star suffix.  Mirrors are generated by the same evaluation relabelled, not
hand-transcribed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Optional

from .errors import NotInvertible, IndexOutOfRange, RankMismatch, Unclassifiable
from .matchcat import (
    AlphaForm,
    Block,
    DenseMatrix,
    act_sequence,
    alpha_to_dense,
    identity,
    kron,
    restrict_form,
    shift_embed,
    word_to_index,
    index_to_word,
)
from .scalars import ExactComplex, ec

ZERO = ec(0)

# Output-word labels for each input pattern of the generalized braid
# equation; patterns are over letters 1 < 2 (< 3) and get relabelled onto a
# concrete triple.  Entries marked _star are identically zero.
_RESIDUAL_NAMES = {
    (1, 2, 3): {
        (1, 2, 3): "rel1",
        (2, 1, 3): "rel2",
        (1, 3, 2): "rel3",
        (2, 3, 1): "rel4",
        (3, 1, 2): "rel5",
        (3, 2, 1): "rel_star",
    },
    (1, 1, 2): {(1, 1, 2): "w112_1", (1, 2, 1): "w112_2", (2, 1, 1): "w112_star"},
    (1, 2, 1): {(1, 2, 1): "w121_1", (1, 1, 2): "w121_2", (2, 1, 1): "w121_3"},
    (2, 1, 1): {(2, 1, 1): "w121_4", (1, 2, 1): "w121_5", (1, 1, 2): "w121_star"},
    (2, 2, 1): {(2, 2, 1): "m112_1", (2, 1, 2): "m112_2", (1, 2, 2): "m112_star"},
    (2, 1, 2): {(2, 1, 2): "m121_1", (2, 2, 1): "m121_2", (1, 2, 2): "m121_3"},
    (1, 2, 2): {(1, 2, 2): "m121_4", (2, 1, 2): "m121_5", (2, 2, 1): "m121_star"},
}


@dataclass(frozen=True)
class Residual:
    name: str
    word_in: tuple
    word_out: tuple
    value: ExactComplex


@dataclass(frozen=True)
class TripleResiduals:
    """Residuals of z1 Z2 zeta1 - zeta2 Z1 z2 on all words over a triple."""

    triple: tuple
    residuals: tuple

    def nonzero(self) -> list:
        return [r for r in self.residuals if not r.value.is_zero()]

    def all_zero(self) -> bool:
        return not self.nonzero()

    def by_name(self, name: str) -> ExactComplex:
        for r in self.residuals:
            if r.name == name:
                return r.value
        raise KeyError(name)


def _anomaly_on_word(z: AlphaForm, zc: AlphaForm, zeta: AlphaForm, word: tuple) -> dict:
    lhs = act_sequence([(z, 0), (zc, 1), (zeta, 0)], word)
    rhs = act_sequence([(zeta, 1), (zc, 0), (z, 1)], word)
    out = dict(lhs)
    for w, v in rhs.items():
        out[w] = out.get(w, ZERO) - v
    return {w: v for w, v in out.items()}


def cubic_residuals(z: AlphaForm, zc: AlphaForm, zeta: AlphaForm, triple: tuple) -> TripleResiduals:
    """Named residuals of the generalized braid equation on a triple (i,j,k).

    Covers the distinct-letter words for every ordering of the triple and
    the repeated-letter words of each of its three pairs, so the residuals
    vanish exactly when the width-3 anomaly vanishes on all words drawn from
    {i, j, k}.
    """
    i, j, k = triple
    if len({i, j, k}) != 3 or any(not 1 <= t <= z.n for t in triple):
        raise IndexOutOfRange(f"need three distinct letters in 1..{z.n}: {triple}")
    out = []
    # Distinct-letter words: rel1..rel5 for (i,j,k), suffixed relabellings
    # for the other orderings.
    for a, b, c in permutations(triple):
        tag = "" if (a, b, c) == triple else f"@{a}{b}{c}"
        relabel = {1: a, 2: b, 3: c}
        word_in = (a, b, c)
        diff = _anomaly_on_word(z, zc, zeta, word_in)
        for pattern, name in _RESIDUAL_NAMES[(1, 2, 3)].items():
            word_out = tuple(relabel[p] for p in pattern)
            out.append(Residual(name + tag, word_in, word_out, diff.get(word_out, ZERO)))
    # Repeated-letter words for each unordered pair inside the triple.
    for p, q in combinations(sorted(triple), 2):
        out.extend(_pair_residuals(z, zc, zeta, p, q, suffix=f"@{p}{q}"))
    return TripleResiduals(tuple(triple), tuple(out))


def _pair_residuals(z, zc, zeta, i: int, j: int, suffix: str = "") -> list:
    relabel = {1: i, 2: j}
    out = []
    for pattern_in, names in _RESIDUAL_NAMES.items():
        if 3 in pattern_in:
            continue
        word_in = tuple(relabel[p] for p in pattern_in)
        diff = _anomaly_on_word(z, zc, zeta, word_in)
        for pattern_out, name in names.items():
            word_out = tuple(relabel[p] for p in pattern_out)
            out.append(Residual(name + suffix, word_in, word_out, diff.get(word_out, ZERO)))
    return out


def anomaly(z: DenseMatrix, zc: DenseMatrix, zeta: DenseMatrix, n: int) -> DenseMatrix:
    """z1 . Z2 . zeta1 - zeta2 . Z1 . z2 as an explicit width-3 matrix."""
    for m in (z, zc, zeta):
        if m.side != n * n:
            raise RankMismatch(f"operand side {m.rows} is not {n}^2")
    z1 = shift_embed(z, 1, n)
    z2 = shift_embed(z, 2, n)
    zc1 = shift_embed(zc, 1, n)
    zc2 = shift_embed(zc, 2, n)
    zeta1 = shift_embed(zeta, 1, n)
    zeta2 = shift_embed(zeta, 2, n)
    return z1 * zc2 * zeta1 - zeta2 * zc1 * z2


@dataclass(frozen=True)
class Flag:
    holds: bool
    witness: Optional[dict] = None


@dataclass(frozen=True)
class RelationReport:
    ss_unit: Flag
    sss: Flag
    rrr: Flag
    rrs: Flag
    rss: Flag
    reverse_srr_holds: bool

    def all_hold(self) -> bool:
        return all(f.holds for f in (self.ss_unit, self.sss, self.rrr, self.rrs, self.rss))

    def flags(self) -> dict:
        return {
            "ss_unit": self.ss_unit.holds,
            "sss": self.sss.holds,
            "rrr": self.rrr.holds,
            "rrs": self.rrs.holds,
            "rss": self.rss.holds,
        }

    def to_json(self) -> dict:
        failures = []
        for name, flag in (
            ("ss_unit", self.ss_unit),
            ("sss", self.sss),
            ("rrr", self.rrr),
            ("rrs", self.rrs),
            ("rss", self.rss),
        ):
            if not flag.holds and flag.witness is not None:
                failures.append({"relation": name, **flag.witness})
        return {**self.flags(), "reverse_srr": self.reverse_srr_holds, "failures": failures}


def _check_ss_unit(s: AlphaForm) -> Flag:
    # s^2 = 1x1 splits per vertex and per edge: b_i^2 = 1, B(i,j)^2 = I.
    one = ec(1)
    for i in range(1, s.n + 1):
        if s.v(i) * s.v(i) != one:
            return Flag(False, {"vertex": i, "residual": (s.v(i) * s.v(i) - one).to_json()})
    ident = Block(one, ZERO, ZERO, one)
    for (i, j), blk in s.blocks.items():
        sq = blk.mul(blk)
        if sq != ident:
            return Flag(False, {"edge": [i, j], "equation": "block_square"})
    return Flag(True)


_SUBSTITUTIONS = {
    # relation -> (z, Z, zeta) with images substituted into z1 Z2 zeta1 = zeta2 Z1 z2
    "sss": lambda s, r: (s, s, s),
    "rrr": lambda s, r: (r, r, r),
    "rrs": lambda s, r: (r, r, s),
    "rss": lambda s, r: (r, s, s),
    "srr": lambda s, r: (s, r, r),
}


def _verify_dense(s: AlphaForm, r: AlphaForm, relation: str) -> Flag:
    n = s.n
    z, zc, zeta = (alpha_to_dense(f) for f in _SUBSTITUTIONS[relation](s, r))
    a = anomaly(z, zc, zeta, n)
    if a.is_zero():
        return Flag(True)
    (row, col), value = a.nonzero_items()[0]
    return Flag(
        False,
        {
            "word_in": list(index_to_word(col, n, 3)),
            "word_out": list(index_to_word(row, n, 3)),
            "residual": value.to_json(),
        },
    )


def _verify_subsets(s: AlphaForm, r: AlphaForm, relation: str) -> Flag:
    n = s.n
    z, zc, zeta = _SUBSTITUTIONS[relation](s, r)
    for i, j in combinations(range(1, n + 1), 2):
        for res in _pair_residuals(z, zc, zeta, i, j):
            if not res.value.is_zero():
                return Flag(
                    False,
                    {
                        "triple": [i, j],
                        "equation": res.name,
                        "residual": res.value.to_json(),
                    },
                )
    for triple in combinations(range(1, n + 1), 3):
        trip = cubic_residuals(z, zc, zeta, triple)
        bad = trip.nonzero()
        if bad:
            res = bad[0]
            return Flag(
                False,
                {
                    "triple": list(triple),
                    "equation": res.name,
                    "residual": res.value.to_json(),
                },
            )
    return Flag(True)


def verify_pair(s: AlphaForm, r: AlphaForm, method: str = "subsets") -> RelationReport:
    """Check the five presentation identities on (S, R) = (F(s), F(sigma)).

    method "dense" uses explicit width-3 matrices, "subsets" the rank-2 and
    rank-3 restrictions, "both" cross-checks that the two agree.
    """
    if s.n != r.n:
        raise RankMismatch(f"ranks differ: {s.n} vs {r.n}")
    if method not in ("dense", "subsets", "both"):
        raise ValueError(f"unknown method {method!r}")

    def run(how: str) -> RelationReport:
        checker = _verify_dense if how == "dense" else _verify_subsets
        return RelationReport(
            ss_unit=_check_ss_unit(s),
            sss=checker(s, r, "sss"),
            rrr=checker(s, r, "rrr"),
            rrs=checker(s, r, "rrs"),
            rss=checker(s, r, "rss"),
            reverse_srr_holds=checker(s, r, "srr").holds,
        )

    if method == "both":
        dense_report = run("dense")
        subset_report = run("subsets")
        if dense_report.flags() != subset_report.flags() or (
            dense_report.reverse_srr_holds != subset_report.reverse_srr_holds
        ):
            raise AssertionError(
                "dense and subset verifiers disagree: "
                f"{dense_report.flags()} vs {subset_report.flags()}"
            )
        return subset_report
    return run(method)


# ---------------------------------------------------------------------------
# Rank-2 braid families and their symmetric-exchange extensions.

N2_TAGS = ("F0", "Fslash", "Ff", "Fa", "Ffbar", "Fabar")


@dataclass(frozen=True)
class N2Type:
    """Braid-family classification of a rank-2 charge-conserving solution."""

    tag: str
    alpha: ExactComplex
    beta: Optional[ExactComplex] = None


def classify_n2(r: AlphaForm) -> N2Type:
    """Sort an invertible rank-2 braid solution into its family.

    Raises Unclassifiable when R is not of any family form (hence not a
    braid representation), NotInvertible on singular input.
    """
    if r.n != 2:
        raise RankMismatch(f"rank-2 classification on rank {r.n}")
    v1, v2 = r.v(1), r.v(2)
    blk = r.blocks[(1, 2)]
    det = blk.a * blk.d - blk.b * blk.c
    if v1.is_zero() or v2.is_zero() or det.is_zero():
        raise NotInvertible("vertex scalars and edge blocks must be invertible")
    if blk.is_diagonal():
        if blk.a == blk.d == v1 == v2:
            return N2Type("F0", v1)
        raise Unclassifiable("diagonal block must make R a scalar matrix")
    if blk.b.is_zero() or blk.c.is_zero():
        raise Unclassifiable("exactly one off-diagonal entry vanishes")
    if blk.is_antidiagonal():
        return N2Type("Fslash", v1, v2)
    if blk.d.is_zero():
        # a-type: nonzero diagonal entry = sum of vertex scalars; f-type:
        # equal vertices with an independent second parameter.  Both carry
        # bc = -(product of the two parameters).
        if blk.a == v1 + v2 and blk.b * blk.c == -(v1 * v2):
            return N2Type("Fa", v1, v2)
        if v1 == v2:
            beta = blk.a - v1
            if blk.b * blk.c == -(v1 * beta):
                return N2Type("Ff", v1, beta)
        raise Unclassifiable("block violates the a/f-type constraints")
    if blk.a.is_zero():
        if blk.d == v1 + v2 and blk.b * blk.c == -(v1 * v2):
            return N2Type("Fabar", v1, v2)
        if v1 == v2:
            beta = blk.d - v1
            if blk.b * blk.c == -(v1 * beta):
                return N2Type("Ffbar", v1, beta)
        raise Unclassifiable("block violates the abar/fbar-type constraints")
    raise Unclassifiable("both block diagonal entries are nonzero")


@dataclass(frozen=True)
class ExtensionFamily:
    """The family of symmetric exchanges S extending a rank-2 braid R.

    kind "zero": S = sign * identity, sign free.
    kind "a"/"abar": S = sign * diag(1, 1/c, c, -1).P with c locked to the
        given value.
    kind "slash": S = sign * diag(1, 1/c, c, eps).P with c and eps free.
    """

    kind: str
    c: Optional[ExactComplex] = None  # locked gauge value; None when free

    def sample_s(self, c: Optional[ExactComplex] = None, eps: int = 1, sign: int = 1) -> AlphaForm:
        one = ec(1)
        if self.kind == "zero":
            sgn = ec(sign)
            return AlphaForm.make([sgn, sgn], {(1, 2): Block(sgn, ZERO, ZERO, sgn)})
        cval = self.c if self.c is not None else (c if c is not None else one)
        rel = ec(-1) if self.kind in ("a", "abar") else ec(eps)
        sgn = ec(sign)
        return AlphaForm.make(
            [sgn, sgn * rel],
            {(1, 2): Block(ZERO, sgn * cval.inv(), sgn * cval, ZERO)},
        )


def search_extension(r: AlphaForm) -> Optional[ExtensionFamily]:
    """Find the family of S making (S, R) a rank-2 loop-braid solution.

    Returns None for the f-type families, which admit no extension.  For
    a/abar the gauge parameter of S is locked by the off-diagonal of R.
    """
    family = classify_n2(r)
    if family.tag in ("Ff", "Ffbar"):
        return None
    if family.tag == "F0":
        return ExtensionFamily("zero")
    if family.tag == "Fslash":
        return ExtensionFamily("slash")
    blk = r.blocks[(1, 2)]
    # b = A1/c locks c (and then the c entry of the block is -c A2).
    return ExtensionFamily("a" if family.tag == "Fa" else "abar", c=r.v(1) / blk.b)
