"""Constructing solution pairs.

Given a labelled shape and a parameter point, `make_recipe` decorates the
complete graph: per individual a vertex scalar for R (the county parameter)
and an S-eigenvalue +-1 (sign of the nation, reversed on the bottom
county); per edge a 2x2 block by one of three rules.

1. Different nations s < t: A = [[0, mu/C], [mu C, 0]], B = swap, with
   C read as 1/C when the edge meets the nations in reversed order.
2. Same nation, different counties, lower index i in the top county:
   A = [[alpha+beta, sgn alpha], [-sgn beta, 0]], B = swap; when i is in
   the bottom county instead, A = [[0, -sgn beta], [sgn alpha, alpha+beta]].
3. Same county: A is the county parameter times the identity, and B is the
   county's S-eigenvalue times the identity (so that B squares to the
   identity against the matching vertex scalars).

The off-diagonal entries of S are gauged to 1 throughout; other gauges are
reached with `matchcat.gauge_transform`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .combinatorics import LabelledShape, Nation, perm_action
from .errors import ConstraintViolated, ParamMismatch
from .matchcat import AlphaForm, Block, scalar_block, swap_block
from .scalars import ExactComplex, ec

ZERO = ec(0)
ONE = ec(1)


@dataclass(frozen=True)
class NationParams:
    alpha: ExactComplex
    beta: Optional[ExactComplex] = None


@dataclass(frozen=True)
class PairParams:
    """Parameters of a nation pair as the gauge-invariant pair (p, q).

    p = mu*C and q = mu/C; (mu, C) themselves are kept when known.  The
    recipe only ever consumes (p, q), so a pair whose mu is irrational in
    Q(i) still constructs exactly.
    """

    p: ExactComplex
    q: ExactComplex
    mu: Optional[ExactComplex] = None
    c_param: Optional[ExactComplex] = None

    @classmethod
    def from_mu_c(cls, mu: ExactComplex, c_param: ExactComplex) -> "PairParams":
        return cls(mu * c_param, mu / c_param, mu, c_param)

    @classmethod
    def from_pq(cls, p: ExactComplex, q: ExactComplex) -> "PairParams":
        mu = (p * q).sqrt()
        if mu is not None and not mu.is_zero():
            return cls(p, q, mu, p / mu)
        return cls(p, q)

    def reversed(self) -> "PairParams":
        # C -> 1/C swaps p and q; mu stays with the pair.
        return PairParams(self.q, self.p, self.mu, None if self.c_param is None else self.c_param.inv())


@dataclass(frozen=True)
class ParamPoint:
    """A point of the parameter space attached to a labelled shape.

    `nations[s]` belongs to the s-th nation in the shape's stored order;
    `pairs[(s, t)]` (0-based, s < t) to each unordered pair of nations.
    """

    nations: tuple
    pairs: dict

    def pair(self, s: int, t: int) -> PairParams:
        if s < t:
            return self.pairs[(s, t)]
        return self.pairs[(t, s)].reversed()

    def to_json(self) -> dict:
        nat = []
        for np in self.nations:
            nat.append(
                {
                    "alpha": np.alpha.to_json(),
                    "beta": None if np.beta is None else np.beta.to_json(),
                }
            )
        prs = []
        for (s, t), pp in sorted(self.pairs.items()):
            entry = {"s": s + 1, "t": t + 1}
            if pp.mu is not None and pp.c_param is not None:
                entry["mu"] = pp.mu.to_json()
                entry["C"] = pp.c_param.to_json()
            else:
                entry["p"] = pp.p.to_json()
                entry["q"] = pp.q.to_json()
            prs.append(entry)
        return {"nations": nat, "pairs": prs}

    @classmethod
    def from_json(cls, obj: dict) -> "ParamPoint":
        nations = []
        for entry in obj["nations"]:
            beta = entry.get("beta")
            nations.append(
                NationParams(
                    ExactComplex.from_json(entry["alpha"]),
                    None if beta is None else ExactComplex.from_json(beta),
                )
            )
        pairs = {}
        for entry in obj.get("pairs", []):
            key = (entry["s"] - 1, entry["t"] - 1)
            if "mu" in entry:
                pairs[key] = PairParams.from_mu_c(
                    ExactComplex.from_json(entry["mu"]), ExactComplex.from_json(entry["C"])
                )
            else:
                pairs[key] = PairParams.from_pq(
                    ExactComplex.from_json(entry["p"]), ExactComplex.from_json(entry["q"])
                )
        return cls(tuple(nations), pairs)


def validate_point(shape: LabelledShape, point: ParamPoint):
    nations = shape.nations
    if len(point.nations) != len(nations):
        raise ParamMismatch(
            f"{len(nations)} nations in shape, {len(point.nations)} parameter sets"
        )
    for s, (nation, np) in enumerate(zip(nations, point.nations)):
        if np.alpha.is_zero():
            raise ConstraintViolated(f"alpha of nation {s + 1} must be nonzero")
        if nation.bottom:
            if np.beta is None:
                raise ParamMismatch(f"nation {s + 1} has a bottom county but no beta")
            if np.beta.is_zero():
                raise ConstraintViolated(f"beta of nation {s + 1} must be nonzero")
            if (np.alpha + np.beta).is_zero():
                raise ConstraintViolated(f"alpha+beta of nation {s + 1} must be nonzero")
        elif np.beta is not None:
            raise ParamMismatch(f"nation {s + 1} has no bottom county yet a beta")
    want = {(s, t) for s in range(len(nations)) for t in range(s + 1, len(nations))}
    if set(point.pairs) != want:
        raise ParamMismatch("pair parameters must cover exactly the nation pairs")
    for key, pp in point.pairs.items():
        if pp.p.is_zero() or pp.q.is_zero():
            raise ConstraintViolated(f"pair parameters of {key} must be nonzero")


def make_recipe(shape: LabelledShape, point: ParamPoint) -> tuple[AlphaForm, AlphaForm]:
    """Build (S, R) for a labelled shape at a parameter point."""
    validate_point(shape, point)
    n = shape.rank
    nations = shape.nations

    where = {}  # individual -> (nation index, in_top)
    for s, nation in enumerate(nations):
        for i in nation.top:
            where[i] = (s, True)
        for i in nation.bottom:
            where[i] = (s, False)

    def sgn(s: int) -> ExactComplex:
        return ONE if shape.sign(s) == 1 else -ONE

    def eig(i: int) -> ExactComplex:
        s, in_top = where[i]
        return sgn(s) if in_top else -sgn(s)

    r_vertex, s_vertex = [], []
    for i in range(1, n + 1):
        s, in_top = where[i]
        np = point.nations[s]
        r_vertex.append(np.alpha if in_top else np.beta)
        s_vertex.append(eig(i))

    r_blocks, s_blocks = {}, {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            s, i_top = where[i]
            t, j_top = where[j]
            if s != t:
                pp = point.pair(s, t)
                r_blocks[(i, j)] = Block(ZERO, pp.q, pp.p, ZERO)
                s_blocks[(i, j)] = swap_block()
            elif i_top != j_top:
                np = point.nations[s]
                al, be, sg = np.alpha, np.beta, sgn(s)
                if i_top:
                    r_blocks[(i, j)] = Block(al + be, sg * al, -(sg * be), ZERO)
                else:
                    r_blocks[(i, j)] = Block(ZERO, -(sg * be), sg * al, al + be)
                s_blocks[(i, j)] = swap_block()
            else:
                np = point.nations[s]
                r_blocks[(i, j)] = scalar_block(np.alpha if i_top else np.beta)
                s_blocks[(i, j)] = scalar_block(eig(i))

    return (
        AlphaForm.make(s_vertex, s_blocks),
        AlphaForm.make(r_vertex, r_blocks),
    )


def random_point(shape: LabelledShape, seed: int) -> ParamPoint:
    """Deterministic small Gaussian-integer parameter point.

    Real and imaginary parts are drawn from -5..5, rejecting anything that
    violates the nonvanishing constraints.
    """
    rng = random.Random(seed)

    def draw() -> ExactComplex:
        while True:
            x = ec(rng.randint(-5, 5), rng.randint(-5, 5))
            if not x.is_zero():
                return x

    nations = []
    for nation in shape.nations:
        alpha = draw()
        beta = None
        if nation.bottom:
            beta = draw()
            while (alpha + beta).is_zero():
                beta = draw()
        nations.append(NationParams(alpha, beta))
    pairs = {}
    k = len(shape.nations)
    for s in range(k):
        for t in range(s + 1, k):
            pairs[(s, t)] = PairParams.from_mu_c(draw(), draw())
    return ParamPoint(tuple(nations), pairs)


def transport_point(shape: LabelledShape, w, point: ParamPoint):
    """Carry a parameter point along the permutation action on shapes.

    Returns (moved shape, moved point): parameters stay with their nation;
    a nation pair whose order flips has its C inverted.
    """
    moved = perm_action(w, shape)
    plus = [
        Nation.make({_ap(w, i) for i in n.top}, {_ap(w, i) for i in n.bottom})
        for n in shape.plus
    ]
    minus = [
        Nation.make({_ap(w, i) for i in n.top}, {_ap(w, i) for i in n.bottom})
        for n in shape.minus
    ]
    old_order = plus + minus
    new_pos = {}
    offset = 0
    for group, signed in ((plus, moved.plus), (minus, moved.minus)):
        index = {nation: k for k, nation in enumerate(signed)}
        for local, nation in enumerate(group):
            new_pos[offset + local] = offset + index[nation]
        offset += len(group)
    nations = [None] * len(old_order)
    for s, np in enumerate(point.nations):
        nations[new_pos[s]] = np
    pairs = {}
    for (s, t), pp in point.pairs.items():
        a, b = new_pos[s], new_pos[t]
        if a < b:
            pairs[(a, b)] = pp
        else:
            pairs[(b, a)] = pp.reversed()
    return moved, ParamPoint(tuple(nations), pairs)


def _ap(w, i: int) -> int:
    return w[i] if isinstance(w, dict) else w[i - 1]


# ---------------------------------------------------------------------------
# Rank-2 families.

N2_FAMILY_TAGS = ("F0", "Fslash", "Ff", "Fa", "Ffbar", "Fabar")


@dataclass(frozen=True)
class N2Family:
    """A member of one of the six rank-2 braid families."""

    tag: str
    alpha: ExactComplex
    beta: Optional[ExactComplex] = None
    gamma: Optional[ExactComplex] = None
    chi: Optional[ExactComplex] = None


def n2_family(fam: N2Family) -> AlphaForm:
    """The R of a rank-2 braid solution, in alpha form."""
    if fam.tag not in N2_FAMILY_TAGS:
        raise ConstraintViolated(f"unknown family tag {fam.tag!r}")
    al = fam.alpha
    if al.is_zero():
        raise ConstraintViolated("alpha must be nonzero")
    if fam.tag == "F0":
        return AlphaForm.make([al, al], {(1, 2): scalar_block(al)})
    be = fam.beta
    chi = fam.chi
    if be is None or be.is_zero() or chi is None or chi.is_zero():
        raise ConstraintViolated("beta and chi must be nonzero")
    if fam.tag == "Fslash":
        if fam.gamma is None or fam.gamma.is_zero():
            raise ConstraintViolated("gamma must be nonzero")
        blk = Block(ZERO, fam.gamma * chi, fam.gamma / chi, ZERO)
        return AlphaForm.make([al, be], {(1, 2): blk})
    if (al + be).is_zero():
        raise ConstraintViolated("alpha+beta must be nonzero outside the / family")
    if fam.tag in ("Ff", "Ffbar") and al == be:
        raise ConstraintViolated("alpha = beta belongs to the a families, not f")
    minus_ab = -(al * be) / chi
    if fam.tag in ("Ff", "Fa"):
        blk = Block(al + be, chi, minus_ab, ZERO)
    else:
        blk = Block(ZERO, chi, minus_ab, al + be)
    vertices = [al, al] if fam.tag in ("Ff", "Ffbar") else [al, be]
    return AlphaForm.make(vertices, {(1, 2): blk})


def _sigma_p(c: ExactComplex, rel: ExactComplex, sign: ExactComplex) -> AlphaForm:
    """sign * diag(1, 1/c, c, rel) . P in alpha form."""
    return AlphaForm.make(
        [sign, sign * rel],
        {(1, 2): Block(ZERO, sign * c.inv(), sign * c, ZERO)},
    )


def anof_solution(case: str, **params) -> tuple[AlphaForm, AlphaForm]:
    """A concrete rank-2 loop-braid solution from one of the four cases.

    * "I_a"    (a1, a2, c, sign=1): locked a-type pair.
    * "I_abar" (a1, a2, c, sign=1): the mirrored parameterisation.
    * "III"    (alpha, sign=1): scalar R with S = sign * identity.
    * "IV"     (a1, a2, mu, C, c, eps=1, sign=1): /-type pair.
    """
    sign = ec(params.get("sign", 1))
    if case in ("I_a", "I_abar"):
        a1, a2, c = params["a1"], params["a2"], params["c"]
        if a1.is_zero() or a2.is_zero() or c.is_zero() or (a1 + a2).is_zero():
            raise ConstraintViolated("need a1, a2, a1+a2, c all nonzero")
        s = _sigma_p(c, ec(-1), sign)
        if case == "I_a":
            blk = Block(a1 + a2, a1 / c, -(c * a2), ZERO)
        else:
            blk = Block(ZERO, a1 / c, -(c * a2), a1 + a2)
        return s, AlphaForm.make([a1, a2], {(1, 2): blk})
    if case == "III":
        alpha = params["alpha"]
        if alpha.is_zero():
            raise ConstraintViolated("alpha must be nonzero")
        s = AlphaForm.make([sign, sign], {(1, 2): scalar_block(sign)})
        return s, AlphaForm.make([alpha, alpha], {(1, 2): scalar_block(alpha)})
    if case == "IV":
        a1, a2 = params["a1"], params["a2"]
        mu, cc, c = params["mu"], params["C"], params["c"]
        eps = ec(params.get("eps", 1))
        if any(x.is_zero() for x in (a1, a2, mu, cc, c)):
            raise ConstraintViolated("need a1, a2, mu, C, c all nonzero")
        s = _sigma_p(c, eps, sign)
        blk = Block(ZERO, mu / (cc * c), mu * cc * c, ZERO)
        return s, AlphaForm.make([a1, a2], {(1, 2): blk})
    raise ConstraintViolated(f"unknown case {case!r}")
