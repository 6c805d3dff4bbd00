"""Hand-checked reference forms shared across the suite.

Block helpers follow the edge-block convention of `loopcc.matchcat`:
[[a, b], [c, d]] acts on the ordered pair (|ji>, |ij>) for an edge i < j.
"""

from loopcc.combinatorics import LabelledShape, Nation
from loopcc.matchcat import AlphaForm, Block, scalar_block, swap_block
from loopcc.recipe import NationParams, PairParams, ParamPoint
from loopcc.scalars import ec

ZERO = ec(0)
ONE = ec(1)


def typ_same(x) -> Block:
    """Same-county block of R: the county parameter times the identity."""
    return scalar_block(x)


def typ_a(al, be) -> Block:
    """Top-first a-block in a plus nation."""
    return Block(al + be, al, -be, ZERO)


def typ_ax(al, be) -> Block:
    """Top-second a-block in a plus nation."""
    return Block(ZERO, -be, al, al + be)


def typ_ay(al, be) -> Block:
    """Top-first a-block in a minus nation."""
    return Block(al + be, -al, be, ZERO)


def typ_s(mu, c) -> Block:
    """Inter-nation block [[0, mu/C], [mu C, 0]]."""
    return Block(ZERO, mu / c, mu * c, ZERO)


def point_one_nation(al, be) -> ParamPoint:
    return ParamPoint((NationParams(al, be),), {})


def point_two_nations(n1: NationParams, n2: NationParams, mu, c) -> ParamPoint:
    return ParamPoint((n1, n2), {(0, 1): PairParams.from_mu_c(mu, c)})


# --- rank-3 worked examples -------------------------------------------------

def shape_12_3() -> LabelledShape:
    """Plus nation with top {1,2} and bottom {3}."""
    return LabelledShape.make([Nation.make({1, 2}, {3})], [])


def pair_12_3(al, be):
    s = AlphaForm.make(
        [ONE, ONE, -ONE],
        {(1, 2): scalar_block(ONE), (1, 3): swap_block(), (2, 3): swap_block()},
    )
    r = AlphaForm.make(
        [al, al, be],
        {(1, 2): typ_same(al), (1, 3): typ_a(al, be), (2, 3): typ_a(al, be)},
    )
    return s, r


def shape_13_2() -> LabelledShape:
    """Plus nation with top {1,3} and bottom {2}."""
    return LabelledShape.make([Nation.make({1, 3}, {2})], [])


def pair_13_2(al, be):
    s = AlphaForm.make(
        [ONE, -ONE, ONE],
        {(1, 2): swap_block(), (1, 3): scalar_block(ONE), (2, 3): swap_block()},
    )
    r = AlphaForm.make(
        [al, be, al],
        {(1, 2): typ_a(al, be), (1, 3): typ_same(al), (2, 3): typ_ax(al, be)},
    )
    return s, r


def pair_13_2_broken(al, be, sign=1):
    """The same shape with the wrongly oriented (2,3) block; not a solution."""
    s = AlphaForm.make(
        [ONE, -ONE, ONE],
        {(1, 2): swap_block(), (1, 3): scalar_block(ONE), (2, 3): swap_block(ec(sign))},
    )
    r = AlphaForm.make(
        [al, be, al],
        {(1, 2): typ_a(al, be), (1, 3): typ_same(al), (2, 3): typ_a(al, be)},
    )
    return s, r


def shape_minus_12_3() -> LabelledShape:
    """Minus nation with top {1,2} and bottom {3}."""
    return LabelledShape.make([], [Nation.make({1, 2}, {3})])


def pair_minus_12_3(al, be):
    s = AlphaForm.make(
        [-ONE, -ONE, ONE],
        {(1, 2): scalar_block(-ONE), (1, 3): swap_block(), (2, 3): swap_block()},
    )
    r = AlphaForm.make(
        [al, al, be],
        {(1, 2): typ_same(al), (1, 3): typ_ay(al, be), (2, 3): typ_ay(al, be)},
    )
    return s, r


def pair_minus_12_3_cautionary(al, be):
    """Minus shape with the plus-nation interior signs; breaks one relation."""
    s = AlphaForm.make(
        [-ONE, -ONE, ONE],
        {(1, 2): scalar_block(-ONE), (1, 3): swap_block(), (2, 3): swap_block()},
    )
    r = AlphaForm.make(
        [al, al, be],
        {(1, 2): typ_same(al), (1, 3): typ_a(al, be), (2, 3): typ_a(al, be)},
    )
    return s, r


def shape_1over2_3() -> LabelledShape:
    """Plus nation top {1} bottom {2}, minus nation {3}."""
    return LabelledShape.make([Nation.make({1}, {2})], [Nation.make({3})])


def pair_1over2_3(al1, be1, al2, mu, c):
    s = AlphaForm.make(
        [ONE, -ONE, -ONE],
        {(1, 2): swap_block(), (1, 3): swap_block(), (2, 3): swap_block()},
    )
    r = AlphaForm.make(
        [al1, be1, al2],
        {(1, 2): typ_a(al1, be1), (1, 3): typ_s(mu, c), (2, 3): typ_s(mu, c)},
    )
    return s, r


def shape_3over2_1() -> LabelledShape:
    """Plus nation top {3} bottom {2}, minus nation {1}."""
    return LabelledShape.make([Nation.make({3}, {2})], [Nation.make({1})])


def pair_3over2_1(al1, be1, al2, mu, c):
    s = AlphaForm.make(
        [-ONE, -ONE, ONE],
        {(1, 2): swap_block(), (1, 3): swap_block(), (2, 3): swap_block()},
    )
    r = AlphaForm.make(
        [al2, be1, al1],
        {(1, 2): typ_s(mu, c.inv()), (1, 3): typ_s(mu, c.inv()), (2, 3): typ_ax(al1, be1)},
    )
    return s, r


# --- rank-3 one-parameter families ------------------------------------------
# Each builder returns (shape, point, S, R): the reference alpha forms at
# the given slot values together with the parameter point reproducing them.

def family_squares3(signs, a1, a2, a3, mu12, c12, mu13, c13, mu23, c23):
    """Three singleton nations with the given sign pattern."""
    plus = [Nation.make({i}) for i, sg in zip((1, 2, 3), signs) if sg == 1]
    minus = [Nation.make({i}) for i, sg in zip((1, 2, 3), signs) if sg == -1]
    shape = LabelledShape.make(plus, minus)
    s = AlphaForm.make(
        [ec(signs[0]), ec(signs[1]), ec(signs[2])],
        {(1, 2): swap_block(), (1, 3): swap_block(), (2, 3): swap_block()},
    )
    r = AlphaForm.make(
        [a1, a2, a3],
        {(1, 2): typ_s(mu12, c12), (1, 3): typ_s(mu13, c13), (2, 3): typ_s(mu23, c23)},
    )
    # nation position of each individual after the plus-first sort
    pos = {}
    for k, nation in enumerate(shape.nations):
        pos[min(nation.top)] = k
    alphas = {1: a1, 2: a2, 3: a3}
    nations = [None, None, None]
    for i in (1, 2, 3):
        nations[pos[i]] = NationParams(alphas[i])
    pairs = {}
    for (i, j), (mu, c) in (((1, 2), (mu12, c12)), ((1, 3), (mu13, c13)), ((2, 3), (mu23, c23))):
        s_idx, t_idx = pos[i], pos[j]
        pairs[(min(s_idx, t_idx), max(s_idx, t_idx))] = PairParams.from_mu_c(
            mu, c if s_idx < t_idx else c.inv()
        )
    return shape, ParamPoint(tuple(nations), pairs), s, r


def family_box_then_two(sign1, a1, a2, mu, c):
    """Singleton nation {1} (sign free) plus a one-county pair nation {2,3}.

    Both cross edges join the same nation pair, so they share (mu, C)."""
    box = Nation.make({1})
    two = Nation.make({2, 3})
    s = AlphaForm.make(
        [ec(sign1), ONE, ONE],
        {(1, 2): swap_block(), (1, 3): swap_block(), (2, 3): scalar_block(ONE)},
    )
    r = AlphaForm.make(
        [a1, a2, a2],
        {(1, 2): typ_s(mu, c), (1, 3): typ_s(mu, c), (2, 3): typ_same(a2)},
    )
    if sign1 == 1:
        shape = LabelledShape.make([box, two], [])
        point = ParamPoint(
            (NationParams(a1), NationParams(a2)), {(0, 1): PairParams.from_mu_c(mu, c)}
        )
    else:
        shape = LabelledShape.make([two], [box])
        point = ParamPoint(
            (NationParams(a2), NationParams(a1)),
            {(0, 1): PairParams.from_mu_c(mu, c.inv())},
        )
    return shape, point, s, r


def family_box_oneone(minus_pair: bool, a1, a2, a3, mu, c):
    """Singleton {1} plus a two-county nation top {2} bottom {3}."""
    box = Nation.make({1})
    oneone = Nation.make({2}, {3})
    if minus_pair:
        shape = LabelledShape.make([box], [oneone])
        s_vertex = [ONE, -ONE, ONE]
        block23 = typ_ay(a2, a3)
    else:
        shape = LabelledShape.make([box, oneone], [])
        s_vertex = [ONE, ONE, -ONE]
        block23 = typ_a(a2, a3)
    s = AlphaForm.make(
        s_vertex,
        {(1, 2): swap_block(), (1, 3): swap_block(), (2, 3): swap_block()},
    )
    r = AlphaForm.make(
        [a1, a2, a3],
        {(1, 2): typ_s(mu, c), (1, 3): typ_s(mu, c), (2, 3): block23},
    )
    point = ParamPoint(
        (NationParams(a1), NationParams(a2, a3)), {(0, 1): PairParams.from_mu_c(mu, c)}
    )
    return shape, point, s, r


def family_three(sign, a1):
    """One nation with a single county {1,2,3}."""
    nation = Nation.make({1, 2, 3})
    shape = LabelledShape.make(*([[nation], []] if sign == 1 else [[], [nation]]))
    sg = ec(sign)
    s = AlphaForm.make(
        [sg, sg, sg],
        {(1, 2): scalar_block(sg), (1, 3): scalar_block(sg), (2, 3): scalar_block(sg)},
    )
    r = AlphaForm.make(
        [a1, a1, a1],
        {(1, 2): typ_same(a1), (1, 3): typ_same(a1), (2, 3): typ_same(a1)},
    )
    return shape, ParamPoint((NationParams(a1),), {}), s, r


def family_two_one(a1, a3):
    """One nation, top {1,2} and bottom {3}; same structure as pair_12_3."""
    shape = shape_12_3()
    s = AlphaForm.make(
        [ONE, ONE, -ONE],
        {(1, 2): scalar_block(ONE), (1, 3): swap_block(), (2, 3): swap_block()},
    )
    r = AlphaForm.make(
        [a1, a1, a3],
        {(1, 2): typ_same(a1), (1, 3): typ_a(a1, a3), (2, 3): typ_a(a1, a3)},
    )
    return shape, point_one_nation(a1, a3), s, r


def family_one_two(a1, a2):
    """One nation, top {1} and bottom {2,3}.

    The bottom-county pair (2,3) has S-eigenvalue -1 on both ends, so its
    identity block carries that sign (B squares to the identity against the
    matching vertex scalars).
    """
    shape = LabelledShape.make([Nation.make({1}, {2, 3})], [])
    s = AlphaForm.make(
        [ONE, -ONE, -ONE],
        {(1, 2): swap_block(), (1, 3): swap_block(), (2, 3): scalar_block(-ONE)},
    )
    r = AlphaForm.make(
        [a1, a2, a2],
        {(1, 2): typ_a(a1, a2), (1, 3): typ_a(a1, a2), (2, 3): typ_same(a2)},
    )
    return shape, point_one_nation(a1, a2), s, r
