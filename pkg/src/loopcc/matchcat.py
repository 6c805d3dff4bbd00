"""The charge-conserving matrix category at degree 2, and its calculus.

Conventions, fixed once and used everywhere downstream:

* Words index tensor bases with the earlier letters varying fastest, so the
  flat index of (i1,...,iw) over rank N is sum_k (i_k - 1) N^(k-1).  The
  Kronecker product follows the same rule (first factor fast).
* A degree-2 charge-conserving matrix is encoded as an `AlphaForm`: one
  scalar per vertex i (the |ii> entry) and one 2x2 block per edge i<j of the
  complete graph.  The block [[a, b], [c, d]] lives on the ordered basis
  (|ji>, |ij>) -- forced by the flat ordering, under which |ji> comes first.
  Every sign convention downstream depends on this choice.

The alpha form is canonical; dense matrices are derived views.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

from .errors import (
    NotChargeConserving,
    NotInjective,
    SizeMismatch,
    ZeroGaugeFactor,
)
from .scalars import ExactComplex, ec

ZERO = ec(0)
ONE = ec(1)


def word_to_index(word: Iterable[int], n: int) -> int:
    idx = 0
    weight = 1
    for letter in word:
        idx += (letter - 1) * weight
        weight *= n
    return idx


def index_to_word(idx: int, n: int, width: int) -> tuple:
    out = []
    for _ in range(width):
        out.append(idx % n + 1)
        idx //= n
    return tuple(out)


class Block(NamedTuple):
    """Edge block [[a, b], [c, d]] on basis (|ji>, |ij>) for the edge i<j."""

    a: ExactComplex
    b: ExactComplex
    c: ExactComplex
    d: ExactComplex

    @classmethod
    def from_rows(cls, rows) -> "Block":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    def rows(self):
        return [[self.a, self.b], [self.c, self.d]]

    def antitranspose(self) -> "Block":
        """Transpose across the anti-diagonal: [[d, c], [b, a]]."""
        return Block(self.d, self.c, self.b, self.a)

    def is_diagonal(self) -> bool:
        return self.b.is_zero() and self.c.is_zero()

    def is_antidiagonal(self) -> bool:
        return self.a.is_zero() and self.d.is_zero()

    def mul(self, other: "Block") -> "Block":
        return Block(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )


def scalar_block(x: ExactComplex) -> Block:
    return Block(x, ZERO, ZERO, x)


def swap_block(x: ExactComplex = ONE) -> Block:
    return Block(ZERO, x, x, ZERO)


@dataclass(frozen=True, eq=False)
class AlphaForm:
    """Rank-N degree-2 charge-conserving morphism in vertex/edge encoding."""

    n: int
    vertex: tuple
    blocks: dict  # (i, j) with i < j -> Block

    def __post_init__(self):
        if len(self.vertex) != self.n:
            raise SizeMismatch(f"need {self.n} vertex scalars, got {len(self.vertex)}")
        expected = {(i, j) for i in range(1, self.n + 1) for j in range(i + 1, self.n + 1)}
        if set(self.blocks) != expected:
            raise SizeMismatch("need exactly one block per edge of K_N")

    @classmethod
    def make(cls, vertex, blocks) -> "AlphaForm":
        return cls(len(vertex), tuple(vertex), dict(blocks))

    def v(self, i: int) -> ExactComplex:
        return self.vertex[i - 1]

    def block(self, i: int, j: int) -> Block:
        """Block of the edge {i, j}, antitransposed when called with i > j."""
        if i < j:
            return self.blocks[(i, j)]
        return self.blocks[(j, i)].antitranspose()

    def edges(self):
        return sorted(self.blocks)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlphaForm):
            return NotImplemented
        return (
            self.n == other.n
            and self.vertex == other.vertex
            and self.blocks == other.blocks
        )

    def to_json(self) -> dict:
        return {
            "N": self.n,
            "vertex": [x.to_json() for x in self.vertex],
            "edges": [
                {
                    "i": i,
                    "j": j,
                    "block": [[x.to_json() for x in row] for row in self.blocks[(i, j)].rows()],
                }
                for i, j in self.edges()
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "AlphaForm":
        vertex = [ExactComplex.from_json(x) for x in obj["vertex"]]
        blocks = {}
        for edge in obj["edges"]:
            rows = [[ExactComplex.from_json(x) for x in row] for row in edge["block"]]
            blocks[(edge["i"], edge["j"])] = Block.from_rows(rows)
        form = cls.make(vertex, blocks)
        if form.n != obj["N"]:
            raise SizeMismatch("declared N disagrees with vertex count")
        return form


def act_word(form: AlphaForm, word: tuple, pos: int) -> dict:
    """Apply the degree-2 morphism at letter positions (pos, pos+1) of a word.

    Returns {resulting word: coefficient}; at most two entries.  This is the
    ket calculus: on |ij> with i<j the matrix acts by d|ij> + b|ji>, on |ji>
    by a|ji> + c|ij>, and on |ii> by the vertex scalar.
    """
    i, j = word[pos], word[pos + 1]
    if i == j:
        return {word: form.v(i)}
    swapped = word[:pos] + (j, i) + word[pos + 2 :]
    if i < j:
        blk = form.blocks[(i, j)]
        return {word: blk.d, swapped: blk.b}
    blk = form.blocks[(j, i)]
    return {word: blk.a, swapped: blk.c}


def act_sequence(forms_positions, word: tuple) -> dict:
    """Apply (form, position) pairs right-to-left to a basis word."""
    vec = {word: ONE}
    for form, pos in reversed(forms_positions):
        nxt: dict = {}
        for w, coeff in vec.items():
            for w2, k in act_word(form, w, pos).items():
                if k.is_zero():
                    continue
                acc = nxt.get(w2)
                val = coeff * k if acc is None else acc + coeff * k
                nxt[w2] = val
        vec = {w: v for w, v in nxt.items() if not v.is_zero()}
    return vec


class DenseMatrix:
    """An exact matrix with entries indexed by flat word indices.

    Semantically a full rows x cols array; zero entries are simply not
    stored.  Exact arithmetic makes results independent of evaluation order.
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Optional[dict] = None):
        self.rows = rows
        self.cols = cols
        self.data = {} if data is None else data

    @property
    def side(self) -> int:
        if self.rows != self.cols:
            raise SizeMismatch("matrix is not square")
        return self.rows

    @classmethod
    def identity(cls, side: int) -> "DenseMatrix":
        return cls(side, side, {(k, k): ONE for k in range(side)})

    @classmethod
    def from_rows(cls, rows) -> "DenseMatrix":
        data = {}
        for r, row in enumerate(rows):
            for c, x in enumerate(row):
                if not x.is_zero():
                    data[(r, c)] = x
        return cls(len(rows), len(rows[0]), data)

    def entry(self, r: int, c: int) -> ExactComplex:
        return self.data.get((r, c), ZERO)

    def set_entry(self, r: int, c: int, x: ExactComplex):
        if x.is_zero():
            self.data.pop((r, c), None)
        else:
            self.data[(r, c)] = x

    def is_zero(self) -> bool:
        return not self.data

    def __eq__(self, other) -> bool:
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self.data == other.data

    def __add__(self, other: "DenseMatrix") -> "DenseMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise SizeMismatch("shape mismatch in add")
        data = dict(self.data)
        for key, val in other.data.items():
            acc = data.get(key)
            new = val if acc is None else acc + val
            if new.is_zero():
                data.pop(key, None)
            else:
                data[key] = new
        return DenseMatrix(self.rows, self.cols, data)

    def __sub__(self, other: "DenseMatrix") -> "DenseMatrix":
        return self + other.scale(ec(-1))

    def scale(self, x: ExactComplex) -> "DenseMatrix":
        if x.is_zero():
            return DenseMatrix(self.rows, self.cols)
        return DenseMatrix(self.rows, self.cols, {k: x * v for k, v in self.data.items()})

    def __mul__(self, other: "DenseMatrix") -> "DenseMatrix":
        return compose(self, other)

    def transpose(self) -> "DenseMatrix":
        return DenseMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.data.items()})

    def nonzero_items(self):
        return sorted(self.data.items())

    def to_json(self) -> dict:
        side = self.side
        return {
            "side": side,
            "triplets": [[r, c, v.to_json()] for (r, c), v in self.nonzero_items()],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "DenseMatrix":
        side = obj["side"]
        m = cls(side, side)
        for r, c, v in obj["triplets"]:
            m.set_entry(r, c, ExactComplex.from_json(v))
        return m


def compose(a: DenseMatrix, b: DenseMatrix) -> DenseMatrix:
    """Exact matrix product a.b (zero entries skipped)."""
    if a.cols != b.rows:
        raise SizeMismatch(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    b_by_row: dict = {}
    for (r, c), v in b.data.items():
        b_by_row.setdefault(r, []).append((c, v))
    out: dict = {}
    for (r, k), va in a.data.items():
        for c, vb in b_by_row.get(k, ()):
            key = (r, c)
            prod = va * vb
            acc = out.get(key)
            out[key] = prod if acc is None else acc + prod
    return DenseMatrix(a.rows, b.cols, {k: v for k, v in out.items() if not v.is_zero()})


def identity(side: int) -> DenseMatrix:
    return DenseMatrix.identity(side)


def kron(a: DenseMatrix, b: DenseMatrix) -> DenseMatrix:
    """Kronecker product with the first factor's index varying fastest."""
    data = {}
    for (ra, ca), va in a.data.items():
        for (rb, cb), vb in b.data.items():
            data[(ra + rb * a.rows, ca + cb * a.cols)] = va * vb
    return DenseMatrix(a.rows * b.rows, a.cols * b.cols, data)


def perm_p(n: int) -> DenseMatrix:
    """The degree-2 letter swap: P|ij> = |ji>."""
    m = DenseMatrix(n * n, n * n)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            m.set_entry(word_to_index((j, i), n), word_to_index((i, j), n), ONE)
    return m


def alpha_to_dense(form: AlphaForm) -> DenseMatrix:
    n = form.n
    m = DenseMatrix(n * n, n * n)
    for i in range(1, n + 1):
        k = word_to_index((i, i), n)
        m.set_entry(k, k, form.v(i))
    for (i, j), blk in form.blocks.items():
        ji = word_to_index((j, i), n)
        ij = word_to_index((i, j), n)
        m.set_entry(ji, ji, blk.a)
        m.set_entry(ji, ij, blk.b)
        m.set_entry(ij, ji, blk.c)
        m.set_entry(ij, ij, blk.d)
    return m


def dense_to_alpha(m: DenseMatrix, n: int) -> AlphaForm:
    """Inverse of alpha_to_dense; rejects entries off the allowed positions."""
    if m.side != n * n:
        raise SizeMismatch(f"side {m.rows} is not {n}^2")
    allowed = set()
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            allowed.add((word_to_index((i, j), n), word_to_index((j, i), n)))
            allowed.add((word_to_index((i, j), n), word_to_index((i, j), n)))
    for (r, c) in m.data:
        if (r, c) not in allowed:
            raise NotChargeConserving(
                f"entry at {index_to_word(r, n, 2)},{index_to_word(c, n, 2)}"
            )
    vertex = [m.entry(word_to_index((i, i), n), word_to_index((i, i), n)) for i in range(1, n + 1)]
    blocks = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            ji = word_to_index((j, i), n)
            ij = word_to_index((i, j), n)
            blocks[(i, j)] = Block(m.entry(ji, ji), m.entry(ji, ij), m.entry(ij, ji), m.entry(ij, ij))
    return AlphaForm.make(vertex, blocks)


def shift_embed(m: DenseMatrix, position: int, n: int) -> DenseMatrix:
    """Place a degree-2 operator at position 1 or 2 of a degree-3 space."""
    if m.side != n * n:
        raise SizeMismatch(f"side {m.rows} is not {n}^2")
    if position == 1:
        return kron(m, DenseMatrix.identity(n))
    if position == 2:
        return kron(DenseMatrix.identity(n), m)
    raise SizeMismatch(f"position must be 1 or 2, got {position}")


def is_charge_conserving(m: DenseMatrix, n: int, width: int) -> bool:
    """True iff every nonzero entry joins words that are letter-permutations."""
    if m.side != n**width:
        raise SizeMismatch(f"side {m.rows} is not {n}^{width}")
    for (r, c) in m.data:
        if sorted(index_to_word(r, n, width)) != sorted(index_to_word(c, n, width)):
            return False
    return True


def restrict_form(form: AlphaForm, psi) -> AlphaForm:
    """Pull back along an injective map psi: {1..M} -> {1..N}.

    The new entry at words (v, w) is the old entry at (psi v, psi w); when
    psi reverses the order of a pair the edge block is transposed across the
    anti-diagonal.
    """
    if isinstance(psi, dict):
        mapping = dict(psi)
    else:
        mapping = {i + 1: v for i, v in enumerate(psi)}
    m = len(mapping)
    if sorted(mapping) != list(range(1, m + 1)):
        raise NotInjective(f"domain must be 1..{m}")
    if len(set(mapping.values())) != m:
        raise NotInjective("map is not injective")
    if any(not 1 <= v <= form.n for v in mapping.values()):
        raise NotInjective(f"image must lie in 1..{form.n}")
    vertex = [form.v(mapping[v]) for v in range(1, m + 1)]
    blocks = {}
    for v in range(1, m + 1):
        for w in range(v + 1, m + 1):
            blocks[(v, w)] = form.block(mapping[v], mapping[w])
    return AlphaForm.make(vertex, blocks)


def restrict(pair, psi):
    """Apply the restriction functor to a pair of alpha forms."""
    s, r = pair
    return (restrict_form(s, psi), restrict_form(r, psi))


def normalize_gauge_map(m, n: int) -> dict:
    """Complete a partial {edge: scalar} map with 1s; reject zero factors."""
    full = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            full[(i, j)] = ONE
    for (i, j), val in dict(m).items():
        key = (i, j) if i < j else (j, i)
        if key not in full:
            raise SizeMismatch(f"edge {key} outside rank {n}")
        if val.is_zero():
            raise ZeroGaugeFactor(f"gauge factor 0 on edge {key}")
        full[key] = val if i < j else val.inv()
    return full


def gauge_transform(form: AlphaForm, m) -> AlphaForm:
    """Scale b by m and c by 1/m on each edge; the X-symmetry action.

    Equals conjugation of the dense form by the diagonal matrix with 1 at
    |ji> and m_ij at |ij> for each edge i<j (and 1 at each |ii>).
    """
    factors = normalize_gauge_map(m, form.n)
    blocks = {}
    for (i, j), blk in form.blocks.items():
        f = factors[(i, j)]
        blocks[(i, j)] = Block(blk.a, f * blk.b, blk.c * f.inv(), blk.d)
    return AlphaForm.make(form.vertex, blocks)


def gauge_conjugator(m, n: int) -> DenseMatrix:
    """The dense diagonal X realizing gauge_transform as X^-1 . M . X."""
    factors = normalize_gauge_map(m, n)
    x = DenseMatrix.identity(n * n)
    for (i, j), f in factors.items():
        k = word_to_index((i, j), n)
        x.set_entry(k, k, f)
    return x


def monomial_decompose(form: AlphaForm) -> tuple[DenseMatrix, DenseMatrix]:
    """Split M = Delta . 1 + D . P into two diagonal factors.

    Delta carries the block diagonals (zeros on |ii>); D carries the vertex
    scalars and the block off-diagonals.
    """
    n = form.n
    delta = DenseMatrix(n * n, n * n)
    d = DenseMatrix(n * n, n * n)
    for i in range(1, n + 1):
        k = word_to_index((i, i), n)
        d.set_entry(k, k, form.v(i))
    for (i, j), blk in form.blocks.items():
        ji = word_to_index((j, i), n)
        ij = word_to_index((i, j), n)
        delta.set_entry(ji, ji, blk.a)
        delta.set_entry(ij, ij, blk.d)
        d.set_entry(ji, ji, blk.b)
        d.set_entry(ij, ij, blk.c)
    return delta, d


def swap_offword_diagonal(d: DenseMatrix, n: int) -> DenseMatrix:
    """Exchange the |ij> and |ji> diagonal entries (D -> D^- in D.P = P.D^-)."""
    out = DenseMatrix(n * n, n * n)
    for (r, c), v in d.data.items():
        if r != c:
            raise SizeMismatch("input must be diagonal")
        word = index_to_word(r, n, 2)
        k = word_to_index((word[1], word[0]), n)
        out.set_entry(k, k, v)
    return out
