"""Charge-conserving loop braid representations over the Gaussian rationals.

Construct solution pairs from combinatorial index data, verify the
defining relations exactly, and classify arbitrary verified pairs back to
their index under the symmetric-group and diagonal-gauge symmetries.
"""

from .scalars import ExactComplex, ec
from .combinatorics import (
    Composition2,
    LabelledShape,
    Nation,
    SignedShape,
    canonical_labelling,
    count_series,
    enum_compositions2,
    enum_labelled,
    enum_multisets,
    enum_signed,
    perm_action,
    shape_of,
)
from .matchcat import (
    AlphaForm,
    Block,
    DenseMatrix,
    alpha_to_dense,
    compose,
    dense_to_alpha,
    gauge_transform,
    identity,
    is_charge_conserving,
    kron,
    monomial_decompose,
    perm_p,
    restrict,
    shift_embed,
)
from .relations import (
    RelationReport,
    TripleResiduals,
    anomaly,
    cubic_residuals,
    search_extension,
    verify_pair,
)
from .recipe import (
    N2Family,
    ParamPoint,
    anof_solution,
    make_recipe,
    n2_family,
    random_point,
)
from .classifier import (
    Classification,
    EdgeType,
    canonicalize,
    edge_type,
    interrogate,
    x_equivalent,
)

__version__ = "0.1.0"
