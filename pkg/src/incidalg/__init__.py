"""Exact-arithmetic engine for incidence algebras of finite posets.

Builds interval bialgebras from posets modulo compatible interval
relations, machine-checks the (co)algebra and compatibility axioms, and
computes convolution inverses, Mobius functions and antipodes -- all over
arbitrary-precision rationals.
"""

from .algebra import (
    AxiomCheck,
    AxiomReport,
    FiniteAlgebra,
    FiniteBialgebra,
    FiniteCoalgebra,
    LinearOperator,
    check_algebra,
    check_coalgebra,
    check_mweak,
    check_strong,
    complex_algebra_fixture,
    complex_coalgebra_fixture,
    convolution_unit,
    convolve_ops,
    diagonal_coalgebra,
    grouplike_elements,
    grouplike_independent,
    is_cocommutative,
    is_commutative,
    matrix_bialgebra,
    opposite_algebra,
    opposite_bialgebra,
    opposite_coalgebra,
    quaternion_fixture,
    solve_antipode,
    tensor_bialgebra,
    tensor_operator,
)
from .errors import (
    BoundExceeded,
    DimensionMismatch,
    EngineError,
    IncompatibleRelation,
    InternalConsistencyError,
    LabelStructureError,
    OrderError,
)
from .incidence import (
    IncidenceFunction,
    check_atom_additivity,
    check_hat_homomorphism,
    function_product,
    hat,
    mobius,
    star,
    star_inverse,
    unit_function,
    zeta,
)
from .interval_bialgebra import (
    IntervalBialgebra,
    build_interval_bialgebra,
    check_interval_product_condition,
    comult_constants,
    hopf_square,
    hopf_square_class_level,
)
from .linalg import (
    DenseMatrix,
    Rational,
    SparseTensor,
    SparseVector,
    format_rational,
    parse_rational,
    rational_normalize,
    solve_linear,
)
from .morphisms import (
    ClassMap,
    check_pullback_morphism,
    dual_pullback,
    extension_along,
    refinement_projection,
    squarefree_restriction,
)
from .posets import (
    Interval,
    Poset,
    all_intervals,
    antichain_with_zero,
    atoms,
    boolean_lattice,
    chain,
    divisor_lattice,
    interval_elements,
    linear_extension,
    poset_from_covers,
    subset_poset,
)
from .relations import (
    CompatibilityVerdict,
    IntervalRelation,
    check_compatibility,
    check_delta_compatible,
    check_nabla_compatible,
    check_unitary,
    delta_bijection,
    find_nabla_incompatible_poset,
    relation_from_key,
    relation_from_partition,
)
from .series import (
    TruncatedDirichletSeries,
    TruncatedPowerSeries,
    bernoulli,
    classical_mobius,
    dirichlet_inverse,
    dirichlet_mul,
    dirichlet_series,
    incidence_to_series,
    mobius_by_factorization,
    power_series,
    ps_inverse,
    ps_mul,
)

__version__ = "0.1.0"
