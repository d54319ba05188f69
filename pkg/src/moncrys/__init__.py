"""Monomial crystal combinatorics for simply-laced root systems.

The package covers Nakajima's monomial crystal and its Kashiwara operators,
product monomial crystals built from per-node parameter multisets, the
pairing-based membership test, highest-weight enumeration by multiset
inclusion, the type-A flag model, and the explicit minuscule formulas.
"""

from .cartan import (
    DynkinDiagram,
    OrbitElement,
    build_diagram,
    chi,
    height,
    minuscule_orbit,
    weight_to_root,
    weyl_dim,
)
from .crystal import (
    Crystal,
    classify_params,
    fundamental,
    generate_closure,
    minuscule_monomial,
    product_crystal,
    tau_check,
)
from .errors import (
    CapExceeded,
    ContainmentViolation,
    CosetMismatch,
    MonomialCrystalError,
    NotAnElement,
    NotDecomposable,
    NotInRootLattice,
    NotMinuscule,
    ParityViolation,
    SizeMismatch,
    UnknownDiagram,
)
from .hw import (
    HalfIntPoly,
    HwProblem,
    chain_decompose,
    enumerate_highest_weights,
    finite_dim_certificate,
    finite_dim_test,
    g_gamma,
    g_poly_path,
    hw_condition,
    hw_problem,
)
from .monomial import (
    Monomial,
    ParamSet,
    decompose_S,
    e_tilde,
    eps_phi,
    f_tilde,
    is_highest,
    is_highest_weight,
    mset,
    param_set,
    t_multisets,
    weight,
    y_param,
    y_var,
    z_factor,
    z_of_msets,
)
from .regularity import (
    ConditionElement,
    condition_elements,
    e_pairing,
    enumerate_by_regularity,
    find_violation,
    is_regular,
)
from .typea import (
    Flag,
    all_flags,
    flag_e,
    flag_f,
    flag_to_monomial,
    verify_column_embedding,
    verify_flag_isomorphism,
)

__version__ = "0.1.0"
