"""Polynomial eigenfunctions of blow-up pencils and crack admissibility.

The package computes the integer eigenvalue families and monic polynomial
eigenfunctions of the quadratic (second-order) and quartic (fourth-order)
operator pencils produced by blow-up scaling at a multi-crack tip, decides
which crack slope configurations are admissible from the nodal sets of
eigenfunction combinations, evaluates truncated solution germs and their
boundary traces, and resolves the semilinear stationary and self-similar
profiles numerically.
"""

from .expansion import (
    BlowupCoords,
    BoundaryTrace,
    DecayFit,
    Expansion,
    NegligibilityReport,
    decay_order,
    eval_expansion,
    eval_expansion_xy,
    from_blowup,
    perturbation_negligibility,
    synthesize_boundary_trace,
    to_blowup,
)
from .nodal import (
    AdmissibilityVerdict,
    CrackConfig,
    EnumeratedConfig,
    RootSet,
    check_admissibility_bilaplace,
    check_admissibility_laplace,
    count_real_roots,
    enumerate_admissible,
    isolate_real_roots,
    transversality_check,
)
from .pencils import (
    AnalyticityVerdict,
    Eigenpair,
    InternalConsistencyError,
    KernelDimensionError,
    PencilSpec,
    ReconstructionReport,
    SLReduction,
    analyticity_filter,
    characteristic_quadratic,
    characteristic_quartic,
    eigenpair_from_json,
    eigenpair_to_json,
    pencil_residual,
    quadratic_eigenfunction,
    quadratic_pencil,
    quadratic_recursion_poly,
    quadratic_spectrum,
    quartic_eigenfunction,
    quartic_pencil,
    quartic_polynomial_kernel_degrees,
    quartic_recursion_report,
    quartic_spectrum,
    reconstruct_xy,
    sturm_liouville_check,
    verify_quartic_factorization,
)
from .polyring import (
    DiffOpTerm,
    RatPoly,
    Rational,
    op_apply,
    poly_add,
    poly_diff,
    poly_from_json,
    poly_from_text,
    poly_gcd,
    poly_mul,
    poly_to_json,
    poly_to_text,
    square_free_decomposition,
    square_free_part,
)
from .semilinear import (
    FAR_FIELD_ROOT,
    CrackCurve,
    NoProfileFoundError,
    ODEProblem,
    ProfileSolution,
    crack_curves,
    linearized_exponents,
    solve_selfsimilar,
    solve_stationary,
)

__version__ = "0.1.0"
