"""Exact analysis of finite multiple-access channels and matroid rank functions.

Dense matroid rank tables with duals, minors and isomorphism; F2 linear
algebra and binary representability (excluded-minor and circuit criteria);
exact-rational channel models with mutual information functions; detection
and certification of integer-UMIF (extremal) channels including kernel
recovery; and quantitative concentration checks for near-extremal channels.
"""

from .channel import (
    Channel,
    JointDistribution,
    TooLarge,
    additive_noise,
    conditional_entropy_u_given_v,
    entropy_weights,
    full_input_mi,
    linear_deterministic,
    linear_form_mi,
    mif,
    mutual_information,
    single_user_joint,
    transformed_mi,
    umif,
    uniform_inputs,
)
from .extremal import (
    ExtremalCertificate,
    EquivalenceReport,
    FORM_PROFILES_2,
    Inconsistent,
    InfeasibleVector,
    NotBinary,
    NotExtremal,
    RecoveredKernel,
    StarInfeasible,
    UMIF_PROFILES_2,
    UmifRounding,
    bridge_forms_to_umif,
    bridge_umif_to_forms,
    bumac_channel,
    certify_extremal,
    integer_umif_matroid,
    linear_forms_from_umif,
    recover_kernel,
    star_feasibility,
    umif_from_linear_forms,
    verify_equivalence,
)
from .gf2 import (
    F2Matrix,
    F2Subspace,
    LabelMismatch,
    circuit_space,
    f2_rank,
    find_representation,
    is_binary_tutte,
    is_binary_whitney,
    kernel,
    standard_form,
    vector_matroid,
)
from .matroid import (
    AxiomViolation,
    Families,
    GroundTooLarge,
    Matroid,
    MinorWitness,
    PolymatroidCheck,
    SetFunction,
    contract,
    dual,
    families,
    has_minor,
    is_isomorphic,
    is_polymatroid,
    matroid_from_rank,
    rate_region_inequalities,
    restrict,
    uniform_matroid,
)
from .quasi import (
    ConcentrationReport,
    ConcentrationVariant,
    FormClassification,
    NonUniformInput,
    NotQuasiExtremal,
    PremiseViolated,
    QuasiReport,
    check_pinsker_concentration,
    near_determinism_mass,
    posterior_deviation_mass,
    quasi_integer_classify,
)

__version__ = "0.1.0"
