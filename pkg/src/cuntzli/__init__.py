"""Exact combinatorial model of the Cuntz-Li algebra of a Euclidean domain."""
from .clopen import (
    ClopenSet,
    affine_image,
    affine_preimage,
    boolean_combine,
    congruence_set,
    domain_set,
    equals,
    from_coset,
    parse_clopen,
)
from .dynamics import (
    Certificate,
    DomainClass,
    Membership3,
    ProfiniteApprox,
    certify_not_fixed,
    coherent_family_count,
    domain_classify,
    orbit_translation,
    parse_cylinder,
    restrict_to_domain,
    rho_contains,
    theta_apply,
    verify_certificate,
)
from .errors import (
    CuntzLiError,
    DivisionByZero,
    EmptyTarget,
    FieldDegenerate,
    InsufficientPrecision,
    IsIdentity,
    NoWitnessAtDepth,
    NotAProjection,
    NotDivisible,
    NotDivisorClosed,
    NotInDomain,
    ParseError,
    UndefinedGcd,
    ZeroModulus,
    ZeroMultiplier,
)
from .group import GroupElement, NormalForm, from_triple, g_inv, g_mul, normal_form, parse_group
from .maps import (
    AffinePartialMap,
    adjoint,
    as_projection,
    compose,
    gen_S,
    gen_S_star,
    gen_U,
    pi_from_triple,
    pi_general,
    pi_of,
)
from .relations import (
    CLMonomial,
    GeneratorWord,
    GroupWord,
    VerificationReport,
    check_CE_intertwine,
    eval_word,
    expectation_E,
    expectation_Theta,
    parse_monomial,
    verify_CL,
    verify_partial_rep,
)
from .rings import F2, F2T, RINGS, ZI, QuotientClass, Ring, Z, divmod_, gcd, get_ring, project, residues

__version__ = "0.1.0"
