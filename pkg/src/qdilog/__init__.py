"""Exact quantum dilogarithm identities from quivers."""

from .coeffs import HalfLaurent, QRat, qrat_arith, qrat_from_text, qrat_specialize, qrat_to_text
from .qtorus import (
    QSeries,
    SkewForm,
    conj_factor_check,
    dilog,
    eval_word,
    fg_generator_image,
    kronecker_identity,
    monomial_mul,
    phi_plus_image,
    quantum_exp,
    series_inv,
    series_mul,
    shift_identity_check,
    skew_from_quiver,
    twist_involution_check,
)
from .quiver import (
    FramedQuiver,
    GreenSeq,
    Quiver,
    c_vector,
    dt_invariant,
    frame,
    frozen_iso,
    green_search,
    is_green,
    mutate,
    tropical_E,
)
from .dynkinrep import (
    CentralCharge,
    DynkinQuiver,
    dynkin_quiver,
    hom_dim,
    hom_order,
    indecomposable,
    is_generic,
    phase_lt,
    positive_roots,
    reineke_product,
    source_sequence,
    stables,
    subrep_dims,
    verify_corollary,
)
from .hall import (
    HallElement,
    IsoClass,
    aut_order,
    euler_form,
    hall_number,
    integrate,
    iso_classes,
    verify_exp_sum,
    verify_hn_identity,
)

__version__ = "0.1.0"
