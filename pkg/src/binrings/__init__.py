"""binrings: exact arithmetic for binary rings, weakly divisible rings, and
the ultra-weakly-divisible coefficient-box sieve."""

__version__ = "0.1.0"

from .forms import BinaryForm, discriminant, resultant, translate, reverse, content, primitive_part
from .sympoly import symbolic_disc, DiscStructure
from .modp import factor_modp, double_root_profile, count_H, singular_density
from .binring import canonical_basis_ring, ring_disc, ideal_bases, RingPresentation
from .weakdiv import (
    WeakDivWitness,
    MaxWitness,
    find_witness,
    weakly_divisible_ring,
    is_uwd,
    max_witness,
)
from .localdata import (
    dedekind_kummer,
    classify_order,
    small_prime_feasibility,
    enumerate_pseudo_maximal,
    count_restricted_sudo_maximal,
)
from .reduce import (
    gram_profile,
    is_normally_minkowski_reduced,
    rho_f,
    translation_matrix,
    canonical_representative,
)
from .sieve import SieveConfig, run_sieve, enumerate_box, presieve, merge_reports, weighted_count

__all__ = [
    "BinaryForm",
    "discriminant",
    "resultant",
    "translate",
    "reverse",
    "content",
    "primitive_part",
    "symbolic_disc",
    "DiscStructure",
    "factor_modp",
    "double_root_profile",
    "count_H",
    "singular_density",
    "canonical_basis_ring",
    "ring_disc",
    "ideal_bases",
    "RingPresentation",
    "WeakDivWitness",
    "MaxWitness",
    "find_witness",
    "weakly_divisible_ring",
    "is_uwd",
    "max_witness",
    "dedekind_kummer",
    "classify_order",
    "small_prime_feasibility",
    "enumerate_pseudo_maximal",
    "count_restricted_sudo_maximal",
    "gram_profile",
    "is_normally_minkowski_reduced",
    "rho_f",
    "translation_matrix",
    "canonical_representative",
    "SieveConfig",
    "run_sieve",
    "enumerate_box",
    "presieve",
    "merge_reports",
    "weighted_count",
]
