"""Self-mapping degrees of torus bundles and torus semi-bundles."""

from .bundle import Geometry, MonodromyClass, bundles_equivalent, classify_monodromy, geometry
from .degrees import (
    BundleSpec,
    DegreeSetDescriptor,
    Family,
    Kind,
    contains,
    descriptor,
    enumerate_degrees,
    realize,
    realizations,
    reverses_orientation,
)
from .errors import CapabilityError, FactorizationLimitError, InputError, SearchLimitError, TorusDegError
from .intmat import IDENTITY, SWAP, TAU, IntMat2, parse_matrix
from .membership import MapWitness, Membership, NoReason, Status
from .oracle import bundle_oracle, conjugator_search, semibundle_oracle
from .quadform import (
    factorize,
    minus_one_obstruction,
    minus_one_trace3_witness,
    norm_form_criterion,
    represents_norm_form,
    sol_quadratic_membership,
)
from .semibundle import (
    SemiKind,
    SemiNormalForm,
    delta,
    double_cover_monodromy,
    geometry_semibundle,
    is_also_torus_bundle,
    normal_form,
    orbit,
    semibundles_equivalent,
)

__version__ = "0.1.0"

__all__ = [
    "BundleSpec",
    "CapabilityError",
    "DegreeSetDescriptor",
    "FactorizationLimitError",
    "Family",
    "Geometry",
    "IDENTITY",
    "InputError",
    "IntMat2",
    "Kind",
    "MapWitness",
    "Membership",
    "MonodromyClass",
    "NoReason",
    "SWAP",
    "SearchLimitError",
    "SemiKind",
    "SemiNormalForm",
    "Status",
    "TAU",
    "TorusDegError",
    "bundle_oracle",
    "bundles_equivalent",
    "classify_monodromy",
    "conjugator_search",
    "contains",
    "delta",
    "descriptor",
    "double_cover_monodromy",
    "enumerate_degrees",
    "factorize",
    "geometry",
    "geometry_semibundle",
    "is_also_torus_bundle",
    "minus_one_obstruction",
    "minus_one_trace3_witness",
    "norm_form_criterion",
    "normal_form",
    "orbit",
    "parse_matrix",
    "realizations",
    "realize",
    "represents_norm_form",
    "reverses_orientation",
    "semibundle_oracle",
    "semibundles_equivalent",
    "sol_quadratic_membership",
]
