"""Finite-group toolkit: transversals, double cosets, middle directors,
and direct-product factor search over explicit multiplication tables."""

from .algorithms import (
    SMALLEST,
    AlgoTrace,
    ChoicePolicy,
    enumerate_all_middle_subfactors,
    enumerate_all_middle_transversals,
    enumerate_all_right_transversals,
    extend_to_middle_transversal,
    msfa,
    mta,
    rta,
)
from .errors import (
    EnumerationLimitExceeded,
    G0NotInMid,
    GroupKitError,
    GroupMismatch,
    IndexOutOfRange,
    InvalidSpec,
    MidEmpty,
    NotAGroup,
    NotASubgroup,
    ParseError,
    ScriptedChoiceInvalid,
    SizeLimitExceeded,
    TraceMismatch,
    UnknownSymbol,
)
from .groups import ElementSet, Group, GroupSpec, build_group
from .products import (
    MidCase,
    MidTag,
    classify_mid,
    double_coset,
    is_direct_pair,
    is_direct_triple,
    is_middle_direct,
    is_middle_factor,
    is_middle_transversal,
    is_right_transversal,
    mid_director,
    mid_director_subgroups,
    set_product,
)
from .words import parse_element, parse_subset

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "Group",
    "ElementSet",
    "GroupSpec",
    "build_group",
    "parse_element",
    "parse_subset",
    "set_product",
    "is_direct_pair",
    "double_coset",
    "is_middle_direct",
    "is_direct_triple",
    "mid_director",
    "mid_director_subgroups",
    "MidTag",
    "MidCase",
    "classify_mid",
    "is_right_transversal",
    "is_middle_transversal",
    "is_middle_factor",
    "ChoicePolicy",
    "SMALLEST",
    "AlgoTrace",
    "rta",
    "mta",
    "msfa",
    "extend_to_middle_transversal",
    "enumerate_all_right_transversals",
    "enumerate_all_middle_transversals",
    "enumerate_all_middle_subfactors",
    "GroupKitError",
    "InvalidSpec",
    "NotAGroup",
    "SizeLimitExceeded",
    "IndexOutOfRange",
    "GroupMismatch",
    "NotASubgroup",
    "ParseError",
    "UnknownSymbol",
    "ScriptedChoiceInvalid",
    "MidEmpty",
    "G0NotInMid",
    "TraceMismatch",
    "EnumerationLimitExceeded",
]
