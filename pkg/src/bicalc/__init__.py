"""Exact bicovariant differential calculi on finite groups."""

from .calculus import CalculusError, CalculusSpec, identity_suite, make_calculus
from .exterior import (
    ExteriorAlgebra,
    WedgeCapError,
    WedgeForm,
    cartan_maurer,
    volume_and_epsilon,
    wedge_space,
)
from .funalg import FunG, delta, tangent_apply, translate, unit
from .group import Group, GroupError, build_group, group_from_table, load_cayley
from .kernels import BACKEND
from .scalar import Scalar, as_scalar

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CalculusError",
    "CalculusSpec",
    "ExteriorAlgebra",
    "FunG",
    "Group",
    "GroupError",
    "Scalar",
    "WedgeCapError",
    "WedgeForm",
    "as_scalar",
    "build_group",
    "cartan_maurer",
    "delta",
    "group_from_table",
    "identity_suite",
    "load_cayley",
    "make_calculus",
    "tangent_apply",
    "translate",
    "unit",
    "volume_and_epsilon",
    "wedge_space",
]
