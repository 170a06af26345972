"""Right congruences on finite semigroups and bounded fragments of infinite ones."""

from ._kernels import BACKEND
from .errors import *  # noqa: F401,F403
from .semigroup import FiniteSemigroup, validate_table

__all__ = ["BACKEND", "FiniteSemigroup", "validate_table"]
