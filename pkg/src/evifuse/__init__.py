"""Evidential multi-branch classifier fusion.

Evidence vectors map to Dirichlet opinions, opinions fuse across branch
stages, and a closed-form loss stack with analytic gradients trains a
two-branch demonstration model on synthetic complementary data.
"""

__version__ = "0.1.0"

from .backend import ACTIVE as backend
from .errors import DomainError, NonFiniteLossError, ValidationError

__all__ = ["backend", "DomainError", "NonFiniteLossError", "ValidationError", "__version__"]
