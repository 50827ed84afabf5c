from .errors import ConfigError, DomainError, InvalidSystemError, PrecisionExhaustedError
from .geronimus import GGSystem, make_generic_gg, make_jacobi_gg
from .jacobi import JacobiEndpointTable, JacobiParams, jacobi_system
from .opsys import OrthoSystem, QuadratureRule
from .polycore import Poly, working_precision
from .sobolev import SobolevParams, SobolevSystem

__all__ = [
    "ConfigError",
    "DomainError",
    "GGSystem",
    "InvalidSystemError",
    "JacobiEndpointTable",
    "JacobiParams",
    "OrthoSystem",
    "Poly",
    "PrecisionExhaustedError",
    "QuadratureRule",
    "SobolevParams",
    "SobolevSystem",
    "jacobi_system",
    "make_generic_gg",
    "make_jacobi_gg",
    "working_precision",
]
