"""Exact Upsilon, tau and friends for knot Floer complexes over F2[U]."""

from .cfk import CfkComplex, Generator, builtin, dual, hfk_hat, tensor
from .exact import PLFunction
from .links import LinkComplex, upsilon_set
from .upsilon import UpsilonResult, nu_minus, phi, tau, upsilon_at

__version__ = "0.1.0"

__all__ = [
    "CfkComplex", "Generator", "LinkComplex", "PLFunction", "builtin", "dual", "hfk_hat",
    "UpsilonResult", "nu_minus", "phi", "tau", "tensor", "upsilon_at", "upsilon_set",
]
