"""Composition operators C_phi on de Branges-Rovnyak spaces H(b), rational b and phi.

Typical use::

    from hbcomp import RatFunc, analyze
    res = analyze(RatFunc([0.5, -0.5]), b=RatFunc([0.5, 0.5]))
    res.verdict.hilbert_schmidt   # Tri.YES
"""

from .config import Tolerances, tolerances, use_tolerances
from .kernels import BACKEND
from .mate import MateData, mate_from_a, pythagorean_mate
from .polyrat import CPoly, RatFunc, h2_membership, h2_norm_sq
from .verdict import Tri, Verdict, analyze

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CPoly",
    "MateData",
    "RatFunc",
    "Tolerances",
    "Tri",
    "Verdict",
    "analyze",
    "h2_membership",
    "h2_norm_sq",
    "mate_from_a",
    "pythagorean_mate",
    "tolerances",
    "use_tolerances",
]
