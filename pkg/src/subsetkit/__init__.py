"""Subset Sum variant solvers over prime fields.

Exact counting, hamming-weight recovery, solution enumeration,
simultaneous subset sum, subset product, and the reduction web between
them, validated throughout against brute-force and DP oracles.
"""

from ._kernel import BACKEND as KERNEL_BACKEND
from .modmath import ModPoly, PrimeField
from .ssum_hamming import SsumInstance, WeightProfile
from .simulsum import SimulInstance
from .subset_product import ProductInstance
from .reductions import UbssumInstance

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "ModPoly",
    "PrimeField",
    "SsumInstance",
    "WeightProfile",
    "SimulInstance",
    "ProductInstance",
    "UbssumInstance",
    "__version__",
]
