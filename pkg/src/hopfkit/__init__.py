"""hopfkit: exact verification kernel for finite-dimensional Hopf algebra extensions."""

from ._kernel import KERNEL_NAME
from .exact_math import Cyclotomic, Matrix, SparseTensor, kron, root_of_unity, scalar_invert, solve_linear

__version__ = "0.1.0"

__all__ = [
    "KERNEL_NAME",
    "Cyclotomic",
    "Matrix",
    "SparseTensor",
    "kron",
    "root_of_unity",
    "scalar_invert",
    "solve_linear",
    "__version__",
]
