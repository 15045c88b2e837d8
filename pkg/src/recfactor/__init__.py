"""Factor polynomial values through recursive sieving sequences.

Quadratic values are linked to 2x2 integer matrices, products of binary
quadratic forms and lattice points on conics.
"""

__version__ = "0.1.0"

from .polynomial import Polynomial  # noqa: E402

__all__ = ["Polynomial", "__version__"]
