"""finsym: exact computations with finite symmetry groups.

Subpackages by theme:

- ``cyclo``     exact cyclotomic-field arithmetic (the number system)
- ``perm``      permutations, orbits, blocks, orbitals
- ``forms``     centralizer rings, determinant factorization, invariant forms
- ``born``      natural state vectors and rational Born probabilities
- ``relations`` calculus of finite relations / cellular-automaton structure
- ``dynamics``  symmetric dynamics on graphs, gauge connections, solitons
- ``pathsum``   root-of-unity path sums and the binomial spacetime model
- ``fixtures``  named groups, graphs, character tables and printed matrices
- ``cli``       the ``finsym`` command-line interface
"""

from . import errors
from .cyclo import Cyclotomic, cyclotomic_polynomial, omega, rational, recognize

__all__ = [
    "errors",
    "Cyclotomic",
    "cyclotomic_polynomial",
    "omega",
    "rational",
    "recognize",
]

__version__ = "0.1.0"
