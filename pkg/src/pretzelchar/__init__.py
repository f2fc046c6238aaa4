"""Character varieties and A-polynomials of odd three-strand pretzel knots.

The package decomposes the irreducible SL(2,C) character variety of
P(2k1+1, 2k2+1, 2k3+1) into its explicit components, validates every
component with a numerical representation oracle (reconstruction from trace
coordinates plus relation checking), and derives A-polynomial factors by
exact resultant elimination.
"""

__version__ = "0.1.0"

from . import apoly, cli, exactpoly, slc2, tracecheb, variety  # noqa: F401
