"""maclab: exact verification of Macdonald-polynomial and lattice-sum
identities for type A, with a CLI front end.

All arithmetic is exact (big rationals); nothing is floating point.
"""

__version__ = "0.1.0"
