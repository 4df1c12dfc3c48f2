"""Exact homological-algebra checkers for bound quiver algebra inputs.

The package computes, over a prime field F_p, the data needed to decide
whether the additive closure of a finite-dimensional module satisfies the
intrinsic axioms of higher cluster-tilting theory, and cross-validates every
such verdict against independent finite certificates (endomorphism-algebra
invariants, Ext vanishing, functor-category localization).
"""

from tiltbench.linalg import PrimeField

__version__ = "0.1.0"

__all__ = ["PrimeField", "__version__"]
