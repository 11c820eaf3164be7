"""Independent brute-force oracles.

Everything in this package is written from scratch against the underlying
module categories (F2-linear algebra, quiver representations, modules over
the dual numbers) and never imports the package under test. Expected values
in the test suite are frozen from these computations.
"""
