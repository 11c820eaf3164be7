"""Finitely presented additive categories with extension structure.

Subpackages:

- ``fincat``: additive category core (objects, block-matrix morphisms,
  composition, isomorphism testing, ideal quotients, enumeration).
- ``extri``: extension tables, realizations, axiom checking, exact functors.
- ``genstruct``: generators producing verified structures from abelian,
  triangulated, split, and ideal-quotient presentations.
- ``thick``: thick-subcategory analysis (``L``/``R`` classes, biresolving and
  percolating detection, structure lemma verification).
- ``locengine``: localization of a structure at a morphism class, with
  condition reports, certification, and the induced-functor machinery.
- ``cli``: the ``.excat`` text format and the ``excat`` command-line driver.
"""

__all__ = ["fincat", "extri", "genstruct", "thick", "locengine", "cli"]
