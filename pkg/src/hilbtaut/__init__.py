"""Exact computations around symmetric powers of tautological bundles.

The package is organized by what each part computes:

* :mod:`hilbtaut.combinat` -- compositions, partitions, multi-index maps,
  their symmetric-group orbits and stabilizers.
* :mod:`hilbtaut.polyjet` -- truncated polynomial algebra over the
  rationals on n points of the affine plane, diagonal ideals and
  ideal-power membership by jet vanishing.
* :mod:`hilbtaut.tautops` -- higher difference operators, the stacked
  kernel systems cutting out symmetric-power sections, and the graded
  dimension oracle they are checked against.
* :mod:`hilbtaut.toeplitz` -- the banded binomial Toeplitz matrices whose
  nondegeneracy drives the two-point filtration argument.
* :mod:`hilbtaut.symrep` -- symmetric-group character arithmetic for
  exterior powers, and explicit tensor verification of the
  (k-1)-symmetrization identity.
* :mod:`hilbtaut.rroch` -- surface lattice models, Riemann-Roch, and the
  closed Euler-characteristic formulas with cross-validation.
* :mod:`hilbtaut.cli` -- command-line front end.

Everything numeric is exact: integers and fractions only, no floats.
"""

__version__ = "0.1.0"
