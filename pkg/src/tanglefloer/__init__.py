"""Combinatorial tangle invariants over the two-element field.

The library builds sliced tangle diagrams, enumerates their generators,
assembles the bigraded structure maps by two independent routes, and
reduces the results to graded homology tables.
"""

__version__ = "0.1.0"
