"""Boolean contact algebra dualities at decidable scale.

A library and CLI for the duality pipeline between finite topological
spaces / the rational line on one side and (local) contact algebras on the
other: Stone duals, contact and cluster machinery, the bounded-ultrafilter
quotient, and the functor constructions between them, with exhaustive and
seeded property verification throughout.
"""

__version__ = "0.1.0"
