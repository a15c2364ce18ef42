"""Cohomology of unordered configuration spaces C_n(M) from the cohomology ring of M.

Main entry points:

- ``pdalgebra``: Poincare duality algebras (built-in rings, JSON ring files).
- ``e1``: the E1 term with its symmetric group action (brute-force oracle).
- ``cnh``: the invariant complex C_n^H, its product and the map into E1.
- ``cohomology``: Betti numbers, representatives and multiplication tables.
- ``cli``: the ``ctconfig`` command.
"""

from .cnh import CnH, CombinedComplex, matchings, p_r_count
from .cohomology import CochainComplex, betti, cnh_complex, e1_invariant_complex, ring_table
from .e1 import E1
from .fields import GF, QQ, Field, parse_field
from .pdalgebra import PDAlgebra, RingError, builtin_ring, load_ring, ring_from_json

__all__ = [
    "CnH", "CombinedComplex", "matchings", "p_r_count",
    "CochainComplex", "betti", "cnh_complex", "e1_invariant_complex", "ring_table",
    "E1", "GF", "QQ", "Field", "parse_field",
    "PDAlgebra", "RingError", "builtin_ring", "load_ring", "ring_from_json",
]

__version__ = "0.1.0"
