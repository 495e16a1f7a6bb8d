"""Point counts of graph hypersurfaces over finite fields.

Graph polynomials and their minors, exhaustive and recursive counting over
F_q, a symbolic reduction engine producing polynomials in q, CRT
reconstruction of such polynomials from counts, and amplitudes of scalar
field theory with momenta in F_q.
"""

__version__ = "0.1.0"

from .counting import PolySystem, count_affine, count_multilinear, count_projective_complement, graph_nbar
from .gf import FieldSpec, field_of_order, make_field
from .graphs import Multigraph, complete_graph, cycle_graph, wheel_graph
from .interpolation import QPolynomial, crt_reconstruct, zeta_function
from .polynomials import SparsePoly, dual_polynomial, graph_polynomial, parse_poly

__all__ = [
    "FieldSpec", "make_field", "field_of_order", "Multigraph", "cycle_graph", "complete_graph", "wheel_graph",
    "SparsePoly", "parse_poly", "graph_polynomial", "dual_polynomial", "PolySystem", "count_affine",
    "count_multilinear", "count_projective_complement", "graph_nbar", "QPolynomial", "crt_reconstruct",
    "zeta_function",
]
