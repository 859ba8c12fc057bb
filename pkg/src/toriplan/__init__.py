"""Topological complexity and explicit motion planners for subcomplexes of products of spheres."""

from .complex import (
    Graph,
    SimplicialComplex,
    TcReport,
    d_invariant,
    flag_complex,
    from_facets,
    full_simplex,
    is_face,
    product,
    skeleton,
    tc,
    union_closed,
    wedge,
    z_bruteforce,
    z_invariant,
)

__version__ = "0.1.0"
