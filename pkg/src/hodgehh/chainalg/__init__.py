"""Exact homological algebra: Smith normal form, chain complexes, homology,
mapping fibers and homotopy limits over finite posets."""
from .complex import (
    ChainComplex,
    ChainComplexError,
    ChainMap,
    HomologyBasis,
    HomologyRecord,
    euler_from_betti,
    fiber_map,
    homology,
    induced_map,
    mapping_fiber,
    matrix_from_coo,
    matrix_to_coo,
    records_to_json,
)
from .holim import DiagramError, PosetDiagram, Totalization, comparison_to_holim, poset_holim, subsets_upto
from .smith import SmithForm, determinant, invariant_factors, rank, smith


def smith_normal_form(M, ring=None):
    """Invariant factors plus certificates for an integer (or field) matrix.

    Accepts a dense list of rows or a column-stored sparse dict together with
    explicit ``(nrows, ncols)`` via a ``(dict, shape)`` tuple.
    """
    from ..rings import ZZ

    ring = ring or ZZ
    if isinstance(M, tuple):
        sparse, (nr, nc) = M
        dense = [[0] * nc for _ in range(nr)]
        for j, col in sparse.items():
            for i, x in col.items():
                dense[i][j] = x
        M = dense
    S = smith(M, ring)
    return S.invariant_factors(ring), S
