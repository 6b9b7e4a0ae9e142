"""Finite truncated simplicial sets and the constructions built on them."""
from .core import (SimplexRef, SimplicialError, SimplicialMap, SimplicialSet, codegeneracy, coface,
                   compose, identity_map, surjections)
from .models import (DegreeMap, degree_map, nerve, nerve_simplex, point, standard_circle, standard_simplex,
                     standard_sphere)
from .products import ProductSet, alpha_subcomplex, normalize, off_base, power, product, product_map, projection
from .twisted import (TwistedSet, check_twisted, doubled, doubling_is_functorial, fiber_vertices, hom_projection,
                      nerve_comparison, twisted)
