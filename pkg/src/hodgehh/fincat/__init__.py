"""Finite 1-categories, their functors, and the (co)limits built from them."""
from .category import CategoryError, FinCat, discrete, groupoid_pair, monoid, ordinal, poset, terminal
from .functors import MOD, SET, Bifunctor, CatFunctor, FunctorTable, constant, hom_bifunctor, tensor_bifunctor
from .limits import (KanExtension, coend_bifunctor, colimit, colimit_classes, end_as_families, end_bifunctor,
                     end_via_twisted, left_kan, limit_set, nat_transformations, twisted_restriction)
from .modules import PresentedModule, direct_sum, tensor
