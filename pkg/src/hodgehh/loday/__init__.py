"""The Loday construction of an augmented algebra over a simplicial set."""
from .algebra import (AlgebraError, AlgModule, AugAlgebra, augmentation_module, dual_numbers, free_module, ground,
                      parse_algebra, polynomial, truncated_polynomial)
from .construction import (BudgetExceeded, LodayComplex, along_map, loday_complex, loday_with_coefficients,
                           multiply_along)
from .filtration import (FiltrationStage, circle_positions, from_hochschild, leibniz_defect, multiplicativity_check,
                         quotient_above, shuffle_product, shuffles, to_hochschild, weight_filtration, weight_layer)
