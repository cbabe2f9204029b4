from .runner import ALGORITHMS, BASELINE_OF, DISPLAY_NAMES, AlgorithmConfig, AlgorithmResult, run_algorithm
from .selection import (nsga2_environmental_selection, nsga2_select, spea2_environmental_selection,
                        spea2_select)
from .variation import (VariationConfig, binary_tournament, polynomial_mutation, polynomial_mutation_batch,
                        sbx_batch, sbx_crossover)

__all__ = [
    "ALGORITHMS", "BASELINE_OF", "DISPLAY_NAMES", "AlgorithmConfig", "AlgorithmResult", "run_algorithm",
    "nsga2_environmental_selection", "nsga2_select", "spea2_environmental_selection", "spea2_select",
    "VariationConfig", "binary_tournament", "polynomial_mutation", "polynomial_mutation_batch",
    "sbx_batch", "sbx_crossover",
]
