"""Exact verification of Erdős–Ko–Rado properties for finite set families."""

from ._core import (
    Ambient,
    BudgetExhausted,
    DegenerateFamily,
    EkrError,
    Family,
    NecessaryConditionFails,
    __version__,
    check_balanced,
    check_chain,
    check_ekr,
    circle_factorization,
    decompose,
    enumerate_maximum,
    generate,
    h_copies,
    k_subsets,
    max_intersecting,
    separated_k_subsets,
    walecki,
)

__all__ = [
    "Ambient",
    "BudgetExhausted",
    "DegenerateFamily",
    "EkrError",
    "Family",
    "NecessaryConditionFails",
    "__version__",
    "check_balanced",
    "check_chain",
    "check_ekr",
    "circle_factorization",
    "decompose",
    "enumerate_maximum",
    "generate",
    "h_copies",
    "k_subsets",
    "max_intersecting",
    "separated_k_subsets",
    "walecki",
]
