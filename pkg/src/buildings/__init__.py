"""Buildings as edge-colored chamber graphs: Coxeter systems, axioms, realizations, metrics, actions."""
from .building import Building, verify_axioms, enumerate_apartments
from .coxeter import CoxeterSystem, validate_matrix

__all__ = ["Building", "CoxeterSystem", "enumerate_apartments", "validate_matrix", "verify_axioms"]
