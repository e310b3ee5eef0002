"""Light leaves bases for morphisms between Bott-Samelson bimodules, with a Hecke algebra oracle."""

from .coxeter import CoxeterMatrix
from .polyring import CartanRealization, Polynomial

__all__ = ["CoxeterMatrix", "CartanRealization", "Polynomial"]
__version__ = "0.1.0"
