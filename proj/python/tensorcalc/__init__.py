"""Symbolic tensor calculus sessions driven by the tcalc command language."""

from ._tensorcalc import Session, TensorError, simplify

__all__ = ["Session", "TensorError", "simplify"]
