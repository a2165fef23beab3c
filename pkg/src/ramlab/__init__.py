"""Exact ramification invariants of local function fields and abelian covers of P^1 over finite fields."""

__version__ = "0.1.0"
