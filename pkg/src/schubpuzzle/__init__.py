"""Puzzle rules for products of Schubert and Grothendieck classes whose
descents are (almost) separated, with polynomial oracles to check them."""
from __future__ import annotations

__version__ = "0.1.0"
