"""Exact computation of transformed Hopf algebras End_g U_xi(g) over F_p."""

from __future__ import annotations

__version__ = "0.1.0"
