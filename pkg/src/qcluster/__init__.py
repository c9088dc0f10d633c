"""Quantum cluster characters of acyclic quivers, checked by point counting over F_p."""

__version__ = "0.1.0"
