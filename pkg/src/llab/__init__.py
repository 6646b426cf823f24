"""Exact arithmetic over finite extensions of Q_p: unit filtrations, Kummer lines,
discriminants and Weierstrass discriminant classes."""

__version__ = "0.1.0"
