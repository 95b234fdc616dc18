"""Cohomology tables of the Deligne-Lusztig varieties X_{n,d} for GL_n(q) and
brute-force checks of their modular structure on Brauer line algebras."""

__version__ = "0.1.0"
