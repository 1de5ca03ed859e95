"""Exact symbolic engine for two-parameter quantum symmetric pairs of
super type A: root data, braid operators between presentations, the
coideal subalgebra, the type-B Hecke action on tensor space, the quasi
K-matrix, and the K-matrix realizing the zeroth Hecke generator."""

__version__ = "0.1.0"
