"""Exact computation of third-order integrability obstructions for
degree -1 homogeneous planar potentials r^-1 h(e^{i theta})."""

__version__ = "0.1.0"
