"""Log-de Rham cohomology and combinatorial monodromy of nodal rational curves."""

__version__ = "0.1.0"
