"""Torsion growth in homology of cyclic covers of right-angled Coxeter manifolds."""

__version__ = "0.1.0"
