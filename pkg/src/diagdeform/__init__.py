"""Exact-arithmetic workbench for deformations of diagrams of commutative
algebras: punctured-sphere function algebras and their cohomology, a
parametric Groebner deformation criterion, q-Weyl arithmetic, the formal
isomorphism between the Weyl algebra and its q-deformation, star products,
and cochain complexes over diagrams of algebras.
"""

__version__ = "0.1.0"
