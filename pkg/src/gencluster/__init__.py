"""Generalized cluster complexes and m-divisible noncrossing partitions.

Exact constructions for finite crystallographic root systems, with checks of
the noncrossing face criterion and of the F-triangle / M-triangle identity.
"""
from .cluster import (
    ClusterComplex, ComplexSummary, cluster_complex, compatible, enumerate_faces,
    face_by_ncm_criterion, m_compatible, positive_subcomplex_facets,
)
from .coxeter import GroupElement, absolute_leq, absolute_length, coxeter_element, reflection
from .noncrossing import NCLattice, NCmPoset, build_nc, build_ncm, is_el_labeling
from .poly import BiPoly
from .roots import ColoredRoot, RootSystem, build_root_system, catalan_number, parabolic_subsystem
from .triangles import f_triangle, lhs_transform, m_triangle, rhs_transform, verify_fm

__version__ = "0.1.0"
