"""Exact-arithmetic toolkit for periodic Delaunay decompositions of Z^g,
section-space (stratum) dimensions, secondary-cone certificates, and the
stable-curve dual-graph pipeline."""

from .linalg import Matrix, rank, kernel_basis, ldlt_signature
from .polytope import Cell, convex_hull
from .decomposition import PeriodicDecomposition, Wall
from .delaunay import (delaunay_decomposition, verify_empty_sphere,
                       window_radius, enumerate_window)
from .sheaf import (StratumReport, SectionSpace, lhat_dim, h0_general,
                    h0_simplicial, h0_pullback, volume_upper_bound_check)
from .seccone import ConeCertificate, secondary_cone, et_detect
from .graphs import (DualGraph, betti, graphic_form, planarity,
                     torelli_report, stable_corpus)
from .moment import WeightedSupport, moment_point

__version__ = "0.1.0"
