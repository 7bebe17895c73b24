"""Exact Hilbert-Kunz and beta densities of projective toric pairs."""

from .catalog import SpecError, hirzebruch, pair_from_spec, parse_shorthand, simplex
from .counting import CountTable, count_slice, count_table, f_n, g_n, hk_value
from .density import (
    DensityReport,
    HilbertDensity,
    PiecewisePolynomial,
    density_report,
    f_exact,
    g_exact,
    hilbert_density,
    integrate,
    piecewise_fit,
    product_pair,
    segre_g,
)
from .ehrhart import (
    ChamberLine,
    QuasiPolynomial,
    cell_constancy_check,
    chamber_lines,
    ehrhart_qp,
    minkowski_count,
    reciprocity_check,
    slice_coefficient_scan,
)
from .linalg import AffineLatticeFrame, hermite_normal_form, lattice_coordinates, saturated_lattice_basis
from .polytope import (
    HalfSpace,
    Polytope,
    convex_hull,
    intersect,
    lattice_points,
    minkowski_sum,
    vertex_enumeration,
)
from .region import ToricPair, boundary_measures, breakpoint_superset, build_pair, slice_region

__all__ = [name for name in dir() if not name.startswith("_")]
