"""Arithmetic layer: octonion orders, E8 shells, cubes, Jordan algebra, theta coefficients, Weyl invariants.

Every module here is pure; the only I/O is the optional shell cache used by
`ShellStore`.

Reference: J. H. Conway, D. A. Smith, "On Quaternions and Octonions" (2003)
"""

from .cubes import (
    Cube,
    OrbitInvariants,
    TripleSL2,
    act,
    cube_forms,
    discriminant,
    is_projective,
    normalize,
    orbit_invariants,
)
from .fano import COXETER_BASIS, FANO_LINES, OrderBasis
from .forms import (
    BinaryQuadraticForm,
    NarrowClass,
    QuadraticRing,
    QuadraticRingKind,
    bqf_reduce,
    class_group,
    compose,
    narrow_product,
    quad_ring,
)
from .jordan import FreudenthalElement, JordanElement, omega_element, restrict_to_cube
from .lattice import Shell, ShellStore, enumerate_shell, theta_series
from .octonion import (
    IsometryTriple,
    Octonion,
    hermitian_d6,
    isotopy_triple_check,
    nu_elements,
    oct_bilinear,
    oct_conj,
    oct_mul,
    oct_norm,
    oct_trace,
    oct_trilinear,
)
from .order import OrderReport, verify_order
from .split import SplitOctonion, split_conj, split_mul, split_norm
from .theta import (
    EisensteinSeries,
    QTStructure,
    RhoResult,
    coxeter_qt,
    cube_coefficient,
    e4_coeff,
    enumerate_rank1_psd,
    kim_coeff,
    qt_from_cube,
    rho,
    sigma3,
)
from .weyl import (
    InvariantRep,
    RootSystem,
    SkewInvariant,
    harmonic_project,
    invariant_eval,
    laplacian_check,
    power_sum_eval,
    reflect,
    skew_eval,
)

__all__ = [
    # Octonions
    "COXETER_BASIS",
    "FANO_LINES",
    "IsometryTriple",
    "Octonion",
    "OrderBasis",
    "OrderReport",
    "SplitOctonion",
    "hermitian_d6",
    "isotopy_triple_check",
    "nu_elements",
    "oct_bilinear",
    "oct_conj",
    "oct_mul",
    "oct_norm",
    "oct_trace",
    "oct_trilinear",
    "split_conj",
    "split_mul",
    "split_norm",
    "verify_order",
    # Lattice shells
    "Shell",
    "ShellStore",
    "enumerate_shell",
    "theta_series",
    # Cubes and forms
    "BinaryQuadraticForm",
    "Cube",
    "NarrowClass",
    "OrbitInvariants",
    "QuadraticRing",
    "QuadraticRingKind",
    "TripleSL2",
    "act",
    "bqf_reduce",
    "class_group",
    "compose",
    "cube_forms",
    "discriminant",
    "is_projective",
    "narrow_product",
    "normalize",
    "orbit_invariants",
    "quad_ring",
    # Jordan algebra
    "FreudenthalElement",
    "JordanElement",
    "omega_element",
    "restrict_to_cube",
    # Theta coefficients
    "EisensteinSeries",
    "QTStructure",
    "RhoResult",
    "coxeter_qt",
    "cube_coefficient",
    "e4_coeff",
    "enumerate_rank1_psd",
    "kim_coeff",
    "qt_from_cube",
    "rho",
    "sigma3",
    # Weyl invariants
    "InvariantRep",
    "RootSystem",
    "SkewInvariant",
    "harmonic_project",
    "invariant_eval",
    "laplacian_check",
    "power_sum_eval",
    "reflect",
    "skew_eval",
]
