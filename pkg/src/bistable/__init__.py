"""Exact Z2 cohomology engine for bistable constraint systems."""

from .catalog import SystemSpec, build_system, kinds
from .cells import CellComplex, DeltaComplex, Subcomplex, triangulate
from .cohomology import (
    CohomologyBasis,
    RelativeClass,
    cohomology,
    connecting,
    cup_product,
    relative_cohomology,
    seam,
    spanning_forest,
)
from .covers import (
    Aperture,
    ConfigTorsor,
    DoubleCover,
    DualApertureConfig,
    build_cover,
    circuit_monodromy,
    cover_triviality,
    dual_config_torsor,
    exchange_loop,
    make_aperture,
    monodromy,
    slide_aperture,
    transport_config,
)
from .flux import (
    FluxState,
    GameSession,
    find_potential,
    new_session,
    reachable,
    sector,
    toggle,
)
from .gf2 import BitMatrix, BitVector, kernel_basis, quotient_basis, rank, solve_affine
from .systems import (
    Classification,
    CouplingSystem,
    ExtendedCoupling,
    Infeasibility,
    SectionSet,
    classify,
    extend_coupling,
    holonomy,
    move_defect,
    solve_sections,
    total_curvature,
    twist_decompose,
)

__all__ = [
    "BitMatrix",
    "BitVector",
    "rank",
    "solve_affine",
    "kernel_basis",
    "quotient_basis",
    "CellComplex",
    "Subcomplex",
    "DeltaComplex",
    "triangulate",
    "CohomologyBasis",
    "RelativeClass",
    "cohomology",
    "relative_cohomology",
    "connecting",
    "cup_product",
    "seam",
    "spanning_forest",
    "CouplingSystem",
    "Classification",
    "ExtendedCoupling",
    "SectionSet",
    "Infeasibility",
    "holonomy",
    "solve_sections",
    "classify",
    "twist_decompose",
    "extend_coupling",
    "total_curvature",
    "move_defect",
    "DoubleCover",
    "Aperture",
    "ConfigTorsor",
    "DualApertureConfig",
    "transport_config",
    "build_cover",
    "cover_triviality",
    "monodromy",
    "make_aperture",
    "slide_aperture",
    "circuit_monodromy",
    "dual_config_torsor",
    "exchange_loop",
    "FluxState",
    "GameSession",
    "find_potential",
    "sector",
    "reachable",
    "toggle",
    "new_session",
    "SystemSpec",
    "build_system",
    "kinds",
]
