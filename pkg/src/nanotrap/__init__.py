"""nanotrap: design calculations for nanoscale magnetic atom waveguides
formed by suspended current-carrying nanowires.

Single-wire trap design, the destructive-effects budget, 1D quantum-gas
characterization, and two-wire double-well design with WKB tunneling
rates. SI units and angular frequencies throughout the library; bench
units only at the CLI boundary.
"""

from .constants import (
    CODATA,
    CONSTANTS_VERSION,
    AtomSpecies,
    NanowireSpec,
    PhysicalConstants,
    default_mwnt,
    default_rb87,
    defaults_version,
    load_species,
    load_wire,
    species_from_dict,
    wire_from_dict,
)
from .doublewell import (
    DoubleWellTrap,
    Fig3Row,
    WkbResult,
    barrier_height,
    design_double,
    fig3_sweep,
    frequency_ratio,
    matched_separation,
    reference_omega0,
    tunneling_crossing,
    wkb_tunneling,
)
from .errors import (
    AdiabaticityError,
    BistabilityError,
    BracketingError,
    ConvergenceError,
    DesignError,
    NoBarrierError,
    ResonanceError,
    SingularPointError,
    WeakConfinementWarning,
)
from .magnetics import (
    BiasFields,
    WireLayout,
    bias_for_trap_line,
    dimensionless_double_potential,
    dimensionless_single_potential,
    double_minima,
    double_saddle,
    field_at,
    potential_at,
    single_minimum,
)
from .numerics import (
    ToleranceConfig,
    adaptive_integral,
    fd_hessian,
    find_root_bracketed,
)
from .onedgas import (
    CloudLength,
    GasProfile,
    a1d_from_confinement,
    characterize_gas,
    cir_position,
    classify_regime,
    cloud_length,
    g1d_from_a1d,
    max_atoms_for_wire,
    tf_density,
)
from .singlewell import (
    SingleWellTrap,
    design_from_current_and_d,
    design_from_current_and_y0,
    design_from_fields,
    escape_barrier,
    majorana_loss_rate,
    numeric_frequency_check,
)
from .stability import (
    NoiseSpectrum,
    StabilityBudget,
    StabilityReport,
    casimir_polder_scale,
    current_noise_decoherence,
    frequency_mismatch_flag,
    fundamental_mode_frequency,
    max_static_deflection,
    noise_spin_flip_rate,
    stability_report,
    static_deflection,
    thermal_sigma,
)

__version__ = "0.1.0"
