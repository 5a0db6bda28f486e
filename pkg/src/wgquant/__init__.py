"""Complete quantum description of Cartesian waveguides.

Modal fields, boundary charges and currents, gauge potentials, generalized
flux, constants of motion, and second-quantized amplitudes for parallel-plate
and rectangular guides, with closed forms verified against first-principles
numerics.

Set WGQUANT_THREADS before the first import to cap how many threads the
linear-algebra backends may use.
"""

import os as _os

# BLAS backends read their thread caps once, at load time, so this must run
# before numpy is imported for the first time anywhere in the process.
_cap = _os.environ.get("WGQUANT_THREADS")
if _cap:
    for _var in (
        "OMP_NUM_THREADS",
        "OPENBLAS_NUM_THREADS",
        "MKL_NUM_THREADS",
        "NUMEXPR_NUM_THREADS",
        "VECLIB_MAXIMUM_THREADS",
    ):
        _os.environ.setdefault(_var, _cap)
del _os, _cap

from .constants import C_LIGHT, EPSILON_0, HBAR, MU_0
from .errors import (
    DegenerateScale,
    DegenerateWavevector,
    GridTooCoarse,
    InvalidFrame,
    InvalidMode,
    OutOfCrossSection,
    StencilOutOfBounds,
    UndefinedElectrode,
    WaveguideError,
)
from .geometry import (
    DispersionPoint,
    Family,
    Geometry,
    Kind,
    ModeId,
    ModeSummary,
    cutoff_wavenumber,
    dispersion,
    dispersion_at_beta,
    enumerate_modes,
)
from .fields import (
    FieldSample,
    GVector,
    MaxwellReport,
    Quadratures,
    ReferenceFrame,
    canonical_frame,
    convert_frame,
    eval_fields,
    eval_g,
    f_quadrature,
    f_tilde_quadrature,
    maxwell_convergence,
    maxwell_residuals,
    valid_frames,
)
from .boundary import (
    Electrode,
    ElectrodeId,
    FluxField,
    PairDef,
    SurfaceDensity,
    charge_conservation_residual,
    electrode,
    facing_factor,
    flux_field,
    pair_amplitude,
    pair_definitions,
    peripheral_current_continuity,
    surface_density_from_fields,
    surface_density_from_flux,
)
from .gauge import (
    GaugeLedger,
    Parity,
    PotentialSample,
    delta_potentials,
    eval_potentials,
    flux_link_residual,
    gauge_ledger,
    lorenz_residual,
    parity,
    reconstruct_fields,
)
from .motion import (
    PROPAGATION_LAWS,
    FluxFormEnergy,
    ModalCoefficients,
    MotionConstants,
    SurfaceEnergy,
    energy_by_flux_form,
    family_propagation_law,
    flux_propagation_residual,
    modal_coefficients,
    motion_by_quadrature,
    surface_energy_integrals,
)
from .quanta import (
    LadderReport,
    QuantumAmplitudes,
    closed_form_constants,
    ladder_algebra_check,
    quantize,
    scaling_invariance_check,
    zpf_level,
    zpf_ratio,
    zpf_ratio_closed_form,
    zpf_ratio_sweep,
)
from .verify import CHECK_NAMES, FAULTS, CheckResult, run_checks

__version__ = "1.0.0"
