"""Linear canonical transforms, fractional transform-domain multipliers,
their critical-limit verification lab, and a cascaded multi-image cipher."""

from .cipher import (
    Ciphertext,
    KeyBundle,
    PhasePair,
    PlainSet,
    cascade_encrypt,
    decrypt,
    encrypt,
    generate_phase_masks,
    modulate_phases,
    phase_correction,
    stream_generator,
)
from .errors import (
    CRCError,
    DeterminantError,
    DimensionMismatch,
    DomainError,
    FormatError,
    KeyIntegrityError,
    LcrpError,
    NonFiniteError,
    OutOfBounds,
    QuadratureNonConvergence,
    RangeError,
    SingularSweepPoint,
    ZeroBError,
)
from .estimators import LinearCanonicalTransform2D, PhaseCascadeCipher, RieszPotential2D
from .imageio import LoadedImage, load_image, save_image
from .keyfile import load_ciphertext, load_keys, save_ciphertext, save_keys
from .lct import (
    ComplexGrid,
    Grid1D,
    LCTParams,
    Matrix2,
    chirp_grid,
    ilct_2d,
    inverse_matrix,
    lct_1d,
    lct_2d,
    make_matrix,
)
from .limits import (
    GratingSpec,
    LimitReport,
    Polygon,
    critical_limit_suite,
    fresnel_incomplete,
    fresnel_profile,
    gamma_norm,
    grating_divergence_probe,
    grating_lcrp_bound,
    grating_lcrp_profile,
    polygon_limit_experiment,
    riesz_indicator,
    sector_potential,
    write_limit_reports,
)
from .metrics import (
    CorrelationReport,
    SweepResult,
    adjacent_correlation,
    chi_square_uniformity,
    global_correlation,
    histogram,
    histogram_l1,
    key_sweep_beta,
    key_sweep_matrix,
    mse,
    noise_attack,
    occlusion_attack,
    occlusion_presets,
    to_gray255,
)
from .potentials import (
    SymbolGrid,
    apply_lclo,
    apply_lcrp,
    laplacian_symbol,
    lcrp_direct,
    log_potential_direct,
    riesz_symbol,
    symbol_multiply_in_lct_domain,
)
from .presets import (
    demo_stage_params,
    high_sensitivity_stage_params,
    low_gain_stage_params,
)

__version__ = "0.1.0"
