"""gamow-lab: Hardy-space analysis of resonances and time-asymmetric decay.

Energy wave functions sampled on grids are split into Hardy classes,
analytically continued off the real axis, evolved under the two t >= 0
semigroups, and matched against Breit-Wigner line shapes and S-matrix
pole/background decompositions.
"""

from .errors import (ClassMismatch, ClassRequired, DecompositionInconsistent,
                     DegenerateTest, FitFailed, GamowLabError, IncompatibleGrids,
                     InsufficientGrid, InvalidArgument, NeedsFullLine,
                     OutsideSemigroup, PoleNotInLowerHalfPlane, TooCloseToAxis,
                     UndefinedLeakage)
from .grid import (FULL_LINE, H2_MINUS, H2_PLUS, HALF_LINE, ROLE_OBSERVABLE,
                   ROLE_STATE, UNKNOWN, EnergyGrid, SampledWaveFunction,
                   inner_product, l2_norm, lorentzian_tail_bound,
                   make_halfline_grid, make_line_grid)
from .hardy import (CONVENTION, FrequencySpectrum, HalfPlanePoint, extend,
                    fourier_transform, hardy_leakage, inverse_fourier_transform,
                    norm_profile, project_minus, project_plus)
from .evolution import (HEISENBERG_OBSERVABLE, SCHRODINGER_STATE,
                        EvolutionRequest, born_probability, causality_leak,
                        evolve_observable, evolve_state)
from .gamow import (DecaySeries, GamowState, decay_curve, eigenvalue_defect,
                    make_gamow, survival_amplitude, truncated_gamow)
from .resonance import (BreitWignerParams, FitReport, bw_amplitude,
                        bw_cross_section, fit_pole, read_lineshape_csv)
from .smatrix import (DecompositionResult, SMatrixModel,
                      pole_background_decomposition, single_pole_smatrix,
                      smatrix_element)

__version__ = "1.0.0"

__all__ = [
    "GamowLabError", "InvalidArgument", "IncompatibleGrids", "NeedsFullLine",
    "UndefinedLeakage", "ClassMismatch", "ClassRequired", "TooCloseToAxis",
    "PoleNotInLowerHalfPlane", "InsufficientGrid", "OutsideSemigroup",
    "DegenerateTest", "FitFailed", "DecompositionInconsistent",
    "EnergyGrid", "SampledWaveFunction", "inner_product", "l2_norm",
    "make_line_grid", "make_halfline_grid", "lorentzian_tail_bound",
    "FULL_LINE", "HALF_LINE", "ROLE_STATE", "ROLE_OBSERVABLE",
    "H2_PLUS", "H2_MINUS", "UNKNOWN",
    "CONVENTION", "FrequencySpectrum", "HalfPlanePoint", "fourier_transform",
    "inverse_fourier_transform", "project_plus", "project_minus",
    "hardy_leakage", "extend", "norm_profile",
    "SCHRODINGER_STATE", "HEISENBERG_OBSERVABLE", "EvolutionRequest",
    "evolve_state", "evolve_observable", "born_probability", "causality_leak",
    "GamowState", "DecaySeries", "make_gamow", "truncated_gamow",
    "survival_amplitude", "decay_curve", "eigenvalue_defect",
    "BreitWignerParams", "FitReport", "bw_amplitude", "bw_cross_section",
    "fit_pole", "read_lineshape_csv",
    "SMatrixModel", "DecompositionResult", "single_pole_smatrix",
    "smatrix_element", "pole_background_decomposition",
]
