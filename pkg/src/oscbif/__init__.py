"""Bifurcation analysis for -Delta u = lam f(u) with oscillatory nonnegative f."""

from .exceptions import (ConfigError, DegenerateBranch, FamilyWithoutZeros, NonpositiveGap, OscbifError,
                         SingularAtPeak, TooFewPoints)
from .nonlinearity import (Family, Multiplier, Nonlinearity, ZeroStructure, check_condition_global,
                           check_condition_local, classify_limits, eval_F, eval_f, zeros)
from .quadrature import HnAnalysis, QuadratureResult, fhat, hn, hn_infimum, oscillatory_integral
from .timemap import (BifurcationBranch, BranchPoint, LambdaSequence, branch, lambda_n_sequence, lambda_of_nu,
                      nonexistence_threshold, profile, solutions_at_lambda)
from .radial import lambda_bar, lambda_upper_sequence, reduced_interval, subsolution_profile
from .asymptotics import classify, divergence_check, fit_exponent

__version__ = "0.1.0"
