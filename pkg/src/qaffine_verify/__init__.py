"""Exact verification of the RLL and Drinfeld-current realizations of the
quantum affine algebra U_q(gl(2)^) and of the Hopf structure transported
between them."""
from .dist import FormalDist, delta_dist, dist_compare, dist_mul, dist_shift
from .freealg import Gen, NCPoly, TensorPoly, nc_mul, tensor_mul, weight_truncate
from .gauss import GaussFactors, Mat2, gauss_decompose, gauss_recompose, mat_inverse, mat_mul
from .report import VerificationReport, emit_report, parse_report
from .scalar import ScalarMatrix, ScalarPoly, ScalarSeries, expand_rational, ring_arith
from .suites import SuiteConfig, run_suite

__all__ = [
    "FormalDist", "delta_dist", "dist_compare", "dist_mul", "dist_shift",
    "Gen", "NCPoly", "TensorPoly", "nc_mul", "tensor_mul", "weight_truncate",
    "GaussFactors", "Mat2", "gauss_decompose", "gauss_recompose", "mat_inverse", "mat_mul",
    "VerificationReport", "emit_report", "parse_report",
    "ScalarMatrix", "ScalarPoly", "ScalarSeries", "expand_rational", "ring_arith",
    "SuiteConfig", "run_suite",
]

__version__ = "0.1.0"
