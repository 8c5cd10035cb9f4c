"""Uniform sampling on hyperspheres and balls via sorted rejection
pairs, with classical comparison methods, statistical verification, and
a benchmark harness."""

from .bench import BenchRecord, DimensionSchedule, run_cell, run_grid, schedule
from .errors import (
    BinsTooFine,
    DegenerateInput,
    DimensionTooLarge,
    NsphereError,
    TooFewSamples,
    UnsupportedDimension,
)
from .rng import RngKind, RngStream, draw_count, rng_new
from .samplers import (
    BallPoint,
    DiskPair,
    SamplerKind,
    UnitVector,
    draw_disk_pair,
    sample,
    sample_many,
    supports,
)
from .verify import GofReport, MarginalLaw, chi_square_binned, ks_one_sample, ks_two_sample, marginal_cdf

__version__ = "0.1.0"

__all__ = [
    "BallPoint",
    "BenchRecord",
    "BinsTooFine",
    "DegenerateInput",
    "DimensionSchedule",
    "DimensionTooLarge",
    "DiskPair",
    "GofReport",
    "MarginalLaw",
    "NsphereError",
    "RngKind",
    "RngStream",
    "SamplerKind",
    "TooFewSamples",
    "UnitVector",
    "UnsupportedDimension",
    "chi_square_binned",
    "draw_count",
    "draw_disk_pair",
    "ks_one_sample",
    "ks_two_sample",
    "marginal_cdf",
    "rng_new",
    "run_cell",
    "run_grid",
    "sample",
    "sample_many",
    "schedule",
    "supports",
]
