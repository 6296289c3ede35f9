"""Shape decomposition into parts via visibility graphs and dominant sets."""

from shapeparts.contour import Contour, ContourError, load_contour, resample_uniform
from shapeparts.diffusion import diffuse
from shapeparts.dominant_sets import Cluster, Decomposition, extract_all
from shapeparts.pipeline import PipelineConfig, decompose, run_pipeline
from shapeparts.visibility import (
    build_visibility_matrix,
    estimate_radius,
    neighborhood_mask,
    off_diagonal_profile,
    restrict,
)

__all__ = [
    "Cluster",
    "Contour",
    "ContourError",
    "Decomposition",
    "PipelineConfig",
    "build_visibility_matrix",
    "decompose",
    "diffuse",
    "estimate_radius",
    "extract_all",
    "load_contour",
    "neighborhood_mask",
    "off_diagonal_profile",
    "resample_uniform",
    "restrict",
    "run_pipeline",
]

__version__ = "0.1.0"
