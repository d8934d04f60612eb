"""Volumes of classical supermanifolds, with independent Grassmann-algebra oracles."""
from .grassmann import GrassmannElement, GrassmannError, berezin_integrate
from .special import AnalyticValue, PoleError, barnes_g, gamma, log_gamma, reciprocal_gamma
from .superlinalg import SuperMatrix, berezinian, supertranspose
from .volumes import (
    FAMILIES,
    ManifoldSpec,
    ParameterError,
    SuperDimension,
    VolumeValue,
    cp_volume,
    gaussian_factor,
    grassmannian_volume,
    normalized_value,
    normalized_volume,
    sphere_volume,
    stiefel_volume,
    stiefel_volume_product,
    unitary_volume,
    volume,
)

__version__ = "0.1.0"

__all__ = [
    "GrassmannElement",
    "GrassmannError",
    "berezin_integrate",
    "AnalyticValue",
    "PoleError",
    "barnes_g",
    "gamma",
    "log_gamma",
    "reciprocal_gamma",
    "SuperMatrix",
    "berezinian",
    "supertranspose",
    "FAMILIES",
    "ManifoldSpec",
    "ParameterError",
    "SuperDimension",
    "VolumeValue",
    "cp_volume",
    "gaussian_factor",
    "grassmannian_volume",
    "normalized_value",
    "normalized_volume",
    "sphere_volume",
    "stiefel_volume",
    "stiefel_volume_product",
    "unitary_volume",
    "volume",
]
