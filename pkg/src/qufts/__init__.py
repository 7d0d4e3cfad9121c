"""Fourier-transform spectroscopy with undetected photons: simulation and
retrieval.

Submodules follow the measurement chain: linelist (molecular absorption)
-> optics (pair source, cavity, visibility) -> interferogram (OPD scan
with shot noise) -> fts (transform, instrument line shape) -> retrieval
(transmission, SNR, concentration fits), with config/pipeline/cli/fileio
binding the pieces into file-based workflows.
"""

from .config import RunConfig, default_config, load_config, parse_config
from .errors import QuftsError
from .fts import AmplitudeSpectrum, ApodizationWindow, apodize, ils_fwhm, ils_kernel, to_spectrum
from .interferogram import (
    DispersionConfig,
    Interferogram,
    NoiseConfig,
    ScanConfig,
    average,
    synthesize,
)
from .linelist import (
    AbsorptionSpectrum,
    GasConditions,
    LineList,
    SpectralLine,
    absorption_coefficient,
    load_linelist,
    parse_par_record,
    voigt_profile,
)
from .optics import (
    CavityConfig,
    SpdcConfig,
    Spectrum,
    TransmissionCurve,
    cavity_enhancement,
    idler_wavenumber,
    roundtrip_transmission,
    spdc_spectral_density,
    visibility,
)
from .pipeline import build_model_context, dft_aligned_grid, simulate_pair
from .retrieval import (
    FitResult,
    ModelContext,
    TransmissionSpectrum,
    fit_concentration,
    model_transmission,
    snr_100line,
    snr_scaling,
    transmission,
)

__version__ = "0.1.0"

__all__ = [
    "AbsorptionSpectrum",
    "AmplitudeSpectrum",
    "ApodizationWindow",
    "CavityConfig",
    "DispersionConfig",
    "FitResult",
    "GasConditions",
    "Interferogram",
    "LineList",
    "ModelContext",
    "NoiseConfig",
    "QuftsError",
    "RunConfig",
    "ScanConfig",
    "SpdcConfig",
    "SpectralLine",
    "Spectrum",
    "TransmissionCurve",
    "TransmissionSpectrum",
    "absorption_coefficient",
    "apodize",
    "average",
    "build_model_context",
    "cavity_enhancement",
    "default_config",
    "dft_aligned_grid",
    "fit_concentration",
    "idler_wavenumber",
    "ils_fwhm",
    "ils_kernel",
    "load_config",
    "load_linelist",
    "model_transmission",
    "parse_config",
    "parse_par_record",
    "roundtrip_transmission",
    "simulate_pair",
    "snr_100line",
    "snr_scaling",
    "spdc_spectral_density",
    "synthesize",
    "to_spectrum",
    "transmission",
    "visibility",
    "voigt_profile",
]
