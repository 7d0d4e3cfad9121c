"""Fourier-transform analysis: apodization, spectra, instrument line shape.

Magnitude spectra are used throughout (no phase correction): the quadratic
spectral phase added by the crystal dispersion rotates each spectral
component but leaves the magnitude envelope untouched, and any remaining
instrument phase cancels in the sample/reference quotient downstream.

The discrete transform uses the orthonormal convention, so for any input
counts c and zero_fill_factor = 1 Parseval reads

    sum(c^2) = sum(psd) = mean(psd) * N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NonUniformAxis
from .interferogram import Interferogram
from .linelist import uniform_grid_step

_4LN2 = 4.0 * math.log(2.0)
# half-max abscissa of sin(x)/x
_SINC_HALF_MAX = 1.8954942670339809


@dataclass(frozen=True)
class ApodizationWindow:
    """Gaussian (FWHM in OPD units) or boxcar window centered at OPD = 0."""

    kind: str = "gaussian"
    fwhm_opd_cm: float | None = 0.68

    def __post_init__(self):
        if self.kind not in ("gaussian", "boxcar"):
            raise ValueError(f"unknown window kind {self.kind!r}")
        if self.kind == "gaussian":
            if self.fwhm_opd_cm is None or self.fwhm_opd_cm <= 0.0:
                raise ValueError("gaussian window needs a positive FWHM")

    def values(self, opd_cm: np.ndarray) -> np.ndarray:
        opd_cm = np.asarray(opd_cm, dtype=float)
        if self.kind == "boxcar":
            return np.ones_like(opd_cm)
        return np.exp(-_4LN2 * (opd_cm / self.fwhm_opd_cm) ** 2)


@dataclass(frozen=True)
class AmplitudeSpectrum:
    """Two-sided magnitude spectrum of an interferogram.

    grid holds all N_padded DFT bins at step 1/(N_padded * opd_step);
    bins above the Nyquist wavenumber 1/(2 * opd_step) are the conjugate
    mirror of the physical band.  psd = amplitude^2 is kept for display.
    """

    grid: np.ndarray
    amplitude: np.ndarray
    opd_step_cm: float
    meta: dict = field(default_factory=dict)

    @property
    def psd(self) -> np.ndarray:
        return self.amplitude**2

    @property
    def nyquist_cm1(self) -> float:
        return 0.5 / self.opd_step_cm


def apodize(ifg: Interferogram, win: ApodizationWindow) -> Interferogram:
    """Subtract the DC mean, then window about OPD = 0.

    Removing the mean first isolates the interference-modulated part; the
    result may be negative and is no longer "detected counts".
    """
    counts = ifg.counts - float(np.mean(ifg.counts))
    counts = counts * win.values(ifg.opd_cm)
    meta = dict(ifg.meta)
    meta["kind"] = "apodized"
    meta["window"] = win.kind
    if win.kind == "gaussian":
        meta["window_fwhm_opd_cm"] = win.fwhm_opd_cm
    return Interferogram(
        opd_cm=ifg.opd_cm, counts=counts, scan=ifg.scan, noise=ifg.noise, meta=meta
    )


def to_spectrum(ifg: Interferogram, zero_fill_factor: int = 4) -> AmplitudeSpectrum:
    """Orthonormal DFT magnitude of the counts over the OPD axis.

    Zero filling interpolates the spectral bins (it adds no resolution);
    the wavenumber of bin k is k / (N_padded * opd_step).
    """
    if zero_fill_factor < 1 or int(zero_fill_factor) != zero_fill_factor:
        raise ValueError("zero_fill_factor must be an integer >= 1")
    try:
        step = uniform_grid_step(ifg.opd_cm)
    except Exception as exc:
        raise NonUniformAxis(str(exc)) from None
    n_padded = int(zero_fill_factor) * ifg.counts.size
    transform = np.fft.fft(ifg.counts, n=n_padded, norm="ortho")
    amplitude = np.abs(transform)
    grid = np.arange(n_padded) / (n_padded * step)
    meta = dict(ifg.meta)
    meta["zero_fill_factor"] = int(zero_fill_factor)
    meta["n_unpadded"] = ifg.counts.size
    return AmplitudeSpectrum(
        grid=grid, amplitude=amplitude, opd_step_cm=step, meta=meta
    )


def ils_fwhm(win: ApodizationWindow, opd_max_cm: float) -> float:
    """FWHM (cm^-1) of the instrument line shape set by the window.

    gaussian: the transform of exp(-4 ln2 x^2 / w^2) is a Gaussian of FWHM
    4 ln2 / (pi w).  boxcar: the transform of a box over +-opd_max is a
    sinc whose magnitude has FWHM 1.2067/(2 opd_max).
    """
    if win.kind == "gaussian":
        return _4LN2 / (math.pi * win.fwhm_opd_cm)
    if opd_max_cm <= 0.0:
        raise ValueError("opd_max must be positive")
    return _SINC_HALF_MAX / (math.pi * opd_max_cm)


def ils_kernel(
    win: ApodizationWindow,
    opd_max_cm: float,
    grid_step_cm1: float,
    halfwidth_fwhms: float = 5.0,
) -> np.ndarray:
    """Discrete instrument line shape sampled at the model grid step.

    Truncated at +-halfwidth_fwhms times the FWHM and renormalized to unit
    sum, so convolving a constant with it returns the constant exactly.
    The boxcar kernel is the (signed) sinc transform of the scan window.
    """
    if grid_step_cm1 <= 0.0:
        raise ValueError("grid step must be positive")
    fwhm = ils_fwhm(win, opd_max_cm)
    half = max(1, int(math.ceil(halfwidth_fwhms * fwhm / grid_step_cm1)))
    nu = np.arange(-half, half + 1) * grid_step_cm1
    if win.kind == "gaussian":
        kernel = np.exp(-_4LN2 * (nu / fwhm) ** 2)
    else:
        kernel = np.sinc(2.0 * opd_max_cm * nu)
    return kernel / kernel.sum()
