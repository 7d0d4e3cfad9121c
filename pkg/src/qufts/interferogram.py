"""Signal-light interferogram synthesis over an OPD scan.

Axis convention: all stored axes are optical path difference (OPD), which
is twice the scan-mirror displacement.  The expected detected counts at
OPD x are

    N(x) = dwell * scans * sum_nu S(nu) dnu * (1 + V(nu) cos(2 pi nu x
           + phi(nu))) / 2  +  dwell * scans * background

with S the pair spectral density, V(nu) = max_visibility * tau(nu) the
induced-coherence fringe contrast, and phi a quadratic spectral phase
standing in for the crystal dispersion (its only modeled consequence is
the centerburst broadening).  Shot noise replaces N(x) by a Poisson draw
from a per-sample counter-based stream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AxisMismatch, GridMismatch, NonUniformAxis, NyquistViolation
from .linelist import uniform_grid_step
from .optics import SpdcConfig, Spectrum, TransmissionCurve, visibility
from .rng import poisson_per_sample

# Densest tolerable sampling mismatch when deciding whether the wavenumber
# grid is commensurate with a zero-padded DFT of the OPD axis.
_COMMENSURATE_TOL = 1e-6


@dataclass(frozen=True)
class ScanConfig:
    """Symmetric OPD scan: samples at -opd_max ... +opd_max, step opd_step."""

    opd_max_cm: float = 0.8
    opd_step_cm: float = 1.0e-4
    dwell_time_s: float = 4.75e-4
    scans_to_average: int = 50

    def __post_init__(self):
        if self.opd_max_cm <= 0.0 or self.opd_step_cm <= 0.0:
            raise ValueError("opd_max and opd_step must be positive")
        if self.dwell_time_s <= 0.0:
            raise ValueError("dwell time must be positive")
        if self.scans_to_average < 1:
            raise ValueError("scans_to_average must be >= 1")

    @property
    def n_samples(self) -> int:
        return 2 * int(round(self.opd_max_cm / self.opd_step_cm)) + 1

    def axis(self) -> np.ndarray:
        half = int(round(self.opd_max_cm / self.opd_step_cm))
        return (np.arange(-half, half + 1)) * self.opd_step_cm

    def nyquist_wavenumber(self) -> float:
        return 0.5 / self.opd_step_cm


@dataclass(frozen=True)
class DispersionConfig:
    """Quadratic spectral phase phi(nu) = beta2 * (nu - center)^2."""

    beta2_rad_cm2: float = 2.0e-5
    center_cm1: float = 2900.0

    def phase(self, grid: np.ndarray) -> np.ndarray:
        return self.beta2_rad_cm2 * (np.asarray(grid) - self.center_cm1) ** 2


@dataclass(frozen=True)
class NoiseConfig:
    """Shot-noise switch, stream seed, and constant detector background."""

    enabled: bool = True
    rng_seed: int = 0
    detector_background_cps: float = 0.0

    def __post_init__(self):
        if self.rng_seed < 0:
            raise ValueError("rng_seed must be a nonnegative integer")
        if self.detector_background_cps < 0.0:
            raise ValueError("detector background must be nonnegative")


@dataclass(frozen=True)
class Interferogram:
    """Detected counts versus OPD, plus acquisition metadata."""

    opd_cm: np.ndarray
    counts: np.ndarray
    scan: ScanConfig
    noise: NoiseConfig | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        opd = np.asarray(self.opd_cm, dtype=float)
        counts = np.asarray(self.counts, dtype=float)
        object.__setattr__(self, "opd_cm", opd)
        object.__setattr__(self, "counts", counts)
        if opd.shape != counts.shape or opd.ndim != 1:
            raise ValueError("opd and counts must be 1-d arrays of equal length")

    def validate_detected(self):
        """Invariants of as-detected data: uniform symmetric axis, counts >= 0.

        Processed interferograms (mean-subtracted, apodized) legitimately
        violate the nonnegativity and skip this check.
        """
        step = self.axis_step()
        if abs(self.opd_cm[0] + self.opd_cm[-1]) > 1e-9 * step:
            raise NonUniformAxis("OPD axis must be symmetric about zero")
        if np.any(self.counts < 0.0):
            raise ValueError("detected counts must be nonnegative")

    def axis_step(self) -> float:
        try:
            return uniform_grid_step(self.opd_cm)
        except Exception as exc:
            raise NonUniformAxis(str(exc)) from None


def _modulated_means_fft(grid, amplitude, phase, scan: ScanConfig):
    """Exact evaluation of sum_j amplitude_j cos(2 pi nu_j x_i + phase_j)
    through one zero-padded inverse DFT, when every nu_j is an integer
    multiple of 1/(N_big * opd_step).  Returns None when incommensurate.
    """
    step_nu = uniform_grid_step(grid)
    dx = scan.opd_step_cm
    n_big_f = 1.0 / (step_nu * dx)
    n_big = int(round(n_big_f))
    if abs(n_big_f - n_big) > _COMMENSURATE_TOL * n_big_f:
        return None
    j0_f = grid[0] / step_nu
    j0 = int(round(j0_f))
    if abs(j0_f - j0) > _COMMENSURATE_TOL * max(1.0, abs(j0_f)):
        return None
    half = (scan.n_samples - 1) // 2
    if j0 + grid.size > n_big // 2 or n_big < scan.n_samples:
        return None
    spectrum = np.zeros(n_big, dtype=complex)
    spectrum[j0:j0 + grid.size] = amplitude * np.exp(1j * phase)
    trace = n_big * np.fft.ifft(spectrum)
    idx = np.arange(-half, half + 1) % n_big
    return trace.real[idx]


def _modulated_means_direct(grid, amplitude, phase, scan: ScanConfig):
    x = scan.axis()
    out = np.empty(x.size)
    block = max(1, int(2e6 // max(grid.size, 1)))
    for start in range(0, x.size, block):
        seg = x[start:start + block, None]
        out[start:start + block] = np.sum(
            amplitude * np.cos(2.0 * math.pi * grid[None, :] * seg + phase),
            axis=1,
        )
    return out


def expected_counts(
    spdc: Spectrum,
    tau: TransmissionCurve,
    disp: DispersionConfig,
    scan: ScanConfig,
    noise: NoiseConfig,
    cfg: SpdcConfig,
    enhancement: float = 1.0,
) -> np.ndarray:
    """Noise-free mean counts per OPD sample (shot noise not applied)."""
    if spdc.grid.shape != tau.grid.shape or np.any(spdc.grid != tau.grid):
        raise GridMismatch("SPDC spectrum and transmission curve grids differ")
    if enhancement < 0.0:
        raise ValueError("enhancement must be nonnegative")
    grid = spdc.grid
    density = spdc.density * enhancement
    active = density > 0.0
    if np.any(active):
        nu_max = float(grid[active].max())
        if scan.opd_step_cm > 0.5 / nu_max:
            raise NyquistViolation(
                f"opd_step {scan.opd_step_cm:g} cm exceeds 1/(2*{nu_max:g} cm^-1)"
            )
    step_nu = uniform_grid_step(grid)
    weight = scan.dwell_time_s * scan.scans_to_average
    vis = visibility(tau.tau_roundtrip, cfg)
    amplitude = 0.5 * density * step_nu * vis
    phase = disp.phase(grid)

    modulated = _modulated_means_fft(grid, amplitude, phase, scan)
    if modulated is None:
        modulated = _modulated_means_direct(grid, amplitude, phase, scan)

    dc = 0.5 * float(np.sum(density)) * step_nu
    means = weight * (dc + modulated + noise.detector_background_cps)
    # round-off from the transform can leave tiny negative dust at tau ~ 1
    np.maximum(means, 0.0, out=means)
    return means


def synthesize(
    spdc: Spectrum,
    tau: TransmissionCurve,
    disp: DispersionConfig,
    scan: ScanConfig,
    noise: NoiseConfig,
    cfg: SpdcConfig,
    enhancement: float = 1.0,
) -> Interferogram:
    """Simulate one averaged acquisition of the signal-light interferogram.

    The mean counts follow the module-level formula; with noise enabled
    every OPD sample is an independent Poisson draw from a counter-based
    stream keyed by (rng_seed, sample index), so output is bit-identical
    for a fixed seed regardless of evaluation order or parallel chunking.
    Averaging over scans_to_average is folded into the Poisson mean (the
    sum of independent scan draws is itself Poisson).
    """
    means = expected_counts(spdc, tau, disp, scan, noise, cfg, enhancement)
    if noise.enabled:
        counts = poisson_per_sample(noise.rng_seed, means)
    else:
        counts = means
    ifg = Interferogram(
        opd_cm=scan.axis(),
        counts=counts,
        scan=scan,
        noise=noise,
        meta={"enhancement": enhancement, "kind": "detected"},
    )
    ifg.validate_detected()
    return ifg


def average(scans: list[Interferogram]) -> Interferogram:
    """Pointwise mean of repeated acquisitions sharing one axis and config."""
    if not scans:
        raise AxisMismatch("no interferograms to average")
    first = scans[0]
    for other in scans[1:]:
        if other.opd_cm.shape != first.opd_cm.shape or np.any(
            other.opd_cm != first.opd_cm
        ):
            raise AxisMismatch("OPD axes differ")
        if other.scan != first.scan:
            raise AxisMismatch("scan configurations differ")
    counts = np.mean([ifg.counts for ifg in scans], axis=0)
    meta = dict(first.meta)
    meta["averaged_from"] = len(scans)
    return Interferogram(
        opd_cm=first.opd_cm.copy(),
        counts=counts,
        scan=first.scan,
        noise=first.noise,
        meta=meta,
    )
