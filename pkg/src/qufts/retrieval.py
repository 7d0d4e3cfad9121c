"""Transmission spectra, 100 %-line SNR, and concentration retrieval.

The measured transmission is the quotient of sample and reference
*amplitude* spectra.  The fringe contrast is linear in the round-trip
amplitude transmission exp(-c alpha L) of the idler arm, and the
transform amplitude is linear in the contrast, so the amplitude quotient
directly estimates exp(-c alpha L) - the same exponent Beer-Lambert gives
a single intensity pass through the cell.  A PSD quotient would square
the exponent and bias fitted concentrations by a factor of two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np
from scipy.signal import fftconvolve

from .errors import (
    DomainError,
    EmptyValidBand,
    GridMismatch,
    KernelWiderThanBand,
    SingularNormalMatrix,
    WindowOutsideBand,
)
from .fts import AmplitudeSpectrum
from .linelist import AbsorptionSpectrum, uniform_grid_step

SNR_CAP = 1e12


@dataclass(frozen=True)
class TransmissionSpectrum:
    """Sample/reference amplitude quotient; NaN outside the valid band."""

    grid: np.ndarray
    t: np.ndarray
    valid_band: tuple[float, float]

    def band_mask(self, lo: float, hi: float) -> np.ndarray:
        return (self.grid >= lo) & (self.grid <= hi) & np.isfinite(self.t)


@dataclass(frozen=True)
class FitResult:
    """Retrieved concentrations with 1-sigma linearized uncertainties."""

    concentrations: dict
    sigmas: dict
    residual_grid: np.ndarray
    residuals: np.ndarray
    reduced_chi2: float
    iterations: int
    converged: bool


@dataclass(frozen=True)
class ModelContext:
    """Everything the transmission model needs besides the concentrations.

    Per-species absorption coefficients share one fine uniform grid; the
    instrument line shape kernel is sampled at that grid's step and must
    sum to 1 (see qufts.fts.ils_kernel).
    """

    absorption: Mapping[str, AbsorptionSpectrum]
    cell_length_cm: float
    ils: np.ndarray

    def __post_init__(self):
        if not self.absorption:
            raise ValueError("need at least one species")
        grids = [spec.grid for spec in self.absorption.values()]
        first = grids[0]
        for grid in grids[1:]:
            if grid.shape != first.shape or np.any(grid != first):
                raise GridMismatch("absorption spectra must share one grid")
        ils = np.asarray(self.ils, dtype=float)
        object.__setattr__(self, "ils", ils)
        if abs(ils.sum() - 1.0) > 1e-9:
            raise ValueError("ILS kernel must be normalized to unit sum")
        if self.cell_length_cm <= 0.0:
            raise ValueError("cell length must be positive")

    @property
    def grid(self) -> np.ndarray:
        return next(iter(self.absorption.values())).grid


def transmission(
    sample: AmplitudeSpectrum,
    reference: AmplitudeSpectrum,
    threshold: float = 0.1,
) -> TransmissionSpectrum:
    """Amplitude quotient, valid where the reference has real signal.

    The valid band is the contiguous run of bins around the reference
    peak (searched below the Nyquist wavenumber, where the physical band
    lives) whose amplitude stays at or above threshold * peak.
    """
    if sample.grid.shape != reference.grid.shape or np.any(
        sample.grid != reference.grid
    ):
        raise GridMismatch("sample and reference spectra have different grids")
    grid = reference.grid
    physical = grid <= reference.nyquist_cm1
    if not np.any(physical) or reference.amplitude[physical].max() <= 0.0:
        raise EmptyValidBand("reference spectrum has no signal")
    peak_idx = int(np.argmax(np.where(physical, reference.amplitude, -np.inf)))
    cutoff = threshold * reference.amplitude[peak_idx]
    above = reference.amplitude >= cutoff
    lo = peak_idx
    while lo > 0 and above[lo - 1]:
        lo -= 1
    hi = peak_idx
    while hi + 1 < grid.size and above[hi + 1]:
        hi += 1
    t = np.full(grid.shape, np.nan)
    window = slice(lo, hi + 1)
    t[window] = sample.amplitude[window] / reference.amplitude[window]
    return TransmissionSpectrum(
        grid=grid, t=t, valid_band=(float(grid[lo]), float(grid[hi]))
    )


def snr_100line(tspec: TransmissionSpectrum, window: tuple[float, float]) -> float:
    """Inverse scatter of the transmission in a feature-free window.

    Returns 1/std(t - mean(t)) over the window; a window containing real
    absorption features is the caller's responsibility to avoid - it is
    not detected here.  Zero scatter reports the cap 1e12.
    """
    lo, hi = window
    if lo >= hi:
        raise DomainError("window must have positive width")
    if lo < tspec.valid_band[0] or hi > tspec.valid_band[1]:
        raise WindowOutsideBand(
            f"window [{lo}, {hi}] outside valid band {tspec.valid_band}"
        )
    mask = tspec.band_mask(lo, hi)
    values = tspec.t[mask]
    if values.size < 2:
        raise WindowOutsideBand("window contains fewer than two valid bins")
    sigma = float(np.std(values - values.mean(), ddof=1))
    if sigma <= 0.0:
        return SNR_CAP
    return min(1.0 / sigma, SNR_CAP)


def snr_scaling(snr_ref: float, e_ref: float, e_new: float) -> float:
    """Shot-noise prediction: SNR scales as the square root of the pump
    enhancement factor."""
    if snr_ref <= 0.0 or e_ref <= 0.0 or e_new <= 0.0:
        raise DomainError("snr_scaling needs positive inputs")
    return snr_ref * math.sqrt(e_new / e_ref)


def _convolve_replicate(values: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    half = kernel.size // 2
    padded = np.concatenate(
        [np.full(half, values[0]), values, np.full(half, values[-1])]
    )
    return fftconvolve(padded, kernel, mode="valid")


def model_transmission(
    concentrations: Mapping[str, float],
    ctx: ModelContext,
    grid: np.ndarray | None = None,
) -> np.ndarray:
    """Beer-Lambert transmission smoothed by the instrument line shape.

    T(nu) = [exp(-sum_k c_k alpha_k(nu) L)] convolved with the unit-sum
    ILS kernel on the fine context grid (edges padded by replication),
    then linearly interpolated onto `grid` if one is given.
    """
    fine_grid = ctx.grid
    if ctx.ils.size > fine_grid.size:
        raise KernelWiderThanBand(
            f"ILS kernel ({ctx.ils.size} pts) wider than model band "
            f"({fine_grid.size} pts)"
        )
    exponent = np.zeros_like(fine_grid)
    for species, c in concentrations.items():
        if c < 0.0:
            raise DomainError("concentrations must be nonnegative")
        if species not in ctx.absorption:
            raise KeyError(f"no absorption data for species {species!r}")
        exponent += c * ctx.absorption[species].alpha
    smooth = _convolve_replicate(np.exp(-exponent * ctx.cell_length_cm), ctx.ils)
    if grid is None:
        return smooth
    return np.interp(np.asarray(grid, dtype=float), fine_grid, smooth)


def _model_and_jacobian(c_vec, species, ctx, grid):
    conc = dict(zip(species, c_vec))
    fine = ctx.grid
    exponent = np.zeros_like(fine)
    for name, c in conc.items():
        exponent += c * ctx.absorption[name].alpha
    bare = np.exp(-exponent * ctx.cell_length_cm)
    model = np.interp(grid, fine, _convolve_replicate(bare, ctx.ils))
    jac = np.empty((grid.size, len(species)))
    for k, name in enumerate(species):
        deriv = -ctx.cell_length_cm * ctx.absorption[name].alpha * bare
        jac[:, k] = np.interp(grid, fine, _convolve_replicate(deriv, ctx.ils))
    return model, jac


def fit_concentration(
    tspec: TransmissionSpectrum,
    ctx: ModelContext,
    species_init: Mapping[str, float],
    band: tuple[float, float],
    max_iterations: int = 100,
    rel_step_tol: float = 1e-8,
    bin_spacing_cm1: float | None = None,
) -> FitResult:
    """Damped least squares for the concentrations over one fit band.

    Minimizes sum_bins (t - T_model(c))^2 with an analytic Jacobian
    (derivative of the Beer-Lambert exponent, ILS-convolved).  Declares
    convergence when the relative parameter step drops below rel_step_tol;
    otherwise returns the best point found with converged=False.
    Uncertainties are the square roots of the diagonal of the inverse
    normal matrix scaled by the residual variance (1-sigma, linearized).

    Zero filling and apodization correlate the noise of neighboring
    spectral bins, which would make those uncertainties optimistic; pass
    bin_spacing_cm1 (normally the instrument line shape FWHM) to fit on
    bins at least that far apart, whose noise is effectively independent.
    The returned residuals always cover every bin in the band.
    """
    lo, hi = band
    if lo < tspec.valid_band[0] or hi > tspec.valid_band[1]:
        raise WindowOutsideBand(
            f"fit band [{lo}, {hi}] outside valid band {tspec.valid_band}"
        )
    mask = tspec.band_mask(lo, hi)
    full_grid = tspec.grid[mask]
    full_data = tspec.t[mask]
    if bin_spacing_cm1 is not None and full_grid.size > 1:
        step = float(np.median(np.diff(full_grid)))
        stride = max(1, int(round(bin_spacing_cm1 / step)))
    else:
        stride = 1
    grid = full_grid[::stride]
    data = full_data[::stride]
    species = list(species_init.keys())
    for name in species:
        if name not in ctx.absorption:
            raise KeyError(f"no absorption data for species {name!r}")
    c = np.array([float(species_init[name]) for name in species])
    if np.any(c < 0.0):
        raise DomainError("initial concentrations must be nonnegative")
    if grid.size <= len(species):
        raise WindowOutsideBand("fit band has fewer bins than parameters")

    lam = 1e-3
    model, jac = _model_and_jacobian(c, species, ctx, grid)
    residual = data - model
    ssr = float(residual @ residual)
    converged = False
    iterations = 0
    for iterations in range(1, max_iterations + 1):
        jtj = jac.T @ jac
        jtr = jac.T @ residual
        diag = np.diag(jtj).copy()
        if np.any(diag <= 0.0) or not np.all(np.isfinite(jtj)):
            raise SingularNormalMatrix(
                "a fitted species has no absorption inside the band"
            )
        accepted = False
        for _ in range(25):
            try:
                step = np.linalg.solve(jtj + lam * np.diag(diag), jtr)
            except np.linalg.LinAlgError:
                raise SingularNormalMatrix("normal matrix not invertible") from None
            trial = np.maximum(c + step, 0.0)
            trial_model, trial_jac = _model_and_jacobian(trial, species, ctx, grid)
            trial_residual = data - trial_model
            trial_ssr = float(trial_residual @ trial_residual)
            if trial_ssr <= ssr:
                accepted = True
                break
            lam *= 10.0
        if not accepted:
            break
        rel_step = np.linalg.norm(trial - c) / max(np.linalg.norm(c), 1e-30)
        c, model, jac, residual, ssr = (
            trial,
            trial_model,
            trial_jac,
            trial_residual,
            trial_ssr,
        )
        lam = max(lam * 0.1, 1e-12)
        if rel_step < rel_step_tol:
            converged = True
            break

    dof = max(grid.size - len(species), 1)
    variance = ssr / dof
    jtj = jac.T @ jac
    try:
        covariance = variance * np.linalg.inv(jtj)
    except np.linalg.LinAlgError:
        raise SingularNormalMatrix("normal matrix not invertible") from None
    sigmas = np.sqrt(np.maximum(np.diag(covariance), 0.0))
    if stride == 1:
        full_residual = residual
    else:
        conc = dict(zip(species, c))
        full_residual = full_data - model_transmission(conc, ctx, full_grid)
    return FitResult(
        concentrations={name: float(v) for name, v in zip(species, c)},
        sigmas={name: float(s) for name, s in zip(species, sigmas)},
        residual_grid=full_grid,
        residuals=full_residual,
        reduced_chi2=float(variance),
        iterations=iterations,
        converged=converged,
    )
