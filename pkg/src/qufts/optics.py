"""Pump-enhanced SPDC source and induced-coherence visibility model.

A nonlinear crystal inside a cavity resonant only for the pump emits
signal/idler photon pairs at a rate proportional to the intra-cavity pump
power; the cavity changes neither the emission spectrum nor the
spontaneous (low-gain) character of the process, so every quantity here is
strictly linear in pump power.  When the idler arm contains an absorbing
sample, the interference contrast of the *signal* light is linear in the
idler amplitude transmission: there is no induced emission correction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, GridOutsideSupport
from .linelist import (
    AbsorptionSpectrum,
    GasConditions,
    LineList,
    absorption_coefficient,
    uniform_grid_step,
)

_4LN2 = 4.0 * math.log(2.0)
# half-max abscissa of sinc^2(x) = (sin x / x)^2
_SINC2_HALF_MAX = 1.391557377204354


@dataclass(frozen=True)
class CavityConfig:
    """Passive cavity resonant for the pump only."""

    finesse: float = 290.0
    coupling_efficiency: float = 0.596
    pump_power_w: float = 0.1

    def __post_init__(self):
        if self.finesse < 1.0:
            raise ValueError("finesse must be >= 1")
        if not 0.0 < self.coupling_efficiency <= 1.0:
            raise ValueError("coupling_efficiency must lie in (0, 1]")
        if self.pump_power_w < 0.0:
            raise ValueError("pump power must be nonnegative")


@dataclass(frozen=True)
class SpdcConfig:
    """Emission spectrum and interference ceiling of the photon-pair source.

    base_pair_rate is the detected pair rate per watt of intra-cavity pump
    power; detection fraction and constant efficiencies are absorbed here.
    """

    pump_wavenumber_cm1: float = 12903.2
    idler_center_cm1: float = 2900.0
    bandwidth_fwhm_cm1: float = 700.0
    spectral_shape: str = "gaussian"
    base_pair_rate: float = 8.4e8
    max_visibility: float = 0.8

    def __post_init__(self):
        if not 0.0 < self.idler_center_cm1 < self.pump_wavenumber_cm1:
            raise ValueError("idler center must lie between 0 and the pump")
        if self.bandwidth_fwhm_cm1 <= 0.0:
            raise ValueError("bandwidth must be positive")
        if self.base_pair_rate <= 0.0:
            raise ValueError("base_pair_rate must be positive")
        if not 0.0 < self.max_visibility <= 1.0:
            raise ValueError("max_visibility must lie in (0, 1]")
        if self.spectral_shape not in ("gaussian", "sinc_squared"):
            raise ValueError(f"unknown spectral shape {self.spectral_shape!r}")


@dataclass(frozen=True)
class Spectrum:
    """Values on a uniform wavenumber grid (photon pairs / s / cm^-1)."""

    grid: np.ndarray
    density: np.ndarray

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        density = np.asarray(self.density, dtype=float)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "density", density)
        if grid.shape != density.shape:
            raise ValueError("grid and density must have identical shape")
        uniform_grid_step(grid)


@dataclass(frozen=True)
class TransmissionCurve:
    """Round-trip amplitude transmission of the idler arm per grid point."""

    grid: np.ndarray
    tau_roundtrip: np.ndarray

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        tau = np.asarray(self.tau_roundtrip, dtype=float)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "tau_roundtrip", tau)
        if grid.shape != tau.shape:
            raise ValueError("grid and tau must have identical shape")
        uniform_grid_step(grid)
        if np.any(tau < 0.0) or np.any(tau > 1.0):
            raise ValueError("tau_roundtrip must lie in [0, 1]")


def idler_wavenumber(pump_wavenumber_cm1: float, signal_wavenumber_cm1: float) -> float:
    """Energy conservation of pair emission: idler = pump - signal."""
    if not 0.0 < signal_wavenumber_cm1 < pump_wavenumber_cm1:
        raise DomainError(
            "signal wavenumber must lie strictly between 0 and the pump"
        )
    return pump_wavenumber_cm1 - signal_wavenumber_cm1


def cavity_enhancement(cfg: CavityConfig) -> float:
    """Intra-cavity power buildup E = (finesse/pi) * coupling_efficiency.

    The intra-cavity pump power is E * pump_power_w.
    """
    return cfg.finesse / math.pi * cfg.coupling_efficiency


def intracavity_power(cfg: CavityConfig) -> float:
    return cavity_enhancement(cfg) * cfg.pump_power_w


def spdc_spectral_density(
    cfg: SpdcConfig, pump_intracavity_power_w: float, grid: np.ndarray
) -> Spectrum:
    """Emitted pair spectral density, strictly linear in pump power.

    density = base_pair_rate * power * shape(nu) with the shape
    area-normalized over its full support.  Raises GridOutsideSupport when
    the grid captures less than 0.1 % of the shape's area.
    """
    if pump_intracavity_power_w < 0.0:
        raise DomainError("pump power must be nonnegative")
    grid = np.asarray(grid, dtype=float)
    uniform_grid_step(grid)
    delta = grid - cfg.idler_center_cm1
    if cfg.spectral_shape == "gaussian":
        fwhm = cfg.bandwidth_fwhm_cm1
        peak = 2.0 / fwhm * math.sqrt(math.log(2.0) / math.pi)
        shape = peak * np.exp(-_4LN2 * (delta / fwhm) ** 2)
    else:  # sinc_squared
        scale = 2.0 * _SINC2_HALF_MAX / cfg.bandwidth_fwhm_cm1
        shape = (scale / math.pi) * np.sinc(scale * delta / math.pi) ** 2
    captured = float(np.trapezoid(shape, grid))
    if captured < 1e-3:
        raise GridOutsideSupport(
            f"grid captures only {captured:.2e} of the emission spectrum"
        )
    density = cfg.base_pair_rate * pump_intracavity_power_w * shape
    return Spectrum(grid=grid, density=density)


def visibility(tau_roundtrip, cfg: SpdcConfig):
    """Signal-light interference contrast: V = max_visibility * tau.

    Exactly linear in the idler amplitude transmission (spontaneous
    emission regime, no induced-emission correction).  Accepts scalars or
    arrays; raises DomainError outside [0, 1].
    """
    tau = np.asarray(tau_roundtrip, dtype=float)
    if np.any(tau < 0.0) or np.any(tau > 1.0):
        raise DomainError("tau must lie in [0, 1]")
    out = cfg.max_visibility * tau
    if out.ndim == 0:
        return float(out)
    return out


def roundtrip_transmission(
    mixtures: Sequence[tuple[LineList, float]],
    cell_length_cm: float,
    cond: GasConditions,
    grid: np.ndarray,
    **alpha_kwargs,
) -> TransmissionCurve:
    """Round-trip amplitude transmission of the idler through the gas cell.

    tau_roundtrip(nu) = exp(-sum_k c_k alpha_k(nu) L).

    Bookkeeping: the idler traverses the cell of length L twice (it is
    reflected back through the cell), so the single-pass *amplitude*
    transmission exp(-c alpha L / 2) appears squared.  The round-trip
    amplitude therefore equals the single-pass *intensity* Beer-Lambert
    expression exp(-c alpha L), which is exactly the exponent the
    transmission-spectrum model fits downstream.
    """
    if cell_length_cm <= 0.0:
        raise ValueError("cell length must be positive")
    grid = np.asarray(grid, dtype=float)
    uniform_grid_step(grid)
    total = np.zeros_like(grid)
    concentration_sum = 0.0
    for linelist, concentration in mixtures:
        if concentration < 0.0:
            raise ValueError("concentrations must be nonnegative")
        concentration_sum += concentration
        if concentration == 0.0:
            continue
        spectrum = absorption_coefficient(linelist, grid, cond, **alpha_kwargs)
        total += concentration * spectrum.alpha
    if concentration_sum > 1.0:
        raise ValueError("mixture concentrations must sum to at most 1")
    tau = np.exp(-total * cell_length_cm)
    return TransmissionCurve(grid=grid, tau_roundtrip=tau)
