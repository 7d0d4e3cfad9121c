"""End-to-end forward simulation: configuration in, interferograms out.

The wavenumber grid for the forward model is chosen commensurate with a
zero-padded DFT of the OPD axis (every grid point an integer multiple of
1/(N_big * opd_step)), which lets the interferogram synthesis evaluate its
defining cosine sum exactly through one FFT.  The default step resolves
pressure-broadened lines with >10 points per HWHM.
"""

from __future__ import annotations

import math

import numpy as np

from .config import RunConfig
from .errors import ConfigError
from .fts import ils_kernel
from .interferogram import Interferogram, ScanConfig, synthesize
from .linelist import (
    LineList,
    absorption_coefficient,
    load_linelist,
    uniform_grid_step,
)
from .optics import (
    Spectrum,
    TransmissionCurve,
    cavity_enhancement,
    spdc_spectral_density,
)
from .retrieval import ModelContext

# target wavenumber resolution of the line-by-line model grid
MODEL_GRID_MAX_STEP_CM1 = 5e-3
# emission band extent kept in the model, in FWHM units around the center
BAND_HALFWIDTH_FWHMS = 1.9


def dft_aligned_grid(
    scan: ScanConfig, lo_cm1: float, hi_cm1: float,
    max_step_cm1: float = MODEL_GRID_MAX_STEP_CM1,
) -> np.ndarray:
    """Uniform grid over [lo, hi] whose points sit on DFT bins of the scan.

    The implied DFT size is the smallest power of two giving a step at or
    below max_step_cm1 while holding the whole scan.
    """
    if not 0.0 < lo_cm1 < hi_cm1:
        raise ValueError("need 0 < lo < hi")
    n_big = 1
    while 1.0 / (n_big * scan.opd_step_cm) > max_step_cm1 or n_big < scan.n_samples:
        n_big *= 2
    step = 1.0 / (n_big * scan.opd_step_cm)
    j_lo = int(math.floor(lo_cm1 / step))
    j_hi = int(math.ceil(hi_cm1 / step))
    if j_hi >= n_big // 2:
        raise ValueError("band extends beyond the scan's Nyquist wavenumber")
    return np.arange(j_lo, j_hi + 1) * step


def emission_band(cfg: RunConfig) -> tuple[float, float]:
    center = cfg["spdc.center_cm1"]
    half = BAND_HALFWIDTH_FWHMS * cfg["spdc.fwhm_cm1"]
    return max(center - half, 1.0), center + half


def load_gas_linelists(cfg: RunConfig) -> dict[str, LineList]:
    lists = {}
    for species, gas in cfg.gases.items():
        if gas.linelist_path is None:
            raise ConfigError(f"gas.{species}.linelist_path is not set")
        lists[species] = load_linelist(cfg.resolve_path(gas.linelist_path), species)
    return lists


def forward_curves(
    cfg: RunConfig, with_sample: bool = True
) -> tuple[np.ndarray, Spectrum, TransmissionCurve, TransmissionCurve]:
    """Model grid, emission density (at incident pump power), and the
    reference (tau == 1) plus sample round-trip transmission curves."""
    scan = cfg.scan_config()
    lo, hi = emission_band(cfg)
    grid = dft_aligned_grid(scan, lo, hi)
    spdc = spdc_spectral_density(cfg.spdc_config(), cfg.cavity_config().pump_power_w, grid)
    tau_ref = TransmissionCurve(grid=grid, tau_roundtrip=np.ones_like(grid))
    if not with_sample:
        return grid, spdc, tau_ref, tau_ref
    # one exponent sum over species; each species gets its own conditions
    # so the (tiny) self-broadening mix uses the right mole fraction
    exponent = np.zeros_like(grid)
    cutoff = cfg["linelist.wing_cutoff_cm1"]
    for species, linelist in load_gas_linelists(cfg).items():
        alpha = absorption_coefficient(
            linelist, grid, cfg.gas_conditions(species), wing_cutoff_cm1=cutoff
        ).alpha
        exponent += cfg.gases[species].concentration * alpha
    tau_smp = TransmissionCurve(
        grid=grid, tau_roundtrip=np.exp(-exponent * cfg["cell.length_cm"])
    )
    return grid, spdc, tau_ref, tau_smp


def simulate_pair(cfg: RunConfig) -> tuple[Interferogram, Interferogram]:
    """Reference (cell flushed with buffer gas only) and sample scans.

    The two acquisitions use independent noise streams: the sample run's
    seed is noise.seed + 1.
    """
    scan = cfg.scan_config()
    spdc_cfg = cfg.spdc_config()
    disp = cfg.dispersion_config()
    enhancement = cavity_enhancement(cfg.cavity_config())
    _, spdc, tau_ref, tau_smp = forward_curves(cfg)
    ref = synthesize(
        spdc, tau_ref, disp, scan, cfg.noise_config(0), spdc_cfg, enhancement
    )
    smp = synthesize(
        spdc, tau_smp, disp, scan, cfg.noise_config(1), spdc_cfg, enhancement
    )
    ref.meta["role"] = "reference"
    smp.meta["role"] = "sample"
    return ref, smp


def build_model_context(
    cfg: RunConfig,
    species: list[str],
    band: tuple[float, float],
    linelists: dict[str, LineList] | None = None,
) -> ModelContext:
    """Absorption spectra and ILS kernel for fitting inside `band`.

    The fine grid pads the band by the line-wing cutoff plus the ILS
    kernel half-width, so in-band model values carry no edge effects.
    """
    scan = cfg.scan_config()
    window = cfg.apodization_window()
    if linelists is None:
        linelists = {
            tag: lst
            for tag, lst in load_gas_linelists(cfg).items()
            if tag in species
        }
    lo, hi = band
    grid = dft_aligned_grid(scan, lo - cfg["linelist.wing_cutoff_cm1"] - 10.0,
                            hi + cfg["linelist.wing_cutoff_cm1"] + 10.0)
    kernel = ils_kernel(window, scan.opd_max_cm, uniform_grid_step(grid))
    absorption = {}
    for tag in species:
        absorption[tag] = absorption_coefficient(
            linelists[tag],
            grid,
            cfg.gas_conditions(tag),
            wing_cutoff_cm1=cfg["linelist.wing_cutoff_cm1"],
        )
    return ModelContext(
        absorption=absorption, cell_length_cm=cfg["cell.length_cm"], ils=kernel
    )
