"""Delimited-text serialization for every pipeline artifact.

All files are plain text: `# key = value` metadata lines, one `# <column
names>` line, then whitespace-separated data rows.  Floats are written
with repr (shortest round-trip form), so rewriting an unchanged object is
byte-identical and reading recovers the exact values.
"""

from __future__ import annotations

import math
from typing import Iterable, TextIO

import numpy as np

from .errors import QuftsError
from .fts import AmplitudeSpectrum
from .interferogram import Interferogram, NoiseConfig, ScanConfig
from .linelist import AbsorptionSpectrum
from .retrieval import FitResult, TransmissionSpectrum


def _fmt(value) -> str:
    if isinstance(value, float):  # incl. numpy float64
        return repr(float(value))
    return str(value)


def _write_meta(handle: TextIO, meta: dict):
    for key, value in meta.items():
        handle.write(f"# {key} = {_fmt(value)}\n")


def _read_header(handle: TextIO) -> tuple[dict, str]:
    """Consume '# key = value' lines; return (meta, column line)."""
    meta = {}
    for raw in handle:
        line = raw.rstrip("\n")
        if not line.startswith("#"):
            raise QuftsError(f"malformed header line: {line!r}")
        body = line[1:].strip()
        if "=" in body:
            key, value = (part.strip() for part in body.split("=", 1))
            meta[key] = value
        else:
            return meta, body
    raise QuftsError("file ended before the column header")


def _meta_get(meta: dict, key: str, cast, default=None):
    if key not in meta:
        if default is not None:
            return default
        raise QuftsError(f"missing header field {key!r}")
    text = meta[key]
    if cast is bool:
        return text.strip().lower() in ("true", "1", "yes")
    return cast(text)


# --- interferograms ---------------------------------------------------------

def write_interferogram(path: str, ifg: Interferogram):
    scan, noise = ifg.scan, ifg.noise
    meta = {
        "format": "qufts-interferogram-v1",
        "opd_max_cm": scan.opd_max_cm,
        "opd_step_cm": scan.opd_step_cm,
        "dwell_time_s": scan.dwell_time_s,
        "scans_to_average": scan.scans_to_average,
        "noise_enabled": noise.enabled if noise else False,
        "rng_seed": noise.rng_seed if noise else 0,
        "detector_background_cps": (
            noise.detector_background_cps if noise else 0.0
        ),
    }
    for key, value in ifg.meta.items():
        meta[f"meta.{key}"] = value
    with open(path, "w") as handle:
        _write_meta(handle, meta)
        handle.write("# opd_cm counts\n")
        for x, c in zip(ifg.opd_cm, ifg.counts):
            handle.write(f"{float(x)!r} {float(c)!r}\n")


def read_interferogram(path: str) -> Interferogram:
    with open(path, "r") as handle:
        meta, columns = _read_header(handle)
        if columns.split() != ["opd_cm", "counts"]:
            raise QuftsError(f"unexpected columns {columns!r}")
        data = np.loadtxt(handle, ndmin=2)
    scan = ScanConfig(
        opd_max_cm=_meta_get(meta, "opd_max_cm", float),
        opd_step_cm=_meta_get(meta, "opd_step_cm", float),
        dwell_time_s=_meta_get(meta, "dwell_time_s", float),
        scans_to_average=_meta_get(meta, "scans_to_average", int),
    )
    noise = NoiseConfig(
        enabled=_meta_get(meta, "noise_enabled", bool),
        rng_seed=_meta_get(meta, "rng_seed", int),
        detector_background_cps=_meta_get(
            meta, "detector_background_cps", float
        ),
    )
    extra = {
        key[5:]: value for key, value in meta.items() if key.startswith("meta.")
    }
    ifg = Interferogram(
        opd_cm=data[:, 0], counts=data[:, 1], scan=scan, noise=noise, meta=extra
    )
    if extra.get("kind") == "detected":
        ifg.validate_detected()
    return ifg


# --- spectra ----------------------------------------------------------------

def write_spectrum(path: str, spec: AmplitudeSpectrum):
    meta = {"format": "qufts-spectrum-v1", "opd_step_cm": spec.opd_step_cm}
    for key, value in spec.meta.items():
        meta[f"meta.{key}"] = value
    with open(path, "w") as handle:
        _write_meta(handle, meta)
        handle.write("# wavenumber_cm-1 amplitude psd\n")
        for nu, amp in zip(spec.grid, spec.amplitude):
            handle.write(f"{float(nu)!r} {float(amp)!r} {float(amp * amp)!r}\n")


def read_spectrum(path: str) -> AmplitudeSpectrum:
    with open(path, "r") as handle:
        meta, columns = _read_header(handle)
        if columns.split() != ["wavenumber_cm-1", "amplitude", "psd"]:
            raise QuftsError(f"unexpected columns {columns!r}")
        data = np.loadtxt(handle, ndmin=2)
    extra = {
        key[5:]: value for key, value in meta.items() if key.startswith("meta.")
    }
    return AmplitudeSpectrum(
        grid=data[:, 0],
        amplitude=data[:, 1],
        opd_step_cm=_meta_get(meta, "opd_step_cm", float),
        meta=extra,
    )


# --- absorption coefficients ------------------------------------------------

def write_absorption(path: str, spec: AbsorptionSpectrum):
    with open(path, "w") as handle:
        handle.write("# wavenumber_cm-1 alpha_cm-1\n")
        for nu, a in zip(spec.grid, spec.alpha):
            handle.write(f"{float(nu)!r} {float(a)!r}\n")


def read_absorption(path: str) -> AbsorptionSpectrum:
    with open(path, "r") as handle:
        columns = handle.readline().lstrip("#").split()
        if columns != ["wavenumber_cm-1", "alpha_cm-1"]:
            raise QuftsError("not an absorption-coefficient file")
        data = np.loadtxt(handle, ndmin=2)
    return AbsorptionSpectrum(grid=data[:, 0], alpha=data[:, 1])


# --- transmission -----------------------------------------------------------

def write_transmission(path: str, tspec: TransmissionSpectrum):
    meta = {
        "format": "qufts-transmission-v1",
        "valid_band_lo_cm1": tspec.valid_band[0],
        "valid_band_hi_cm1": tspec.valid_band[1],
    }
    with open(path, "w") as handle:
        _write_meta(handle, meta)
        handle.write("# wavenumber_cm-1 transmission\n")
        for nu, t in zip(tspec.grid, tspec.t):
            handle.write(f"{float(nu)!r} {float(t)!r}\n")


def read_transmission(path: str) -> TransmissionSpectrum:
    with open(path, "r") as handle:
        meta, columns = _read_header(handle)
        if columns.split() != ["wavenumber_cm-1", "transmission"]:
            raise QuftsError(f"unexpected columns {columns!r}")
        data = np.loadtxt(handle, ndmin=2)
    return TransmissionSpectrum(
        grid=data[:, 0],
        t=data[:, 1],
        valid_band=(
            _meta_get(meta, "valid_band_lo_cm1", float),
            _meta_get(meta, "valid_band_hi_cm1", float),
        ),
    )


# --- fit reports ------------------------------------------------------------

def format_percent_with_uncertainty(c: float, sigma: float) -> str:
    """'0.3001(11)' style: concentration in percent to four significant
    digits, uncertainty in units of the last digit."""
    cp = 100.0 * c
    sp = 100.0 * sigma
    if cp <= 0.0:
        decimals = 4
    else:
        decimals = max(0, 3 - int(math.floor(math.log10(cp))))
    scale = 10.0**decimals
    u = int(round(sp * scale))
    return f"{cp:.{decimals}f}({max(u, 1)})"


def write_fit_report(
    path: str,
    results: dict[str, FitResult],
    bands: dict[str, tuple[float, float]],
    residual_paths: dict[str, str] | None = None,
):
    """Key-value report; residuals per species go to '<path>.<species>.residuals'
    unless residual_paths overrides."""
    with open(path, "w") as handle:
        handle.write("# qufts fit report v1\n")
        for species, fit in results.items():
            c = fit.concentrations[species]
            s = fit.sigmas[species]
            lo, hi = bands[species]
            handle.write(f"species = {species}\n")
            handle.write(f"concentration = {float(c)!r}\n")
            handle.write(f"sigma = {float(s)!r}\n")
            handle.write(
                "concentration_percent = "
                f"{format_percent_with_uncertainty(c, s)}\n"
            )
            handle.write(f"reduced_chi2 = {float(fit.reduced_chi2)!r}\n")
            handle.write(f"iterations = {fit.iterations}\n")
            handle.write(f"converged = {fit.converged}\n")
            handle.write(f"band_cm1 = {float(lo)!r}:{float(hi)!r}\n")
            handle.write("\n")
    for species, fit in results.items():
        rpath = (
            residual_paths[species]
            if residual_paths
            else f"{path}.{species}.residuals"
        )
        with open(rpath, "w") as handle:
            handle.write("# wavenumber_cm-1 delta_t\n")
            for nu, r in zip(fit.residual_grid, fit.residuals):
                handle.write(f"{float(nu)!r} {float(r)!r}\n")
