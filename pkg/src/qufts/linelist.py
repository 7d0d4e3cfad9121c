"""Fixed-width spectroscopic line lists and line-by-line absorption.

Records follow the 160-character fixed-width transition format used by the
standard molecular databases.  Retained columns (1-based, inclusive):

    molec_id      1-2    integer molecule id
    local_iso_id  3      integer isotopologue id
    nu0           4-15   line-center wavenumber, cm^-1
    sw            16-25  line intensity at 296 K, cm^-1/(molecule cm^-2)
    (A)           26-35  Einstein-A coefficient, ignored
    gamma_air     36-40  air-broadened HWHM, cm^-1/atm
    gamma_self    41-45  self-broadened HWHM, cm^-1/atm
    elower        46-55  lower-state energy, cm^-1
    n_air         56-59  temperature exponent of gamma_air
    delta_air     60-67  air pressure shift, cm^-1/atm

Everything past column 67 (quantum numbers, uncertainty codes, statistical
weights) is ignored.  Line intensities are used as tabulated: no
partition-sum temperature conversion is applied, so computations are meant
for temperatures near the 296 K reference.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import constants
from .errors import (
    DegenerateWidths,
    EmptyLineList,
    FieldParseError,
    GridNotUniform,
    RecordTooShort,
)
from .faddeeva import wofz_upper

RECORD_LENGTH = 160

# (name, start, stop) as 0-based half-open slices of the record
_PAR_LAYOUT = (
    ("molec_id", 0, 2, int),
    ("local_iso_id", 2, 3, int),
    ("nu0", 3, 15, float),
    ("sw", 15, 25, float),
    ("gamma_air", 35, 40, float),
    ("gamma_self", 40, 45, float),
    ("elower", 45, 55, float),
    ("n_air", 55, 59, float),
    ("delta_air", 59, 67, float),
)

_SQRT_LN2_PI = math.sqrt(math.log(2.0) / math.pi)
_SQRT_2LN2 = math.sqrt(2.0 * math.log(2.0))


@dataclass(frozen=True)
class SpectralLine:
    """One molecular transition with the broadening parameters we retain."""

    molec_id: int
    local_iso_id: int
    nu0: float
    sw: float
    gamma_air: float
    gamma_self: float
    elower: float
    n_air: float
    delta_air: float

    def __post_init__(self):
        if not self.nu0 > 0.0:
            raise ValueError(f"nu0 must be positive, got {self.nu0}")
        if self.sw < 0.0:
            raise ValueError(f"sw must be nonnegative, got {self.sw}")
        if self.gamma_air < 0.0 or self.gamma_self < 0.0:
            raise ValueError("broadening half-widths must be nonnegative")


@dataclass(frozen=True)
class LineList:
    """Transitions of one species, sorted ascending by line center."""

    species_tag: str
    lines: tuple

    def __post_init__(self):
        if len(self.lines) == 0:
            raise EmptyLineList(f"line list for {self.species_tag!r} is empty")
        ordered = tuple(sorted(self.lines, key=lambda ln: ln.nu0))
        object.__setattr__(self, "lines", ordered)

    def __len__(self):
        return len(self.lines)


@dataclass(frozen=True)
class GasConditions:
    """Thermodynamic state of the gas cell.

    self_mole_fraction sets the air/self broadening mix for the species
    whose absorption is being computed; at percent-level concentrations the
    air (buffer gas) term dominates.
    """

    temperature_k: float = constants.REFERENCE_TEMPERATURE_K
    pressure_atm: float = constants.REFERENCE_PRESSURE_ATM
    self_mole_fraction: float = 0.0

    def __post_init__(self):
        if not self.temperature_k > 0.0:
            raise ValueError("temperature must be positive")
        if not self.pressure_atm > 0.0:
            raise ValueError("pressure must be positive")
        if not 0.0 <= self.self_mole_fraction <= 1.0:
            raise ValueError("self_mole_fraction must lie in [0, 1]")


@dataclass(frozen=True)
class AbsorptionSpectrum:
    """Pure-species absorption coefficient alpha(nu) on a uniform grid.

    alpha is normalized to unit mole fraction: the intensity transmission
    of a path L at concentration c is exp(-c * alpha * L).
    """

    grid: np.ndarray
    alpha: np.ndarray

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        alpha = np.asarray(self.alpha, dtype=float)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "alpha", alpha)
        if grid.shape != alpha.shape:
            raise ValueError("grid and alpha must have identical shape")
        uniform_grid_step(grid)
        if np.any(alpha < 0.0):
            raise ValueError("alpha must be nonnegative everywhere")


def uniform_grid_step(grid: np.ndarray, rel_tol: float = 1e-8) -> float:
    """Return the step of a strictly increasing uniform grid.

    Raises GridNotUniform otherwise.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 2:
        raise GridNotUniform("grid must be 1-d with at least two points")
    steps = np.diff(grid)
    step = steps[0]
    if step <= 0.0 or np.any(np.abs(steps - step) > rel_tol * abs(step)):
        raise GridNotUniform("grid must be strictly increasing with uniform step")
    return float(step)


def _parse_field(record: str, name: str, start: int, stop: int, cast, index: int):
    text = record[start:stop]
    try:
        return cast(text)
    except ValueError:
        raise FieldParseError(name, f"{start + 1}-{stop}", text, index) from None


def parse_par_record(record: str, record_index: int = 0) -> SpectralLine:
    """Parse one 160-character fixed-width transition record."""
    if len(record) < RECORD_LENGTH:
        raise RecordTooShort(len(record), record_index)
    values = {
        name: _parse_field(record, name, start, stop, cast, record_index)
        for name, start, stop, cast in _PAR_LAYOUT
    }
    try:
        return SpectralLine(**values)
    except ValueError as exc:
        raise FieldParseError("record", "1-67", str(exc), record_index) from None


def _strip_leading_zero(text: str, width: int) -> str:
    # Fortran-style field narrowing: drop the zero before the decimal point
    # when the value would not otherwise fit the column width.
    if len(text) > width:
        text = text.replace("0.", ".", 1)
    return text.rjust(width)


def format_par_record(line: SpectralLine) -> str:
    """Serialize the retained fields back into the fixed-width layout.

    Ignored columns (Einstein-A, quantum numbers, ...) are blank-filled, so
    parse -> format is idempotent on the retained column ranges.
    """
    nu0 = f"{line.nu0:12.6f}"
    sw = f"{line.sw:10.3E}"
    gamma_air = _strip_leading_zero(f"{line.gamma_air:6.4f}", 5)
    gamma_self = _strip_leading_zero(f"{line.gamma_self:5.3f}", 5)
    elower = f"{line.elower:10.4f}"
    n_air = f"{line.n_air:4.2f}"
    delta_air = _strip_leading_zero(f"{line.delta_air:8.6f}", 8)
    record = (
        f"{line.molec_id:2d}{line.local_iso_id:1d}{nu0}{sw}"
        + " " * 10
        + f"{gamma_air}{gamma_self}{elower}{n_air}{delta_air}"
    )
    return record.ljust(RECORD_LENGTH)


def load_linelist(source, species_tag: str) -> LineList:
    """Read fixed-width records from a text stream, path, or string list.

    Blank lines are skipped; parse errors carry the 1-based line number.
    """
    if isinstance(source, (str,)):
        with open(source, "r") as handle:
            return load_linelist(handle, species_tag)
    if isinstance(source, io.TextIOBase) or hasattr(source, "read"):
        rows: Iterable[str] = source
    else:
        rows = source
    lines = []
    for lineno, row in enumerate(rows, start=1):
        row = row.rstrip("\n")
        if not row.strip():
            continue
        lines.append(parse_par_record(row, record_index=lineno))
    if not lines:
        raise EmptyLineList(f"no records found for species {species_tag!r}")
    return LineList(species_tag=species_tag, lines=tuple(lines))


def voigt_profile(detuning, doppler_hwhm: float, lorentz_hwhm: float):
    """Area-normalized Voigt profile value(s) at the given detuning (cm).

    Convolution of a Gaussian of HWHM doppler_hwhm with a Lorentzian of
    HWHM lorentz_hwhm, integrating to 1 over detuning.  Either width may be
    zero (the profile degenerates to the other shape) but not both.
    Relative accuracy is limited only by the complex probability function
    backing it (well below 1e-6, see qufts.faddeeva).
    """
    if doppler_hwhm < 0.0 or lorentz_hwhm < 0.0:
        raise ValueError("half-widths must be nonnegative")
    if doppler_hwhm == 0.0 and lorentz_hwhm == 0.0:
        raise DegenerateWidths("Voigt profile needs at least one nonzero width")
    detuning_arr = np.asarray(detuning, dtype=float)
    scalar = detuning_arr.ndim == 0
    detuning_arr = np.atleast_1d(detuning_arr)

    if lorentz_hwhm == 0.0:
        value = (_SQRT_LN2_PI / doppler_hwhm) * np.exp(
            -math.log(2.0) * (detuning_arr / doppler_hwhm) ** 2
        )
    elif doppler_hwhm == 0.0:
        value = (lorentz_hwhm / math.pi) / (detuning_arr**2 + lorentz_hwhm**2)
    else:
        sigma = doppler_hwhm / _SQRT_2LN2
        x = detuning_arr / (sigma * math.sqrt(2.0))
        y = lorentz_hwhm / (sigma * math.sqrt(2.0))
        value = wofz_upper(x, np.full_like(x, y)).real / (
            sigma * math.sqrt(2.0 * math.pi)
        )

    if scalar:
        return float(value[0])
    return value


def doppler_hwhm(nu0: float, temperature_k: float, molar_mass_g_per_mol: float) -> float:
    """Doppler HWHM nu0 * sqrt(2 ln2 kB T / (m c^2)) in cm^-1."""
    mass_kg = molar_mass_g_per_mol * 1e-3 / constants.AVOGADRO_PER_MOL
    return nu0 * math.sqrt(
        2.0
        * math.log(2.0)
        * constants.BOLTZMANN_J_PER_K
        * temperature_k
        / (mass_kg * constants.SPEED_OF_LIGHT_M_PER_S**2)
    )


def _molar_mass_for(linelist: LineList, override: float | None) -> float:
    if override is not None:
        return override
    tag = linelist.species_tag.upper()
    if tag in constants.MOLAR_MASS_G_PER_MOL:
        return constants.MOLAR_MASS_G_PER_MOL[tag]
    molec_id = linelist.lines[0].molec_id
    if molec_id in constants.MOLAR_MASS_BY_MOLEC_ID:
        return constants.MOLAR_MASS_BY_MOLEC_ID[molec_id]
    raise ValueError(
        f"unknown molar mass for species {linelist.species_tag!r}; "
        "pass molar_mass_g_per_mol explicitly"
    )


def absorption_coefficient(
    linelist: LineList,
    grid: np.ndarray,
    cond: GasConditions,
    wing_cutoff_cm1: float = 25.0,
    use_self_broadening: bool = True,
    apply_pressure_shift: bool = True,
    molar_mass_g_per_mol: float | None = None,
) -> AbsorptionSpectrum:
    """Sum Voigt lines into the unit-mole-fraction absorption coefficient.

    alpha(nu) = n_tot * sum_j sw_j * V(nu - nu0_j - delta_j p; gD_j, gL_j)
    with n_tot = p/(kB T) the total number density, Doppler HWHM from the
    cell temperature, and Lorentz HWHM

        gL = (296/T)^n_air * p * (gamma_air (1-x) + gamma_self x)

    mixed by the species mole fraction x.  Line contributions farther than
    wing_cutoff_cm1 from a grid point are skipped there.  Lines are
    accumulated in ascending-nu0 order so results are reproducible
    independent of any chunking a caller applies to the grid.
    """
    if len(linelist) == 0:
        raise EmptyLineList(f"line list for {linelist.species_tag!r} is empty")
    grid = np.asarray(grid, dtype=float)
    uniform_grid_step(grid)
    molar_mass = _molar_mass_for(linelist, molar_mass_g_per_mol)

    t_ratio = constants.REFERENCE_TEMPERATURE_K / cond.temperature_k
    x_self = cond.self_mole_fraction if use_self_broadening else 0.0
    pressure = cond.pressure_atm

    alpha = np.zeros_like(grid)
    for line in linelist.lines:
        center = line.nu0
        if apply_pressure_shift:
            center = center + line.delta_air * pressure
        lo = np.searchsorted(grid, center - wing_cutoff_cm1, side="left")
        hi = np.searchsorted(grid, center + wing_cutoff_cm1, side="right")
        if hi <= lo or line.sw == 0.0:
            continue
        gamma_l = (
            t_ratio**line.n_air
            * pressure
            * (line.gamma_air * (1.0 - x_self) + line.gamma_self * x_self)
        )
        gamma_d = doppler_hwhm(line.nu0, cond.temperature_k, molar_mass)
        alpha[lo:hi] += line.sw * voigt_profile(
            grid[lo:hi] - center, gamma_d, gamma_l
        )

    n_tot = constants.total_number_density_cm3(cond.temperature_k, cond.pressure_atm)
    alpha *= n_tot
    # guard against negative round-off dust from the profile wings
    np.maximum(alpha, 0.0, out=alpha)
    return AbsorptionSpectrum(grid=grid, alpha=alpha)
