"""Flat key=value run configuration with dotted namespaces.

One key per physical quantity, units spelled out in the key name, no
implicit conversions.  Unknown keys are rejected.  Paths are resolved
relative to the configuration file's directory.

Defaults encode the reference instrument: finesse 290 with coupling 0.596
(enhancement ~55), 100 mW pump, 700 cm^-1 wide emission centered at
2900 cm^-1, +-0.8 cm OPD scan of 16001 samples totalling 7.6 s, 50
averaged scans, 2 cm cell at 296 K / 1 atm, Gaussian apodization of
6.8 mm FWHM in OPD.  Cell temperature and pressure are assumptions (not
measured instrument values) and are therefore explicit keys.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

from .errors import ConfigError
from .fts import ApodizationWindow
from .interferogram import DispersionConfig, NoiseConfig, ScanConfig
from .linelist import GasConditions
from .optics import CavityConfig, SpdcConfig

_BOOL_WORDS = {"true": True, "false": False, "yes": True, "no": False,
               "on": True, "off": False, "1": True, "0": False}

FIT_BAND_DEFAULTS = {
    "CH4": (2850.0, 3150.0),
    "N2O": (2500.0, 2630.0),
}


def _parse_bool(text: str) -> bool:
    try:
        return _BOOL_WORDS[text.strip().lower()]
    except KeyError:
        raise ConfigError(f"expected a boolean, got {text!r}") from None


def _parse_interval(text: str) -> tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise ConfigError(f"expected 'lo:hi', got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError:
        raise ConfigError(f"expected numeric interval, got {text!r}") from None
    if not lo < hi:
        raise ConfigError(f"interval must satisfy lo < hi, got {text!r}")
    return lo, hi


# key -> (parser, default); None default means "unset"
_SCHEMA = {
    "cavity.finesse": (float, 290.0),
    "cavity.coupling_efficiency": (float, 0.596),
    "cavity.pump_power_mw": (float, 100.0),
    "spdc.pump_wavenumber_cm1": (float, 12903.2),
    "spdc.center_cm1": (float, 2900.0),
    "spdc.fwhm_cm1": (float, 700.0),
    "spdc.shape": (str, "gaussian"),
    "spdc.max_visibility": (float, 0.8),
    "spdc.base_pair_rate": (float, 8.4e8),
    "scan.opd_max_cm": (float, 0.8),
    "scan.opd_step_um": (float, 1.0),
    "scan.dwell_s": (float, 4.75e-4),
    "scan.averages": (int, 50),
    "dispersion.beta2": (float, 2.0e-5),
    "dispersion.center_cm1": (float, 2900.0),
    "noise.enabled": (_parse_bool, True),
    "noise.seed": (int, 20220314),
    "noise.detector_background_cps": (float, 0.0),
    "cell.length_cm": (float, 2.0),
    "cell.temperature_k": (float, 296.0),
    "cell.pressure_atm": (float, 1.0),
    "apodization.kind": (str, "gaussian"),
    "apodization.fwhm_mm_opd": (float, 6.8),
    "apodization.zero_fill": (int, 4),
    "linelist.wing_cutoff_cm1": (float, 25.0),
    "fit.band_cm1": (_parse_interval, None),
    "snr.window_cm1": (_parse_interval, (3150.0, 3250.0)),
}

_GAS_FIELDS = {
    "concentration": float,
    "linelist_path": str,
    "fit_band_cm1": _parse_interval,
}

_DEFAULT_GASES = {
    "CH4": {"concentration": 0.003, "linelist_path": None, "fit_band_cm1": None},
    "N2O": {"concentration": 0.009, "linelist_path": None, "fit_band_cm1": None},
}


@dataclass
class GasSpec:
    species: str
    concentration: float
    linelist_path: str | None
    fit_band_cm1: tuple[float, float] | None

    def fit_band(self) -> tuple[float, float]:
        if self.fit_band_cm1 is not None:
            return self.fit_band_cm1
        if self.species in FIT_BAND_DEFAULTS:
            return FIT_BAND_DEFAULTS[self.species]
        raise ConfigError(
            f"no fit band configured for species {self.species!r}; "
            f"set gas.{self.species}.fit_band_cm1"
        )


@dataclass
class RunConfig:
    """Validated run configuration; build methods return module configs."""

    values: dict = field(default_factory=dict)
    gases: dict = field(default_factory=dict)
    base_dir: str = "."

    def __post_init__(self):
        merged = {key: default for key, (_, default) in _SCHEMA.items()}
        merged.update(self.values)
        self.values = merged
        if not self.gases:
            self.gases = {
                tag: GasSpec(species=tag, **spec)
                for tag, spec in _DEFAULT_GASES.items()
            }

    def __getitem__(self, key):
        return self.values[key]

    def resolve_path(self, path: str) -> str:
        if os.path.isabs(path):
            return path
        return os.path.normpath(os.path.join(self.base_dir, path))

    # --- builders ---------------------------------------------------------

    def cavity_config(self) -> CavityConfig:
        return CavityConfig(
            finesse=self["cavity.finesse"],
            coupling_efficiency=self["cavity.coupling_efficiency"],
            pump_power_w=self["cavity.pump_power_mw"] * 1e-3,
        )

    def spdc_config(self) -> SpdcConfig:
        return SpdcConfig(
            pump_wavenumber_cm1=self["spdc.pump_wavenumber_cm1"],
            idler_center_cm1=self["spdc.center_cm1"],
            bandwidth_fwhm_cm1=self["spdc.fwhm_cm1"],
            spectral_shape=self["spdc.shape"],
            base_pair_rate=self["spdc.base_pair_rate"],
            max_visibility=self["spdc.max_visibility"],
        )

    def scan_config(self) -> ScanConfig:
        return ScanConfig(
            opd_max_cm=self["scan.opd_max_cm"],
            opd_step_cm=self["scan.opd_step_um"] * 1e-4,
            dwell_time_s=self["scan.dwell_s"],
            scans_to_average=self["scan.averages"],
        )

    def dispersion_config(self) -> DispersionConfig:
        return DispersionConfig(
            beta2_rad_cm2=self["dispersion.beta2"],
            center_cm1=self["dispersion.center_cm1"],
        )

    def noise_config(self, seed_offset: int = 0) -> NoiseConfig:
        return NoiseConfig(
            enabled=self["noise.enabled"],
            rng_seed=self["noise.seed"] + seed_offset,
            detector_background_cps=self["noise.detector_background_cps"],
        )

    def gas_conditions(self, species: str) -> GasConditions:
        return GasConditions(
            temperature_k=self["cell.temperature_k"],
            pressure_atm=self["cell.pressure_atm"],
            self_mole_fraction=self.gases[species].concentration,
        )

    def apodization_window(self) -> ApodizationWindow:
        kind = self["apodization.kind"]
        fwhm = self["apodization.fwhm_mm_opd"] * 0.1  # mm -> cm
        return ApodizationWindow(
            kind=kind, fwhm_opd_cm=fwhm if kind == "gaussian" else None
        )

    def fit_band(self, species: str) -> tuple[float, float]:
        if self["fit.band_cm1"] is not None:
            return self["fit.band_cm1"]
        return self.gases[species].fit_band()


def parse_config(text: str, base_dir: str = ".") -> RunConfig:
    """Parse flat `key = value` text; '#' starts a comment."""
    values = {}
    gas_raw: dict[str, dict] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key.startswith("gas."):
            parts = key.split(".")
            if len(parts) != 3 or parts[2] not in _GAS_FIELDS:
                raise ConfigError(f"line {lineno}: unknown key {key!r}")
            species, attr = parts[1], parts[2]
            try:
                gas_raw.setdefault(species, {})[attr] = _GAS_FIELDS[attr](value)
            except ConfigError as exc:
                raise ConfigError(f"line {lineno}: {key}: {exc}") from None
            except ValueError:
                raise ConfigError(
                    f"line {lineno}: {key}: bad value {value!r}"
                ) from None
            continue
        if key not in _SCHEMA:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        parser, _ = _SCHEMA[key]
        try:
            values[key] = parser(value)
        except ConfigError as exc:
            raise ConfigError(f"line {lineno}: {key}: {exc}") from None
        except ValueError:
            raise ConfigError(f"line {lineno}: {key}: bad value {value!r}") from None

    gases = {}
    for species, attrs in gas_raw.items():
        if "concentration" not in attrs:
            raise ConfigError(f"gas.{species}.concentration is required")
        gases[species] = GasSpec(
            species=species,
            concentration=attrs["concentration"],
            linelist_path=attrs.get("linelist_path"),
            fit_band_cm1=attrs.get("fit_band_cm1"),
        )
    cfg = RunConfig(values=values, gases=gases or {}, base_dir=base_dir)
    _validate(cfg)
    return cfg


def load_config(path: str) -> RunConfig:
    with open(path, "r") as handle:
        text = handle.read()
    return parse_config(text, base_dir=os.path.dirname(os.path.abspath(path)))


def default_config(base_dir: str = ".") -> RunConfig:
    cfg = RunConfig(base_dir=base_dir)
    _validate(cfg)
    return cfg


def _validate(cfg: RunConfig):
    try:
        cfg.cavity_config()
        cfg.spdc_config()
        scan = cfg.scan_config()
        cfg.dispersion_config()
        cfg.noise_config()
        cfg.apodization_window()
        for species in cfg.gases:
            cfg.gas_conditions(species)
    except (ValueError, ConfigError) as exc:
        raise ConfigError(str(exc)) from None
    total = sum(gas.concentration for gas in cfg.gases.values())
    if total > 1.0:
        raise ConfigError(f"gas concentrations sum to {total}, must be <= 1")
    # Nyquist guard for the configured emission band
    nu_max = cfg["spdc.center_cm1"] + 1.9 * cfg["spdc.fwhm_cm1"]
    if scan.opd_step_cm > 0.5 / nu_max:
        raise ConfigError(
            f"scan.opd_step_um too coarse for emission up to {nu_max:.0f} cm^-1"
        )
