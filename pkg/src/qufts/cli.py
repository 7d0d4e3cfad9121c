"""Command-line surface: simulate -> spectrum -> transmit -> snr / fit.

Every command is a pure function of its config file, input files, and
flags; with noise seeds fixed, rerunning reproduces outputs byte for
byte.  Exit codes: 0 success, 2 configuration/usage error, 3 I/O error,
4 numerical/domain failure.
"""

from __future__ import annotations

import argparse
import sys

from . import fileio, fts, retrieval
from .config import RunConfig, default_config, load_config
from .errors import ConfigError, QuftsError
from .pipeline import build_model_context, simulate_pair

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_NUMERIC = 4


def _load_cfg(path: str | None) -> RunConfig:
    if path is None:
        return default_config()
    return load_config(path)


def _parse_interval(text: str) -> tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise ConfigError(f"expected 'lo:hi', got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError:
        raise ConfigError(f"expected numbers in 'lo:hi', got {text!r}") from None
    if not lo < hi:
        raise ConfigError(f"need lo < hi in {text!r}")
    return lo, hi


def cmd_simulate(args) -> int:
    cfg = _load_cfg(args.config)
    ref, smp = simulate_pair(cfg)
    ref_path = f"{args.out}.ref.ifg"
    smp_path = f"{args.out}.smp.ifg"
    fileio.write_interferogram(ref_path, ref)
    fileio.write_interferogram(smp_path, smp)
    print(f"wrote {ref_path} and {smp_path} ({ref.counts.size} samples each)")
    return EXIT_OK


def _window_from_args(args, cfg: RunConfig) -> fts.ApodizationWindow:
    kind = args.window if args.window else cfg["apodization.kind"]
    if args.fwhm_mm_opd is not None:
        fwhm_cm = args.fwhm_mm_opd * 0.1
    else:
        fwhm_cm = cfg["apodization.fwhm_mm_opd"] * 0.1
    return fts.ApodizationWindow(
        kind=kind, fwhm_opd_cm=fwhm_cm if kind == "gaussian" else None
    )


def cmd_spectrum(args) -> int:
    cfg = _load_cfg(args.config)
    window = _window_from_args(args, cfg)
    zero_fill = args.zero_fill if args.zero_fill else cfg["apodization.zero_fill"]
    ifg = fileio.read_interferogram(args.ifg)
    spec = fts.to_spectrum(fts.apodize(ifg, window), zero_fill)
    spec.meta["ils_fwhm_cm1"] = repr(fts.ils_fwhm(window, ifg.scan.opd_max_cm))
    fileio.write_spectrum(args.out, spec)
    print(
        f"wrote {args.out} ({spec.grid.size} bins, "
        f"ILS FWHM {fts.ils_fwhm(window, ifg.scan.opd_max_cm):.4g} cm-1)"
    )
    return EXIT_OK


def cmd_transmit(args) -> int:
    sample = fileio.read_spectrum(args.sample)
    reference = fileio.read_spectrum(args.reference)
    tspec = retrieval.transmission(sample, reference, threshold=args.threshold)
    fileio.write_transmission(args.out, tspec)
    lo, hi = tspec.valid_band
    print(f"wrote {args.out} (valid band {lo:.1f}..{hi:.1f} cm-1)")
    return EXIT_OK


def cmd_snr(args) -> int:
    cfg = _load_cfg(args.config)
    window = _parse_interval(args.window) if args.window else cfg["snr.window_cm1"]
    tspec = fileio.read_transmission(args.trans)
    snr = retrieval.snr_100line(tspec, window)
    line = f"snr = {snr:.6g} (window {window[0]:g}:{window[1]:g} cm-1)"
    print(line)
    if args.out:
        with open(args.out, "w") as handle:
            handle.write("# qufts snr report v1\n")
            handle.write(f"window_cm1 = {float(window[0])!r}:{float(window[1])!r}\n")
            handle.write(f"snr = {float(snr)!r}\n")
    return EXIT_OK


def cmd_fit(args) -> int:
    cfg = _load_cfg(args.config)
    tspec = fileio.read_transmission(args.trans)
    species_list = (
        [s.strip() for s in args.species.split(",")]
        if args.species
        else list(cfg.gases.keys())
    )
    window = cfg.apodization_window()
    scan = cfg.scan_config()
    spacing = fts.ils_fwhm(window, scan.opd_max_cm)
    results: dict[str, retrieval.FitResult] = {}
    bands: dict[str, tuple[float, float]] = {}
    for species in species_list:
        if species not in cfg.gases:
            raise ConfigError(f"species {species!r} not configured")
        band = _parse_interval(args.band) if args.band else cfg.fit_band(species)
        ctx = build_model_context(cfg, [species], band)
        fit = retrieval.fit_concentration(
            tspec,
            ctx,
            {species: args.initial},
            band,
            bin_spacing_cm1=spacing,
        )
        results[species] = fit
        bands[species] = band
        pretty = fileio.format_percent_with_uncertainty(
            fit.concentrations[species], fit.sigmas[species]
        )
        status = "converged" if fit.converged else "NOT converged"
        print(
            f"{species}: c = {pretty} %  "
            f"[{fit.concentrations[species]:.6e} +- "
            f"{fit.sigmas[species]:.2e}, {status}, "
            f"{fit.iterations} iterations]"
        )
    if args.out:
        fileio.write_fit_report(args.out, results, bands)
        print(f"wrote {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qufts",
        description=(
            "Simulate and analyze Fourier-transform spectroscopy with "
            "undetected photons"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="synthesize reference + sample scans")
    p.add_argument("--config", help="run configuration file")
    p.add_argument("--out", required=True, help="output basename")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("spectrum", help="interferogram -> amplitude spectrum")
    p.add_argument("ifg", help="interferogram file")
    p.add_argument("--config", help="run configuration file (window defaults)")
    p.add_argument("--window", choices=["gaussian", "boxcar"])
    p.add_argument("--fwhm-mm-opd", type=float, help="gaussian FWHM in mm OPD")
    p.add_argument("--zero-fill", type=int, help="zero-fill factor (>= 1)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("transmit", help="sample / reference quotient")
    p.add_argument("sample", help="sample spectrum file")
    p.add_argument("reference", help="reference spectrum file")
    p.add_argument("--threshold", type=float, default=0.1,
                   help="valid-band threshold as fraction of reference peak")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_transmit)

    p = sub.add_parser("snr", help="100%%-line signal-to-noise ratio")
    p.add_argument("trans", help="transmission file")
    p.add_argument("--config", help="run configuration file (window default)")
    p.add_argument("--window", help="feature-free window 'lo:hi' in cm-1")
    p.add_argument("--out", help="optional report file")
    p.set_defaults(func=cmd_snr)

    p = sub.add_parser("fit", help="retrieve gas concentrations")
    p.add_argument("trans", help="transmission file")
    p.add_argument("--config", help="run configuration file")
    p.add_argument("--species", help="comma-separated species (default: all)")
    p.add_argument("--band", help="override fit band 'lo:hi' in cm-1")
    p.add_argument("--initial", type=float, default=1e-3,
                   help="initial concentration guess")
    p.add_argument("--out", help="optional report file")
    p.set_defaults(func=cmd_fit)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (QuftsError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
