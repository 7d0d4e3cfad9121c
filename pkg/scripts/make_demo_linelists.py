#!/usr/bin/env python3
"""Generate the bundled demo line lists (data/ch4.par, data/n2o.par).

The records are synthetic but follow the 160-character fixed-width layout
and carry realistic magnitudes: a CH4-like stretch band near 3018 cm^-1
with P/R manifolds and a dense Q branch, and a weaker N2O-like band near
2563 cm^-1 with the ~0.84 cm^-1 rotational comb of a linear molecule.
Deterministic output: rerunning reproduces the files byte for byte.
"""

import math
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from qufts.linelist import SpectralLine, format_par_record  # noqa: E402

KT_CM1 = 205.87  # kT/hc at 296 K


def ch4_lines():
    lines = []
    b_rot = 5.241

    def boltzmann(j):
        return (2 * j + 1) * math.exp(-b_rot * j * (j + 1) / KT_CM1)

    norm = max(boltzmann(j) for j in range(13))

    # R branch: manifolds of 3 components, J = 0..10
    for j in range(0, 11):
        center = 3028.75 + 9.88 * j - 0.048 * j * j
        strength = 1.05e-19 * boltzmann(j) / norm
        for k, (offset, frac) in enumerate(
            [(-0.171, 0.30), (0.0, 0.45), (0.158, 0.25)]
        ):
            lines.append(
                SpectralLine(
                    molec_id=6,
                    local_iso_id=1,
                    nu0=round(center + offset, 6),
                    sw=round(strength * frac, 22),
                    gamma_air=round(0.0612 - 0.0012 * j, 4),
                    gamma_self=round(0.078 - 0.001 * j, 3),
                    elower=round(b_rot * j * (j + 1), 4),
                    n_air=round(0.84 - 0.011 * j, 2),
                    delta_air=round(-0.0062 - 0.0002 * j, 6),
                )
            )
    # P branch: J = 1..11
    for j in range(1, 12):
        center = 3008.10 - 10.06 * j - 0.031 * j * j
        strength = 0.95e-19 * boltzmann(j) / norm
        for offset, frac in [(-0.145, 0.28), (0.0, 0.47), (0.182, 0.25)]:
            lines.append(
                SpectralLine(
                    molec_id=6,
                    local_iso_id=1,
                    nu0=round(center + offset, 6),
                    sw=round(strength * frac, 22),
                    gamma_air=round(0.0605 - 0.0011 * j, 4),
                    gamma_self=round(0.077 - 0.001 * j, 3),
                    elower=round(b_rot * j * (j + 1), 4),
                    n_air=round(0.83 - 0.010 * j, 2),
                    delta_air=round(-0.0060 - 0.0002 * j, 6),
                )
            )
    # Q branch: dense pile-up just above 3017 cm^-1, quadratically spreading
    for m in range(48):
        detune = 0.009 * m + 0.0016 * m * m
        strength = 2.6e-19 * math.exp(-m / 12.0)
        lines.append(
            SpectralLine(
                molec_id=6,
                local_iso_id=1,
                nu0=round(3017.88 + detune, 6),
                sw=round(strength, 22),
                gamma_air=round(0.0588 - 0.0004 * m, 4),
                gamma_self=round(0.075, 3),
                elower=round(b_rot * (m // 2) * (m // 2 + 1), 4),
                n_air=round(0.80 - 0.004 * m, 2),
                delta_air=round(-0.0051 - 0.0001 * m, 6),
            )
        )
    return lines


def n2o_lines():
    lines = []
    b_rot = 0.419
    band_origin = 2563.34

    def envelope(j):
        return (2 * j + 1) * math.exp(-b_rot * j * (j + 1) / KT_CM1)

    norm = max(envelope(j) for j in range(61))
    for j in range(0, 61):
        strength = 3.1e-20 * envelope(j) / norm
        if strength < 1e-23:
            continue
        gamma_air = 0.0791 - 0.00035 * j
        common = dict(
            molec_id=4,
            local_iso_id=1,
            sw=round(strength, 23),
            gamma_air=round(max(gamma_air, 0.055), 4),
            gamma_self=round(max(0.095 - 0.0004 * j, 0.06), 3),
            elower=round(b_rot * j * (j + 1), 4),
            n_air=round(max(0.78 - 0.003 * j, 0.55), 2),
            delta_air=round(-0.0018 - 0.00003 * j, 6),
        )
        # R(J)
        lines.append(
            SpectralLine(
                nu0=round(band_origin + 2 * b_rot * (j + 1) - 0.0031 * (j + 1) ** 2, 6),
                **common,
            )
        )
        # P(J), absent for J = 0
        if j >= 1:
            lines.append(
                SpectralLine(
                    nu0=round(band_origin - 2 * b_rot * j - 0.0029 * j * j, 6),
                    **common,
                )
            )
    return lines


def write(path, lines):
    lines = sorted(lines, key=lambda ln: ln.nu0)
    with open(path, "w") as handle:
        for line in lines:
            handle.write(format_par_record(line) + "\n")
    print(f"wrote {len(lines):4d} records -> {path}")


def main():
    out_dir = os.path.join(os.path.dirname(__file__), "..", "data")
    os.makedirs(out_dir, exist_ok=True)
    write(os.path.join(out_dir, "ch4.par"), ch4_lines())
    write(os.path.join(out_dir, "n2o.par"), n2o_lines())


if __name__ == "__main__":
    main()
