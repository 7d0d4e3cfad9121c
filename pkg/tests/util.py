"""Shared test helpers: independent oracles and waveform measurements."""

import numpy as np
from scipy.integrate import quad
from scipy.signal import hilbert


def voigt_quadrature(detuning, gamma_d, gamma_l):
    """Independent Voigt oracle: adaptive-quadrature convolution of an
    area-normalized Gaussian (HWHM gamma_d) with a Lorentzian (HWHM
    gamma_l).  Deliberately ignorant of the package implementation."""
    ln2 = np.log(2.0)

    def integrand(t):
        gauss = np.sqrt(ln2 / np.pi) / gamma_d * np.exp(-ln2 * (t / gamma_d) ** 2)
        lorentz = gamma_l / np.pi / ((detuning - t) ** 2 + gamma_l**2)
        return gauss * lorentz

    span = 60.0 * max(gamma_d, gamma_l) + abs(detuning)
    value, _ = quad(
        integrand,
        -span,
        span,
        points=[0.0, detuning],
        limit=400,
        epsabs=1e-14,
        epsrel=1e-12,
    )
    return value


def fwhm_by_crossings(x, y):
    """FWHM of a single-peaked curve via linearly interpolated half-max
    crossings."""
    y = np.asarray(y, dtype=float)
    x = np.asarray(x, dtype=float)
    peak = np.argmax(y)
    half = y[peak] / 2.0

    def cross(idx_range):
        for i in idx_range:
            if (y[i] - half) * (y[i + 1] - half) <= 0 and y[i] != y[i + 1]:
                frac = (half - y[i]) / (y[i + 1] - y[i])
                return x[i] + frac * (x[i + 1] - x[i])
        raise AssertionError("no half-max crossing found")

    left = cross(range(peak, 0, -1))
    right = cross(range(peak, y.size - 1))
    return right - left, 0.5 * (left + right)


def envelope(counts):
    """Magnitude of the analytic signal of the mean-subtracted trace."""
    trace = np.asarray(counts, dtype=float)
    return np.abs(hilbert(trace - trace.mean()))


def envelope_fwhm_cm(ifg):
    """FWHM (cm of OPD) of an interferogram's centerburst envelope."""
    width, _ = fwhm_by_crossings(ifg.opd_cm, envelope(ifg.counts))
    return width
