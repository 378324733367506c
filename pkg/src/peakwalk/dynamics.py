"""Time evolution U(t) = exp(itM) built from the spectral idempotents."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import TextIO

import numpy as np
from scipy.optimize import minimize_scalar

from .graphs import MatrixKind
from .spectral import SpectralDecomposition, decompose


def _as_dec(M: np.ndarray | SpectralDecomposition) -> SpectralDecomposition:
    return M if isinstance(M, SpectralDecomposition) else decompose(M)


def transition_matrix(dec: SpectralDecomposition | np.ndarray, t: float) -> np.ndarray:
    """U(t) = sum_r exp(i t theta_r) E_r."""
    dec = _as_dec(dec)
    phases = np.exp(1j * t * dec.thetas)
    return np.tensordot(phases, dec.idempotents, axes=1)


def transition_amplitude(dec: SpectralDecomposition | np.ndarray, u: int, v: int, t: float) -> complex:
    """U(t)_{v,u} without forming the full matrix."""
    dec = _as_dec(dec)
    return complex(np.exp(1j * t * dec.thetas) @ dec.entries(u, v))


def amplitude_series(dec: SpectralDecomposition | np.ndarray, u: int, v: int, times: np.ndarray) -> np.ndarray:
    dec = _as_dec(dec)
    times = np.asarray(times, dtype=float)
    out = np.empty(times.shape, dtype=complex)
    entries = dec.entries(u, v)
    # chunked to bound memory at len(times) x (d + 1)
    step = max(1, 2_000_000 // max(1, len(dec.thetas)))
    for k in range(0, len(times), step):
        out[k:k + step] = np.exp(1j * np.outer(times[k:k + step], dec.thetas)) @ entries
    return out


@dataclass(frozen=True)
class TimeSeries:
    times: np.ndarray
    values: np.ndarray
    u: int
    v: int
    kind: MatrixKind | None = None

    def argmax(self) -> tuple[float, float]:
        k = int(np.argmax(self.values))
        return float(self.times[k]), float(self.values[k])

    def write_csv(self, fh: TextIO) -> None:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["t", "probability"])
        for t, p in zip(self.times, self.values):
            writer.writerow([f"{t:.12g}", f"{p:.12g}"])

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "u": self.u,
            "v": self.v,
            "kind": self.kind.value if self.kind else None,
            "times": [float(f"{t:.12g}") for t in self.times],
            "values": [float(f"{p:.12g}") for p in self.values],
        }


def probability_series(
    M: np.ndarray | SpectralDecomposition,
    u: int,
    v: int,
    t_max: float,
    steps: int,
    kind: MatrixKind | None = None,
) -> TimeSeries:
    """|U(t)_{v,u}|^2 on the uniform grid t_k = k t_max / (steps - 1)."""
    if t_max <= 0 or steps < 2:
        raise ValueError("need t_max > 0 and steps >= 2")
    dec = _as_dec(M)
    times = np.linspace(0.0, t_max, steps)
    values = np.abs(amplitude_series(dec, u, v, times)) ** 2
    return TimeSeries(times, values, u, v, kind)


def refine_maximum(
    dec: SpectralDecomposition | np.ndarray, u: int, v: int, t_lo: float, t_hi: float
) -> tuple[float, float]:
    """Locate the local maximum of |U(t)_{v,u}|^2 inside [t_lo, t_hi]."""
    dec = _as_dec(dec)
    res = minimize_scalar(
        lambda t: -abs(transition_amplitude(dec, u, v, t)) ** 2,
        bounds=(t_lo, t_hi),
        method="bounded",
        options={"xatol": 1e-12},
    )
    return float(res.x), float(-res.fun)


def empirical_peak(
    dec: SpectralDecomposition | np.ndarray, u: int, v: int, t_max: float, steps: int = 10_000
) -> tuple[float, float]:
    """Grid maximum on [0, t_max] polished by a bounded scalar search."""
    dec = _as_dec(dec)
    series = probability_series(dec, u, v, t_max, steps)
    k = int(np.argmax(series.values))
    h = t_max / (steps - 1)
    lo, hi = max(0.0, series.times[k] - h), min(t_max, series.times[k] + h)
    t, p = refine_maximum(dec, u, v, lo, hi)
    if p < series.values[k]:
        return float(series.times[k]), float(series.values[k])
    return t, p


def sensitivity_bound(dec: SpectralDecomposition | np.ndarray, k: int) -> float:
    """2^{k+1} rho(M)^k, bounding the k-th time derivative of U(t)_{v,u}."""
    if k < 0:
        raise ValueError("k must be non-negative")
    dec = _as_dec(dec)
    return 2.0 ** (k + 1) * dec.spectral_radius ** k


def probability_derivative_bound(dec: SpectralDecomposition | np.ndarray) -> float:
    """Bound on |d/dt |U(t)_{v,u}|^2|, from |p'| <= 2 |U| |U'| <= 2 rho."""
    dec = _as_dec(dec)
    return 2.0 * dec.spectral_radius

