"""Spectral idempotents, the bounding matrix and mutual eigenvalue supports."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EigensolverFailure, NotSymmetric

DEFAULT_ENTRY_TOL = 1e-9


def default_cluster_tol(spectral_radius: float) -> float:
    return 1e-8 * (1.0 + spectral_radius)


@dataclass(frozen=True)
class SpectralDecomposition:
    """M = sum_r thetas[r] * idempotents[r] with distinct thetas, descending."""

    thetas: np.ndarray
    idempotents: np.ndarray  # shape (d + 1, n, n)
    cluster_tol: float

    @property
    def n(self) -> int:
        return self.idempotents.shape[1]

    @property
    def multiplicities(self) -> list[int]:
        return [int(round(np.trace(E))) for E in self.idempotents]

    @property
    def spectral_radius(self) -> float:
        return float(max(abs(self.thetas[0]), abs(self.thetas[-1])))

    def reconstruct(self) -> np.ndarray:
        return np.tensordot(self.thetas, self.idempotents, axes=1)

    def entries(self, u: int, v: int) -> np.ndarray:
        """(E_r)_{v,u} for every r."""
        return self.idempotents[:, v, u]


def decompose(M: np.ndarray, cluster_tol: float | None = None) -> SpectralDecomposition:
    """Split a real symmetric matrix into distinct eigenvalues and projectors.

    Eigenvalues closer than ``cluster_tol`` (chained, after sorting) are
    merged; the merged idempotent is the sum of the eigenvector outer
    products, and the merged eigenvalue is the cluster mean.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise NotSymmetric(f"expected a square matrix, got shape {M.shape}")
    scale = max(1.0, float(np.max(np.abs(M)))) if M.size else 1.0
    if np.max(np.abs(M - M.T), initial=0.0) > 1e-12 * scale:
        raise NotSymmetric("matrix is not symmetric to 1e-12")
    try:
        vals, vecs = np.linalg.eigh(M)
    except np.linalg.LinAlgError as exc:
        raise EigensolverFailure(str(exc)) from exc
    if cluster_tol is None:
        cluster_tol = default_cluster_tol(float(np.max(np.abs(vals), initial=0.0)))
    if cluster_tol <= 0:
        raise ValueError("cluster_tol must be positive")
    vals = vals[::-1]
    vecs = vecs[:, ::-1]
    groups: list[list[int]] = [[0]]
    for i in range(1, len(vals)):
        if vals[groups[-1][-1]] - vals[i] <= cluster_tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    thetas = np.array([vals[g].mean() for g in groups])
    idem = np.empty((len(groups), M.shape[0], M.shape[0]))
    for r, g in enumerate(groups):
        block = vecs[:, g]
        idem[r] = block @ block.T
    return SpectralDecomposition(thetas, idem, float(cluster_tol))


def bounding_matrix(dec: SpectralDecomposition) -> np.ndarray:
    """B(M) = sum_r |E_r| (entrywise absolute values)."""
    return np.abs(dec.idempotents).sum(axis=0)


@dataclass(frozen=True)
class SupportClassification:
    pos: tuple[int, ...]
    neg: tuple[int, ...]
    bound: float
    borderline: bool = False

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.pos + self.neg))

    @property
    def is_empty(self) -> bool:
        return not self.pos and not self.neg


def classify_support(
    dec: SpectralDecomposition, u: int, v: int, entry_tol: float = DEFAULT_ENTRY_TOL
) -> SupportClassification:
    """Split eigenvalue indices by the sign of (E_r)_{v,u}.

    Entries with magnitude at most ``entry_tol`` are treated as zero.
    ``borderline`` is set when some entry lies within a factor of ten of
    the tolerance, where the sign test cannot be trusted.
    """
    if entry_tol <= 0:
        raise ValueError("entry_tol must be positive")
    n = dec.n
    if not (0 <= u < n and 0 <= v < n):
        raise IndexError(f"vertex pair ({u}, {v}) out of range for n={n}")
    e = 0.5 * (dec.entries(u, v) + dec.entries(v, u))
    mags = np.abs(e)
    keep = mags > entry_tol
    pos = tuple(int(r) for r in np.flatnonzero(keep & (e > 0)))
    neg = tuple(int(r) for r in np.flatnonzero(keep & (e < 0)))
    borderline = bool(np.any((mags >= entry_tol / 10) & (mags <= entry_tol * 10)))
    return SupportClassification(pos, neg, float(mags[keep].sum()), borderline)
