"""Integrality test for characteristic polynomials of float matrices.

A matrix whose characteristic polynomial has integer coefficients makes
every vertex pair eligible. Floating-point coefficients overflow the
53-bit mantissa long before n = 24, so entries are first snapped to
exact values (integers or signed square roots of integers) and the
polynomial is evaluated in mpmath through a Hessenberg reduction.
"""

from __future__ import annotations

import mpmath
import numpy as np

_SNAP_TOL = 1e-12
_DPS = 80


def has_integer_entries(M: np.ndarray, tol: float = 1e-12) -> bool:
    M = np.asarray(M, dtype=float)
    return bool(np.all(np.abs(M - np.round(M)) <= tol))


def _snap(x: float) -> mpmath.mpf:
    r = round(x)
    if abs(x - r) <= _SNAP_TOL * max(1.0, abs(x)):
        return mpmath.mpf(r)
    sq = x * x
    rs = round(sq)
    if rs > 0 and abs(sq - rs) <= _SNAP_TOL * max(1.0, sq):
        root = mpmath.sqrt(rs)
        return root if x > 0 else -root
    return mpmath.mpf(x)


def charpoly_mp(M: np.ndarray) -> list[mpmath.mpf]:
    """Coefficients of det(xI - M), highest degree first, at 80 digits."""
    M = np.asarray(M, dtype=float)
    n = M.shape[0]
    with mpmath.workdps(_DPS):
        H = [[_snap(float(M[i, j])) for j in range(n)] for i in range(n)]
        # similarity reduction to upper Hessenberg form with partial pivoting
        for k in range(n - 2):
            piv = max(range(k + 1, n), key=lambda i: abs(H[i][k]))
            if H[piv][k] == 0:
                continue
            if piv != k + 1:
                H[piv], H[k + 1] = H[k + 1], H[piv]
                for row in H:
                    row[piv], row[k + 1] = row[k + 1], row[piv]
            for i in range(k + 2, n):
                f = H[i][k] / H[k + 1][k]
                if f == 0:
                    continue
                for j in range(n):
                    H[i][j] -= f * H[k + 1][j]
                for row in H:
                    row[k + 1] += f * row[i]
        # p_m(x) = (x - h_mm) p_{m-1} - sum_i h_im * prod(subdiag) * p_{i-1}
        polys: list[list[mpmath.mpf]] = [[mpmath.mpf(1)]]
        for m in range(n):
            cur = polys[m] + [mpmath.mpf(0)]
            for idx in range(len(polys[m])):
                cur[idx + 1] -= H[m][m] * polys[m][idx]
            prod = mpmath.mpf(1)
            for i in range(m - 1, -1, -1):
                prod *= H[i + 1][i]
                if prod == 0:
                    break
                coef = H[i][m] * prod
                shift = len(cur) - len(polys[i])
                for idx, c in enumerate(polys[i]):
                    cur[shift + idx] -= coef * c
            polys.append(cur)
        return polys[n]


def charpoly_is_integral(M: np.ndarray, tol: float = 1e-30) -> bool:
    """True when det(xI - M) has integer coefficients (to ``tol`` relative)."""
    with mpmath.workdps(_DPS):
        for c in charpoly_mp(M):
            if abs(c - mpmath.nint(c)) > tol * max(1, abs(c)):
                return False
    return True


def is_eligible_matrix(M: np.ndarray) -> bool:
    """Sufficient test for eligibility of every vertex pair of ``M``."""
    return has_integer_entries(M) or charpoly_is_integral(M)
