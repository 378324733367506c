"""Exact ground truths for the X_n weighted paths and the G_n family.

Everything here is computed with Python integers and fractions; square
roots and pi enter only at the very end, as a single real factor. None
of it calls the numeric engine, so it can be used to validate it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import BadParam

XN_PRACTICAL_MAX = 64


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial with integer coefficients, lowest degree first."""

    coefficients: tuple[int, ...] = ()

    def __init__(self, coefficients: Iterable[int] = ()):
        coeffs = [int(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def x(cls) -> IntPolynomial:
        return cls((0, 1))

    @classmethod
    def constant(cls, c: int) -> IntPolynomial:
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def __add__(self, other: IntPolynomial | int) -> IntPolynomial:
        other = _lift(other)
        a, b = self.coefficients, other.coefficients
        size = max(len(a), len(b))
        return IntPolynomial(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(size)
        )

    __radd__ = __add__

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(-c for c in self.coefficients)

    def __sub__(self, other: IntPolynomial | int) -> IntPolynomial:
        return self + (-_lift(other))

    def __rsub__(self, other: int) -> IntPolynomial:
        return _lift(other) - self

    def __mul__(self, other: IntPolynomial | int) -> IntPolynomial:
        other = _lift(other)
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        terms = []
        for d in range(self.degree, -1, -1):
            c = self.coefficients[d]
            if c == 0:
                continue
            mag = abs(c)
            body = "" if mag == 1 and d > 0 else str(mag)
            if d == 1:
                body += "x"
            elif d > 1:
                body += f"x^{d}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


def _lift(p: IntPolynomial | int) -> IntPolynomial:
    return p if isinstance(p, IntPolynomial) else IntPolynomial.constant(int(p))


def _check_n(n: int, lo: int = 1) -> int:
    if isinstance(n, bool) or not isinstance(n, int) or n < lo:
        raise BadParam(f"expected an integer n >= {lo}, got {n!r}")
    return n


# ---------------------------------------------------------------------------
# X_n: characteristic polynomial via the two interleaved recurrences
# ---------------------------------------------------------------------------


def xn_recursion_polys(n: int) -> tuple[list[IntPolynomial], list[IntPolynomial]]:
    """Return ``(p, q)`` for X_n.

    ``p[k]`` is det(xI - A) for the leading 2k x 2k block of the X_n
    adjacency matrix and ``q[k]`` the same for the (2k+1) x (2k+1) block:

        p_0 = 1,  q_0 = x,
        p_k = x q_{k-1} - k(n-k+1) p_{k-1}   (1 <= k <= n),
        q_k = x p_k     - k(n-k)   q_{k-1}   (1 <= k <= n-1).
    """
    _check_n(n)
    x = IntPolynomial.x()
    p = [IntPolynomial.constant(1)]
    q = [x]
    for k in range(1, n + 1):
        p.append(x * q[k - 1] - k * (n - k + 1) * p[k - 1])
        if k <= n - 1:
            q.append(x * p[k] - k * (n - k) * q[k - 1])
    return p, q


def xn_charpoly(n: int) -> IntPolynomial:
    """Characteristic polynomial of the X_n adjacency matrix, in exact integers."""
    return xn_recursion_polys(n)[0][n]


def product_of_squares(n: int) -> IntPolynomial:
    """prod_{k=1}^n (x^2 - k^2)."""
    _check_n(n, 0)
    out = IntPolynomial.constant(1)
    for k in range(1, n + 1):
        out = out * IntPolynomial((-k * k, 0, 1))
    return out


def catalan(n: int) -> int:
    _check_n(n, 0)
    return math.factorial(2 * n) // (math.factorial(n) * math.factorial(n + 1))


def xn_idempotent_coefficient(n: int, k: int) -> Fraction:
    """Rational r with (E_{+-k})_{w_1, w_n} = r * sqrt(n) on X_n."""
    _check_n(n)
    if isinstance(k, bool) or not isinstance(k, int) or not 1 <= k <= n:
        raise BadParam(f"need 1 <= k <= n, got k={k!r}, n={n}")
    sign = -1 if (n - k) % 2 else 1
    f = math.factorial(n - 1)
    return Fraction(sign * k * k * f * f * math.comb(2 * n, n + k), math.factorial(2 * n))


def xn_idempotent_entry(n: int, k: int) -> float:
    """(E_{+-k})_{w_1, w_n}, the same for eigenvalues k and -k."""
    return float(xn_idempotent_coefficient(n, k)) * math.sqrt(n)


def xn_bound_coefficient(n: int) -> Fraction:
    """Rational r with B_{w_1, w_n} = r * sqrt(n), summed from the exact entries."""
    _check_n(n)
    return 2 * sum(abs(xn_idempotent_coefficient(n, k)) for k in range(1, n + 1))


def xn_bound_closed_form(n: int) -> float:
    """2 * 4^{n-1} / (sqrt(n) (n+1) C_n), evaluated as one exact fraction."""
    _check_n(n)
    return float(Fraction(2 * 4 ** (n - 1), (n + 1) * catalan(n))) / math.sqrt(n)


def xn_bound(n: int) -> float:
    """B_{w_1, w_n} of X_n via B(1) = 1, B(m+1) = 2 sqrt(m(m+1)) / (2m+1) * B(m)."""
    _check_n(n)
    b = 1.0
    for m in range(1, n):
        b *= 2.0 * math.sqrt(m * (m + 1)) / (2 * m + 1)
    return b


XN_BOUND_LIMIT = math.sqrt(math.pi) / 2


def k2_binomial_sum(n: int) -> int:
    """sum_{k=1}^n k^2 binom(2n, n+k); equals n 4^{n-1}."""
    _check_n(n)
    return sum(k * k * math.comb(2 * n, n + k) for k in range(1, n + 1))


def pascal_double_step(n: int, k: int) -> tuple[int, int]:
    """Both sides of binom(2n+2, n+k+1) = binom(2n, n+k-1) + 2 binom(2n, n+k) + binom(2n, n+k+1)."""

    def c(a: int, b: int) -> int:
        return math.comb(a, b) if 0 <= b <= a else 0

    lhs = c(2 * n + 2, n + k + 1)
    rhs = c(2 * n, n + k - 1) + 2 * c(2 * n, n + k) + c(2 * n, n + k + 1)
    return lhs, rhs


@dataclass(frozen=True)
class XnFacts:
    n: int
    eigenvalues: tuple[int, ...]
    idempotent_entries: dict[int, float] = field(repr=False)
    bound: float
    tau0: float
    theta_s: int
    phase: float
    probability: float

    def to_json(self) -> dict:
        return {
            "family": "xn",
            "n": self.n,
            "eigenvalues": list(self.eigenvalues),
            "idempotent_entries": {str(k): self.idempotent_entries[k] for k in sorted(self.idempotent_entries)},
            "bound": self.bound,
            "tau0": self.tau0,
            "tau0_exact": "pi",
            "theta_s": self.theta_s,
            "phase": self.phase,
            "probability": self.probability,
        }


def xn_facts(n: int) -> XnFacts:
    """Oracle summary for the pair (w_1, w_n) of X_n.

    Eigenvalue k has sign (-1)^{n-k} at (w_1, w_n), so k = n is always in
    the positive support and U(pi) = e^{i pi n} B. The phase is therefore
    0 for even n and pi for odd n.
    """
    _check_n(n)
    entries = {k: xn_idempotent_entry(n, k) for k in range(1, n + 1)}
    bound = xn_bound(n)
    return XnFacts(
        n=n,
        eigenvalues=tuple(range(n, 0, -1)) + tuple(range(-1, -n - 1, -1)),
        idempotent_entries=entries,
        bound=bound,
        tau0=math.pi,
        theta_s=n,
        phase=math.pi * (n % 2),
        probability=bound * bound,
    )


# ---------------------------------------------------------------------------
# G_n: n pendant K2 copies joined to a twin pair
# ---------------------------------------------------------------------------


def _square_part(m: int) -> tuple[int, int]:
    # largest k with k^2 | m, found directly rather than by factoring
    k = math.isqrt(m)
    while m % (k * k):
        k -= 1
    return k, m // (k * k)


@dataclass(frozen=True)
class GnFacts:
    n: int
    spectrum: tuple[float, ...]
    bound: Fraction
    tau0: float
    g: int
    D: int

    @property
    def probability(self) -> Fraction:
        return self.bound * self.bound

    def to_json(self) -> dict:
        tau_text = f"pi/{self.g}" if self.D == 1 else (
            f"pi/sqrt({self.D})" if self.g == 1 else f"pi/({self.g}*sqrt({self.D}))"
        )
        return {
            "family": "gn",
            "n": self.n,
            "spectrum": list(self.spectrum),
            "bound": float(self.bound),
            "bound_exact": f"{self.bound.numerator}/{self.bound.denominator}",
            "tau0": self.tau0,
            "tau0_exact": tau_text,
            "g": self.g,
            "D": self.D,
            "probability": float(self.probability),
        }


def gn_facts(n: int) -> GnFacts:
    """Distinct eigenvalues, bound and peak time for the twin pair of G_n.

    At the twin pair, +-sqrt(2n+1) each carry entry n^2/(4n^2+2n) and 0
    carries -n/(2n+1). The eigenvalues +-1 (present only for n >= 2)
    vanish there, so g^2 D = 2n+1.
    """
    _check_n(n)
    r = math.sqrt(2 * n + 1)
    spectrum = (r, 1.0, 0.0, -1.0, -r) if n >= 2 else (r, 0.0, -r)
    bound = 2 * Fraction(n * n, 4 * n * n + 2 * n) + Fraction(n, 2 * n + 1)
    g, D = _square_part(2 * n + 1)
    return GnFacts(n=n, spectrum=spectrum, bound=bound, tau0=math.pi / r, g=g, D=D)
