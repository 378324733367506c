"""Peak state transfer: decision, transfer time, phase and fidelity bounds.

The decision follows the spectral characterisation: the mutual eigenvalue
support must consist of quadratic integers (a + b_r sqrt(D)) / 2 sharing
a and D, and with c_r = (b_s - b_r) / 2 and g = gcd(c_r), the parity of
c_r / g must separate the positive support (even) from the negative
support (odd). Transfer then happens at odd multiples of pi / (g sqrt(D)).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .dynamics import transition_amplitude
from .eligibility import is_eligible_matrix
from .errors import AmbiguousFit, Disconnected, OutOfRange, RecognitionFailure
from .graphs import MatrixKind, WeightedGraph, matrix
from .spectral import (
    DEFAULT_ENTRY_TOL,
    SpectralDecomposition,
    SupportClassification,
    classify_support,
    decompose,
)

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class PeakOptions:
    cluster_tol: float | None = None
    entry_tol: float = DEFAULT_ENTRY_TOL
    recog_tol: float = 1e-6
    D_max: int = 10**6
    pst_tol: float = 1e-7

    @classmethod
    def from_env(cls, environ: Mapping[str, str] | None = None, **overrides) -> PeakOptions:
        """Defaults overridden by PEAKWALK_TOL_{CLUSTER,ENTRY,RECOG,PST} then ``overrides``."""
        env = os.environ if environ is None else environ
        opts = cls()
        names = {"CLUSTER": "cluster_tol", "ENTRY": "entry_tol", "RECOG": "recog_tol", "PST": "pst_tol"}
        for suffix, attr in names.items():
            raw = env.get(f"PEAKWALK_TOL_{suffix}")
            if raw:
                opts = replace(opts, **{attr: float(raw)})
        overrides = {k: v for k, v in overrides.items() if v is not None}
        return replace(opts, **overrides)


# ---------------------------------------------------------------------------
# Quadratic integers
# ---------------------------------------------------------------------------


def squarefree_decomposition(m: int) -> tuple[int, int]:
    """Return ``(k, D)`` with m = k^2 D and D squarefree (m >= 1)."""
    if m < 1:
        raise ValueError("m must be positive")
    k, D, p = 1, 1, 2
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        k *= p ** (e // 2)
        if e % 2:
            D *= p
        p += 1 if p == 2 else 2
    return k, D * m


@dataclass(frozen=True)
class QuadraticForm:
    """theta_r = (a + b[r] * sqrt(D)) / 2 for every key r."""

    a: int
    D: int
    b: dict[int, int]

    def value(self, r: int) -> float:
        return 0.5 * (self.a + self.b[r] * math.sqrt(self.D))


def _square_roots_near(x: float, tol: float) -> list[int]:
    """Integers m >= 1 with |sqrt(m) - |x|| <= tol."""
    x = abs(x)
    lo = max(1, math.ceil((max(0.0, x - tol)) ** 2))
    hi = math.floor((x + tol) ** 2)
    return list(range(lo, hi + 1))


def recognize_quadratic(
    thetas: Sequence[float] | Mapping[int, float],
    recog_tol: float = 1e-6,
    D_max: int = 10**6,
    radius: float | None = None,
) -> QuadraticForm:
    """Find the shared quadratic-integer form of a set of eigenvalues.

    Integer sets return the canonical ``a = 0, D = 1, b_r = 2 theta_r``.
    Otherwise D is the squarefree part of the (integer) squared
    differences, and a is found by scanning b for the first value.
    ``radius`` bounds the magnitude of every eigenvalue including the
    algebraic conjugates (a - b_r sqrt(D)) / 2, which limits the scan to
    |a|, |b_r sqrt(D)| <= 2 radius; it defaults to the largest |theta_r|.
    """
    vals = dict(thetas) if isinstance(thetas, Mapping) else dict(enumerate(thetas))
    if not vals:
        raise ValueError("need at least one eigenvalue")
    if recog_tol <= 0 or D_max < 1:
        raise ValueError("recog_tol must be positive and D_max >= 1")
    keys = list(vals)
    scale = max(abs(t) for t in vals.values())
    if radius is not None:
        scale = max(scale, radius)
    if all(abs(t - round(t)) <= recog_tol for t in vals.values()):
        return QuadraticForm(0, 1, {r: 2 * round(vals[r]) for r in keys})

    ref = vals[keys[0]]
    Ds: set[int] = set()
    for r in keys[1:]:
        d = vals[r] - ref
        if abs(d) <= recog_tol:
            raise RecognitionFailure("two support eigenvalues coincide within recog_tol")
        roots = _square_roots_near(d, 2 * recog_tol)
        if not roots:
            raise RecognitionFailure(f"difference {d!r} is not the square root of an integer")
        if len(roots) > 1:
            raise AmbiguousFit(f"difference {d!r} matches sqrt of {roots}; tolerance too loose")
        Ds.add(squarefree_decomposition(roots[0])[1])
    if len(Ds) > 1:
        raise RecognitionFailure(f"differences involve distinct radicals sqrt{sorted(Ds)}")

    if Ds:
        candidates = sorted(Ds)
    else:
        # single value: D from (2 theta - a)^2 over a bounded scan of a
        candidates = []
        for a in range(-math.ceil(2 * scale) - 2, math.ceil(2 * scale) + 3):
            for m in _square_roots_near(2 * ref - a, 2 * recog_tol):
                candidates.append(squarefree_decomposition(m)[1])
        candidates = sorted(set(candidates))
    fits: list[QuadraticForm] = []
    for D in candidates:
        if D > D_max or D == 1:
            continue
        sq = math.sqrt(D)
        bound = math.ceil((4 * scale + 4) / sq)
        for b0 in range(-bound, bound + 1):
            a_real = 2 * ref - b0 * sq
            a = round(a_real)
            if abs(a_real - a) > 2 * recog_tol:
                continue
            b = {}
            for r in keys:
                br = round((2 * vals[r] - a) / sq)
                if (br - a) % 2 or abs(0.5 * (a + br * sq) - vals[r]) > recog_tol:
                    break
                b[r] = br
            else:
                fits.append(QuadraticForm(a, D, b))
    distinct = {(f.a, f.D, tuple(sorted(f.b.items()))) for f in fits}
    if not distinct:
        raise RecognitionFailure("eigenvalues are not quadratic integers with a shared form")
    if len(distinct) > 1:
        raise AmbiguousFit(f"{len(distinct)} quadratic forms fit within recog_tol")
    return fits[0]


# ---------------------------------------------------------------------------
# Results
# ---------------------------------------------------------------------------


class Verdict(str, Enum):
    PEAK = "Peak"
    NO_PEAK = "NoPeak"
    ZERO_TRANSFER = "ZeroTransfer"
    NOT_ELIGIBLE = "NotEligible"


class TransferClass(str, Enum):
    PERFECT = "PerfectST"
    PEAK_ONLY = "PeakOnly"
    NONE = "None"


def fidelity_bound(b: float) -> float:
    """Worst-case fidelity 2 sqrt(b) / (1 + b) after phase correction."""
    if not (-1e-12 <= b <= 1 + 1e-12) or math.isnan(b):
        raise OutOfRange(f"bound must lie in [0, 1], got {b!r}")
    b = min(max(b, 0.0), 1.0)
    return 2.0 * math.sqrt(b) / (1.0 + b)


def success_probability_floor(b: float) -> float:
    """Lower bound b^2 on the probability of the post-measurement state."""
    if not (-1e-12 <= b <= 1 + 1e-12) or math.isnan(b):
        raise OutOfRange(f"bound must lie in [0, 1], got {b!r}")
    return min(max(b, 0.0), 1.0) ** 2


def _pi_multiple_text(g: int, D: int, numerator: int = 1) -> str:
    ratio = Fraction(numerator, g)
    top = "pi" if ratio.numerator == 1 else f"{ratio.numerator}*pi"
    g = ratio.denominator
    if g == 1 and D == 1:
        return top
    if D == 1:
        return f"{top}/{g}"
    if g == 1:
        return f"{top}/sqrt({D})"
    return f"{top}/({g}*sqrt({D}))"


@dataclass(frozen=True)
class PeakResult:
    verdict: Verdict
    u: int
    v: int
    bound: float
    support_pos: tuple[float, ...] = ()
    support_neg: tuple[float, ...] = ()
    form: QuadraticForm | None = None
    s: int | None = None
    theta_s: float | None = None
    g: int | None = None
    tau0: float | None = None
    tau0_exact: str | None = None
    phase: float | None = None
    probability: float | None = None
    fidelity_bound: float | None = None
    reason: str = ""
    notes: tuple[str, ...] = ()
    classification: TransferClass = TransferClass.NONE
    support_index: tuple[int, ...] = field(default=(), repr=False)

    @property
    def is_peak(self) -> bool:
        return self.verdict is Verdict.PEAK

    def to_json(self) -> dict:
        form = self.form
        b_r = [form.b[r] for r in self.support_index] if form else None
        return {
            "verdict": self.verdict.value,
            "classification": self.classification.value,
            "u": self.u,
            "v": self.v,
            "tau0": self.tau0,
            "tau0_exact": self.tau0_exact,
            "phase": self.phase,
            "bound": self.bound,
            "probability": self.probability,
            "fidelity_bound": self.fidelity_bound,
            "D": form.D if form else None,
            "g": self.g,
            "a": form.a if form else None,
            "b_r": b_r,
            "theta_s": self.theta_s,
            "support_pos": list(self.support_pos),
            "support_neg": list(self.support_neg),
            "reason": self.reason,
            "notes": list(self.notes),
        }


def classify_pst(result: PeakResult, pst_tol: float = 1e-7) -> TransferClass:
    if result.verdict is not Verdict.PEAK:
        return TransferClass.NONE
    if abs(result.bound - 1.0) <= pst_tol:
        return TransferClass.PERFECT
    if result.bound < 1.0 - pst_tol:
        return TransferClass.PEAK_ONLY
    return TransferClass.NONE


# ---------------------------------------------------------------------------
# Decision
# ---------------------------------------------------------------------------


def _normalise_phase(x: float) -> float:
    p = math.fmod(x, TWO_PI)
    if p < 0:
        p += TWO_PI
    if abs(p - TWO_PI) < 1e-9 or abs(p) < 1e-9:
        return 0.0
    return p


def _base_result(dec: SpectralDecomposition, sup: SupportClassification, u: int, v: int, **kw) -> PeakResult:
    th = dec.thetas
    index = tuple(sorted(sup.pos + sup.neg))
    notes = kw.pop("notes", ())
    if sup.borderline:
        notes = notes + ("borderline: an idempotent entry lies near entry_tol; sign test unreliable",)
    fields = dict(
        u=u,
        v=v,
        bound=sup.bound,
        support_pos=tuple(float(th[r]) for r in sup.pos),
        support_neg=tuple(float(th[r]) for r in sup.neg),
        support_index=index,
        notes=notes,
    )
    fields.update(kw)
    return PeakResult(**fields)


def _decide(
    dec: SpectralDecomposition,
    sup: SupportClassification,
    u: int,
    v: int,
    form: QuadraticForm,
    s: int,
    opts: PeakOptions,
) -> PeakResult:
    th = dec.thetas
    support = sup.pos + sup.neg
    if len(support) == 1:
        return _base_result(dec, sup, u, v, verdict=Verdict.NO_PEAK, form=form,
                            reason="support has one eigenvalue")
    c = {r: (form.b[s] - form.b[r]) // 2 for r in support}
    g = math.gcd(*c.values())
    if g == 0:
        return _base_result(dec, sup, u, v, verdict=Verdict.NO_PEAK, form=form,
                            reason="support has one eigenvalue")
    notes: tuple[str, ...] = ()
    numerator = 1
    if sup.neg:
        for r in support:
            q = c[r] // g
            want_even = r in sup.pos
            if (q % 2 == 0) != want_even:
                side = "positive" if want_even else "negative"
                return _base_result(
                    dec, sup, u, v, verdict=Verdict.NO_PEAK, form=form, s=s,
                    theta_s=float(th[s]), g=g,
                    reason=f"parity test fails: c_r/g = {q} for eigenvalue {th[r]:.12g} in the {side} support",
                )
    else:
        # No odd class exists, so the parity test cannot hold as stated; all
        # phases agree exactly at the even multiples 2k*pi/(g sqrt(D)).
        numerator = 2
        notes = ("positive-support-only: peak at multiples of 2*pi/(g*sqrt(D))",)
        check = verify_at_time(dec, u, v, 2 * math.pi / (g * math.sqrt(form.D)), entry_tol=opts.entry_tol)
        if not check.is_peak:
            return _base_result(dec, sup, u, v, verdict=Verdict.NO_PEAK, form=form, s=s,
                                theta_s=float(th[s]), g=g, notes=notes,
                                reason=f"positive-only support not confirmed in time: {check.detail}")
    tau0 = numerator * math.pi / (g * math.sqrt(form.D))
    bound = sup.bound
    res = _base_result(
        dec, sup, u, v,
        verdict=Verdict.PEAK,
        form=form,
        s=s,
        theta_s=float(th[s]),
        g=g,
        tau0=tau0,
        tau0_exact=_pi_multiple_text(g, form.D, numerator),
        phase=_normalise_phase(tau0 * float(th[s])),
        probability=bound * bound,
        fidelity_bound=fidelity_bound(min(bound, 1.0)),
        notes=notes,
    )
    return replace(res, classification=classify_pst(res, opts.pst_tol))


def check_peak(
    M: np.ndarray,
    u: int,
    v: int,
    opts: PeakOptions | None = None,
    *,
    dec: SpectralDecomposition | None = None,
) -> PeakResult:
    """Decide peak state transfer between u and v for the symmetric matrix M.

    ``dec`` may carry a precomputed decomposition of M (the census reuses
    one decomposition across all vertex pairs).
    """
    opts = opts or PeakOptions()
    if u == v:
        raise ValueError("u and v must be distinct")
    if dec is None:
        dec = decompose(M, opts.cluster_tol)
    sup = classify_support(dec, u, v, opts.entry_tol)
    if sup.is_empty:
        return _base_result(dec, sup, u, v, verdict=Verdict.ZERO_TRANSFER, bound=0.0,
                            reason="all idempotent (v,u) entries vanish")
    if not sup.pos:
        return _base_result(dec, sup, u, v, verdict=Verdict.NO_PEAK,
                            reason="positive support is empty")
    support = {r: float(dec.thetas[r]) for r in sup.pos + sup.neg}
    try:
        form = recognize_quadratic(support, opts.recog_tol, opts.D_max, radius=dec.spectral_radius)
    except RecognitionFailure as exc:
        if is_eligible_matrix(M):
            return _base_result(dec, sup, u, v, verdict=Verdict.NO_PEAK,
                                reason=f"support is not a set of quadratic integers: {exc}")
        return _base_result(
            dec, sup, u, v, verdict=Verdict.NOT_ELIGIBLE,
            reason="quadratic-integer recognition failed and the characteristic "
                   "polynomial is not integral, so the negative verdict is unproven",
        )
    s = max(sup.pos, key=lambda r: dec.thetas[r])
    return _decide(dec, sup, u, v, form, s, opts)


def check_peak_graph(
    g: WeightedGraph,
    u: int | None = None,
    v: int | None = None,
    kind: MatrixKind | str = MatrixKind.ADJACENCY,
    opts: PeakOptions | None = None,
) -> PeakResult:
    """check_peak on a graph, defaulting to its designated pair."""
    if u is None or v is None:
        if g.pair is None:
            raise ValueError("graph has no designated pair; pass u and v")
        u, v = g.pair
    kind = MatrixKind.parse(kind)
    if kind is MatrixKind.LAPLACIAN:
        return check_peak_laplacian(g, u, v, opts)
    return check_peak(matrix(g, kind), u, v, opts)


def check_peak_laplacian(
    g: WeightedGraph,
    u: int,
    v: int,
    opts: PeakOptions | None = None,
    *,
    dec: SpectralDecomposition | None = None,
) -> PeakResult:
    """Laplacian specialisation with theta_s = 0, D = 1 and tau0 = pi / g.

    Raises Disconnected when the eigenvalue 0 has multiplicity above one.
    """
    opts = opts or PeakOptions()
    if u == v:
        raise ValueError("u and v must be distinct")
    L = matrix(g, MatrixKind.LAPLACIAN)
    if dec is None:
        dec = decompose(L, opts.cluster_tol)
    zero = int(np.argmin(np.abs(dec.thetas)))
    if abs(dec.thetas[zero]) > dec.cluster_tol or dec.multiplicities[zero] != 1:
        raise Disconnected("Laplacian eigenvalue 0 is not simple; the graph is disconnected")
    sup = classify_support(dec, u, v, opts.entry_tol)
    if sup.is_empty:
        return _base_result(dec, sup, u, v, verdict=Verdict.ZERO_TRANSFER, bound=0.0,
                            reason="all idempotent (v,u) entries vanish")
    th = dec.thetas
    support = sup.pos + sup.neg
    bad = [float(th[r]) for r in support if abs(th[r] - round(th[r])) > opts.recog_tol]
    if bad:
        return _base_result(dec, sup, u, v, verdict=Verdict.NO_PEAK,
                            reason=f"non-integer support eigenvalue(s) {bad}")
    if zero not in sup.pos:
        return _base_result(dec, sup, u, v, verdict=Verdict.NO_PEAK,
                            reason="eigenvalue 0 is not in the positive support")
    form = QuadraticForm(0, 1, {r: 2 * round(th[r]) for r in support})
    res = _decide(dec, sup, u, v, form, zero, opts)
    if res.is_peak:
        res = replace(res, phase=0.0)
    return res


@dataclass(frozen=True)
class TimeCheck:
    is_peak: bool
    achieved: float
    bound: float
    detail: str = ""


def verify_at_time(
    M: np.ndarray | SpectralDecomposition,
    u: int,
    v: int,
    tau: float,
    tol: float = 1e-8,
    entry_tol: float = DEFAULT_ENTRY_TOL,
) -> TimeCheck:
    """Direct time-domain test of peak transfer at ``tau``.

    Checks that tau (theta_s - theta_r) / pi is an even integer on the
    positive support and odd on the negative support, and that
    |U(tau)_{v,u}| equals the bound.
    """
    if tau <= 0:
        raise ValueError("tau must be positive")
    dec = M if isinstance(M, SpectralDecomposition) else decompose(M)
    sup = classify_support(dec, u, v, entry_tol)
    achieved = abs(transition_amplitude(dec, u, v, tau))
    if sup.is_empty or not sup.pos:
        return TimeCheck(False, achieved, sup.bound, "empty positive support")
    th = dec.thetas
    s = max(sup.pos, key=lambda r: th[r])
    for r in sup.pos + sup.neg:
        x = tau * (th[s] - th[r]) / math.pi
        k = round(x)
        if abs(x - k) > tol * max(1.0, abs(x)):
            return TimeCheck(False, achieved, sup.bound, f"tau*(theta_s - {th[r]:.12g})/pi = {x:.12g} is not an integer")
        if (k % 2 == 0) != (r in sup.pos):
            return TimeCheck(False, achieved, sup.bound, f"wrong parity {k} for eigenvalue {th[r]:.12g}")
    if abs(achieved - sup.bound) > tol * max(1.0, tau):
        return TimeCheck(False, achieved, sup.bound, "amplitude does not reach the bound")
    return TimeCheck(True, achieved, sup.bound)
