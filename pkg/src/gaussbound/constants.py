"""Closed-form constants of the Gaussian interpolation error bounds.

Everything is evaluated in log space. The improved bound reads

    |f(x) - s(x)| <= c1 * sqrt(delta) * (c2 * delta) ** (c3 / delta) * ||f||_h

for ``0 < delta <= delta0``; the classical exponential-type bound it is
compared against is ``a1 * (a2 * delta) ** (a3 / delta) * ||f||_h``.

The Gaussian here is ``h(x) = exp(-beta |x|^2)`` whose spectral measure has
density ``(pi / beta) ** (n/2) * exp(-|xi|^2 / (4 beta))``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import AdmissibilityError
from .logval import LogReal

LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
RHO = math.sqrt(3.0) / math.e
RHO1 = 1.0 / math.e
RHO2 = 3.0 ** (1.0 / 6.0) / math.e
TWO_PLUS_INV_E = 2.0 + 1.0 / math.e

_LOG_RHO = 0.5 * math.log(3.0) - 1.0
_LOG_RHO1 = -1.0
_LOG_RHO2 = math.log(3.0) / 6.0 - 1.0


def _log_factorial(k: int) -> float:
    # exact big-int factorial up to 170, log-Gamma beyond
    if k <= 170:
        return math.log(math.factorial(k))
    return math.lgamma(k + 1)


@dataclass(frozen=True)
class StirlingEnvelope:
    k: int
    lower_log: float
    upper_log: float
    exact_log: float


def stirling_envelope(k: int) -> StirlingEnvelope:
    """Logs of ``sqrt(2pi) rho1^k k^k``, ``sqrt(2pi) rho2^k k^k`` and ``k!``."""
    if not 1 <= k <= 10**6:
        raise ValueError("k must lie in 1..10**6")
    lk = math.log(k)
    return StirlingEnvelope(
        k,
        LOG_SQRT_2PI + k * _LOG_RHO1 + k * lk,
        LOG_SQRT_2PI + k * _LOG_RHO2 + k * lk,
        _log_factorial(k),
    )


def factorial_bound_22(k: int) -> tuple[float, float]:
    """``(log(sqrt(2pi) rho^k k^(k-1)), log k!)`` with ``rho = sqrt(3)/e``."""
    if not 1 <= k <= 10**6:
        raise ValueError("k must lie in 1..10**6")
    return LOG_SQRT_2PI + k * _LOG_RHO + (k - 1) * math.log(k), _log_factorial(k)


def log_unit_ball_volume(n: int) -> float:
    if n < 1:
        raise ValueError("n must be >= 1")
    return 0.5 * n * math.log(math.pi) - math.lgamma(0.5 * n + 1.0)


def unit_ball_volume(n: int) -> float:
    return math.exp(log_unit_ball_volume(n))


def _check_even(l: int):
    if l < 2 or l % 2:
        raise ValueError(f"moment order must be a positive even integer, got {l}")


def moment_exact(n: int, l: int, beta: float) -> float:
    """log of the l-th absolute moment of the Gaussian's spectral measure.

    Closed form via the Gamma function; independent of the Stirling-type bound.
    """
    _check_even(l)
    return _log_moment(n, l, beta)


def _log_moment(n: int, l: int, beta: float) -> float:
    if beta <= 0:
        raise ValueError("beta must be positive")
    return (
        0.5 * n * (math.log(math.pi) - math.log(beta))
        + math.log(n)
        + log_unit_ball_volume(n)
        + (l + n) * (math.log(2.0) + 0.5 * math.log(beta))
        - math.log(2.0)
        + math.lgamma(0.5 * (l + n))
    )


def moment_upper_bound(n: int, l: int, beta: float) -> float:
    """log of the parity-dependent closed-form upper bound on the l-th moment."""
    _check_even(l)
    if beta <= 0:
        raise ValueError("beta must be positive")
    head = 0.5 * (n + 1) * math.log(math.pi) + math.log(n) + log_unit_ball_volume(n)
    tail = 0.5 * l * math.log(beta)
    if n % 2:
        return (
            head
            + 0.5 * (l + n + 2) * math.log(2.0)
            + 0.5 * (l + n - 1) * _LOG_RHO
            + tail
            + 0.5 * (l + n - 3) * math.log(l + n - 1)
            + math.log(TWO_PLUS_INV_E)
        )
    return (
        head
        + 0.5 * (l + n + 3) * math.log(2.0)
        + 0.5 * (l + n - 2) * _LOG_RHO
        + tail
        + 0.5 * (l + n - 4) * math.log(l + n - 2)
    )


def cl_coefficient(n: int, l: int, beta: float) -> float:
    """log of ``c_l = sqrt(int |xi|^(2l) dmu) / l!``."""
    if l < 1:
        raise ValueError("l must be >= 1")
    return 0.5 * _log_moment(n, 2 * l, beta) - math.lgamma(l + 1)


@dataclass(frozen=True)
class TheoremConstants:
    n: int
    beta: float
    b0: float
    rho3: LogReal
    alpha_n: LogReal
    delta_prime_prime: LogReal
    delta0: LogReal
    c1: LogReal
    c2: LogReal
    c3: float
    rho: float = RHO
    rho1: float = RHO1
    rho2: float = RHO2

    def as_dict(self) -> dict:
        out = {"n": self.n, "beta": self.beta, "b0": self.b0,
               "rho": self.rho, "rho1": self.rho1, "rho2": self.rho2}
        for name in ("rho3", "alpha_n", "delta_prime_prime", "delta0", "c1", "c2"):
            lv = getattr(self, name)
            out[name] = lv.value
            out[f"log_{name}"] = lv.log
        out["c3"] = self.c3
        return out


def _log_delta_pp(n: int) -> float:
    log_na = math.log(n) + log_unit_ball_volume(n)
    if n % 2:
        return (
            0.5 * math.log(TWO_PLUS_INV_E)
            + 0.25 * (n - 1) * math.log(math.pi)
            + 0.5 * log_na
            + 0.25 * n * math.log(2.0)
            + 0.25 * (n - 1) * _LOG_RHO
        )
    return (
        0.25 * (n - 1) * math.log(math.pi)
        + 0.5 * log_na
        + 0.25 * (n + 1) * math.log(2.0)
        + 0.25 * (n - 2) * _LOG_RHO
    )


def _log_c2(beta: float, b0: float) -> tuple[float, float]:
    log_rho3 = 0.25 * math.log(12.0) + 0.5 * (1.0 + math.log(beta))
    log_c2 = 4 * log_rho3 + 3 * math.log(3.0) + 7 * math.log(2.0) + 3 * math.log(b0)
    return log_rho3, log_c2


def theorem_constants(n: int, beta: float, b0: float) -> TheoremConstants:
    if n < 1:
        raise ValueError("n must be >= 1")
    if not (beta > 0 and b0 > 0):
        raise ValueError("beta and b0 must be positive")
    # c2, c3, delta0 are computed without touching n
    log_rho3, log_c2 = _log_c2(beta, b0)
    log_delta0 = min(math.log(b0), -log_c2)
    log_dpp = _log_delta_pp(n)
    log_c1 = log_dpp - 0.5 * math.log(16.0 * math.pi) - 0.5 * math.log(b0)
    return TheoremConstants(
        n=n,
        beta=beta,
        b0=b0,
        rho3=LogReal.from_log(log_rho3),
        alpha_n=LogReal.from_log(log_unit_ball_volume(n)),
        delta_prime_prime=LogReal.from_log(log_dpp),
        delta0=LogReal.from_log(log_delta0),
        c1=LogReal.from_log(log_c1),
        c2=LogReal.from_log(log_c2),
        c3=b0 / 4.0,
    )


def log_bound_value(tc: TheoremConstants, delta: float, norm_f: float) -> float:
    """log of the improved bound; ``-inf`` when ``norm_f == 0``."""
    if not delta > 0:
        raise ValueError(f"delta must be positive, got {delta}")
    d0 = tc.delta0.value
    if delta > d0:
        raise AdmissibilityError(f"delta={delta!r} exceeds delta0={d0!r}", delta0=d0)
    if norm_f < 0:
        raise ValueError("norm_f must be nonnegative")
    if norm_f == 0:
        return -math.inf
    log_d = math.log(delta)
    return (
        tc.c1.log
        + 0.5 * log_d
        + (tc.c3 / delta) * (tc.c2.log + log_d)
        + math.log(norm_f)
    )


def bound_value(tc: TheoremConstants, delta: float, norm_f: float) -> float:
    return math.exp(log_bound_value(tc, delta, norm_f))


def gamma_sequence(n: int) -> int:
    """gamma_1 = 2, gamma_n = 2n(1 + gamma_{n-1})."""
    if n < 1:
        raise ValueError("n must be >= 1")
    g = 2
    for k in range(2, n + 1):
        g = 2 * k * (1 + g)
    return g


@dataclass(frozen=True)
class LegacyConstants:
    n: int
    beta: float
    b0: float
    gamma_n: int
    a1: LogReal
    a2: LogReal
    a3_over_b0: Fraction

    @property
    def a3(self) -> float:
        return float(self.a3_over_b0 * Fraction(self.b0))


def legacy_constants(n: int, beta: float, b0: float) -> LegacyConstants:
    """Classical constants; ``a1`` is taken equal to the improved bound's ``c1``."""
    if not 1 <= n <= 30:
        raise ValueError("n must lie in 1..30")
    if not (beta > 0 and b0 > 0):
        raise ValueError("beta and b0 must be positive")
    g = gamma_sequence(n)
    inner = (
        0.75 * math.log(3.0)
        + 1.0
        + 0.5 * (math.log(2.0) + _LOG_RHO + math.log(beta))
        + 0.5 * math.log(n)
        + 2.0 * n * g
    )
    log_a2 = 4.0 * inner + 3.0 * math.log(b0) + math.log(g)
    return LegacyConstants(
        n=n,
        beta=beta,
        b0=b0,
        gamma_n=g,
        a1=theorem_constants(n, beta, b0).c1,
        a2=LogReal.from_log(log_a2),
        a3_over_b0=Fraction(1, 8 * g),
    )


def log_legacy_bound(lc: LegacyConstants, delta: float, norm_f: float) -> float:
    if not delta > 0:
        raise ValueError("delta must be positive")
    if norm_f == 0:
        return -math.inf
    return lc.a1.log + (lc.a3 / delta) * (lc.a2.log + math.log(delta)) + math.log(norm_f)


@dataclass(frozen=True)
class BoundComparison:
    n: int
    beta: float
    b0: float
    log_c2: float
    log_a2: float
    c3: float
    a3: float
    log_a2_over_c2: float
    c3_over_a3: Fraction

    @property
    def improved(self) -> bool:
        return self.log_a2 > self.log_c2 and self.c3 > self.a3

    def as_row(self) -> dict:
        ln10 = math.log(10.0)
        return {
            "n": self.n,
            "beta": self.beta,
            "b0": self.b0,
            "log10_c2": self.log_c2 / ln10,
            "log10_a2": self.log_a2 / ln10,
            "c3": self.c3,
            "a3": self.a3,
            "log10_a2_over_c2": self.log_a2_over_c2 / ln10,
            "c3_over_a3": int(self.c3_over_a3) if self.c3_over_a3.denominator == 1 else float(self.c3_over_a3),
            "improved": self.improved,
            "assumption": "a1=c1",
        }


def compare_bounds(n: int, beta: float, b0: float) -> BoundComparison:
    tc = theorem_constants(n, beta, b0)
    lc = legacy_constants(n, beta, b0)
    # c3 / a3 = (b0/4) / (b0/(8 gamma_n)), evaluated exactly
    ratio = (Fraction(b0) / 4) / (lc.a3_over_b0 * Fraction(b0))
    return BoundComparison(
        n=n,
        beta=beta,
        b0=b0,
        log_c2=tc.c2.log,
        log_a2=lc.a2.log,
        c3=tc.c3,
        a3=lc.a3,
        log_a2_over_c2=lc.a2.log - tc.c2.log,
        c3_over_a3=ratio,
    )
