"""q-series kernels: q-shifted factorials, basic hypergeometric series,
and the theta sum.

All arithmetic is double-precision complex.  Argument-like inputs broadcast
over numpy arrays; the base q is always a real scalar strictly inside (0, 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import NonConvergent, PoleInDenominator

# Default tolerances: algebraic identities vs. quadrature-backed checks.
ALGEBRAIC_TOL = 1e-12
QUADRATURE_TOL = 1e-10

# Relative window used to decide that a numerator parameter equals q^{-n}
# (parameters arrive through arithmetic and are never exact).
TERMINATION_REL_TOL = 1e-9


@dataclass(frozen=True)
class QParam:
    """The base q, shared by every series; must lie strictly in (0, 1)."""

    q: float

    def __post_init__(self):
        q = float(self.q)
        if not (0.0 < q < 1.0):
            raise ValueError(f"q must satisfy 0 < q < 1 strictly, got {self.q!r}")
        object.__setattr__(self, "q", q)


def qval(q) -> float:
    """Return the validated float base from a QParam or a bare number."""
    if isinstance(q, QParam):
        return q.q
    return QParam(float(q)).q


def _maybe_scalar(x: np.ndarray):
    return complex(x) if x.ndim == 0 else x


def qpochhammer(a, q, n: int):
    """(a; q)_n = prod_{k=1}^{n} (1 - a q^{k-1}); the empty product is 1.

    `a` may be a complex scalar or array.
    """
    qv = qval(q)
    n = int(n)
    if n < 0:
        raise ValueError("qpochhammer order must be nonnegative")
    a = np.asarray(a, dtype=complex)
    out = np.ones(a.shape, dtype=complex)
    qk = 1.0
    for _ in range(n):
        out = out * (1.0 - a * qk)
        qk *= qv
    return _maybe_scalar(out)


def qpochhammer_inf(a, q, tol: float = 1e-15):
    """(a; q)_infty, truncated when max|a| q^K < tol * (1 - q).

    Tail bound: once |a| q^K < 1/2, the log of the dropped factors is at most
    2 |a| q^K / (1 - q) in absolute value, so the relative error of the
    truncated product stays below ~2*tol.
    """
    qv = qval(q)
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = np.asarray(a, dtype=complex)
    amax = float(np.max(np.abs(a))) if a.size else 0.0
    out = np.ones(a.shape, dtype=complex)
    if amax == 0.0 or not np.isfinite(amax):
        if not np.isfinite(amax):
            raise ValueError("qpochhammer_inf requires finite arguments")
        return _maybe_scalar(out)
    cutoff = tol * (1.0 - qv)
    nsteps = int(math.ceil(math.log(cutoff / amax) / math.log(qv))) if amax > cutoff else 1
    nsteps = min(max(nsteps, 1), 1_000_000)
    qk = 1.0
    for _ in range(nsteps):
        out = out * (1.0 - a * qk)
        qk *= qv
    return _maybe_scalar(out)


def qmultipochhammer(params: Sequence[complex], q, n, tol: float = 1e-15):
    """(a_1, ..., a_k; q)_n, the product of individual q-shifted factorials.

    `n` may be a nonnegative integer or math.inf / None for the infinite
    product.
    """
    infinite = n is None or n is math.inf or n == math.inf
    out = 1.0 + 0.0j
    for a in params:
        if infinite:
            out *= qpochhammer_inf(a, q, tol)
        else:
            out *= qpochhammer(a, q, n)
    return out


@dataclass(frozen=True)
class PhiSpec:
    """Parameters of a basic hypergeometric series r_phi_s.

    numerator_params has length r, denominator_params length s.  A numerator
    parameter within TERMINATION_REL_TOL of q^{-n} makes the series terminate
    at n; otherwise a truncation policy (tol / max_terms) applies.
    """

    numerator_params: tuple
    denominator_params: tuple
    q: float
    argument: complex

    def __post_init__(self):
        object.__setattr__(self, "numerator_params",
                           tuple(complex(x) for x in self.numerator_params))
        object.__setattr__(self, "denominator_params",
                           tuple(complex(x) for x in self.denominator_params))
        object.__setattr__(self, "q", qval(self.q))
        object.__setattr__(self, "argument", complex(self.argument))


def terminating_index(params, q, max_terms: int = 200):
    """Smallest n <= max_terms with some parameter equal to q^{-n}, else None."""
    qv = qval(q)
    best = None
    for x in params:
        qn = 1.0
        for n in range(max_terms + 1):
            if abs(x - qn) < TERMINATION_REL_TOL * qn:
                if best is None or n < best:
                    best = n
                break
            qn /= qv
    return best


def phi(spec: PhiSpec, max_terms: int = 200, tol: float = 1e-14) -> complex:
    """Sum a basic hypergeometric series by its term recurrence.

    Terminates exactly when a numerator parameter is q^{-n}; otherwise stops
    once |t_k| < tol * |partial sum|, or raises NonConvergent at max_terms.
    """
    qv = spec.q
    z = spec.argument
    excess = len(spec.denominator_params) + 1 - len(spec.numerator_params)
    n_stop = terminating_index(spec.numerator_params, qv, max_terms)

    t = 1.0 + 0.0j
    total = t
    k = 0
    while True:
        if n_stop is not None and k >= n_stop:
            return total
        if k >= max_terms:
            raise NonConvergent(
                f"series did not meet tol={tol} within {max_terms} terms")
        num = 1.0 + 0.0j
        for a in spec.numerator_params:
            num *= (1.0 - a * qv**k)
        den = 1.0 - qv**(k + 1)
        for b in spec.denominator_params:
            den *= (1.0 - b * qv**k)
        if abs(den) < 1e-250:
            raise PoleInDenominator(
                f"denominator factor vanished at term {k + 1}")
        t = t * (num / den) * z
        if excess:
            t *= (-(qv**k))**excess
        total += t
        k += 1
        if n_stop is None and abs(t) < tol * abs(total):
            return total


def theta_sum(z, q, tol: float = 1e-15):
    """sum_{n=-inf}^{inf} q^{n^2} z^n by symmetric truncation.

    The terms with |n| >= K are bounded by a geometric tail once
    q^{2K+1} max(|z|, 1/|z|) < 1, so the truncation error is certifiable.
    """
    qv = qval(q)
    z = np.asarray(z, dtype=complex)
    if np.any(z == 0):
        raise ValueError("theta_sum undefined at z = 0")
    m = float(np.max(np.maximum(np.abs(z), 1.0 / np.abs(z))))
    K = 1
    while qv**(K * K) * m**K > tol and K < 2000:
        K += 1
    K += 2
    out = np.ones(z.shape, dtype=complex)
    zp = np.ones_like(out)
    zm = np.ones_like(out)
    for n in range(1, K + 1):
        zp = zp * z
        zm = zm / z
        out = out + qv**(n * n) * (zp + zm)
    return _maybe_scalar(out)


def jacobi_triple_product(z, q, tol: float = 1e-15):
    """Product side of the triple product identity, in base q^2:

        (q^2; q^2)_inf * (-q z; q^2)_inf * (-q / z; q^2)_inf

    (Gasper-Rahman II.28); equals theta_sum(z, q).
    """
    qv = qval(q)
    z = np.asarray(z, dtype=complex)
    if np.any(z == 0):
        raise ValueError("jacobi_triple_product undefined at z = 0")
    q2 = qv * qv
    out = (qpochhammer_inf(q2, q2, tol)
           * np.asarray(qpochhammer_inf(-qv * z, q2, tol))
           * np.asarray(qpochhammer_inf(-qv / z, q2, tol)))
    return _maybe_scalar(np.asarray(out))
