"""Unit-circle quadrature, Laurent polynomials, and the q-difference
operator D_q with its adjoint T_q.

Functions on the circle are plain callables z -> complex that accept numpy
arrays and are evaluable off the grid (at q^k z), which every operator
application needs.  Trapezoid quadrature on equispaced nodes is exact for
Laurent polynomials with degree span < N and spectrally accurate for
analytic integrands.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .qcore import qval


@dataclass(frozen=True)
class CircleGrid:
    """N equispaced nodes e^{2 pi i j / N} on |z| = 1."""

    n_nodes: int
    nodes: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = int(self.n_nodes)
        if n < 4:
            raise ValueError(f"grid needs at least 4 nodes, got {n}")
        object.__setattr__(self, "n_nodes", n)
        theta = 2.0 * np.pi * np.arange(n) / n
        object.__setattr__(self, "nodes", np.exp(1j * theta))


def _trim(min_degree: int, coeffs: np.ndarray):
    """Drop zero leading/trailing coefficients; identically zero -> ([0], deg 0)."""
    nz = np.flatnonzero(coeffs)
    if nz.size == 0:
        return 0, np.zeros(1, dtype=complex)
    lo, hi = nz[0], nz[-1]
    return min_degree + lo, coeffs[lo:hi + 1].copy()


@dataclass(frozen=True)
class LaurentPoly:
    """Finite two-sided polynomial sum_k c_k z^{min_degree + k}.

    Immutable; coefficients are stored trimmed so the leading and trailing
    entries are nonzero unless the polynomial is identically zero.
    """

    min_degree: int
    coefficients: np.ndarray

    def __post_init__(self):
        coeffs = np.atleast_1d(np.asarray(self.coefficients, dtype=complex))
        lo, coeffs = _trim(int(self.min_degree), coeffs)
        object.__setattr__(self, "min_degree", lo)
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def max_degree(self) -> int:
        return self.min_degree + len(self.coefficients) - 1

    @property
    def degree_span(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return len(self.coefficients) == 1 and self.coefficients[0] == 0

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        acc = np.zeros(z.shape, dtype=complex)
        for c in self.coefficients[::-1]:
            acc = acc * z + c
        out = acc * z**self.min_degree
        return complex(out) if out.ndim == 0 else out

    def bar(self) -> "LaurentPoly":
        """Coefficientwise complex conjugate (the bar operation)."""
        return LaurentPoly(self.min_degree, np.conj(self.coefficients))

    def coefficient(self, degree: int) -> complex:
        k = degree - self.min_degree
        if 0 <= k < len(self.coefficients):
            return complex(self.coefficients[k])
        return 0.0 + 0.0j


def contour_mean(f, grid: CircleGrid) -> complex:
    """(1/2 pi i) \\oint f(z) dz/z by the trapezoid rule: (1/N) sum f(z_j)."""
    return complex(np.mean(np.asarray(f(grid.nodes), dtype=complex)))


def inner_product_c(f, g, grid: CircleGrid) -> complex:
    """<f, g>_c = (1/N) sum_j f(z_j) conj(g(z_j)).

    On |z| = 1 conjugating the value of g coincides with evaluating the
    bar-function at 1/z, so this is the contour inner product restricted to
    the circle.
    """
    fv = np.asarray(f(grid.nodes), dtype=complex)
    gv = np.asarray(g(grid.nodes), dtype=complex)
    return complex(np.mean(fv * np.conj(gv)))


def dq_apply(f, q):
    """D_q f: z -> (f(z) - f(qz)) / ((1 - q) z)."""
    qv = qval(q)

    def df(z):
        z = np.asarray(z, dtype=complex)
        out = (np.asarray(f(z)) - np.asarray(f(qv * z))) / ((1.0 - qv) * z)
        return complex(out) if out.ndim == 0 else out

    return df


def tq_apply(f, q):
    """T_q f: z -> z (f(z) - q f(qz)) / (1 - q); the adjoint of D_q."""
    qv = qval(q)

    def tf(z):
        z = np.asarray(z, dtype=complex)
        out = z * (np.asarray(f(z)) - qv * np.asarray(f(qv * z))) / (1.0 - qv)
        return complex(out) if out.ndim == 0 else out

    return tf


def tq_power_coefficients(q, n: int) -> np.ndarray:
    """Constants A_k with (T_q^n f)(z) = z^n sum_k A_k f(q^k z).

    From T_q f(z) = (z/(1-q)) (f(z) - q f(qz)) the coefficient functions are
    A z^n with the recurrence A'_k = (A_k - q^{m+1} A_{k-1}) / (1 - q), so an
    application of T_q^n costs n+1 evaluations of f per point.
    """
    qv = qval(q)
    A = np.zeros(n + 1, dtype=float)
    A[0] = 1.0
    for m in range(n):
        prev = A.copy()
        for k in range(m + 2):
            left = prev[k] if k <= m else 0.0
            right = prev[k - 1] if k >= 1 else 0.0
            A[k] = (left - qv**(m + 1) * right) / (1.0 - qv)
    return A


def tq_iterate(f, q, n: int):
    """T_q^n f via the coefficient recurrence (O(n) evaluations per point)."""
    if n < 0:
        raise ValueError("iteration count must be nonnegative")
    if n == 0:
        return f
    qv = qval(q)
    A = tq_power_coefficients(qv, n)
    qpow = qv ** np.arange(n + 1)

    def g(z):
        z = np.asarray(z, dtype=complex)
        acc = np.zeros(z.shape, dtype=complex)
        for k in range(n + 1):
            acc = acc + A[k] * np.asarray(f(qpow[k] * z))
        out = z**n * acc
        return complex(out) if out.ndim == 0 else out

    return g


def adjoint_residual(f, g, q, grid: CircleGrid) -> float:
    """|<D_q f, g>_c - <f, T_q g>_c| on the given grid."""
    lhs = inner_product_c(dq_apply(f, q), g, grid)
    rhs = inner_product_c(f, tq_apply(g, q), grid)
    return abs(lhs - rhs)


def laurent_dq(p: LaurentPoly, q) -> LaurentPoly:
    """Exact coefficient map of D_q: z^m -> ((1 - q^m)/(1 - q)) z^{m-1}.

    The constant term is annihilated; negative degrees are handled by the
    same formula.
    """
    qv = qval(q)
    degrees = np.arange(p.min_degree, p.max_degree + 1)
    coeffs = np.zeros(len(degrees), dtype=complex)
    for i, m in enumerate(degrees):
        if m != 0:
            coeffs[i] = p.coefficients[i] * (1.0 - qv**m) / (1.0 - qv)
    return LaurentPoly(p.min_degree - 1, coeffs)
