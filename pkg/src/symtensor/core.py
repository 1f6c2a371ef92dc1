"""Flattened dense tensor/matrix algebra on small spaces.

Order-k tensors over R^n are stored as length-n^k coefficient vectors in
row-major order (multi-index (i_1, ..., i_k) maps to sum_m i_m * n^(k-m)
with 0-based indices).  Linear maps on such tensors are stored as dense
n^k x n^k matrices.  Everything is double precision; rational values are
recovered only at display time (see :func:`rational_snap`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import math

import numpy as np

SUPPORTED_ORDERS = (2, 4, 5, 6)

_SURD_TEXT = {1: "", 2: "√2", 3: "√3"}


class NonOrthogonalError(ValueError):
    """Raised when a matrix expected to be orthogonal is not."""

    def __init__(self, residual: float):
        self.residual = float(residual)
        super().__init__(f"matrix is not orthogonal: ||Q^T Q - I||_inf = {residual:.3e}")


class NotAProjectorError(ValueError):
    """Raised when an operator expected to be idempotent is not."""

    def __init__(self, residual: float):
        self.residual = float(residual)
        super().__init__(f"operator is not idempotent: ||A^2 - A||_inf = {residual:.3e}")


@dataclass(frozen=True)
class TolerancePolicy:
    """Numerical tolerance knobs shared across the library.

    Attributes
    ----------
    zero_tol : float
        Relative cutoff below which a coefficient or singular value is
        treated as zero.
    equality_tol : float
        Absolute tolerance for matching a float against a snapped
        rational candidate.
    snap_denominator_bound : int
        Largest denominator considered by :func:`rational_snap`.
    """

    zero_tol: float = 1e-9
    equality_tol: float = 1e-9
    snap_denominator_bound: int = 64

    def __post_init__(self):
        if not 0.0 < self.zero_tol <= 1e-6:
            raise ValueError(f"zero_tol must lie in (0, 1e-6], got {self.zero_tol}")
        if self.equality_tol <= 0.0:
            raise ValueError("equality_tol must be positive")
        if self.snap_denominator_bound < 1:
            raise ValueError("snap_denominator_bound must be >= 1")


DEFAULT_TOL = TolerancePolicy()


@dataclass(frozen=True, eq=False)
class FlatTensor:
    """Order-``k`` tensor over R^``n`` as a flat coefficient vector.

    Parameters
    ----------
    n : int
        Ambient dimension (2 or 3).
    k : int
        Tensor order.
    coeffs : ``(n**k,)`` ndarray
        Row-major flattened coefficients.
    """

    n: int
    k: int
    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.coeffs, dtype=float).reshape(-1)
        if arr.shape != (self.n**self.k,):
            raise ValueError(
                f"coeff vector has length {arr.size}, expected {self.n}^{self.k} = {self.n**self.k}"
            )
        if not np.all(np.isfinite(arr)):
            raise ValueError("tensor coefficients must be finite")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs", arr)

    @classmethod
    def from_array(cls, arr) -> "FlatTensor":
        """Build from a dense ``k``-dimensional array with equal axis lengths."""
        arr = np.asarray(arr, dtype=float)
        n = arr.shape[0]
        if arr.shape != (n,) * arr.ndim:
            raise ValueError(f"array shape {arr.shape} is not cubical")
        return cls(n=n, k=arr.ndim, coeffs=arr.reshape(-1))

    def reshaped(self) -> np.ndarray:
        """Dense view with shape ``(n,) * k``."""
        return self.coeffs.reshape((self.n,) * self.k)

    def norm_inf(self) -> float:
        return float(np.max(np.abs(self.coeffs))) if self.coeffs.size else 0.0


@dataclass(frozen=True, eq=False)
class FlatOperator:
    """Linear map on order-``k`` tensors, stored as an n^k x n^k matrix."""

    n: int
    k: int
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        dim = self.n**self.k
        if m.shape != (dim, dim):
            raise ValueError(f"operator matrix has shape {m.shape}, expected ({dim}, {dim})")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.n**self.k

    def apply(self, t: FlatTensor) -> FlatTensor:
        if (t.n, t.k) != (self.n, self.k):
            raise ValueError(
                f"operator on order-{self.k} tensors over R^{self.n} cannot act on "
                f"order-{t.k} tensor over R^{t.n}"
            )
        return FlatTensor(self.n, self.k, self.matrix @ t.coeffs)

    def compose(self, other: "FlatOperator") -> "FlatOperator":
        if (other.n, other.k) != (self.n, self.k):
            raise ValueError("operator shape mismatch in composition")
        return FlatOperator(self.n, self.k, self.matrix @ other.matrix)

    def idempotency_residual(self) -> float:
        return float(np.max(np.abs(self.matrix @ self.matrix - self.matrix)))


def orthogonality_residual(q: np.ndarray) -> float:
    q = np.asarray(q, dtype=float)
    return float(np.max(np.abs(q.T @ q - np.eye(q.shape[0]))))


def kron_power(q: np.ndarray, k: int) -> FlatOperator:
    """k-fold Kronecker power of an orthogonal matrix as a flat operator.

    Returns the n^k x n^k matrix representing the action
    ``X_{i_1...i_k} -> Q_{i_1 a_1} ... Q_{i_k a_k} X_{a_1...a_k}`` on
    flattened tensors.

    Raises
    ------
    NonOrthogonalError
        If ``Q^T Q`` deviates from the identity by more than 1e-12.
    ValueError
        If the order is outside the supported set ``{2, 4, 5, 6}``.
    """
    q = np.asarray(q, dtype=float)
    if q.ndim != 2 or q.shape[0] != q.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {q.shape}")
    res = orthogonality_residual(q)
    if res > 1e-12:
        raise NonOrthogonalError(res)
    if k not in SUPPORTED_ORDERS:
        raise ValueError(f"unsupported tensor order {k}; expected one of {SUPPORTED_ORDERS}")
    out = q
    for _ in range(k - 1):
        out = np.kron(out, q)
    return FlatOperator(q.shape[0], k, out)


def operator_trace(a: FlatOperator) -> float:
    """Sum of diagonal entries."""
    return float(np.trace(a.matrix))


def image_basis(a: FlatOperator, tol: TolerancePolicy = DEFAULT_TOL) -> list[FlatTensor]:
    """Orthonormal basis of the column space of a projector.

    The input must be idempotent within 1e-6.  The basis cardinality is the
    numerical rank: singular values are kept while they exceed
    ``tol.zero_tol`` relative to the largest one.
    """
    res = a.idempotency_residual()
    if res >= 1e-6:
        raise NotAProjectorError(res)
    u, s, _ = np.linalg.svd(a.matrix)
    # idempotent operators have singular values >= 1 or ~ 0, so a leading
    # singular value below 1/2 can only be roundoff around the zero operator
    if s.size == 0 or s[0] < 0.5:
        return []
    rank = int(np.sum(s > tol.zero_tol * s[0]))
    return [FlatTensor(a.n, a.k, u[:, j]) for j in range(rank)]


@dataclass(frozen=True)
class SnappedValue:
    """Display form of a float: ``numerator/denominator * surd``.

    ``exact`` is False when no rational (or sqrt(2)/sqrt(3) multiple)
    matched, in which case the raw float is kept verbatim.
    """

    value: float
    text: str
    exact: bool
    numerator: int = 0
    denominator: int = 1
    surd: int = 1

    def __float__(self) -> float:
        return self.value


def _format_snap(num: int, den: int, surd: int) -> str:
    if num == 0:
        return "0"
    sign = "-" if num < 0 else ""
    num = abs(num)
    if surd == 1:
        body = f"{num}" if den == 1 else f"{num}/{den}"
    else:
        root = _SURD_TEXT[surd]
        head = root if num == 1 else f"{num}{root}"
        body = head if den == 1 else f"{head}/{den}"
    return sign + body


def rational_snap(x: float, tol: TolerancePolicy = DEFAULT_TOL) -> SnappedValue:
    """Snap a float to p/q, p/q*sqrt(2) or p/q*sqrt(3) for display.

    Denominators are bounded by ``tol.snap_denominator_bound``; a candidate
    is accepted when it matches ``x`` within ``tol.equality_tol``.  Values
    with no match are returned verbatim and flagged unsnapped.
    """
    x = float(x)
    if abs(x) >= 1e6:
        raise ValueError(f"value {x} out of snapping range")
    for surd in (1, 2, 3):
        target = x / math.sqrt(surd)
        frac = Fraction(target).limit_denominator(tol.snap_denominator_bound)
        approx = float(frac) * math.sqrt(surd)
        if abs(approx - x) <= tol.equality_tol:
            return SnappedValue(
                value=approx,
                text=_format_snap(frac.numerator, frac.denominator, surd),
                exact=True,
                numerator=frac.numerator,
                denominator=frac.denominator,
                surd=surd,
            )
    return SnappedValue(value=x, text=f"{x!r} (unsnapped)", exact=False)
