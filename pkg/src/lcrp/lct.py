"""Discrete 2D linear canonical transform (LCT) on center-aligned grids.

The transform with parameter matrix [[a, b], [c, d]] (det = 1, b != 0) acts as

    L(f)(u) = sqrt(1/(i*b)) * exp(i*pi*(d/b)*u^2)
              * integral f(x) * exp(i*pi*(a/b)*x^2) * exp(-2*pi*i*x*u/b) dx

and is evaluated here by the exact chirp -> FFT -> chirp factorization of its
Riemann sum on grids x_j = (j - N/2)*dx, u_m = (m - N/2)*du with
du = |b| / (N*dx).  Requiring N to be a power of two (>= 8, so in particular
N % 4 == 0) makes the factorization exact at the DFT level, with no padding
or phase-residue bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DeterminantError, DimensionMismatch, NonFiniteError, ZeroBError

__all__ = [
    "Matrix2",
    "LCTParams",
    "Grid1D",
    "ComplexGrid",
    "make_matrix",
    "inverse_matrix",
    "chirp_grid",
    "lct_1d",
    "lct_2d",
    "ilct_2d",
]

DET_TOL = 1e-9


@dataclass(frozen=True)
class Matrix2:
    """One 2x2 real transform matrix [[a, b], [c, d]].

    Direct construction performs no validation (deliberately: adversarial
    wrong-key experiments feed non-unimodular matrices through the transform,
    which only ever reads a, b, d).  Use :func:`make_matrix` for checked
    construction.
    """

    a: float
    b: float
    c: float
    d: float

    @property
    def det(self) -> float:
        return self.a * self.d - self.b * self.c


@dataclass(frozen=True)
class LCTParams:
    """Per-axis matrix pair (ax1 acts on rows, ax2 on columns)."""

    ax1: Matrix2
    ax2: Matrix2


@dataclass(frozen=True)
class Grid1D:
    """Uniform center-aligned sampling axis: x_j = (j - n/2) * spacing."""

    n: int
    spacing: float

    def __post_init__(self) -> None:
        if self.n < 8 or (self.n & (self.n - 1)) != 0:
            raise DimensionMismatch(f"grid size must be a power of two >= 8, got {self.n}")
        if not (self.spacing > 0):
            raise DimensionMismatch(f"grid spacing must be positive, got {self.spacing}")

    def coords(self) -> np.ndarray:
        return (np.arange(self.n) - self.n // 2) * self.spacing


@dataclass(frozen=True)
class ComplexGrid:
    """Dense complex field sampled on a pair of 1D grids (rows x cols)."""

    values: np.ndarray
    grid1: Grid1D
    grid2: Grid1D

    def __post_init__(self) -> None:
        if self.values.ndim != 2:
            raise DimensionMismatch("field values must be a 2D array")
        if self.values.shape != (self.grid1.n, self.grid2.n):
            raise DimensionMismatch(
                f"field shape {self.values.shape} does not match grids "
                f"({self.grid1.n}, {self.grid2.n})"
            )

    @property
    def rows(self) -> int:
        return self.grid1.n

    @property
    def cols(self) -> int:
        return self.grid2.n


def make_matrix(a: float, b: float, c: float, d: float) -> Matrix2:
    """Build a validated unimodular matrix with nonzero b."""
    if b == 0:
        raise ZeroBError("matrix entry b must be nonzero")
    det = a * d - b * c
    if abs(det - 1.0) > DET_TOL:
        raise DeterminantError(f"matrix determinant {det!r} is not 1")
    return Matrix2(float(a), float(b), float(c), float(d))


def inverse_matrix(m: Matrix2) -> Matrix2:
    """Inverse of a unimodular matrix: (a, b, c, d) -> (d, -b, -c, a)."""
    return Matrix2(m.d, -m.b, -m.c, m.a)


def _chirp_1d(rate: float, grid: Grid1D) -> np.ndarray:
    x = grid.coords()
    return np.exp(1j * np.pi * rate * x * x)


def chirp_grid(rate, g):
    """Unit-modulus quadratic-phase field exp(i*pi*rate*x^2), per axis.

    ``g`` may be a single :class:`Grid1D` (returns a 1D complex array) or a
    pair ``(grid1, grid2)`` (returns a :class:`ComplexGrid` whose value at
    (x, y) is exp(i*pi*(rate1*x^2 + rate2*y^2))).  A scalar ``rate`` is used
    for both axes; a pair gives per-axis rates.
    """
    if isinstance(g, Grid1D):
        return _chirp_1d(float(rate), g)
    grid1, grid2 = g
    rate1, rate2 = (rate, rate) if np.isscalar(rate) else rate
    values = np.outer(_chirp_1d(float(rate1), grid1), _chirp_1d(float(rate2), grid2))
    return ComplexGrid(values, grid1, grid2)


def _lct_along_axis(values: np.ndarray, grid: Grid1D, m: Matrix2, axis: int) -> tuple[np.ndarray, Grid1D]:
    """Apply the 1D transform along one axis of a 1D or 2D array."""
    if m.b == 0:
        raise ZeroBError("matrix entry b must be nonzero")
    n = grid.n
    if values.shape[axis] != n:
        raise DimensionMismatch(f"axis length {values.shape[axis]} != grid size {n}")
    x = grid.coords()
    out_spacing = abs(m.b) / (n * grid.spacing)
    out_grid = Grid1D(n, out_spacing)
    u = out_grid.coords()

    sign = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
    pre = sign * np.exp(1j * np.pi * (m.a / m.b) * x * x)
    post = sign * np.exp(1j * np.pi * (m.d / m.b) * u * u)
    # principal branch of sqrt(1/(i*b)); deterministic for either sign of b
    const = np.sqrt(1.0 / (1j * m.b)) * grid.spacing

    shape = [1] * values.ndim
    shape[axis] = n
    work = values * pre.reshape(shape)
    if m.b > 0:
        spec = np.fft.fft(work, axis=axis)
    else:
        spec = np.fft.ifft(work, axis=axis) * n
    out = const * post.reshape(shape) * spec
    return out, out_grid


def lct_1d(signal: np.ndarray, grid: Grid1D, m: Matrix2) -> tuple[np.ndarray, Grid1D]:
    """Transform a 1D complex signal; returns (values, output grid)."""
    signal = np.asarray(signal, dtype=np.complex128)
    if signal.ndim != 1:
        raise DimensionMismatch("lct_1d expects a 1D signal")
    out, out_grid = _lct_along_axis(signal, grid, m, axis=0)
    if not np.all(np.isfinite(out.view(np.float64))):
        raise NonFiniteError("transform produced non-finite samples")
    return out, out_grid


def lct_2d(field: ComplexGrid, p: LCTParams) -> ComplexGrid:
    """Separable 2D transform: axis matrices act independently per axis."""
    values = np.asarray(field.values, dtype=np.complex128)
    out, g1 = _lct_along_axis(values, field.grid1, p.ax1, axis=0)
    out, g2 = _lct_along_axis(out, field.grid2, p.ax2, axis=1)
    if not np.all(np.isfinite(out.view(np.float64))):
        raise NonFiniteError("transform produced non-finite samples")
    return ComplexGrid(out, g1, g2)


def ilct_2d(field: ComplexGrid, p: LCTParams) -> ComplexGrid:
    """Inverse 2D transform (both axis matrices inverted)."""
    inv = LCTParams(inverse_matrix(p.ax1), inverse_matrix(p.ax2))
    return lct_2d(field, inv)
