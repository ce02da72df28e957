"""Uniform periodic grid, DFT conventions, and fractional Fourier multipliers.

The real line is truncated to the periodic window ``[-L, L)`` sampled at
``x_j = -L + j*dx`` with ``dx = 2L/N``.  The matching frequency lattice is
``w_k = pi*k/L`` for ``k in {-N/2, .., N/2-1}`` stored in standard DFT order.

Transform convention.  ``forward_transform`` approximates the continuous
transform ``u_hat(w) = integral exp(-i x w) u(x) dx``, so

    u_hat_k = dx * exp(-i w_k x_0) * fft(u)_k = dx * (-1)^k * fft(u)_k

because ``exp(-i w_k x_0) = exp(i pi k) = (-1)^k`` at ``x_0 = -L``.  With this
scaling a pure mode ``cos(pi x / L)`` transforms to exactly ``L`` on the two
modes ``k = +-1``, matching the continuous integral.

Fractional operators.  The left and right one-sided fractional derivatives
act in frequency space as multiplication by ``(i w)^alpha`` and
``(-i w)^alpha`` (principal branch).  Their composition has the real even
symbol ``|w|^(2 alpha)``, which is the only symbol entering energies; the
one-sided operators are kept as diagnostics.  Phase and ``dx`` scaling cancel
when a multiplier is applied, so multipliers act directly on raw FFT data.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from .exceptions import AdmissibilityError, ConfigurationError

__all__ = [
    "Grid",
    "Field",
    "FractionalOrder",
    "ComplexPair",
    "make_grid",
    "forward_transform",
    "inverse_transform",
    "left_lw_derivative",
    "right_lw_derivative",
    "composed_operator",
    "integrate",
    "refine_field",
    "embed_field",
]


def _readonly(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class Grid:
    """Uniform periodic grid on ``[-L, L)`` with its DFT frequency lattice.

    Attributes
    ----------
    L : half length of the window.
    N : number of points, even, at least 8.
    dx : spacing ``2L/N``; ``dx*N == 2L`` exactly.
    x : sample points ``-L + j*dx``.
    w : angular frequencies ``pi*k/L`` in DFT order; the mode ``k = -N/2``
        is the unpaired Nyquist mode.
    k : integer mode numbers in the same order.
    phase : ``(-1)^k``, the boundary phase ``exp(-i w_k x_0)`` used by the
        scaled transform pair.
    """

    L: float
    N: int
    dx: float
    x: np.ndarray
    w: np.ndarray
    k: np.ndarray
    phase: np.ndarray

    def __post_init__(self) -> None:
        for name in ("x", "w", "k", "phase"):
            object.__setattr__(self, name, _readonly(np.asarray(getattr(self, name))))

    @property
    def nyquist_index(self) -> int:
        return self.N // 2


def make_grid(L: float, N: int) -> Grid:
    """Build the periodic grid for the window ``[-L, L)`` with ``N`` points."""
    if not isinstance(N, (int, np.integer)):
        raise ConfigurationError(f"N must be an integer, got {N!r}")
    N = int(N)
    L = float(L)
    if N < 8 or N % 2 != 0:
        raise ConfigurationError(f"N must be even and >= 8, got {N}")
    if not np.isfinite(L) or L <= 0.0:
        raise ConfigurationError(f"L must be positive and finite, got {L}")
    dx = 2.0 * L / N
    x = -L + dx * np.arange(N)
    k = np.fft.fftfreq(N, d=1.0 / N).astype(int)  # 0, 1, .., N/2-1, -N/2, .., -1
    w = (np.pi / L) * k
    phase = np.where(k % 2 == 0, 1.0, -1.0)
    return Grid(L=L, N=N, dx=dx, x=x, w=w, k=k, phase=phase)


@dataclass(frozen=True)
class Field:
    """Real sampled function on a :class:`Grid`; values copied and frozen."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self) -> None:
        v = np.array(self.values, dtype=float, copy=True)
        if v.shape != (self.grid.N,):
            raise AdmissibilityError(
                f"field length {v.shape} does not match grid N={self.grid.N}"
            )
        if not np.all(np.isfinite(v)):
            raise AdmissibilityError("field contains non-finite entries")
        object.__setattr__(self, "values", _readonly(v))


@dataclass(frozen=True)
class FractionalOrder:
    """Derivative order ``alpha`` with ``1/2 < alpha <= 1``.

    The open range is the analytic setting; ``alpha = 1`` is admitted as a
    classical-limit diagnostic where every operator reduces to the standard
    derivative calculus.
    """

    alpha: float

    def __post_init__(self) -> None:
        a = float(self.alpha)
        if not (0.5 < a <= 1.0):
            raise ConfigurationError(f"alpha must lie in (1/2, 1], got {a}")
        object.__setattr__(self, "alpha", a)

    def __float__(self) -> float:
        return self.alpha


OrderLike = Union[FractionalOrder, float]


def as_order(alpha: OrderLike) -> float:
    """Validate and return ``alpha`` as a plain float."""
    if isinstance(alpha, FractionalOrder):
        return alpha.alpha
    return FractionalOrder(float(alpha)).alpha


class ComplexPair(NamedTuple):
    """Physical-side result of a complex-symbol multiplier."""

    real: Field
    imag: Field


def forward_transform(u: Field) -> np.ndarray:
    """Scaled DFT approximating ``integral exp(-i x w) u(x) dx`` on the w lattice."""
    g = u.grid
    return g.dx * g.phase * np.fft.fft(u.values)


def inverse_transform(grid: Grid, spectrum: np.ndarray) -> Field:
    """Inverse of :func:`forward_transform`; returns the real part as a Field."""
    spectrum = np.asarray(spectrum, dtype=complex)
    if spectrum.shape != (grid.N,):
        raise AdmissibilityError("spectrum length does not match grid")
    vals = np.fft.ifft(grid.phase * spectrum) / grid.dx
    return Field(grid, np.real(vals))


def _apply_symbol(u: Field, symbol: np.ndarray) -> np.ndarray:
    # phase and dx cancel between the scaled transform pair, so the
    # multiplier acts on raw FFT data
    return np.fft.ifft(symbol * np.fft.fft(u.values))


def _one_sided_symbol(grid: Grid, alpha: float, sign: float) -> np.ndarray:
    # principal branch (sign * i * w)^alpha = |w|^alpha * exp(i alpha (pi/2) sign(sign*w));
    # |0|^alpha = 0 exactly, and the unpaired Nyquist mode is zeroed because the
    # odd part of the symbol has no well-defined phase there
    mag = np.abs(grid.w) ** alpha
    sym = mag * np.exp(1j * alpha * (np.pi / 2.0) * np.sign(sign * grid.w))
    sym = sym.copy()
    sym[grid.nyquist_index] = 0.0
    return sym


def left_lw_derivative(u: Field, alpha: OrderLike) -> ComplexPair:
    """Left-sided fractional derivative, symbol ``(i w)^alpha``.

    Returns the physical-side real and imaginary parts.  The imaginary part
    is a discretization diagnostic: it vanishes only for inputs whose
    spectrum respects the symbol's conjugate symmetry, and its size measures
    how far the sampled field is from that ideal.
    """
    a = as_order(alpha)
    out = _apply_symbol(u, _one_sided_symbol(u.grid, a, +1.0))
    return ComplexPair(Field(u.grid, out.real), Field(u.grid, out.imag))


def right_lw_derivative(u: Field, alpha: OrderLike) -> ComplexPair:
    """Right-sided fractional derivative, symbol ``(-i w)^alpha``."""
    a = as_order(alpha)
    out = _apply_symbol(u, _one_sided_symbol(u.grid, a, -1.0))
    return ComplexPair(Field(u.grid, out.real), Field(u.grid, out.imag))


def composed_operator(u: Field, alpha: OrderLike) -> Field:
    """Right-after-left composition with the real even symbol ``|w|^(2 alpha)``.

    This is the exact operator of the weak form and the energy; no Nyquist
    zeroing is applied because the even symbol is well defined there.
    """
    a = as_order(alpha)
    sym = np.abs(u.grid.w) ** (2.0 * a)
    return Field(u.grid, np.real(_apply_symbol(u, sym)))


def integrate(u: Field) -> float:
    """Periodic trapezoid quadrature ``dx * sum(values)``.

    Exact for trigonometric polynomials below the Nyquist frequency.
    """
    return float(u.grid.dx * np.sum(u.values))


def refine_field(u: Field, factor: int = 2) -> Field:
    """Resample onto a grid with ``factor * N`` points (same window) by
    spectral zero padding; the coarse Nyquist bin is split across the new
    conjugate pair so pure-Nyquist content refines exactly."""
    if factor < 1 or int(factor) != factor:
        raise ConfigurationError(f"refinement factor must be a positive integer, got {factor}")
    g = u.grid
    if factor == 1:
        return u
    M = int(factor) * g.N
    h = g.N // 2
    F = np.fft.fft(u.values)
    G = np.zeros(M, dtype=complex)
    G[:h] = F[:h]
    G[h] = 0.5 * F[h]
    G[M - h] = 0.5 * np.conj(F[h])
    G[M - h + 1 :] = F[h + 1 :]
    fine = make_grid(g.L, M)
    return Field(fine, np.real(np.fft.ifft(G)) * factor)


def embed_field(u: Field, wide: Grid) -> Field:
    """Place ``u`` on a wider grid with identical spacing, zero elsewhere.

    Used for domain-doubling reruns: the embedded field agrees with ``u`` at
    every shared sample point.
    """
    g = u.grid
    if wide.L < g.L:
        raise ConfigurationError("target grid is narrower than the source grid")
    if abs(wide.dx - g.dx) > 1e-12 * g.dx:
        raise ConfigurationError(
            f"grid spacings differ (source dx={g.dx}, target dx={wide.dx})"
        )
    offset = int(round((g.x[0] - wide.x[0]) / g.dx))
    vals = np.zeros(wide.N)
    vals[offset : offset + g.N] = u.values
    return Field(wide, vals)
