"""One-sided fractional derivatives acting on a pure cosine.

The left derivative of cos(w0 x) is |w0|^a cos(w0 x + a pi/2): the amplitude
scales by |w0|^a while the phase advances by a quarter turn times a.  At
a = 1 the phase advance is exactly pi/2, recovering the classical derivative
-w0 sin(w0 x).  The composed operator drops the phase and squares the
amplitude factor, which is the reason it behaves like a fractional
Laplacian: real, even symbol |w|^(2a).
"""

import numpy as np

from fracnls import (
    Field,
    composed_operator,
    integrate,
    left_lw_derivative,
    make_grid,
    right_lw_derivative,
)

grid = make_grid(20.0, 512)
alpha = 0.75
w0 = 2.0 * np.pi * 3 / (2.0 * grid.L)
mode = Field(grid, np.cos(w0 * grid.x))

left = left_lw_derivative(mode, alpha)
right = right_lw_derivative(mode, alpha)
expected_left = w0**alpha * np.cos(w0 * grid.x + alpha * np.pi / 2.0)
expected_right = w0**alpha * np.cos(w0 * grid.x - alpha * np.pi / 2.0)

print(f"pure mode w0 = {w0:.4f}, order alpha = {alpha}")
print(f"  left derivative error   {np.max(np.abs(left.real.values - expected_left)):.3e}")
print(f"  right derivative error  {np.max(np.abs(right.real.values - expected_right)):.3e}")
print(f"  imaginary residue       {np.max(np.abs(left.imag.values)):.3e} (discretization diagnostic)")

lam = w0 ** (2.0 * alpha)
comp = composed_operator(mode, alpha)
print(f"  composed eigenvalue     {lam:.6f}, error {np.max(np.abs(comp.values - lam * mode.values)):.3e}")

classical = composed_operator(mode, 1.0)
print(f"  alpha = 1 limit error   {np.max(np.abs(classical.values - w0**2 * mode.values)):.3e} against -u''")

gauss = Field(grid, np.exp(-(grid.x**2)))
print(f"  integral of exp(-x^2)   {integrate(gauss):.12f} vs sqrt(pi) = {np.sqrt(np.pi):.12f}")
