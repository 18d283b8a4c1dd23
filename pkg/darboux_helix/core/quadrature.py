"""DARBOUX HELIX
Darboux frames, special surface curves and their associated helices

This module contains the numerical workhorses on a uniform grid: running integrals,
five-point derivatives and the fixed-step Runge-Kutta integrator for small linear systems.
"""
import numpy as np
import numba as nb
import scipy.integrate as sp_int

from darboux_helix.core.errors import NonFiniteError, GridError


def cumulative_integral(f, grid):
    """Running integral of sampled values, anchored at the first grid point.

    Composite Simpson on the uniform grid (scipy's cumulative Simpson), so the result
    is exact for quadratics and fourth order accurate on smooth integrands.

    Parameters
    ----------
    f: numpy.ndarray[Any, dtype[float]]
        Integrand sampled on the grid.
    grid: Grid
        Uniform sampling grid.

    Returns
    -------
    numpy.ndarray[Any, dtype[float]]
        F with F[0] = 0 and F' = f.

    Raises
    ------
    NonFiniteError
        If the integrand contains NaN or infinity.
    """
    f = np.asarray(f, dtype=float)
    if len(f) != grid.n:
        raise GridError(f"integrand has {len(f)} samples, grid has {grid.n}")
    if not np.all(np.isfinite(f)):
        raise NonFiniteError("integrand has non-finite samples")

    f_int = sp_int.cumulative_simpson(f, dx=grid.spacing, initial=0)

    return f_int


@nb.njit(cache=True)
def five_point_derivative(y, h):
    """First derivative of uniformly sampled values.

    Central five-point stencil in the interior, one-sided five-point stencils at both ends.

    Parameters
    ----------
    y: numpy.ndarray[Any, dtype[float]]
        Samples, at least five.
    h: float
        Sample spacing.

    Returns
    -------
    numpy.ndarray[Any, dtype[float]]
        Derivative estimate per sample.
    """
    n = len(y)
    dy = np.zeros(n)

    for i in range(2, n - 2):
        dy[i] = (y[i - 2] - 8 * y[i - 1] + 8 * y[i + 1] - y[i + 2]) / (12 * h)

    # one-sided stencils at the ends
    dy[0] = (-25 * y[0] + 48 * y[1] - 36 * y[2] + 16 * y[3] - 3 * y[4]) / (12 * h)
    dy[1] = (-3 * y[0] - 10 * y[1] + 18 * y[2] - 6 * y[3] + y[4]) / (12 * h)
    dy[n - 2] = (-y[n - 5] + 6 * y[n - 4] - 18 * y[n - 3] + 10 * y[n - 2] + 3 * y[n - 1]) / (12 * h)
    dy[n - 1] = (3 * y[n - 5] - 16 * y[n - 4] + 36 * y[n - 3] - 48 * y[n - 2] + 25 * y[n - 1]) / (12 * h)

    return dy


@nb.njit(cache=True)
def _affine(a, b, y):
    """Compute a @ y + b for a small square matrix."""
    m = len(y)
    out = np.zeros(m)
    for i in range(m):
        acc = b[i]
        for j in range(m):
            acc += a[i, j] * y[j]
        out[i] = acc

    return out


@nb.njit(cache=True)
def rk4_linear(a_fine, b_fine, y0, h, substeps):
    """Classical Runge-Kutta integration of y' = A(s) y + b(s).

    The coefficient arrays are sampled on a fine grid with spacing h / (2 * substeps), so every
    step of size h / substeps finds its start, midpoint and end among the fine samples.

    Parameters
    ----------
    a_fine: numpy.ndarray[Any, dtype[float]]
        System matrices, shape (n_fine, m, m).
    b_fine: numpy.ndarray[Any, dtype[float]]
        Source terms, shape (n_fine, m).
    y0: numpy.ndarray[Any, dtype[float]]
        Initial value at the first grid point, shape (m,).
    h: float
        Spacing of the output grid.
    substeps: int
        Number of steps per output interval.

    Returns
    -------
    numpy.ndarray[Any, dtype[float]]
        Solution at the output grid points, shape (n, m).
    """
    n_fine = a_fine.shape[0]
    n_steps = (n_fine - 1) // 2
    n_out = n_steps // substeps + 1
    m = len(y0)
    dt = h / substeps

    y = y0.copy()
    out = np.zeros((n_out, m))
    out[0] = y

    for i in range(n_steps):
        i0 = 2 * i
        k1 = _affine(a_fine[i0], b_fine[i0], y)
        k2 = _affine(a_fine[i0 + 1], b_fine[i0 + 1], y + 0.5 * dt * k1)
        k3 = _affine(a_fine[i0 + 1], b_fine[i0 + 1], y + 0.5 * dt * k2)
        k4 = _affine(a_fine[i0 + 2], b_fine[i0 + 2], y + dt * k3)
        y = y + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)

        if (i + 1) % substeps == 0:
            out[(i + 1) // substeps] = y

    return out
