"""ODE residual measurement and Richardson extrapolation."""

from __future__ import annotations

import numpy as np

from ..errors import DomainError


def richardson_extrapolate(coarse, fine, order: int):
    """Eliminate the leading O(h^order) error term from a coarse/fine pair."""
    if order < 1:
        raise DomainError(f"order must be >= 1, got {order}")
    factor = 2.0**order
    return (factor * fine - coarse) / (factor - 1.0)


def ode_residual(wavefn, bracket, domain: tuple[float, float], n_nodes: int) -> tuple[float, float]:
    """Max norm of psi'' + bracket(phi) psi over interior grid nodes.

    ``wavefn`` and ``bracket`` must accept ndarray arguments; the second
    derivative is the central difference on the half-offset grid, so the
    returned residual decays as O(h^2) wherever psi has bounded fourth
    derivative.  Pass a ``domain`` safely inside the motion domain: near
    singular endpoints the higher derivatives of psi are unbounded and the
    max residual there does not converge.  Returns (max_residual, h); the
    caller measures the rate from an (h, h/2) pair.
    """
    a, b = domain
    if not b > a:
        raise DomainError(f"empty domain: {domain!r}")
    if n_nodes < 8:
        raise DomainError(f"need at least 8 nodes, got {n_nodes}")
    h = (b - a) / n_nodes
    phi = a + (np.arange(n_nodes) + 0.5) * h
    psi = np.asarray(wavefn(phi))
    second = (psi[2:] - 2.0 * psi[1:-1] + psi[:-2]) / (h * h)
    residual = second + np.asarray(bracket(phi[1:-1])) * psi[1:-1]
    return float(np.max(np.abs(residual))), h


def residual_rate(wavefn, bracket, domain: tuple[float, float], n_nodes: int) -> tuple[float, float, float]:
    """Measured convergence order of the residual under h -> h/2.

    Returns (rate, residual_h, residual_h_half) with
    rate = log2(residual_h / residual_h_half).
    """
    r_coarse, _ = ode_residual(wavefn, bracket, domain, n_nodes)
    r_fine, _ = ode_residual(wavefn, bracket, domain, 2 * n_nodes)
    return float(np.log2(r_coarse / r_fine)), r_coarse, r_fine
