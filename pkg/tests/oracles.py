"""Independent slow reference computations used to check the fast paths.

Everything here works from definitions (dense kernel matrices, plain
quadrature of polar ray lengths, direct angular sums) and never calls the
implementation being verified.
"""

import numpy as np
from scipy.integrate import quad
from scipy.special import fresnel as _fresnel_cs
from scipy.special import gamma as _gamma_fn


def lct_1d_dense(signal: np.ndarray, grid, m) -> np.ndarray:
    """O(N^2) Riemann sum of the transform kernel integral."""
    x = grid.coords()
    n = grid.n
    du = abs(m.b) / (n * grid.spacing)
    u = (np.arange(n) - n // 2) * du
    const = np.sqrt(1.0 / (1j * m.b))
    kernel = (
        const
        * np.exp(1j * np.pi * (m.a / m.b) * x[None, :] ** 2)
        * np.exp(-2j * np.pi * np.outer(u, x) / m.b)
        * np.exp(1j * np.pi * (m.d / m.b) * u[:, None] ** 2)
    )
    return kernel @ np.asarray(signal, dtype=complex) * grid.spacing


def recip_gamma_norm(beta: float, n: int = 2) -> float:
    return float(
        _gamma_fn((n - beta) / 2.0) / (np.pi ** (n / 2.0) * 2.0**beta * _gamma_fn(beta / 2.0))
    )


def square_indicator_potential(x, beta: float) -> float:
    """Riesz potential of the [-1,1]^2 indicator at an interior point, by
    1D quadrature of the polar ray length to the square boundary."""

    def rho(theta):
        c, s = np.cos(theta), np.sin(theta)
        tx = (1 - x[0]) / c if c > 0 else ((-1 - x[0]) / c if c < 0 else np.inf)
        ty = (1 - x[1]) / s if s > 0 else ((-1 - x[1]) / s if s < 0 else np.inf)
        return min(tx, ty)

    val, _ = quad(lambda t: rho(t) ** beta / beta, 0.0, 2.0 * np.pi, limit=400)
    return recip_gamma_norm(beta) * val


def fresnel_closed(kappa: float, s) -> np.ndarray:
    """Closed-form incomplete Fresnel integral via scipy's S and C."""
    k = abs(kappa)
    z = np.asarray(s, dtype=np.float64) * np.sqrt(2.0 * k)
    sin_part, cos_part = _fresnel_cs(z)
    out = (cos_part + 1j * sin_part) / np.sqrt(2.0 * k)
    return out if kappa > 0 else np.conj(out)


def grating_lcrp_theta_sum(coeffs, k1, k2, x, cutoff, ntheta=400000) -> complex:
    """Direct midpoint sum over the polar angle of the per-stripe Fresnel
    differences (no substitutions, no tail asymptotics)."""
    theta = (np.arange(ntheta) + 0.5) / ntheta * 2 * np.pi - np.pi
    ct, st = np.cos(theta), np.sin(theta)
    kk = k1 * ct**2 + k2 * st**2
    ll = 2 * (k1 * x[0] * ct + k2 * x[1] * st)
    total = 0.0j
    for n, c in enumerate(coeffs, start=1):
        if c == 0:
            continue
        rho1, rho2 = 2 * n - x[0], 2 * n + 1 - x[0]
        with np.errstate(divide="ignore", invalid="ignore"):
            q1, q2 = rho1 / ct, rho2 / ct
        r1 = np.minimum(np.maximum(0.0, np.minimum(q1, q2)), cutoff)
        r2 = np.minimum(np.maximum(0.0, np.maximum(q1, q2)), cutoff)
        t1, t2 = r1 + ll / (2 * kk), r2 + ll / (2 * kk)
        j = np.exp(-1j * np.pi * ll**2 / (4 * kk)) * (
            fresnel_closed(1.0, t2 * np.sqrt(kk)) - fresnel_closed(1.0, t1 * np.sqrt(kk))
        ) / np.sqrt(kk)
        j[~np.isfinite(j)] = 0.0
        total += c * j.sum() * (2 * np.pi / ntheta)
    return total / (2 * np.pi)
