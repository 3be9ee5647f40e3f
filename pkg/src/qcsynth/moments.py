"""First and second moment integration for standard-form dynamics.

For linear dynamics driven by stationary noise the first two moments are
closed: d mu/dt = A mu and d Sigma/dt = A Sigma + Sigma A^T + B F_w B^T.
Commutation preservation is a second-moment statement, so the integrator
doubles as a numerical witness: the skew part of Sigma stays pinned at
theta_n exactly when the state-commutation condition holds.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .sysmodel import StandardSystem

__all__ = ["MomentTrajectory", "simulate", "skew_drift"]

_SIGMA0_SKEW_TOL = 1e-8


@dataclass(frozen=True)
class MomentTrajectory:
    times: tuple[float, ...]
    means: tuple[np.ndarray, ...]
    second_moments: tuple[np.ndarray, ...]


def simulate(sys: StandardSystem, sigma0=None, *, t_final: float, dt: float,
             mu0=None) -> MomentTrajectory:
    """Fixed-step 4th-order Runge-Kutta trajectory of (mu, Sigma).

    sigma0 must be Hermitian with skew part equal to theta_n (the vacuum
    default I + i theta_n is used when omitted).  Every stored Sigma is
    re-Hermitized by averaging with its conjugate transpose; the exact flow
    preserves Hermiticity, so this only cancels round-off.  Non-finite
    values abort with the offending step index.
    """
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt}")
    st = sys.structure
    n = sys.dims.n
    if sigma0 is None:
        sigma0 = np.eye(n) + 1j * st.theta_n
    sigma0 = np.asarray(sigma0, dtype=complex)
    if sigma0.shape != (n, n):
        raise ValueError(f"sigma0: expected shape {(n, n)}, got {sigma0.shape}")
    herm = np.max(np.abs(sigma0 - sigma0.conj().T)) if n else 0.0
    if herm > _SIGMA0_SKEW_TOL:
        raise ValueError(f"sigma0 is not Hermitian (max asymmetry {herm:.3e})")
    skew = np.max(np.abs((sigma0 - sigma0.T) / 2j - st.theta_n)) if n else 0.0
    if skew > _SIGMA0_SKEW_TOL:
        raise ValueError("sigma0 skew part does not match the state "
                         f"commutation matrix (max deviation {skew:.3e})")
    mu = np.zeros(n) if mu0 is None else np.asarray(mu0, dtype=float).copy()
    if mu.shape != (n,):
        raise ValueError(f"mu0: expected shape {(n,)}, got {mu.shape}")

    a = sys.a
    pump = sys.b @ st.f_w @ sys.b.T
    n_steps = int(round(t_final / dt))

    def sigma_rate(s):
        return a @ s + s @ a.T + pump

    def hermitize(s):
        return (s + s.conj().T) / 2.0

    sigma = hermitize(sigma0)
    times = [0.0]
    means = [mu.copy()]
    sigmas = [sigma]
    # overflow is already reported through the non-finite abort below
    with np.errstate(over="ignore", invalid="ignore"):
        for step in range(1, n_steps + 1):
            k1 = sigma_rate(sigma)
            k2 = sigma_rate(sigma + 0.5 * dt * k1)
            k3 = sigma_rate(sigma + 0.5 * dt * k2)
            k4 = sigma_rate(sigma + dt * k3)
            sigma = hermitize(sigma + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4))
            j1 = a @ mu
            j2 = a @ (mu + 0.5 * dt * j1)
            j3 = a @ (mu + 0.5 * dt * j2)
            j4 = a @ (mu + dt * j3)
            mu = mu + (dt / 6.0) * (j1 + 2.0 * j2 + 2.0 * j3 + j4)
            if not (np.all(np.isfinite(mu)) and np.all(np.isfinite(sigma))):
                raise ValueError(f"moments diverged to non-finite values at step "
                                 f"{step} (t = {step * dt:.6g})")
            times.append(step * dt)
            means.append(mu.copy())
            sigmas.append(sigma)
    return MomentTrajectory(tuple(times), tuple(means), tuple(sigmas))


def skew_drift(traj: MomentTrajectory, theta_n) -> float:
    """Largest distance of the skew part of Sigma from theta_n over the run."""
    theta_n = np.asarray(theta_n)
    worst = 0.0
    for sigma in traj.second_moments:
        worst = max(worst, float(np.linalg.norm((sigma - sigma.T) / 2j - theta_n)))
    return worst
