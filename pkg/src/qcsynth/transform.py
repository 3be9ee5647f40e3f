"""General-form to standard-form conversion and transfer-function checks.

The conversion produces a witness (p_n, w, p_y) tying the two models
together: state change of basis, input factor routing each noise channel
through a quadrature pair, and output change of basis.  Correctness is
always checked behaviorally, through the witness identities and
transfer-function agreement, never through equality of the non-unique
factors themselves.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matkit import DEFAULT_TOL, ito_factorize, skew_canonical
from .sysmodel import Dimensions, GeneralSystem, StandardSystem, validate

__all__ = [
    "TransformWitness",
    "to_standard",
    "transfer_eval",
    "transfer_equiv_check",
    "DEFAULT_SAMPLE_POINTS",
]

DEFAULT_SAMPLE_POINTS = (1.0 + 0.0j, 2.0 + 1.0j, -1.0 + 3.0j, 0.5 - 0.5j, 10.0 + 0.0j)

# A sample point closer than this to an eigenvalue of either dynamics
# matrix is shifted before evaluation; resolvents blow up there.
_EIGEN_CLEARANCE = 1e-6
_RESAMPLE_SHIFT = 0.37


@dataclass(frozen=True)
class TransformWitness:
    """Invertible factors relating a general-form model to its standard form.

    The defining identities, each checkable by direct multiplication:
    standard.a = p_n a_g p_n^{-1}, standard.b = p_n b_g w,
    standard.c = p_y c_g p_n^{-1}, standard.d = p_y d_g w,
    theta_n = p_n big_theta_n p_n^T, theta_y_target = p_y theta_y p_y^T.
    """

    p_n: np.ndarray
    w: np.ndarray
    p_y: np.ndarray
    standard: StandardSystem


def _right_div(m_mat: np.ndarray, p: np.ndarray) -> np.ndarray:
    # m_mat @ inv(p) without forming the inverse.
    return np.linalg.solve(p.T, m_mat.T).T


def to_standard(g: GeneralSystem, tol: float = DEFAULT_TOL) -> TransformWitness:
    """Convert a general-form model to standard form.

    The state commutation matrix is brought to canonical form by congruence
    (fixing p_n and the split n = 2 n_q + n_c), the input Ito matrix is
    factored through vacuum quadrature channels (fixing w), and the output
    commutation matrix is brought to canonical form the same way (fixing
    p_y and the split n_y = 2 n_yq + n_yc).
    """
    problems = validate(g)
    if problems:
        raise ValueError("invalid general-form system: " + "; ".join(problems))
    canon_n = skew_canonical(g.big_theta_n, tol)
    w = ito_factorize(g.f_v, tol).w
    # theta_y is computed from f_y, so round-off dust rides along at the
    # scale of f_y; without this cut an all-classical output block would be
    # mistaken for quantum pairs and scaled by 1/sqrt(dust)
    theta_y = g.theta_y
    if theta_y.size and np.abs(theta_y).max() <= tol * np.abs(g.f_y).max():
        theta_y = np.zeros_like(theta_y)
    canon_y = skew_canonical(theta_y, tol)
    dims = Dimensions(canon_n.n_q, canon_n.n_c, g.m, canon_y.n_q, canon_y.n_c)
    p_n, p_y = canon_n.p, canon_y.p
    a = _right_div(p_n @ g.a_g, p_n)
    b = p_n @ g.b_g @ w
    c = _right_div(p_y @ g.c_g, p_n)
    d = p_y @ g.d_g @ w
    return TransformWitness(p_n, w, p_y, StandardSystem(dims, a, b, c, d))


def transfer_eval(a, b, c, d, s: complex) -> np.ndarray:
    """Transfer function C (sI - A)^{-1} B + D at one complex frequency."""
    a = np.asarray(a)
    b = np.asarray(b)
    c = np.asarray(c)
    d = np.asarray(d)
    n = a.shape[0]
    if n == 0:
        return d.astype(complex)
    try:
        resolvent_b = np.linalg.solve(s * np.eye(n) - a, b.astype(complex))
    except np.linalg.LinAlgError:
        raise ValueError(f"sample point {s} is an eigenvalue of the dynamics")
    return c @ resolvent_b + d


def _clear_of_eigenvalues(s: complex, spectra: list[np.ndarray],
                          clearance: float) -> complex:
    for _ in range(100):
        dist = min((np.min(np.abs(spec - s)) for spec in spectra if spec.size),
                   default=np.inf)
        if dist > clearance * (1.0 + abs(s)):
            return s
        s = s + _RESAMPLE_SHIFT
    raise ValueError("could not clear the sample point of eigenvalues")


def transfer_equiv_check(g: GeneralSystem, tw: TransformWitness,
                         sample_points=None, tol: float = DEFAULT_TOL) -> float:
    """Max deviation of the two transfer functions over the sample points.

    Evaluates || Xi_standard(s) - p_y Xi_general(s) w ||_F at each sample,
    shifting any sample that lands within tol (at least a fixed clearance)
    of an eigenvalue of either dynamics matrix.  A valid witness keeps the
    result at round-off level.
    """
    if sample_points is None:
        sample_points = DEFAULT_SAMPLE_POINTS
    clearance = max(tol, _EIGEN_CLEARANCE)
    spectra = [np.linalg.eigvals(g.a_g) if g.n else np.zeros(0),
               np.linalg.eigvals(tw.standard.a) if tw.standard.a.size else np.zeros(0)]
    std = tw.standard
    worst = 0.0
    for point in sample_points:
        s = _clear_of_eigenvalues(complex(point), spectra, clearance)
        xi_s = transfer_eval(std.a, std.b, std.c, std.d, s)
        xi_g = transfer_eval(g.a_g, g.b_g, g.c_g, g.d_g, s)
        worst = max(worst, float(np.linalg.norm(xi_s - tw.p_y @ xi_g @ tw.w)))
    return worst
