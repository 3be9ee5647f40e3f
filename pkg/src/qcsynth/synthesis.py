"""Feedback realization of mixed quantum-classical systems.

synthesize splits a realizable standard-form model into a fully quantum
subsystem, a classical subsystem, and a static measurement network feeding
the classical side from the quantum side's auxiliary outputs.  close_loop
reassembles the interconnection; the round trip reproduces the input.
generate_realizable manufactures realizable instances for testing by
running the same construction in reverse from random ingredients.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matkit import (DEFAULT_TOL, minnorm_right_solve, pzkv_decompose,
                     random_symplectic, symplectic_complete)
from .realizability import DEFAULT_CHECK_TOL, RealizabilityReport, check_standard
from .sysmodel import Dimensions, StandardSystem, diag_j, make_structure

__all__ = [
    "NotRealizableError",
    "QuantumSubsystem",
    "ClassicalSubsystem",
    "Realization",
    "synthesize",
    "close_loop",
    "generate_realizable",
]


class NotRealizableError(ValueError):
    """Input rejected because a realizability condition failed.

    Carries the failing report so callers can show which condition broke.
    """

    def __init__(self, message: str, report: RealizabilityReport):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class QuantumSubsystem:
    """Fully quantum part: original quantum blocks plus completion outputs.

    d_q_prime completes d_q to a symplectic matrix (stacked underneath);
    c_qq_prime = d_q_prime theta_w b_q^T theta_nq pairs with it so that the
    stacked outputs keep the quantum realizability conditions.  e_mat
    carries the classical actuation x_c -> x_q and k_q = -theta_nq e_mat is
    the corresponding coupling gain.
    """

    a_qq: np.ndarray
    b_q: np.ndarray
    e_mat: np.ndarray
    c_qq: np.ndarray
    d_q: np.ndarray
    c_qq_prime: np.ndarray
    d_q_prime: np.ndarray
    k_q: np.ndarray


@dataclass(frozen=True)
class ClassicalSubsystem:
    """Classical part driven by the measurement signal u_c.

    c_c_prime_1 / c_c_prime_2 split the actuation read-out by the stored
    channel partition; stacked they solve d_q c_c_prime = c_qc.
    """

    a_cc_prime: np.ndarray
    b_c_prime: np.ndarray
    c_cc_prime: np.ndarray
    d_c_prime: np.ndarray
    c_c_prime_1: np.ndarray
    c_c_prime_2: np.ndarray

    @property
    def c_c_prime(self) -> np.ndarray:
        return np.vstack([self.c_c_prime_1, self.c_c_prime_2])


@dataclass(frozen=True)
class Realization:
    """Quantum subsystem, classical subsystem and measurement network.

    g_mat = k_sel v_sympl taps commuting quadratures of the completion
    outputs (g_mat theta' g_mat^T = 0), and p_perm, z, k_sel, v_sympl are
    the factors of the read-out decomposition that produced it.
    """

    g1: QuantumSubsystem
    g2: ClassicalSubsystem
    g_mat: np.ndarray
    k_sel: np.ndarray
    v_sympl: np.ndarray
    p_perm: np.ndarray
    z: np.ndarray
    dims: Dimensions


def synthesize(sys: StandardSystem, tol: float = DEFAULT_CHECK_TOL) -> Realization:
    """Split a realizable standard-form system into its feedback realization.

    Steps: solve d_q c_c_prime = c_qc (minimum norm) and peel the actuation
    e_mat = a_qc - b_q c_c_prime; complete d_q symplectically and form the
    paired auxiliary read-out c_qq_prime; solve for the classical couplings
    against d_q_prime; decompose the stacked couplings into permutation,
    basis, selection and network factors, which yields g_mat, b_c_prime and
    d_c_prime; subtract the feedback-through terms from a_cc and c_cc.

    Every linear solve is consistent exactly when the input satisfies the
    block realizability constraints; inconsistency raises with a residual.
    """
    report = check_standard(sys, tol)
    if not report.verdict:
        raise NotRealizableError(
            f"input fails realizability (worst condition: {report.worst})", report)
    st = sys.structure
    d = sys.dims
    th_w, th_q = st.theta_w, st.theta_nq
    m_free = d.m - d.n_yq

    c_c_prime = minnorm_right_solve(sys.d_q.T, sys.c_qc.T, tol).T
    e_mat = sys.a_qc - sys.b_q @ c_c_prime
    d_q_prime = symplectic_complete(sys.d_q, th_w, tol).n_mat
    c_qq_prime = d_q_prime @ th_w @ sys.b_q.T @ th_q

    # Couplings of the classical side to the auxiliary outputs: consistency
    # of both solves is exactly the cross and classical block constraints.
    coupling = minnorm_right_solve(d_q_prime, np.vstack([sys.b_c, sys.d_c]), tol)
    b_bar_c, d_bar_c = coupling[: d.n_c], coupling[d.n_c:]

    pzkv = pzkv_decompose(coupling, diag_j(m_free), tol)
    g_mat = pzkv.k_sel @ pzkv.v_sympl if pzkv.r else np.zeros((0, 2 * m_free))
    b_c_prime = pzkv.p_perm[: d.n_c] @ pzkv.z
    d_c_prime = pzkv.p_perm[d.n_c:] @ pzkv.z

    feed = g_mat @ d_q_prime @ c_c_prime
    a_cc_prime = sys.a_cc - b_c_prime @ feed
    c_cc_prime = sys.c_cc - d_c_prime @ feed
    k_q = -th_q @ e_mat

    split = 2 * d.n_w1
    g1 = QuantumSubsystem(sys.a_qq, sys.b_q, e_mat, sys.c_qq, sys.d_q,
                          c_qq_prime, d_q_prime, k_q)
    g2 = ClassicalSubsystem(a_cc_prime, b_c_prime, c_cc_prime, d_c_prime,
                            c_c_prime[:split], c_c_prime[split:])
    return Realization(g1, g2, g_mat, pzkv.k_sel, pzkv.v_sympl,
                       pzkv.p_perm, pzkv.z, d)


def _assemble(dims: Dimensions, a_qq, b_q, e_mat, c_qq, d_q, c_qq_prime,
              d_q_prime, c_c_prime, a_cc_prime, b_c_prime, c_cc_prime,
              d_c_prime, g_mat) -> StandardSystem:
    # Interconnection: u = x_c into the quantum side, du_c = g_mat dy'_q
    # into the classical side.
    b_cg = b_c_prime @ g_mat
    d_cg = d_c_prime @ g_mat
    feed = g_mat @ d_q_prime @ c_c_prime
    a = np.block([
        [a_qq, b_q @ c_c_prime + e_mat],
        [b_cg @ c_qq_prime, a_cc_prime + b_c_prime @ feed],
    ])
    b = np.vstack([b_q, b_cg @ d_q_prime])
    c = np.block([
        [c_qq, d_q @ c_c_prime],
        [d_cg @ c_qq_prime, c_cc_prime + d_c_prime @ feed],
    ])
    d = np.vstack([d_q, d_cg @ d_q_prime])
    return StandardSystem(dims, a, b, c, d)


def close_loop(r: Realization) -> StandardSystem:
    """Reassemble the interconnected system from a realization."""
    return _assemble(r.dims, r.g1.a_qq, r.g1.b_q, r.g1.e_mat, r.g1.c_qq,
                     r.g1.d_q, r.g1.c_qq_prime, r.g1.d_q_prime,
                     r.g2.c_c_prime, r.g2.a_cc_prime, r.g2.b_c_prime,
                     r.g2.c_cc_prime, r.g2.d_c_prime, r.g_mat)


def generate_realizable(dims: Dimensions, seed: int) -> StandardSystem:
    """Random realizable standard-form system, deterministic per seed.

    Builds realization ingredients directly: a quantum block whose drift is
    (symmetric + half the input scattering) rotated by theta_nq, output
    rows drawn from a random symplectic matrix with their completion, a
    commuting-quadrature tap for the measurement network, and free random
    classical parts.  Closing the loop over these satisfies every block
    constraint identically, so the result passes the realizability checks
    by construction rather than by tuning.
    """
    rng = np.random.default_rng(seed)
    st = make_structure(dims)
    th_w, th_q = st.theta_w, st.theta_nq
    two_nq, n_c, m, n_yq, n_yc = 2 * dims.n_q, dims.n_c, dims.m, dims.n_yq, dims.n_yc
    m_free = m - n_yq

    def draw(rows, cols, scale=0.4):
        return rng.standard_normal((rows, cols)) * scale

    b_q = draw(two_nq, 2 * m)
    sym = draw(two_nq, two_nq)
    a_qq = ((sym + sym.T) / 2.0 + 0.5 * b_q @ th_w @ b_q.T) @ th_q
    t_out = random_symplectic(m, rng, spread=0.25) if m else np.zeros((0, 0))
    d_q = t_out[: 2 * n_yq]
    d_q_prime = t_out[2 * n_yq:]
    c_qq = (th_q @ b_q @ th_w @ d_q.T).T
    c_qq_prime = d_q_prime @ th_w @ b_q.T @ th_q

    r = min(n_c + n_yc, m_free)
    if r:
        tap = random_symplectic(m_free, rng, spread=0.25)
        g_mat = tap[0: 2 * r: 2]
    else:
        g_mat = np.zeros((0, 2 * m_free))
    c_c_prime = draw(2 * m, n_c)
    e_mat = draw(two_nq, n_c)
    a_cc_prime = draw(n_c, n_c, 0.25)
    c_cc_prime = draw(n_yc, n_c)
    b_c_prime = draw(n_c, r)
    d_c_prime = draw(n_yc, r)
    return _assemble(dims, a_qq, b_q, e_mat, c_qq, d_q, c_qq_prime, d_q_prime,
                     c_c_prime, a_cc_prime, b_c_prime, c_cc_prime, d_c_prime,
                     g_mat)
