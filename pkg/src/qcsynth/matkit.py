"""Matrix decompositions and solvers behind the realizability constructions.

Everything here is a pure function of its arguments.  One tolerance
convention is used throughout: a quantity counts as zero when its max-norm
stays below tol * max(1, scale), with scale drawn from the operands that
produced it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .sysmodel import diag_j

__all__ = [
    "DEFAULT_TOL",
    "SkewCanonicalResult",
    "ItoFactorization",
    "SymplecticCompletion",
    "PzkvDecomposition",
    "skew_canonical",
    "ito_factorize",
    "symplectic_complete",
    "pzkv_decompose",
    "minnorm_right_solve",
    "rank_tol",
    "random_symplectic",
]

DEFAULT_TOL = 1e-9

# Candidate rows below this unit-scale margin are skipped on the first pass
# of the completion loops; the best-scoring candidate is the fallback.
_CANDIDATE_FLOOR = 1e-6


def _maxabs(a: np.ndarray) -> float:
    return 0.0 if a.size == 0 else float(np.max(np.abs(a)))


def rank_tol(m_mat, tol: float = DEFAULT_TOL) -> int:
    """Numerical rank: count of singular values above tol times the largest."""
    m_mat = np.asarray(m_mat, dtype=float)
    if m_mat.size == 0:
        return 0
    s = np.linalg.svd(m_mat, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol * s[0]))


@dataclass(frozen=True)
class SkewCanonicalResult:
    """Congruence p with p @ theta @ p.T = diag(diag_{n_q}(J), 0)."""

    p: np.ndarray
    n_q: int
    n_c: int


def skew_canonical(theta, tol: float = DEFAULT_TOL) -> SkewCanonicalResult:
    """Bring a real skew-symmetric matrix to canonical form by congruence.

    The real Schur form of a skew-symmetric matrix is block diagonal with
    2x2 blocks b*J and zero rows.  Scaling each block row pair by
    1/sqrt(|b|), swapping the pair when b < 0, and permuting the J-blocks
    to the front produces the canonical congruence; n_q equals rank/2.
    """
    theta = np.asarray(theta, dtype=float)
    n = theta.shape[0]
    if theta.ndim != 2 or theta.shape != (n, n):
        raise ValueError(f"theta must be square, got shape {theta.shape}")
    if n == 0:
        return SkewCanonicalResult(np.zeros((0, 0)), 0, 0)
    scale = max(1.0, _maxabs(theta))
    skew_defect = _maxabs(theta + theta.T)
    if skew_defect > tol * scale:
        raise ValueError("theta is not skew-symmetric within tolerance "
                         f"(max residual {skew_defect:.3e})")
    theta = (theta - theta.T) / 2.0
    t, q = scipy.linalg.schur(theta)
    svals = np.linalg.svd(theta, compute_uv=False)
    cut = tol * svals[0] if svals[0] > 0.0 else np.inf
    pair_rows: list[np.ndarray] = []
    free_rows: list[np.ndarray] = []
    i = 0
    while i < n:
        if i + 1 < n and abs(t[i + 1, i]) > cut:
            b = (t[i, i + 1] - t[i + 1, i]) / 2.0
            s = 1.0 / np.sqrt(abs(b))
            r1, r2 = s * q[:, i], s * q[:, i + 1]
            # A block with b < 0 is |b| * (-J); swapping the pair flips it.
            pair_rows.extend((r1, r2) if b > 0 else (r2, r1))
            i += 2
        else:
            free_rows.append(q[:, i])
            i += 1
    n_q = len(pair_rows) // 2
    p = np.vstack(pair_rows + free_rows)
    return SkewCanonicalResult(p, n_q, n - 2 * n_q)


@dataclass(frozen=True)
class ItoFactorization:
    """Real m x 2m factor w with w @ F_w @ w.T = f_v."""

    w: np.ndarray


def ito_factorize(f_v, tol: float = DEFAULT_TOL) -> ItoFactorization:
    """Factor a Hermitian nonnegative Ito matrix through the vacuum F_w.

    Construction: eigendecompose f_v = U diag(lam) U^H and route each
    eigenpair through one field channel via Q, where column 2j carries
    sqrt(lam_j / 2) e_j and column 2j-1 equals -U^H conj(U) times column 2j.
    The product W = U Q U_w^H is real in exact arithmetic (channel j of W is
    sqrt(lam_j) * [Im u_j, Re u_j]); the imaginary round-off is checked and
    truncated.  Eigenvalues in [-tol, 0) are clamped to zero.
    """
    f_v = np.asarray(f_v, dtype=complex)
    m = f_v.shape[0]
    if f_v.ndim != 2 or f_v.shape != (m, m):
        raise ValueError(f"f_v must be square, got shape {f_v.shape}")
    if m == 0:
        return ItoFactorization(np.zeros((0, 0)))
    scale = max(1.0, _maxabs(f_v))
    herm_defect = _maxabs(f_v - f_v.conj().T)
    if herm_defect > tol * scale:
        raise ValueError("f_v is not Hermitian within tolerance "
                         f"(max asymmetry {herm_defect:.3e})")
    lam, u = np.linalg.eigh((f_v + f_v.conj().T) / 2.0)
    if lam.min() < -tol * scale:
        raise ValueError(f"f_v has a negative eigenvalue ({lam.min():.6e})")
    lam = np.clip(lam, 0.0, None)
    q_mat = np.zeros((m, 2 * m), dtype=complex)
    for j in range(m):
        root = np.sqrt(lam[j] / 2.0)
        q_mat[j, 2 * j + 1] = root
        q_mat[:, 2 * j] = -root * (u.conj().T @ u[:, j].conj())
    u_w_block = (np.sqrt(2.0) / 2.0) * np.array([[1j, 1j], [-1.0, 1.0]])
    u_w = np.kron(np.eye(m), u_w_block)
    w = u @ q_mat @ u_w.conj().T
    imag_defect = _maxabs(w.imag)
    if imag_defect > tol * max(1.0, _maxabs(w)):
        raise ValueError(f"factor failed to come out real (imag {imag_defect:.3e})")
    return ItoFactorization(np.ascontiguousarray(w.real))


def _project_out(vec: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """Euclidean residual of vec against the row space of `rows`."""
    if rows.shape[0] == 0:
        return vec.copy()
    basis = scipy.linalg.orth(rows.T)
    return vec - (vec @ basis) @ basis.T


def _check_canonical_form(theta: np.ndarray, tol: float, name: str) -> None:
    # The residual identity behind the completion (r orthogonal to a set
    # makes r @ theta symplectically orthogonal to it) needs theta^2 = -I.
    dim = theta.shape[0]
    if dim % 2:
        raise ValueError(f"{name} must have even size, got {dim}")
    if _maxabs(theta @ theta + np.eye(dim)) > max(tol, 1e-12) * max(1.0, _maxabs(theta) ** 2):
        raise ValueError(f"{name} must square to -I (canonical J blocks)")


def _extend_symplectic(fixed: np.ndarray, seeds: list[np.ndarray], n_pairs: int,
                       theta: np.ndarray, tol: float) -> list[np.ndarray]:
    """Grow (v_k, w_k) row pairs completing `fixed` to a symplectic basis.

    fixed holds rows already forming canonical J-pairs under theta (possibly
    none); seeds are prescribed v rows spanning an isotropic subspace, kept
    verbatim.  Returns the 2*n_pairs new rows interleaved as
    (v_1, w_1, v_2, w_2, ...).

    Because theta @ theta = -I, a residual r that is Euclidean-orthogonal to
    a set of rows yields r @ theta symplectically orthogonal to the same
    set.  The v-loop therefore projects candidates against the fixed rows
    and the earlier v's, also requiring the resulting row to be linearly
    independent of them; the w-loop projects against the fixed rows, every
    v except its own partner, and the earlier w's, then scales by the
    pairing with its partner.  Candidates are standard basis vectors taken
    in index order; the first with a healthy margin wins, the best one is
    the fallback.
    """
    dim = theta.shape[0]
    vs = [np.asarray(s, dtype=float) for s in seeds]
    hard_floor = max(tol, 1e-12)

    def pick(score_fn):
        best_payload, best_score = None, -1.0
        for i in range(dim):
            cand = np.zeros(dim)
            cand[i] = 1.0
            score, payload = score_fn(cand)
            if score >= _CANDIDATE_FLOOR:
                return payload
            if score > best_score:
                best_score, best_payload = score, payload
        if best_score <= hard_floor:
            raise ValueError("completion stalled: no usable candidate row "
                             "(numerically degenerate input)")
        return best_payload

    for k in range(len(vs), n_pairs):
        built = np.vstack([fixed] + [v[None, :] for v in vs]) if vs else fixed

        def v_score(cand, built=built):
            r = _project_out(cand, built)
            nr = np.linalg.norm(r)
            if nr < hard_floor:
                return 0.0, None
            v_new = (r / nr) @ theta
            # Independence of the resulting row from everything built so far.
            margin = np.linalg.norm(_project_out(v_new, built))
            return margin, v_new

        vs.append(pick(v_score))

    ws: list[np.ndarray] = []
    for k in range(n_pairs):
        others = [v[None, :] for j, v in enumerate(vs) if j != k]
        basis = np.vstack([fixed] + others + [w[None, :] for w in ws])
        v_k = vs[k]
        v_norm = np.linalg.norm(v_k)

        def w_score(cand, basis=basis, v_k=v_k, v_norm=v_norm):
            r = _project_out(cand, basis)
            nr = np.linalg.norm(r)
            if nr < hard_floor:
                return 0.0, None
            r = r / nr
            pairing = float(r @ v_k)
            score = abs(pairing) / max(v_norm, hard_floor)
            if score <= hard_floor:
                return score, None
            # omega(v_k, r @ theta) equals <v_k, r>; dividing normalizes it to 1.
            return score, (r @ theta) / pairing

        ws.append(pick(w_score))

    out: list[np.ndarray] = []
    for v, w in zip(vs, ws):
        out.extend((v, w))
    return out


@dataclass(frozen=True)
class SymplecticCompletion:
    """Rows extending d_q to a symplectic matrix (with d_q stacked on top)."""

    n_mat: np.ndarray


def symplectic_complete(d_q, theta_w, tol: float = DEFAULT_TOL) -> SymplecticCompletion:
    """Complete quadrature output rows to a full symplectic transformation.

    d_q must satisfy d_q @ theta_w @ d_q.T = diag_{n_yq}(J); the returned
    n_mat stacks under d_q so that the whole matrix V satisfies
    V @ theta_w @ V.T = theta_w.
    """
    d_q = np.asarray(d_q, dtype=float)
    theta_w = np.asarray(theta_w, dtype=float)
    two_m = theta_w.shape[0]
    _check_canonical_form(theta_w, tol, "theta_w")
    if d_q.ndim != 2:
        d_q = d_q.reshape(0, two_m) if d_q.size == 0 else np.atleast_2d(d_q)
    if d_q.shape[1] != two_m or d_q.shape[0] % 2:
        raise ValueError(f"d_q must have an even row count and {two_m} columns, "
                         f"got shape {d_q.shape}")
    n_yq = d_q.shape[0] // 2
    m = two_m // 2
    if n_yq > m:
        raise ValueError(f"d_q has {n_yq} quadrature pairs but only m={m} channels")
    gram = d_q @ theta_w @ d_q.T
    scale = max(1.0, _maxabs(d_q) ** 2 * _maxabs(theta_w) * two_m)
    defect = _maxabs(gram - diag_j(n_yq))
    if defect > tol * scale:
        raise ValueError("d_q does not satisfy the quadrature pairing "
                         f"precondition (residual {defect:.3e})")
    rows = _extend_symplectic(d_q, [], m - n_yq, theta_w, tol)
    n_mat = np.vstack(rows) if rows else np.zeros((0, two_m))
    full = np.vstack([d_q, n_mat])
    check = _maxabs(full @ theta_w @ full.T - theta_w)
    if check > 1e-6 * max(1.0, _maxabs(full) ** 2):
        raise ValueError(f"completion failed to verify (residual {check:.3e}); "
                         "d_q is numerically rank deficient")
    return SymplecticCompletion(n_mat)


@dataclass(frozen=True)
class PzkvDecomposition:
    """Factorization M = P Z K V of an isotropic read-out matrix.

    p_perm is a permutation, z = (I_r ; X) up to that permutation, k_sel
    selects the odd-indexed rows of the symplectic v_sympl, and the first
    chosen basis rows of M sit verbatim at those rows of v_sympl.
    """

    p_perm: np.ndarray
    z: np.ndarray
    k_sel: np.ndarray
    v_sympl: np.ndarray
    r: int


def pzkv_decompose(m_mat, theta_prime, tol: float = DEFAULT_TOL) -> PzkvDecomposition:
    """Split an isotropic matrix into permutation, basis, selection and network.

    Requires m_mat @ theta_prime @ m_mat.T = 0; the rank r of m_mat can then
    not exceed half the symplectic dimension.  Basis rows are picked by
    column-pivoted QR on m_mat.T, embedded as the v-rows of a symplectic
    matrix, and the remaining rows are recovered through Z.
    """
    m_mat = np.asarray(m_mat, dtype=float)
    theta_prime = np.asarray(theta_prime, dtype=float)
    two_mp = theta_prime.shape[0]
    _check_canonical_form(theta_prime, tol, "theta_prime")
    if m_mat.ndim != 2:
        m_mat = m_mat.reshape(0, two_mp) if m_mat.size == 0 else np.atleast_2d(m_mat)
    if m_mat.shape[1] != two_mp:
        raise ValueError(f"m_mat must have {two_mp} columns, got shape {m_mat.shape}")
    m_prime = two_mp // 2
    rows = m_mat.shape[0]
    iso = _maxabs(m_mat @ theta_prime @ m_mat.T)
    scale = max(1.0, _maxabs(m_mat) ** 2 * two_mp)
    if iso > tol * scale:
        raise ValueError(f"m_mat is not isotropic (residual {iso:.3e})")
    r = rank_tol(m_mat, tol)
    if r > m_prime:
        raise ValueError(f"rank {r} exceeds the isotropic bound m'={m_prime}")

    if r > 0:
        _, _, piv = scipy.linalg.qr(m_mat.T, pivoting=True, mode="economic")
        basis_idx = sorted(piv[:r].tolist())
    else:
        basis_idx = []
    other_idx = [i for i in range(rows) if i not in basis_idx]
    basis = m_mat[basis_idx, :]

    # Remaining rows expressed in the chosen basis; consistency is implied
    # by the rank computation but is still verified by the solver.
    x = minnorm_right_solve(basis, m_mat[other_idx, :], tol) if other_idx else \
        np.zeros((0, r))
    z = np.vstack([np.eye(r), x])
    p_perm = np.zeros((rows, rows))
    for pos, orig in enumerate(basis_idx + other_idx):
        p_perm[orig, pos] = 1.0
    k_sel = np.zeros((r, two_mp))
    for i in range(r):
        k_sel[i, 2 * i] = 1.0
    pairs = _extend_symplectic(np.zeros((0, two_mp)), list(basis), m_prime,
                               theta_prime, tol)
    v_sympl = np.vstack(pairs) if pairs else np.zeros((0, 0))
    return PzkvDecomposition(p_perm, z, k_sel, v_sympl, r)


def minnorm_right_solve(a, b, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Minimum-Frobenius-norm solution x of x @ a = b.

    The equation must be consistent: every row of b has to lie in the row
    space of a.  Raises with the residual norm otherwise.
    """
    a = np.atleast_2d(np.asarray(a, dtype=float))
    b = np.atleast_2d(np.asarray(b, dtype=float))
    if a.shape[1] != b.shape[1]:
        raise ValueError(f"column mismatch: a has {a.shape[1]}, b has {b.shape[1]}")
    if a.shape[0] == 0 or a.shape[1] == 0:
        x = np.zeros((b.shape[0], a.shape[0]))
    else:
        x = np.linalg.lstsq(a.T, b.T, rcond=None)[0].T
    residual = _maxabs(x @ a - b)
    if residual > tol * max(1.0, _maxabs(b)):
        raise ValueError("x @ a = b is inconsistent: b is not in the row "
                         f"space of a (residual {residual:.3e})")
    return x


def random_symplectic(m: int, rng: np.random.Generator, spread: float = 0.5) -> np.ndarray:
    """Random symplectic matrix exp(diag_m(J) @ S) with S symmetric.

    The exponential of a Hamiltonian matrix is symplectic, so the result
    satisfies T @ diag_m(J) @ T.T = diag_m(J) exactly in exact arithmetic.
    """
    s = rng.standard_normal((2 * m, 2 * m)) * spread
    s = (s + s.T) / 2.0
    return scipy.linalg.expm(diag_j(m) @ s)
