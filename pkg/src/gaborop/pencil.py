"""Extremal constants for Hermitian PSD pencils, by bisection and by oracle.

Given PSD matrices S and P, the lower-side problem is the largest alpha with
S - alpha P >= 0 and the upper-side problem the smallest beta with
beta P - S >= 0.  Both are computed by monotone bisection on the minimum
eigenvalue of the affine pencil, which stays robust when P (or S) has a
kernel.  An independent closed-form route through the pseudoinverse square
root of P is kept alongside as a cross-check; on the lower side the kernel
of P may couple to S, so that route goes through the Schur complement of S
onto the range of P (the bare pseudoinverse formula is exact only when the
coupling blocks vanish, which the upper-side existence condition guarantees).
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "null_space",
    "kernel_contained",
    "bisect_max_alpha",
    "bisect_min_beta",
    "alpha_pinv_oracle",
    "beta_pinv_oracle",
]

KERNEL_RTOL = 1e-9  # relative eigenvalue threshold for kernel detection
PSD_SLACK_RTOL = 1e-12


def _eigh(h: np.ndarray):
    return np.linalg.eigh((h + h.conj().T) / 2.0)


def null_space(h: np.ndarray, rtol: float = KERNEL_RTOL) -> np.ndarray:
    """Orthonormal kernel basis of a Hermitian PSD matrix (columns)."""
    vals, vecs = _eigh(h)
    top = vals[-1] if vals.size else 0.0
    cutoff = rtol * max(top, 0.0)
    return vecs[:, vals <= cutoff]


def _range_split(h: np.ndarray, rtol: float = KERNEL_RTOL):
    """(range basis, positive eigenvalues, kernel basis) of a PSD matrix."""
    vals, vecs = _eigh(h)
    top = vals[-1] if vals.size else 0.0
    mask = vals > rtol * max(top, 0.0)
    return vecs[:, mask], vals[mask], vecs[:, ~mask]


def kernel_contained(a: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> bool:
    """Whether ker(a) is contained in ker(b), both Hermitian PSD.

    Tested via Rayleigh quotients of b on an orthonormal kernel basis of a,
    relative to the largest eigenvalue of b.
    """
    nb = null_space(a)
    if nb.shape[1] == 0:
        return True
    top = float(np.linalg.eigvalsh((b + b.conj().T) / 2.0)[-1])
    if top <= 0.0:
        return True  # b vanishes
    quot = np.real(np.einsum("ik,ij,jk->k", np.conj(nb), b, nb))
    return bool(np.max(quot) <= tol * top)


def _slack(s: np.ndarray, p: np.ndarray) -> float:
    scale = max(
        1.0,
        float(np.linalg.eigvalsh(s)[-1]) if s.size else 0.0,
        float(np.linalg.eigvalsh(p)[-1]) if p.size else 0.0,
    )
    return PSD_SLACK_RTOL * scale


def _min_eig(h: np.ndarray) -> float:
    return float(np.linalg.eigvalsh((h + h.conj().T) / 2.0)[0])


def bisect_max_alpha(s: np.ndarray, p: np.ndarray, width: float = 1e-11,
                     max_iter: int = 200) -> float:
    """Largest alpha >= 0 with s - alpha p PSD (monotone bisection).

    alpha -> min-eig(s - alpha p) is concave and nonincreasing for PSD p, so
    the feasible set is an interval [0, alpha_opt].
    """
    slack = _slack(s, p)
    feasible = lambda a: _min_eig(s - a * p) >= -slack
    if not feasible(0.0):
        return 0.0  # s itself only PSD up to noise; nothing more to gain
    p_pos = np.linalg.eigvalsh(p)
    top_p = float(p_pos[-1]) if p_pos.size else 0.0
    if top_p <= slack:
        raise ValueError("pencil degenerate: controlling matrix vanishes")
    pos = p_pos[p_pos > KERNEL_RTOL * top_p]
    s_top = float(np.linalg.eigvalsh(s)[-1])
    hi = s_top / float(pos[0]) + 1.0
    for _ in range(60):
        if not feasible(hi):
            break
        hi *= 2.0
    lo = 0.0
    for _ in range(max_iter):
        if hi - lo <= max(width, width * abs(hi)):
            break
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            lo = mid
        else:
            hi = mid
    return lo


def bisect_min_beta(s: np.ndarray, p: np.ndarray, width: float = 1e-11,
                    max_iter: int = 200) -> float:
    """Smallest beta >= 0 with beta p - s PSD (monotone bisection)."""
    slack = _slack(s, p)
    feasible = lambda b: _min_eig(b * p - s) >= -slack
    if feasible(0.0):
        return 0.0
    p_pos = np.linalg.eigvalsh(p)
    top_p = float(p_pos[-1]) if p_pos.size else 0.0
    if top_p <= slack:
        raise ValueError("no finite upper constant: controlling matrix vanishes")
    pos = p_pos[p_pos > KERNEL_RTOL * top_p]
    s_top = float(np.linalg.eigvalsh(s)[-1])
    hi = s_top / float(pos[0]) + 1.0
    for _ in range(60):
        if feasible(hi):
            break
        hi *= 2.0
    else:
        raise ValueError("no finite upper constant: kernel of p meets support of s")
    lo = 0.0
    for _ in range(max_iter):
        if hi - lo <= max(width, width * abs(hi)):
            break
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return hi


def alpha_pinv_oracle(s: np.ndarray, p: np.ndarray) -> float | None:
    """Closed-form largest alpha with s - alpha p PSD.

    Equals the minimum eigenvalue of W (S / ker-coupling Schur complement) W
    on the range of p, W the pseudoinverse square root of p.  Returns None
    when p has no range.
    """
    q_r, vals_r, q_k = _range_split(p)
    if q_r.shape[1] == 0:
        return None
    s_rr = q_r.conj().T @ s @ q_r
    if q_k.shape[1]:
        s_rk = q_r.conj().T @ s @ q_k
        s_kk = q_k.conj().T @ s @ q_k
        s_rr = s_rr - s_rk @ np.linalg.pinv(s_kk, hermitian=True) @ s_rk.conj().T
    w = 1.0 / np.sqrt(vals_r)
    mid = (w[:, None] * s_rr) * w[None, :]
    return float(np.linalg.eigvalsh((mid + mid.conj().T) / 2.0)[0])


def beta_pinv_oracle(s: np.ndarray, p: np.ndarray) -> float | None:
    """Closed-form smallest beta with beta p - s PSD, assuming ker p <= ker s.

    Under that kernel inclusion the coupling blocks of s vanish and the bare
    pseudoinverse formula is exact.  Returns None when p has no range.
    """
    q_r, vals_r, _ = _range_split(p)
    if q_r.shape[1] == 0:
        return None
    s_rr = q_r.conj().T @ s @ q_r
    w = 1.0 / np.sqrt(vals_r)
    mid = (w[:, None] * s_rr) * w[None, :]
    return float(np.linalg.eigvalsh((mid + mid.conj().T) / 2.0)[-1])
