"""Congruence diagonalization of symmetric matrices over F_p (p an odd prime).

`split_step` peels one coordinate off a symmetric matrix A, returning an
invertible P with P^T A P = [a] (+) B. `diagonalize` iterates that step to a
full congruence L^T A L = diag(lambda), with two implementations kept in the
package on purpose:

 - `diagonalize_reference` composes `split_step` literally, one padded P per
   peel. Quadratic-size copies per step make it O(alpha^4); fine for small
   matrices and used to pin down the production engine in tests.
 - `diagonalize` performs the same pivot choices with panel-blocked rank-1
   updates, so the trailing matrix is touched O(alpha/panel) times instead of
   O(alpha) times. Same L, same diagonal, entry for entry.

Pivot rule, in both: use the first nonzero diagonal entry (lowest index); if
the diagonal is all zero but A is not, take the row-major first nonzero
off-diagonal entry A[I,J] and fold coordinate J into I (x_I' = x_I + x_J),
which puts 2*A[I,J] on the diagonal.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fields import inverse_mod


def _as_symmetric(A, p: int) -> np.ndarray:
    M = np.asarray(A, dtype=np.int64) % p
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"need a square matrix, got shape {M.shape}")
    if not np.array_equal(M, M.T):
        raise ValueError("matrix is not symmetric mod p")
    return M


def split_step(A, p: int) -> tuple[np.ndarray, int, np.ndarray]:
    """One peel: returns (P, a, B) with P invertible over F_p and
    P^T A P = [a] (+) B, where B is symmetric of dimension one less.

    For A = 0 this is (I, 0, 0). Otherwise the pivot is the first nonzero
    diagonal entry, or, failing that, the row-major first nonzero entry
    A[I,J] combined into the diagonal via c = e_I + e_J (so a = 2*A[I,J]).
    """
    M = _as_symmetric(A, p)
    k = M.shape[0]
    if not M.any():
        return np.eye(k, dtype=np.int64), 0, np.zeros((k - 1, k - 1),
                                                      dtype=np.int64)
    diag_support = np.flatnonzero(M.diagonal())
    c = np.zeros(k, dtype=np.int64)
    if diag_support.size:
        I = int(diag_support[0])
        a = int(M[I, I])
        c[I] = 1
    else:
        I, J = np.argwhere(M)[0]
        a = int(2 * M[I, J]) % p
        c[I] = c[J] = 1
    pivot = int(np.flatnonzero(c)[0])  # equals I in both cases
    C = np.zeros((k, k), dtype=np.int64)
    C[:, 0] = c
    keep = [m for m in range(k) if m != pivot]
    for col, m in enumerate(keep, start=1):
        C[m, col] = 1
    G = (C.T @ M @ C) % p
    b = G[0]
    ainv = inverse_mod(a, p)
    D = np.eye(k, dtype=np.int64)
    D[0, 1:] = (-ainv * b[1:]) % p
    P = (C @ D) % p
    # Polarization of the completed-square remainder q(y) = y^T G y restricted
    # to y_0 = -a^(-1) * b[1:] . y[1:]: its coefficient matrix.
    Q = (G[1:, 1:] - ainv * np.outer(b[1:], b[1:])) % p
    inv2 = inverse_mod(2, p)
    B = (inv2 * (Q + Q.T)) % p
    return P, a % p, B


@dataclass(frozen=True)
class DiagonalizationResult:
    """L^T A L = diag(diagonal); rank counts the nonzero diagonal entries.

    L is None when the caller skipped it; mu = L^T eta is carried through the
    elimination when eta is supplied, so callers rarely need L itself.
    """

    L: np.ndarray | None
    diagonal: np.ndarray
    rank: int
    mu: np.ndarray | None

    def __post_init__(self):
        self.diagonal.setflags(write=False)
        if self.L is not None:
            self.L.setflags(write=False)
        if self.mu is not None:
            self.mu.setflags(write=False)


def diagonalize_reference(theta, p: int) -> DiagonalizationResult:
    """Literal composition of split_step: peel the top-left coordinate off
    repeatedly, padding each step's P with an identity block. Kept as the
    ground truth the blocked engine is tested against."""
    M = _as_symmetric(theta, p)
    alpha = M.shape[0]
    L = np.eye(alpha, dtype=np.int64)
    diagonal = np.zeros(alpha, dtype=np.int64)
    for t in range(alpha):
        if alpha - t == 1:
            diagonal[t] = M[0, 0] % p
            break
        P, a, B = split_step(M, p)
        diagonal[t] = a
        padded = np.eye(alpha, dtype=np.int64)
        padded[t:, t:] = P
        L = (L @ padded) % p
        M = B
    rank = int(np.count_nonzero(diagonal))
    return DiagonalizationResult(L, diagonal, rank, None)


def _pick_dtype(alpha: int, p: int, panel: int):
    # Lazy mod keeps trailing entries below p + (alpha + panel) * (p - 1)^2;
    # float32 is exact under 2^24, otherwise fall back to float64.
    bound = p + (alpha + panel) * (p - 1) ** 2
    return np.float32 if bound < 2 ** 24 else np.float64


def diagonalize(theta, p: int, want_l: bool = False, eta=None,
                panel: int = 96, *,
                assume_canonical: bool = False) -> DiagonalizationResult:
    """Full congruence diagonalization with panel-deferred updates.

    Pivot selection follows split_step exactly (first nonzero diagonal entry,
    else row-major first off-diagonal fold), so the output matches
    diagonalize_reference entry for entry. The trailing matrix only receives
    one matmul per `panel` pivots; the running diagonal and the current pivot
    row are patched from the panel buffers so pivot decisions never see stale
    values. Arithmetic stays exact: entries are integers carried in floats
    small enough to be exact, reduced mod p only when read.

    assume_canonical certifies that theta is already symmetric with entries
    in [0, p), skipping one validation pass over the matrix; the extraction
    code guarantees this shape by construction.

    All elimination work is confined to a sliding window [t, hi): pivot t's
    update row vanishes at and beyond the running maximum hi of the per-row
    support bounds seen so far, because rank-one updates never create fill
    to the right of the rows that produced them. Matrices from circuits are
    close to banded, so the window stays much narrower than the matrix.
    """
    if assume_canonical:
        M = np.asarray(theta)
    else:
        M = _as_symmetric(theta, p)
    alpha = M.shape[0]
    if eta is not None and np.shape(eta) != (alpha,):
        raise ValueError(f"eta must have length {alpha}")
    if alpha == 0:
        L = np.eye(0, dtype=np.int64) if want_l else None
        mu = None if eta is None else np.zeros(0, dtype=np.int64)
        return DiagonalizationResult(L, np.zeros(0, dtype=np.int64), 0, mu)

    dtype = _pick_dtype(alpha, p, panel)
    A = M.astype(dtype)
    d = A.diagonal().copy()
    lam = np.zeros(alpha, dtype=np.int64)
    # ext[i] bounds row i's support: A[i, ext[i]:] == 0 (at least i+1 so the
    # window always reaches past the diagonal)
    nzmask = M != 0
    ext = np.where(nzmask.any(axis=1),
                   alpha - np.argmax(nzmask[:, ::-1], axis=1), 0)
    ext = np.maximum(ext, np.arange(1, alpha + 1))
    # panel buffers, one row per pending pivot: Vp[j] = wv_j, Wp[j] = row_j
    Vp = np.zeros((panel, alpha), dtype=dtype)
    Wp = np.zeros((panel, alpha), dtype=dtype)
    T = np.eye(alpha, dtype=np.int64) if want_l else None
    mu = None if eta is None else (np.asarray(eta, dtype=np.int64)
                                   % p).astype(dtype)

    t = 0
    j = 0  # pending panel rows
    hi = 0  # window end; grows monotonically

    def flush():
        nonlocal j
        if j:
            np.subtract(A[t:hi, t:hi], Vp[:j, t:hi].T @ Wp[:j, t:hi],
                        out=A[t:hi, t:hi])
            j = 0

    def rotate_to_front(q: int):
        # cycle coordinates t..q one step so q lands at t; support inside
        # the rotated range can land anywhere up to q, hence the ext clamp
        if q == t:
            return
        perm = np.concatenate(([q], np.arange(t, q)))
        A[t:q + 1, t:] = A[perm, t:]
        A[:, t:q + 1] = A[:, perm]
        d[t:q + 1] = d[perm]
        ext[t:q + 1] = ext[perm]
        np.maximum(ext[t:q + 1], q + 1, out=ext[t:q + 1])
        if j:
            Vp[:j, t:q + 1] = Vp[:j, perm]
            Wp[:j, t:q + 1] = Wp[:j, perm]
        if T is not None:
            T[:, t:q + 1] = T[:, perm]
        if mu is not None:
            mu[t:q + 1] = mu[perm]

    while t < alpha:
        hits = np.flatnonzero(np.mod(d[t:t + 64], p))
        if not hits.size and t + 64 < alpha:
            hits = np.flatnonzero(np.mod(d[t + 64:], p))
            if hits.size:
                hits = hits + 64
        if hits.size:
            rotate_to_front(t + int(hits[0]))
        else:
            # diagonal exhausted: reduce the trailing block and look for an
            # off-diagonal pivot to fold in. Entries beyond the window were
            # never touched, so the whole trailing block is valid here.
            flush()
            np.mod(A[t:, t:], p, out=A[t:, t:])
            trailing = A[t:, t:]
            nz = np.argwhere(trailing)
            if not nz.size:
                break  # remaining coordinates never enter the form
            I, J = (int(v) + t for v in nz[0])
            A[t:, I] += A[t:, J]
            A[I, t:] += A[J, t:]
            d[t:] = trailing.diagonal()
            ext[I] = max(int(ext[I]), int(ext[J]), hi)
            if T is not None:
                T[:, I] = (T[:, I] + T[:, J]) % p
            if mu is not None:
                mu[I] += mu[J]
            rotate_to_front(I)

        hi = max(hi, t + 1, int(ext[t]))
        a = int(d[t]) % p
        lam[t] = a
        ainv = inverse_mod(a, p)
        row = A[t, t + 1:hi].copy()
        if j:
            row -= Vp[:j, t] @ Wp[:j, t + 1:hi]
        np.mod(row, p, out=row)
        wv = ainv * row
        np.mod(wv, p, out=wv)
        d[t + 1:hi] -= wv * row
        Vp[j, t + 1:hi] = wv
        Wp[j, t + 1:hi] = row
        Vp[j, t] = 0
        Wp[j, t] = 0
        Vp[j, hi:] = 0
        Wp[j, hi:] = 0
        if T is not None:
            T[:, t + 1:hi] = (T[:, t + 1:hi]
                              - np.outer(T[:, t],
                                         wv.astype(np.int64))) % p
        if mu is not None:
            mu[t + 1:hi] -= wv * (mu[t] % p)
        t += 1
        j += 1
        if j == panel:
            flush()

    rank = int(np.count_nonzero(lam))
    mu_out = None if mu is None else np.mod(mu, p).astype(np.int64)
    return DiagonalizationResult(T, lam, rank, mu_out)


def gf_rank(A, p: int) -> int:
    """Rank over F_p by plain Gaussian elimination. Independent of the
    congruence machinery above; used to cross-check `rank`."""
    M = (np.asarray(A, dtype=np.int64) % p).copy()
    if M.ndim != 2:
        raise ValueError("need a matrix")
    rows, cols = M.shape
    r = 0
    for col in range(cols):
        support = np.flatnonzero(M[r:, col])
        if not support.size:
            continue
        pivot_row = r + int(support[0])
        if pivot_row != r:
            M[[r, pivot_row]] = M[[pivot_row, r]]
        inv = inverse_mod(int(M[r, col]), p)
        M[r] = (M[r] * inv) % p
        below = M[r + 1:, col]
        M[r + 1:] = (M[r + 1:] - np.outer(below, M[r])) % p
        r += 1
        if r == rows:
            break
    return r
