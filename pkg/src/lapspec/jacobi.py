"""Cyclic Jacobi eigenvalue iteration for dense real symmetric matrices.

Works on a stack of equally sized matrices at once; each (p, q) rotation is
applied to the whole stack with its own angle per matrix.
"""

from __future__ import annotations

import numpy as np

REL_TOL = 1e-14
MAX_SWEEPS = 60


class ConvergenceError(ArithmeticError):
    pass


def _off_norm(a: np.ndarray) -> np.ndarray:
    off = a * ~np.eye(a.shape[1], dtype=bool)
    return np.sqrt((off * off).sum(axis=(1, 2)))


def jacobi_eigvalsh(a, rel_tol: float = REL_TOL, max_sweeps: int = MAX_SWEEPS) -> np.ndarray:
    """Eigenvalues of symmetric ``a`` (shape ``(n, n)`` or ``(b, n, n)``),
    sorted non-increasing along the last axis.

    Sweeps stop once the off-diagonal Frobenius norm is below
    ``rel_tol * ||a||_F`` for every matrix in the stack.
    """
    a = np.array(a, dtype=np.float64)
    single = a.ndim == 2
    if single:
        a = a[None]
    if a.ndim != 3 or a.shape[1] != a.shape[2]:
        raise ValueError("expected square matrix or stack of square matrices")
    if not np.allclose(a, a.transpose(0, 2, 1)):
        raise ValueError("matrix is not symmetric")
    b, n, _ = a.shape
    scale = np.sqrt((a * a).sum(axis=(1, 2)))
    thresh = rel_tol * scale

    for _ in range(max_sweeps + 1):
        active = _off_norm(a) > thresh
        if not active.any():
            break
        sub = a[active]
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = sub[:, p, q]
                nz = apq != 0.0
                if not nz.any():
                    continue
                safe = np.where(nz, apq, 1.0)
                tau = (sub[:, q, q] - sub[:, p, p]) / (2.0 * safe)
                # hypot keeps 1 + tau^2 from overflowing for tiny a_pq
                t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.hypot(1.0, tau))
                t = np.where(nz, t, 0.0)
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                cc, ss = c[:, None], s[:, None]
                colp = sub[:, :, p].copy()
                colq = sub[:, :, q]
                sub[:, :, p] = cc * colp - ss * colq
                sub[:, :, q] = ss * colp + cc * colq
                rowp = sub[:, p, :].copy()
                rowq = sub[:, q, :]
                sub[:, p, :] = cc * rowp - ss * rowq
                sub[:, q, :] = ss * rowp + cc * rowq
                sub[:, p, q] = 0.0
                sub[:, q, p] = 0.0
        a[active] = sub
    else:
        raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")

    vals = -np.sort(-np.einsum("bii->bi", a), axis=1)
    return vals[0] if single else vals
