"""Dense complex matrix helpers and the Hermitian eigensolvers.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  Functions that
hand a matrix back to the caller return read-only copies so results can be
shared freely.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "InvalidInputError",
    "NumericalFailureError",
    "DomainError",
    "HermEigen",
    "as_cmatrix",
    "adjoint",
    "cartesian_parts",
    "herm_eigen",
    "jacobi_eigh",
    "lambda_max_many",
    "top_eigvec_many",
    "operator_norm",
    "eig2x2",
    "matrix_from_json",
    "matrix_to_json",
    "load_matrix",
    "dump_matrix",
]

class InvalidInputError(ValueError):
    """Raised when an argument violates a precondition (shape, symmetry, ...)."""


class NumericalFailureError(ArithmeticError):
    """Raised when an iterative method fails to converge."""


class DomainError(ValueError):
    """Raised when a point lies outside the set an operation is defined on."""


@dataclass(frozen=True)
class HermEigen:
    """Ascending eigenvalues and orthonormal eigenvectors (as columns)."""

    values: np.ndarray
    vectors: np.ndarray

    def __iter__(self):
        yield self.values
        yield self.vectors


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def as_cmatrix(A) -> np.ndarray:
    """Validate ``A`` as a finite square matrix and return a complex copy."""
    M = np.array(A, dtype=np.complex128)
    if M.ndim == 0:
        M = M.reshape(1, 1)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
        raise InvalidInputError(f"expected a non-empty square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise InvalidInputError("matrix has non-finite entries")
    return _frozen(M)


def adjoint(A: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(A, -1, -2))


def cartesian_parts(A):
    """Return ``(Re A, Im A, A*A)``.

    ``Re A = (A + A*)/2`` and ``Im A = (A - A*)/(2i)`` are Hermitian and
    ``A = Re A + i Im A``.  The Gram matrix ``A*A`` is positive semidefinite.
    """
    A = as_cmatrix(A)
    Ah = adjoint(A)
    re = (A + Ah) / 2
    im = (A - Ah) / 2j
    gram = Ah @ A
    # symmetrize away rounding so downstream eigensolvers see exact Hermitian input
    gram = (gram + adjoint(gram)) / 2
    return _frozen(re), _frozen(im), _frozen(gram)


def _check_hermitian(H: np.ndarray, tol: float = 1e-10) -> None:
    scale = 1.0 + np.linalg.norm(H, 2)
    if np.linalg.norm(H - adjoint(H), 2) > tol * scale:
        raise InvalidInputError("matrix is not Hermitian within tolerance")


def herm_eigen(H, method: str = "lapack") -> HermEigen:
    """Eigen-decomposition of a Hermitian matrix.

    ``method="lapack"`` uses ``numpy.linalg.eigh``; ``method="jacobi"`` runs
    the cyclic Jacobi solver on the real symmetric embedding (slow, but free of
    any library eigensolver and used to cross-check the fast route).
    """
    H = as_cmatrix(H)
    _check_hermitian(H)
    Hs = (H + adjoint(H)) / 2
    if method == "lapack":
        try:
            w, V = np.linalg.eigh(Hs)
        except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
            raise NumericalFailureError(str(exc)) from exc
    elif method == "jacobi":
        w, V = jacobi_eigh(Hs)
    else:
        raise InvalidInputError(f"unknown method {method!r}")
    return HermEigen(_frozen(np.asarray(w, dtype=float)), _frozen(np.asarray(V)))


def _jacobi_symmetric(S: np.ndarray, tol: float, max_sweeps: int):
    S = S.copy()
    m = S.shape[0]
    Q = np.eye(m)
    ref = max(np.linalg.norm(S), np.finfo(float).tiny)
    offdiag = ~np.eye(m, dtype=bool)
    for _ in range(max_sweeps):
        off = float(np.linalg.norm(S[offdiag]))
        if off <= tol * ref:
            return np.diag(S).copy(), Q
        for p in range(m - 1):
            for q in range(p + 1, m):
                apq = S[p, q]
                if apq == 0.0:
                    continue
                theta = (S[q, q] - S[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 1.0 / (2.0 * theta)
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                sp, sq = S[:, p].copy(), S[:, q].copy()
                S[:, p] = c * sp - s * sq
                S[:, q] = s * sp + c * sq
                rp, rq = S[p, :].copy(), S[q, :].copy()
                S[p, :] = c * rp - s * rq
                S[q, :] = s * rp + c * rq
                qp, qq = Q[:, p].copy(), Q[:, q].copy()
                Q[:, p] = c * qp - s * qq
                Q[:, q] = s * qp + c * qq
    raise NumericalFailureError(f"Jacobi did not converge in {max_sweeps} sweeps")


def jacobi_eigh(H, tol: float = 1e-13, max_sweeps: int = 60):
    """Cyclic Jacobi on the real embedding ``[[X, -Y], [Y, X]]`` of ``H = X + iY``.

    Every eigenvalue of ``H`` appears twice in the embedding.  Complex
    eigenvectors are rebuilt per eigenvalue cluster from ``x + iy`` and
    orthonormalized.
    """
    H = np.asarray(H, dtype=np.complex128)
    n = H.shape[0]
    X, Y = H.real, H.imag
    S = np.block([[X, -Y], [Y, X]])
    w2, Q = _jacobi_symmetric(S, tol, max_sweeps)
    order = np.argsort(w2)
    w2, Q = w2[order], Q[:, order]
    Z = Q[:n, :] + 1j * Q[n:, :]

    scale = 1.0 + np.max(np.abs(w2))
    values = np.empty(n)
    vectors = np.empty((n, n), dtype=np.complex128)
    i = filled = 0
    while i < 2 * n:
        j = i + 1
        while j < 2 * n and w2[j] - w2[j - 1] <= 1e-9 * scale:
            j += 1
        k = (j - i) // 2
        U, _, _ = np.linalg.svd(Z[:, i:j], full_matrices=False)
        values[filled:filled + k] = np.mean(w2[i:j])
        vectors[:, filled:filled + k] = U[:, :k]
        filled += k
        i = j
    if filled != n:
        raise NumericalFailureError("eigenvalue clusters of the real embedding are not paired")
    return values, vectors


def lambda_max_many(M: np.ndarray) -> np.ndarray:
    """Largest eigenvalue of each Hermitian matrix in a stack ``(..., n, n)``."""
    M = np.asarray(M)
    n = M.shape[-1]
    if n == 1:
        return M[..., 0, 0].real.copy()
    if n == 2:
        a = M[..., 0, 0].real
        d = M[..., 1, 1].real
        b = M[..., 0, 1]
        return 0.5 * (a + d) + np.hypot(0.5 * (a - d), np.abs(b))
    return np.linalg.eigvalsh(M)[..., -1]


def _top_eigvec_2x2(M: np.ndarray):
    a = M[..., 0, 0].real
    d = M[..., 1, 1].real
    b = M[..., 0, 1]
    half = 0.5 * (a - d)
    r = np.hypot(half, np.abs(b))
    lam = 0.5 * (a + d) + r
    # pick the eigenvector formula without cancellation: lam - d = half + r when a >= d
    first = a >= d
    v0 = np.where(first, half + r, b)
    v1 = np.where(first, np.conj(b), r - half)
    nrm = np.sqrt(np.abs(v0) ** 2 + np.abs(v1) ** 2)
    flat = nrm == 0.0
    v0 = np.where(flat, 1.0, v0 / np.where(flat, 1.0, nrm))
    v1 = np.where(flat, 0.0, v1 / np.where(flat, 1.0, nrm))
    return lam, np.stack([v0, v1], axis=-1).astype(np.complex128)


def top_eigvec_many(M: np.ndarray):
    """Top eigenvalue and a unit top eigenvector of each matrix in a stack."""
    M = np.asarray(M)
    if M.shape[-1] == 2:
        return _top_eigvec_2x2(M)
    w, V = np.linalg.eigh(M)
    return w[..., -1], V[..., :, -1]


def operator_norm(A) -> float:
    """Spectral norm ``sqrt(lambda_max(A*A))``."""
    _, _, gram = cartesian_parts(A)
    top = float(np.linalg.eigvalsh(gram)[-1])
    return math.sqrt(max(top, 0.0))


def eig2x2(A):
    """Both eigenvalues of a 2x2 matrix from the characteristic quadratic."""
    A = as_cmatrix(A)
    if A.shape != (2, 2):
        raise InvalidInputError("eig2x2 needs a 2x2 matrix")
    tr = A[0, 0] + A[1, 1]
    half_gap = np.sqrt(((A[0, 0] - A[1, 1]) / 2) ** 2 + A[0, 1] * A[1, 0])
    mid = tr / 2
    return complex(mid - half_gap), complex(mid + half_gap)


# -- matrix JSON ------------------------------------------------------------

def matrix_from_json(obj) -> np.ndarray:
    """Parse ``{"n": n, "entries": [[[re, im], ...], ...]}`` (row-major)."""
    if isinstance(obj, (str, bytes)):
        obj = json.loads(obj)
    if not isinstance(obj, dict) or "entries" not in obj:
        raise InvalidInputError("matrix JSON must be an object with 'entries'")
    rows = obj["entries"]
    n = obj.get("n", len(rows) if isinstance(rows, list) else None)
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InvalidInputError(f"'n' must be a positive integer, got {n!r}")
    if not isinstance(rows, list) or len(rows) != n:
        raise InvalidInputError(f"expected {n} rows in 'entries'")
    M = np.empty((n, n), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            got = len(row) if isinstance(row, list) else type(row).__name__
            raise InvalidInputError(f"row {i}: expected {n} entries, got {got}")
        for j, pair in enumerate(row):
            if (not isinstance(pair, (list, tuple)) or len(pair) != 2
                    or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)):
                raise InvalidInputError(f"row {i}, column {j}: expected [re, im], got {pair!r}")
            re, im = float(pair[0]), float(pair[1])
            if not (math.isfinite(re) and math.isfinite(im)):
                raise InvalidInputError(f"row {i}, column {j}: non-finite value")
            M[i, j] = complex(re, im)
    return _frozen(M)


def matrix_to_json(A, **extra) -> dict:
    A = as_cmatrix(A)
    out = {
        "n": int(A.shape[0]),
        "entries": [[[float(z.real), float(z.imag)] for z in row] for row in A],
    }
    out.update(extra)
    return out


def load_matrix(path) -> np.ndarray:
    text = Path(path).read_text()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}") from exc
    return matrix_from_json(obj)


def dump_matrix(A, path, **extra) -> None:
    Path(path).write_text(json.dumps(matrix_to_json(A, **extra)) + "\n")
