"""Numerical range W(A) through its support function.

For a matrix ``A`` and angle ``theta`` the support value of ``W(A)`` in the
direction ``e^{i theta}`` is the top eigenvalue of
``Re(e^{-i theta} A) = cos(theta) Re A + sin(theta) Im A``; a top eigenvector
``x`` gives the boundary point ``<Ax, x>``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .linalg_core import (
    InvalidInputError,
    adjoint,
    as_cmatrix,
    cartesian_parts,
    lambda_max_many,
    operator_norm,
    top_eigvec_many,
)

__all__ = [
    "DEFAULT_NTHETA",
    "NRProfile",
    "theta_grid",
    "nr_support",
    "nr_support_many",
    "nr_profile",
    "nr_symmetry_defect",
    "contains_zero",
    "compress",
    "write_nr_csv",
]

DEFAULT_NTHETA = 720


@dataclass(frozen=True)
class NRProfile:
    thetas: np.ndarray
    support: np.ndarray
    boundary: np.ndarray
    vectors: np.ndarray  # row k is the unit vector producing boundary[k]


def theta_grid(n_theta: int) -> np.ndarray:
    return 2 * np.pi * np.arange(n_theta) / n_theta


def _pencils(A, thetas):
    re, im, _ = cartesian_parts(A)
    c = np.cos(thetas)[:, None, None]
    s = np.sin(thetas)[:, None, None]
    return c * re + s * im


def nr_support_many(A, thetas) -> np.ndarray:
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    return lambda_max_many(_pencils(A, thetas))


def nr_support(A, theta: float) -> float:
    """Support value ``max Re(e^{-i theta} z)`` over ``z`` in ``W(A)``."""
    return float(nr_support_many(A, [theta])[0])


def nr_profile(A, n_theta: int = DEFAULT_NTHETA) -> NRProfile:
    if n_theta < 8:
        raise InvalidInputError("n_theta must be at least 8")
    A = as_cmatrix(A)
    thetas = theta_grid(n_theta)
    h, X = top_eigvec_many(_pencils(A, thetas))
    boundary = np.einsum("ki,ij,kj->k", X.conj(), A, X)
    for a in (thetas, h, boundary, X):
        a.setflags(write=False)
    return NRProfile(thetas, h, boundary, X)


def nr_symmetry_defect(A, n_theta: int = DEFAULT_NTHETA) -> float:
    """``max |h(theta) - h(theta + pi)|`` over the angle grid.

    Zero exactly when the sampled support function is centrally symmetric,
    i.e. when ``W(A) = -W(A)`` up to sampling.
    """
    if n_theta < 8 or n_theta % 2:
        raise InvalidInputError("n_theta must be even and at least 8")
    h = nr_support_many(A, theta_grid(n_theta))
    return float(np.max(np.abs(h - np.roll(h, -n_theta // 2))))


def contains_zero(A, n_theta: int = DEFAULT_NTHETA) -> bool:
    """True when ``0`` lies in ``W(A)`` (support function nonnegative)."""
    A = as_cmatrix(A)
    tau = 1e-9 * (1.0 + operator_norm(A))
    h = nr_support_many(A, theta_grid(max(n_theta, 8)))
    return bool(np.min(h) >= -tau)


def compress(A, basis) -> np.ndarray:
    """Compression ``Q* A Q`` onto the span of orthonormal columns ``Q``."""
    A = as_cmatrix(A)
    Q = np.asarray(basis, dtype=np.complex128)
    if Q.ndim == 1:
        Q = Q[:, None]
    if Q.ndim != 2 or Q.shape[0] != A.shape[0] or Q.shape[1] > A.shape[0]:
        raise InvalidInputError(f"basis of shape {Q.shape} does not fit a {A.shape[0]}x{A.shape[0]} matrix")
    k = Q.shape[1]
    if np.linalg.norm(adjoint(Q) @ Q - np.eye(k), 2) > 1e-10:
        raise InvalidInputError("basis columns are not orthonormal")
    B = adjoint(Q) @ A @ Q
    B.setflags(write=False)
    return B


def write_nr_csv(profile: NRProfile, out=None) -> str:
    """CSV rows ``theta,h,re,im``; returns the text and writes it to ``out`` if given."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["theta", "h", "re", "im"])
    for t, h, p in zip(profile.thetas, profile.support, profile.boundary):
        w.writerow([format(float(t), ".15g"), format(float(h), ".15g"),
                    format(float(p.real), ".15g"), format(float(p.imag), ".15g")])
    text = buf.getvalue()
    if out is not None:
        out.write(text)
    return text
