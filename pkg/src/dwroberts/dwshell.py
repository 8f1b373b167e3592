"""Davis-Wielandt shell of a matrix through its support function.

The shell ``DV(A)`` lives in R^3 as ``(Re mu, Im mu, r)`` with ``mu = <Ax,x>``
and ``r = <A*A x, x>`` (closed convex hull over unit ``x``).  Its support
value in direction ``u`` is the top eigenvalue of the Hermitian pencil
``u1 Re A + u2 Im A + u3 A*A`` and a top eigenvector is a supporting point.

Everything the Roberts test needs comes from comparing the support function
of ``A`` with that of ``-A`` over the closed upper hemisphere ``u3 >= 0``:
for ``lam = l1 + i l2``

    ||A + lam I||^2 - ||A - lam I||^2 = h(2 l1, 2 l2, 1) - h(-2 l1, -2 l2, 1),

and ``h`` is positively homogeneous, so the normalized difference at unit
directions bounds the norm gap for every ``lam`` at once.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .linalg_core import (
    DomainError,
    InvalidInputError,
    adjoint,
    as_cmatrix,
    cartesian_parts,
    lambda_max_many,
    operator_norm,
    top_eigvec_many,
)
from .ranges import nr_support_many, theta_grid

__all__ = [
    "Direction3",
    "ShellPoint",
    "ShellCloud",
    "HemisphereGrid",
    "ShellDefect",
    "LMuResult",
    "hemisphere_grid",
    "dv_support",
    "dv_support_many",
    "shell_point",
    "dv_upper_samples",
    "dv_ub_symmetry_defect",
    "l_mu_max",
    "l_mu_max_many",
    "write_shell_csv",
    "shell_to_json",
]


class Direction3(NamedTuple):
    u1: float
    u2: float
    u3: float

    @classmethod
    def normalized(cls, u1, u2, u3) -> "Direction3":
        r = math.sqrt(u1 * u1 + u2 * u2 + u3 * u3)
        if r == 0.0:
            raise InvalidInputError("zero direction")
        return cls(u1 / r, u2 / r, u3 / r)


@dataclass(frozen=True)
class ShellPoint:
    mu: complex
    r: float
    u: Direction3
    h: float


@dataclass(frozen=True)
class ShellCloud:
    """Supporting points of ``DV(A)``, one per direction (stored as arrays)."""

    directions: np.ndarray
    h: np.ndarray
    mu: np.ndarray
    r: np.ndarray

    def __len__(self):
        return len(self.h)

    def __getitem__(self, k) -> ShellPoint:
        return ShellPoint(complex(self.mu[k]), float(self.r[k]),
                          Direction3(*map(float, self.directions[k])), float(self.h[k]))

    def __iter__(self):
        return (self[k] for k in range(len(self)))


@dataclass(frozen=True)
class HemisphereGrid:
    """Latitude/longitude grid on ``{|u| = 1, u3 >= 0}``.

    ``phis`` run from the pole (0) to the equator (pi/2) inclusive; the
    directions array is laid out row-major as ``(phi index, theta index)``.
    ``mesh`` is a covering radius: every unit vector of the closed hemisphere
    is within Euclidean (hence sup-norm) distance ``mesh`` of a grid direction.
    """

    n_phi: int
    n_theta: int
    phis: np.ndarray = field(repr=False)
    thetas: np.ndarray = field(repr=False)
    directions: np.ndarray = field(repr=False)
    mesh: float

    def reflected_index(self) -> np.ndarray:
        """Index of ``(-u1, -u2, u3)`` for each grid direction."""
        i, j = np.divmod(np.arange(self.n_phi * self.n_theta), self.n_theta)
        return i * self.n_theta + (j + self.n_theta // 2) % self.n_theta


def _directions(phis, thetas):
    P, T = np.meshgrid(phis, thetas, indexing="ij")
    sp = np.sin(P)
    return np.stack([sp * np.cos(T), sp * np.sin(T), np.cos(P)], axis=-1).reshape(-1, 3)


def hemisphere_grid(n_phi: int = 91, n_theta: int = 360) -> HemisphereGrid:
    if n_phi < 2 or n_theta < 8 or n_theta % 2:
        raise InvalidInputError("need n_phi >= 2 and an even n_theta >= 8")
    phis = np.linspace(0.0, np.pi / 2, n_phi)
    phis[-1] = np.pi / 2
    thetas = theta_grid(n_theta)
    dirs = _directions(phis, thetas)
    dirs[(n_phi - 1) * n_theta:, 2] = 0.0  # equator exactly
    mesh = 0.5 * math.hypot(phis[1] - phis[0], thetas[1] - thetas[0])
    for a in (phis, thetas, dirs):
        a.setflags(write=False)
    return HemisphereGrid(n_phi, n_theta, phis, thetas, dirs, mesh)


def _pencil_basis(A):
    re, im, gram = cartesian_parts(A)
    return np.stack([re, im, gram])


def _pencils(basis, U):
    return np.einsum("kc,cij->kij", np.asarray(U, dtype=float), basis)


def dv_support_many(A, U) -> np.ndarray:
    U = np.atleast_2d(np.asarray(U, dtype=float))
    return lambda_max_many(_pencils(_pencil_basis(A), U))


def dv_support(A, u) -> float:
    """Support value of ``DV(A)`` in direction ``u``: top eigenvalue of the pencil."""
    return float(dv_support_many(A, [tuple(u)])[0])


def _cloud(A, U) -> ShellCloud:
    A = as_cmatrix(A)
    basis = _pencil_basis(A)
    h, X = top_eigvec_many(_pencils(basis, U))
    mu = np.einsum("ki,ij,kj->k", X.conj(), A, X)
    r = np.einsum("ki,ij,kj->k", X.conj(), basis[2], X).real
    U = np.array(U, dtype=float)
    for a in (U, h, mu, r):
        a.setflags(write=False)
    return ShellCloud(U, h, mu, r)


def shell_point(A, u) -> ShellPoint:
    """Supporting point of ``DV(A)`` with outward normal ``u`` (any unit vector)."""
    return _cloud(A, np.atleast_2d(np.asarray(u, dtype=float)))[0]


def dv_upper_samples(A, grid: HemisphereGrid | None = None) -> ShellCloud:
    """Upper-boundary points: supporting points for all grid directions with ``u3 > 0``."""
    grid = grid or hemisphere_grid()
    U = grid.directions[grid.directions[:, 2] > 0]
    return _cloud(A, U)


@dataclass(frozen=True)
class ShellDefect:
    defect: float
    certified_bound: float
    witness: Direction3
    lipschitz: float
    mesh: float

    def __iter__(self):
        yield self.defect
        yield self.certified_bound
        yield self.witness


def _refine(basis, grid: HemisphereGrid, k: int, sub: int = 4):
    i, j = divmod(k, grid.n_theta)
    dphi = grid.phis[1] - grid.phis[0]
    dth = grid.thetas[1] - grid.thetas[0]
    phis = np.clip(grid.phis[i] + dphi * np.linspace(-2, 2, 4 * sub + 1), 0.0, np.pi / 2)
    thetas = grid.thetas[j] + dth * np.linspace(-2, 2, 4 * sub + 1)
    U = _directions(np.unique(phis), thetas)
    R = U * np.array([-1.0, -1.0, 1.0])
    d = np.abs(lambda_max_many(_pencils(basis, U)) - lambda_max_many(_pencils(basis, R)))
    m = int(np.argmax(d))
    return float(d[m]), U[m]


def dv_ub_symmetry_defect(A, grid: HemisphereGrid | None = None, refine: bool = True) -> ShellDefect:
    """Largest gap ``|h(u1,u2,u3) - h(-u1,-u2,u3)|`` over the hemisphere grid.

    ``certified_bound = defect + L * mesh`` with
    ``L = 2 (||Re A|| + ||Im A|| + ||A*A||)``, a Lipschitz constant of the gap,
    bounds the gap on the whole closed hemisphere.
    """
    grid = grid or hemisphere_grid()
    A = as_cmatrix(A)
    basis = _pencil_basis(A)
    h = lambda_max_many(_pencils(basis, grid.directions))
    d = np.abs(h - h[grid.reflected_index()])
    k = int(np.argmax(d))
    defect, witness = float(d[k]), grid.directions[k]
    if refine:
        d2, w2 = _refine(basis, grid, k)
        if d2 > defect:
            defect, witness = d2, w2
    L = 2.0 * sum(float(np.linalg.norm(P, 2)) for P in basis)
    return ShellDefect(defect, defect + L * grid.mesh, Direction3(*map(float, witness)), L, grid.mesh)


# -- fiber maximum ---------------------------------------------------------

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_min(fun, lo, hi, iters):
    """Vectorized golden-section search; each slot minimizes its own unimodal function."""
    a, b = lo.astype(float).copy(), hi.astype(float).copy()
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = fun(c), fun(d)
    for _ in range(iters):
        left = fc <= fd
        a, b = np.where(left, a, c), np.where(left, d, b)
        c_new = np.where(left, b - INV_PHI * (b - a), d)
        d_new = np.where(left, c, a + INV_PHI * (b - a))
        x = np.where(left, c_new, d_new)
        fx = fun(x)
        fc, fd = np.where(left, fx, fd), np.where(left, fc, fx)
        c, d = c_new, d_new
    best_left = fc <= fd
    return np.where(best_left, c, d), np.where(best_left, fc, fd)


class LMuResult(NamedTuple):
    value: float
    v: tuple
    flagged: bool


def _check_in_range(A, mus, n_theta=720):
    thetas = theta_grid(n_theta)
    h = nr_support_many(A, thetas)
    tau = 1e-9 * (1.0 + operator_norm(A))
    proj = (np.exp(-1j * thetas)[None, :] * mus[:, None]).real
    bad = np.any(proj > h[None, :] + tau, axis=1)
    if np.any(bad):
        raise DomainError(f"mu = {complex(mus[np.argmax(bad)])} lies outside W(A)")


def _line_direction(A):
    """``(cos a, sin a)`` when ``A = c I + e^{ia} K`` with ``K`` Hermitian, ``(0, 0)``
    when ``A`` is scalar, else None."""
    n = A.shape[0]
    N = A - (np.trace(A) / n) * np.eye(n)
    tol = 1e-10 * (1.0 + operator_norm(A))
    if np.linalg.norm(N, 2) <= tol:
        return (0.0, 0.0)
    i, j = np.unravel_index(np.argmax(np.abs(N)), N.shape)
    a = 0.5 * np.angle(N[i, j] / np.conj(N[j, i])) if abs(N[j, i]) > 0 else 0.0
    K = np.exp(-1j * a) * N
    if np.linalg.norm(K - adjoint(K), 2) > tol:
        return None
    return (math.cos(a), math.sin(a))


def l_mu_max_many(A, mus, box: float | None = None, iters: int = 56) -> list[LMuResult]:
    """Vectorized :func:`l_mu_max` over an array of targets ``mus``."""
    A = as_cmatrix(A)
    mus = np.atleast_1d(np.asarray(mus, dtype=np.complex128))
    _check_in_range(A, mus)
    re, im, gram = cartesian_parts(A)
    if box is None:
        box = 1e3 * (1.0 + operator_norm(A))
    K = len(mus)

    def F(v1, v2):
        P = gram[None] + v1[:, None, None] * re[None] + v2[:, None, None] * im[None]
        return lambda_max_many(P) - v1 * mus.real - v2 * mus.imag

    lo, hi = np.full(K, -box), np.full(K, box)
    edge = 0.99 * box
    line = _line_direction(A)
    if line is None:
        def inner(v1):
            return _golden_min(lambda v2: F(v1, v2), lo, hi, iters)

        v1, _ = _golden_min(lambda v1: inner(v1)[1], lo, hi, iters)
        v2, val = inner(v1)
        flagged = (np.abs(v1) > edge) | (np.abs(v2) > edge)
    else:
        # W(A) lies on a line: the objective is constant across it, search along it only
        c, s = line
        t, val = _golden_min(lambda t: F(c * t, s * t), lo, hi, iters)
        v1, v2 = c * t, s * t
        flagged = (np.abs(t) > edge) & (c * c + s * s > 0)
    return [LMuResult(float(val[k]), (float(v1[k]), float(v2[k])), bool(flagged[k])) for k in range(K)]


def l_mu_max(A, mu: complex, box: float | None = None, iters: int = 56) -> LMuResult:
    """Largest ``<A*A x, x>``-value over states with ``<A x, x> = mu``.

    Computed as ``inf_v [ lambda_max(A*A + v1 Re A + v2 Im A) - v1 Re mu - v2 Im mu ]``,
    the concave upper envelope of the shell at ``mu``: exact in the relative
    interior of ``W(A)``, an upper bound at boundary points.  The infimum is a
    convex problem in ``v``; it is solved by nested golden-section searches on
    the box ``|v|_inf <= box``.  ``flagged`` marks minimizers that ran into the
    box edge (the infimum is then possibly not attained).
    """
    return l_mu_max_many(A, [mu], box=box, iters=iters)[0]


# -- export ----------------------------------------------------------------

def write_shell_csv(cloud: ShellCloud, out=None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["u1", "u2", "u3", "h", "mu_re", "mu_im", "r"])
    for u, h, mu, r in zip(cloud.directions, cloud.h, cloud.mu, cloud.r):
        w.writerow([format(float(x), ".15g") for x in (u[0], u[1], u[2], h, mu.real, mu.imag, r)])
    text = buf.getvalue()
    if out is not None:
        out.write(text)
    return text


def shell_to_json(cloud: ShellCloud, grid: HemisphereGrid, **meta) -> str:
    points = [
        {"u": [float(x) for x in u], "h": float(h), "mu": [float(mu.real), float(mu.imag)], "r": float(r)}
        for u, h, mu, r in zip(cloud.directions, cloud.h, cloud.mu, cloud.r)
    ]
    doc = {"grid": {"n_phi": grid.n_phi, "n_theta": grid.n_theta, "mesh": grid.mesh}, "points": points}
    doc.update(meta)
    return json.dumps(doc)
