"""Roberts and Birkhoff-James orthogonality deciders.

``A`` is Roberts orthogonal to the identity when ``||A + lam I|| = ||A - lam I||``
for every complex ``lam``.  :func:`roberts_to_identity` dispatches on the
matrix class: self-adjoint, unitary/normal and 2x2 matrices have exact
criteria; everything else goes through the shell sweep of
:func:`~dwroberts.dwshell.dv_ub_symmetry_defect`.

Verdicts are three-valued.  Floating point cannot prove equality for all
``lam``, so ``RobertsCertified`` carries a bound on
``sup |‖A+λI‖² - ‖A-λI‖²| / ‖(2 Re λ, 2 Im λ, 1)‖``, ``NotRoberts`` carries a
concrete ``lam`` with both norms recomputed directly, and anything in between
is ``Inconclusive``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.optimize import minimize

from .dwshell import dv_ub_symmetry_defect, hemisphere_grid
from .linalg_core import (
    InvalidInputError,
    adjoint,
    as_cmatrix,
    cartesian_parts,
    eig2x2,
    operator_norm,
)
from .ranges import compress, contains_zero, nr_support_many, theta_grid

__all__ = [
    "Verdict",
    "MatrixClass",
    "ClassTag",
    "DeciderConfig",
    "OrthVerdict",
    "SimilarityCertificate",
    "EllipseParams",
    "DWAxis",
    "classify",
    "roberts_to_identity",
    "similarity_certificate",
    "norm_pm",
    "lambda_grid",
    "roberts_refute_pair",
    "bj_to_identity",
    "bj_pair",
    "center_selfadjoint",
    "single_lambda_check",
    "ellipse_params_2x2",
    "dw_axis_2x2",
]


class Verdict(str, Enum):
    ROBERTS = "RobertsCertified"
    NOT_ROBERTS = "NotRoberts"
    INCONCLUSIVE = "Inconclusive"


class MatrixClass(str, Enum):
    SELF_ADJOINT = "SelfAdjoint"
    UNITARY = "Unitary"
    NORMAL = "Normal"
    TWO_BY_TWO = "TwoByTwo"
    GENERIC = "Generic"


@dataclass(frozen=True)
class ClassTag:
    kind: MatrixClass
    residual: float


@dataclass(frozen=True)
class DeciderConfig:
    n_theta: int = 720
    n_phi: int = 91
    n_lon: int = 360
    tol_pass: float = 1e-8
    tol_fail: float = 1e-6
    force_shell: bool = False
    refine: bool = True
    lambda_angles: int = 24
    lambda_radii: tuple = (1e-2, 1e2, 20)

    def __post_init__(self):
        if self.n_theta < 8 or self.n_theta % 2:
            raise InvalidInputError("n_theta must be even and >= 8")
        if self.n_phi < 2 or self.n_lon < 8 or self.n_lon % 2:
            raise InvalidInputError("need n_phi >= 2 and even n_lon >= 8")
        if not 0 < self.tol_pass < self.tol_fail:
            raise InvalidInputError("need 0 < tol_pass < tol_fail")
        if self.lambda_angles < 1:
            raise InvalidInputError("lambda_angles must be positive")

    def radii(self) -> np.ndarray:
        r = self.lambda_radii
        if len(r) == 3 and float(r[2]).is_integer() and r[2] >= 2 and r[0] < r[1]:
            return np.logspace(np.log10(r[0]), np.log10(r[1]), int(r[2]))
        return np.asarray(r, dtype=float)


DEFAULT_CONFIG = DeciderConfig()


@dataclass(frozen=True)
class OrthVerdict:
    kind: Verdict
    method: str
    defect: float
    bound: float | None = None
    witness_lambda: complex | None = None
    norm_plus: float | None = None
    norm_minus: float | None = None
    certificate: str | None = None
    tolerances: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        witness = None
        if self.witness_lambda is not None:
            witness = {
                "lambda": [self.witness_lambda.real, self.witness_lambda.imag],
                "norm_plus": self.norm_plus,
                "norm_minus": self.norm_minus,
            }
        return {
            "kind": self.kind.value,
            "method": self.method,
            "bound": self.bound,
            "witness": witness,
            "defect": self.defect,
            "certificate": self.certificate,
            "tolerances": self.tolerances,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _norm(M) -> float:
    return float(np.linalg.norm(M, 2))


def classify(A) -> ClassTag:
    """Most specific class with priority SelfAdjoint > Unitary > Normal > TwoByTwo > Generic."""
    A = as_cmatrix(A)
    n = A.shape[0]
    s = 1.0 + operator_norm(A)
    Ah = adjoint(A)
    r_sa = _norm(A - Ah)
    if r_sa <= 1e-10 * s:
        return ClassTag(MatrixClass.SELF_ADJOINT, r_sa)
    AhA = Ah @ A
    r_u = _norm(AhA - np.eye(n))
    if r_u <= 1e-10:
        return ClassTag(MatrixClass.UNITARY, r_u)
    r_n = _norm(AhA - A @ Ah)
    if r_n <= 1e-10 * s * s:
        return ClassTag(MatrixClass.NORMAL, r_n)
    if n == 2:
        return ClassTag(MatrixClass.TWO_BY_TWO, r_n)
    return ClassTag(MatrixClass.GENERIC, r_n)


def norm_pm(A, B, lam: complex):
    """``(||A + lam B||, ||A - lam B||)``."""
    A, B = as_cmatrix(A), as_cmatrix(B)
    if A.shape != B.shape:
        raise InvalidInputError(f"dimension mismatch {A.shape} vs {B.shape}")
    return _norm(A + lam * B), _norm(A - lam * B)


# -- unitary-similarity certificate ----------------------------------------

@dataclass(frozen=True)
class SimilarityCertificate:
    """Unitary ``U`` with ``U* S U = -A`` where ``S`` is ``A`` or ``A^T``.

    Either form gives ``||A + lam I|| = ||A - lam I||`` for all ``lam`` up to
    ``gap_bound`` (both the norm and the transpose preserve operator norms).
    """

    kind: str
    U: np.ndarray
    gap_bound: float


def similarity_certificate(A, max_n: int = 16, seed: int = 0) -> SimilarityCertificate | None:
    """Search for a unitary taking ``A`` (or ``A^T``) to ``-A``.

    Intertwiners ``X`` with ``S X = -X A`` and ``S* X = -X A*`` form a linear
    space; if it contains an invertible element then a generic element is
    invertible and its polar factor is the wanted unitary.
    """
    A = as_cmatrix(A)
    n = A.shape[0]
    if n > max_n:
        return None
    nA = operator_norm(A)
    eye = np.eye(n)
    rng = np.random.default_rng(seed)
    best = None
    for kind, S in (("unitary-similarity", A), ("transpose-similarity", A.T)):
        K = np.vstack([
            np.kron(eye, S) + np.kron(A.T, eye),
            np.kron(eye, adjoint(S)) + np.kron(np.conj(A), eye),
        ])
        _, s, Vh = np.linalg.svd(K)
        null = Vh[s <= 1e-9 * (1.0 + nA)].conj().T
        if null.shape[1] == 0:
            continue
        coeffs = rng.standard_normal(null.shape[1]) + 1j * rng.standard_normal(null.shape[1])
        X = (null @ coeffs).reshape(n, n, order="F")
        W, sig, Vh2 = np.linalg.svd(X)
        if sig[-1] <= 1e-8 * sig[0]:
            continue
        U = W @ Vh2
        rho = _norm(adjoint(U) @ S @ U + A)
        eu = _norm(adjoint(U) @ U - eye)
        gap = rho + 3.0 * nA * eu
        if best is None or gap < best.gap_bound:
            best = SimilarityCertificate(kind, U, gap)
    return best


# -- Roberts to the identity -----------------------------------------------

def _gap(A, lam):
    p, m = norm_pm(A, np.eye(A.shape[0]), lam)
    return abs(p - m), p, m


def _best_witness(A, candidates):
    best = None
    for lam in candidates:
        g, p, m = _gap(A, lam)
        if best is None or g > best[0]:
            best = (g, complex(lam), p, m)
    return best


def _equator_probe(nA: float, theta: float):
    t = 1e3 * (1.0 + nA)
    return [t * np.exp(1j * theta)]


def _decide_with_witness(A, nA, cfg, method, defect, candidates, tols, certificate=None):
    g, lam, p, m = _best_witness(A, candidates)
    kind = Verdict.NOT_ROBERTS if g > cfg.tol_fail * (1.0 + nA) else Verdict.INCONCLUSIVE
    return OrthVerdict(kind, method, defect, None, lam, p, m, certificate, tols)


def roberts_to_identity(A, cfg: DeciderConfig = DEFAULT_CONFIG) -> OrthVerdict:
    """Decide ``A ⊥_R I``.

    Fast paths (skipped with ``cfg.force_shell``):

    * self-adjoint: Roberts iff ``lambda_max = -lambda_min``;
    * unitary or normal: Roberts iff ``W(A)`` is centrally symmetric;
    * 2x2: Roberts iff ``tr A = 0``.

    Otherwise the shell sweep compares support values of the shell in
    directions ``(u1, u2, u3)`` and ``(-u1, -u2, u3)``.  A large gap gives a
    witness ``lam = (u1 + i u2) / (2 u3)``.  A small gap is certified either by
    the grid Lipschitz bound or, when that is too coarse, by an explicit
    unitary taking ``A`` (or ``A^T``) to ``-A``.
    """
    A = as_cmatrix(A)
    n = A.shape[0]
    nA = operator_norm(A)
    scale = 1.0 + nA * nA
    tols = {"tol_pass": cfg.tol_pass, "tol_fail": cfg.tol_fail, "scale": scale}
    tag = ClassTag(MatrixClass.GENERIC, float("nan")) if cfg.force_shell else classify(A)

    if tag.kind is MatrixClass.SELF_ADJOINT:
        w = np.linalg.eigvalsh((A + adjoint(A)) / 2)
        d = abs(w[-1] + w[0])
        if d <= 1e-10 * (1.0 + nA):
            return OrthVerdict(Verdict.ROBERTS, "selfadjoint", d, d, tolerances=tols)
        t = 1.0 + nA
        return _decide_with_witness(A, nA, cfg, "selfadjoint", d, [t, -t], tols)

    if tag.kind in (MatrixClass.UNITARY, MatrixClass.NORMAL):
        thetas = theta_grid(cfg.n_theta)
        h = nr_support_many(A, thetas)
        diff = np.abs(h - np.roll(h, -cfg.n_theta // 2))
        d = float(np.max(diff))
        if d <= cfg.tol_pass * (1.0 + nA):
            return OrthVerdict(Verdict.ROBERTS, "nr-symmetry", d, d, tolerances=tols)
        theta = thetas[int(np.argmax(diff))]
        return _decide_with_witness(A, nA, cfg, "nr-symmetry", d,
                                    _equator_probe(nA, theta) + _equator_probe(nA, theta + np.pi), tols)

    if tag.kind is MatrixClass.TWO_BY_TWO:
        tr = complex(np.trace(A))
        d = abs(tr)
        if d <= 1e-10 * (1.0 + nA):
            return OrthVerdict(Verdict.ROBERTS, "trace", d, d, tolerances=tols)
        return _decide_with_witness(A, nA, cfg, "trace", d, _equator_probe(nA, np.angle(tr)), tols)

    grid = hemisphere_grid(cfg.n_phi, cfg.n_lon)
    rep = dv_ub_symmetry_defect(A, grid, refine=cfg.refine)
    u1, u2, u3 = rep.witness
    if rep.defect > cfg.tol_fail * scale:
        if u3 > 1e-12:
            base = complex(u1, u2) / (2.0 * u3)
            candidates = [base]
        else:
            base, candidates = None, _equator_probe(nA, math.atan2(u2, u1))
        v = _decide_with_witness(A, nA, cfg, "shell-sweep", rep.defect, candidates, tols)
        if v.kind is Verdict.NOT_ROBERTS or base is None:
            return v
        # the finite witness was too weak: scan its ray and the equator
        more = [s * base for s in (0.5, 2.0, 4.0)]
        more += _equator_probe(nA, math.atan2(u2, u1)) + _equator_probe(nA, math.atan2(-u2, -u1))
        return _decide_with_witness(A, nA, cfg, "shell-sweep", rep.defect, candidates + more, tols)

    bound, cert = rep.certified_bound, "lipschitz-grid"
    if bound > cfg.tol_pass * scale:
        sc = similarity_certificate(A)
        if sc is not None:
            b2 = sc.gap_bound * (2.0 * nA + 1.0)
            if b2 < bound:
                bound, cert = b2, sc.kind
    if bound <= cfg.tol_pass * scale:
        return OrthVerdict(Verdict.ROBERTS, "shell-sweep", rep.defect, bound, certificate=cert, tolerances=tols)
    return OrthVerdict(Verdict.INCONCLUSIVE, "shell-sweep", rep.defect, None, certificate=None, tolerances=tols)


# -- general pairs ---------------------------------------------------------

def lambda_grid(scale: float, angles: int = 24, radii=(1e-2, 1e2, 20)) -> np.ndarray:
    """Polar grid ``r e^{i phi}``, radius-major, radii log-spaced and multiplied by ``scale``."""
    r = DeciderConfig(lambda_radii=tuple(radii), lambda_angles=angles).radii() * scale
    phis = 2 * np.pi * np.arange(angles) / angles
    return (r[:, None] * np.exp(1j * phis)[None, :]).ravel()


def _norms_many(A, B, lams):
    M = A[None] + lams[:, None, None] * B[None]
    return np.linalg.svd(M, compute_uv=False)[:, 0]


def roberts_refute_pair(A, B, tol: float = 1e-6, angles: int = 24, radii=(1e-2, 1e2, 20)):
    """First ``lam`` on the polar grid where ``||A + lam B||`` and ``||A - lam B||`` differ.

    The discrepancy threshold is ``tol * (1 + ||A|| + ||B||)``.  Returns ``None``
    when no grid point separates the norms, which is not a proof of Roberts
    orthogonality.
    """
    A, B = as_cmatrix(A), as_cmatrix(B)
    if A.shape != B.shape:
        raise InvalidInputError(f"dimension mismatch {A.shape} vs {B.shape}")
    nA, nB = operator_norm(A), operator_norm(B)
    lams = lambda_grid((1.0 + nA) / max(nB, 1e-300) if nB > 0 else 1.0, angles, radii)
    gaps = np.abs(_norms_many(A, B, lams) - _norms_many(A, B, -lams))
    hit = np.flatnonzero(gaps > tol * (1.0 + nA + nB))
    return complex(lams[hit[0]]) if hit.size else None


def bj_to_identity(A) -> bool:
    """``A ⊥_B I``: zero lies in the numerical range of A compressed to the top eigenspace of A*A."""
    A = as_cmatrix(A)
    _, _, gram = cartesian_parts(A)
    w, V = np.linalg.eigh(gram)
    top = V[:, w >= w[-1] - 1e-10 * (1.0 + w[-1])]
    return contains_zero(compress(A, top))


def bj_pair(A, B, tol: float = 1e-6, angles: int = 24, radii=(1e-2, 1e2, 20)) -> bool:
    """Numerical check of ``||A|| <= ||A + lam B||`` for all ``lam`` (grid plus local refinement)."""
    A, B = as_cmatrix(A), as_cmatrix(B)
    if A.shape != B.shape:
        raise InvalidInputError(f"dimension mismatch {A.shape} vs {B.shape}")
    nA, nB = operator_norm(A), operator_norm(B)
    if nB == 0.0:
        return True
    floor = nA - tol * (1.0 + nA)
    lams = lambda_grid((1.0 + nA) / nB, angles, radii)
    vals = _norms_many(A, B, lams)
    k = int(np.argmin(vals))
    if vals[k] < floor:
        return False
    x0 = np.array([lams[k].real, lams[k].imag])
    res = minimize(lambda x: _norm(A + complex(x[0], x[1]) * B), x0, method="Nelder-Mead",
                   options={"xatol": 1e-12 * (1.0 + abs(lams[k])), "fatol": 1e-14 * (1.0 + nA),
                            "maxiter": 2000})
    return bool(min(res.fun, vals[k]) >= floor)


# -- self-adjoint corollaries ----------------------------------------------

def _require_selfadjoint(A):
    A = as_cmatrix(A)
    if _norm(A - adjoint(A)) > 1e-10 * (1.0 + operator_norm(A)):
        raise InvalidInputError("matrix is not self-adjoint")
    return A


def center_selfadjoint(A) -> float:
    """Midpoint of the spectrum; ``A - lam I`` is then Roberts orthogonal to ``I``."""
    A = _require_selfadjoint(A)
    w = np.linalg.eigvalsh((A + adjoint(A)) / 2)
    return float((w[0] + w[-1]) / 2)


def single_lambda_check(A, lam0: float) -> bool:
    """For self-adjoint ``A`` and real ``lam0 != 0``: does ``||A + lam0 I|| = ||A - lam0 I||``?

    For self-adjoint ``A`` a single nonzero real ``lam0`` with equal
    norms already forces ``A ⊥_R I``.
    """
    A = _require_selfadjoint(A)
    if not np.isreal(lam0) or lam0 == 0:
        raise InvalidInputError("lam0 must be real and nonzero")
    lam0 = float(np.real(lam0))
    p, m = norm_pm(A, np.eye(A.shape[0]), lam0)
    return abs(p - m) <= 1e-10 * (1.0 + operator_norm(A) + abs(lam0))


# -- 2x2 closed forms ------------------------------------------------------

@dataclass(frozen=True)
class EllipseParams:
    center: complex
    foci: tuple
    minor_axis: float

    @property
    def major_axis(self) -> float:
        return math.hypot(self.minor_axis, abs(self.foci[0] - self.foci[1]))


@dataclass(frozen=True)
class DWAxis:
    center: tuple
    axis_halflength: float


def _require_2x2(A):
    A = as_cmatrix(A)
    if A.shape != (2, 2):
        raise InvalidInputError("operation needs a 2x2 matrix")
    return A


def ellipse_params_2x2(A) -> EllipseParams:
    """Elliptical disc ``W(A)``: center ``tr(A)/2``, foci at the eigenvalues,
    minor axis ``sqrt(tr(A*A) - |a|^2 - |b|^2)``."""
    A = _require_2x2(A)
    a, b = eig2x2(A)
    fro2 = float(np.sum(np.abs(A) ** 2))
    minor2 = fro2 - abs(a) ** 2 - abs(b) ** 2
    return EllipseParams(complex(np.trace(A)) / 2, (a, b), math.sqrt(max(minor2, 0.0)))


def dw_axis_2x2(A) -> DWAxis:
    """Center ``(tr(A)/2, tr(A*A)/2)`` of the 2x2 shell ellipsoid and its vertical half-axis."""
    A = _require_2x2(A)
    _, _, gram = cartesian_parts(A)
    half = float(np.trace(gram).real) / 2
    return DWAxis((complex(np.trace(A)) / 2, half), _norm(gram - half * np.eye(2)))
