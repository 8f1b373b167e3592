"""Randomized property batteries.

Each suite draws ``trials`` matrices from independent ``(seed, trial)``
substreams, checks a handful of named properties per trial and tallies the
results.  Trials are independent, so they may run on a thread pool; results
are always reported in trial order.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .dwshell import dv_upper_samples, hemisphere_grid, l_mu_max_many, shell_point
from .linalg_core import adjoint, cartesian_parts, jacobi_eigh, operator_norm
from .matrix_gen import GaussianStream, GenSpec, generate
from .orthogonality import (
    DEFAULT_CONFIG,
    DeciderConfig,
    EllipseParams,
    Verdict,
    bj_pair,
    bj_to_identity,
    center_selfadjoint,
    dw_axis_2x2,
    ellipse_params_2x2,
    roberts_refute_pair,
    roberts_to_identity,
    single_lambda_check,
)
from .ranges import nr_profile, nr_support_many, nr_symmetry_defect, theta_grid

__all__ = ["SuiteResult", "SUITES", "run_suite", "ellipse_point", "brute_force_roberts"]


@dataclass
class PropertyTally:
    passed: int = 0
    failed: int = 0
    first_failing_trial: int | None = None


@dataclass
class SuiteResult:
    name: str
    trials: int
    seed: int
    properties: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(t.failed == 0 for t in self.properties.values())

    def as_dict(self) -> dict:
        return {
            "suite": self.name,
            "trials": self.trials,
            "seed": self.seed,
            "ok": self.ok,
            "properties": {k: vars(v) for k, v in self.properties.items()},
            "notes": self.notes,
        }

    def lines(self):
        for name, t in self.properties.items():
            tail = "" if t.first_failing_trial is None else f"  first failing trial {t.first_failing_trial} (seed {self.seed})"
            yield f"{self.name}.{name}: {t.passed}/{t.passed + t.failed} pass{tail}"


def _threads() -> int | None:
    raw = os.environ.get("DWSHELL_THREADS", "0")
    try:
        k = int(raw)
    except ValueError:
        return None
    return None if k <= 0 else k


# -- oracles ---------------------------------------------------------------

def ellipse_point(params: EllipseParams, theta: float) -> complex:
    """Point of the ellipse with outward normal ``e^{i theta}`` (closed form)."""
    a = params.major_axis / 2
    b = params.minor_axis / 2
    f1, f2 = params.foci
    psi = math.atan2((f2 - f1).imag, (f2 - f1).real) if abs(f2 - f1) > 0 else 0.0
    phi = theta - psi
    den = math.sqrt((a * math.cos(phi)) ** 2 + (b * math.sin(phi)) ** 2)
    if den == 0.0:
        return params.center
    local = complex(a * a * math.cos(phi), b * b * math.sin(phi)) / den
    return params.center + local * complex(math.cos(psi), math.sin(psi))


def brute_force_roberts(A, tol_fail: float = 1e-6, angles: int = 24, radii=(1e-2, 1e2, 20)) -> bool:
    """Oracle: no polar-grid ``lam`` separates ``||A + lam I||`` and ``||A - lam I||``."""
    n = np.asarray(A).shape[0]
    return roberts_refute_pair(A, np.eye(n), tol=tol_fail, angles=angles, radii=radii) is None


# -- suites ----------------------------------------------------------------

def _chain(seed, trial, cfg):
    n = 4 + trial % 3
    A, B = generate(GenSpec("orthogonal_pair", n, seed, trial, {"k": n // 2}))
    return {
        "range_orthogonal": np.linalg.norm(adjoint(A) @ B, 2) <= 1e-12 * max(1.0, operator_norm(A) * operator_norm(B)),
        "no_roberts_witness": roberts_refute_pair(A, B, tol=1e-9) is None,
        "bj_ab": bj_pair(A, B, tol=cfg.tol_fail),
        "bj_ba": bj_pair(B, A, tol=cfg.tol_fail),
    }


def _twobytwo(seed, trial, cfg):
    cls = "trace_zero_2x2" if trial % 5 == 4 else "ginibre"
    A = generate(GenSpec(cls, 2, seed, trial))
    fast = roberts_to_identity(A, cfg)
    shell = roberts_to_identity(A, _forced(cfg))
    return {
        "trace_vs_shell": fast.kind is shell.kind and shell.kind is not Verdict.INCONCLUSIVE,
        "trace_truth": (fast.kind is Verdict.ROBERTS) == (cls == "trace_zero_2x2"),
    }


def _selfadjoint(seed, trial, cfg):
    n = 2 + trial % 5
    if trial % 4 == 3:
        w = np.sort(GaussianStream(seed ^ 0x5BD1E995, trial).normal(n))
        w -= (w[0] + w[-1]) / 2
        A = generate(GenSpec("normal_with_spectrum", n, seed, trial, {"spectrum": list(w)}))
        A = (A + adjoint(A)) / 2
    else:
        A = generate(GenSpec("hermitian", n, seed, trial))
    vals, _ = jacobi_eigh(A)
    truth = abs(vals[-1] + vals[0]) <= 1e-10 * (1.0 + operator_norm(A))
    v = roberts_to_identity(A, cfg)
    lam = center_selfadjoint(A)
    Ac = A - lam * np.eye(n)
    centred = roberts_to_identity(Ac, cfg)
    single = single_lambda_check(A, 0.7)
    return {
        "verdict_is_spectral_symmetry": (v.kind is Verdict.ROBERTS) == truth and v.kind is not Verdict.INCONCLUSIVE,
        "centred_is_roberts": centred.kind is Verdict.ROBERTS,
        "single_lambda_consistent": (not single) or v.kind is Verdict.ROBERTS,
    }


def normal_case(seed, trial):
    """Random normal matrix and its ground truth: symmetric spectrum or pushed off symmetry by 0.1."""
    n = 3 + trial % 3
    symmetric = trial % 2 == 0
    half = GaussianStream(seed ^ 0x5BD1E995, trial).complex_normal((n // 2,))
    spec = np.concatenate([half, -half, [0.0] * (n % 2)])
    if not symmetric:
        k = int(np.argmax(np.abs(spec)))
        spec[k] *= 1.0 + 0.1 / abs(spec[k])
    A = generate(GenSpec("normal_with_spectrum", n, seed, trial, {"spectrum": list(spec)}))
    return A, symmetric


def _normal(seed, trial, cfg):
    A, symmetric = normal_case(seed, trial)
    want = Verdict.ROBERTS if symmetric else Verdict.NOT_ROBERTS
    shell = roberts_to_identity(A, _forced(cfg))
    fast = roberts_to_identity(A, cfg)
    return {"shell_matches_truth": shell.kind is want, "fast_path_agrees": fast.kind is want}


def _oracle(seed, trial, cfg):
    A = generate(GenSpec("ginibre", 4, seed, trial))
    v = roberts_to_identity(A, _forced(cfg))
    oracle = brute_force_roberts(A, cfg.tol_fail, cfg.lambda_angles, cfg.lambda_radii)
    decided = v.kind is not Verdict.INCONCLUSIVE
    return {
        "agrees_with_oracle": (not decided) or (v.kind is Verdict.ROBERTS) == oracle,
        "decided": decided,
    }


_MIXED = (
    ("ginibre", 3), ("trace_zero_2x2", 2), ("symmetric_spectrum_normal", 4), ("mirrored_block", 4),
    ("hermitian", 3), ("unitary", 3), ("ginibre", 2), ("mirrored_block", 5), ("ginibre", 4),
    ("symmetric_spectrum_normal", 3),
)


def mixed_case(seed, trial):
    cls, n = _MIXED[trial % len(_MIXED)]
    return generate(GenSpec(cls, n, seed, trial))


def _invariance(seed, trial, cfg):
    A = mixed_case(seed, trial)
    n = A.shape[0]
    U = generate(GenSpec("unitary", n, seed ^ 0x2545F491, trial))
    theta = 2 * np.pi * (1 + (37 * trial) % (cfg.n_lon - 1)) / cfg.n_lon
    base = roberts_to_identity(A, cfg)
    kinds = [roberts_to_identity(M, cfg).kind for M in
             (adjoint(U) @ A @ U, np.exp(1j * theta) * A, 3.0 * A, -A)]
    nec = True
    if base.kind is Verdict.ROBERTS:
        nec = nr_symmetry_defect(A, cfg.n_theta) <= 3 * cfg.tol_pass * (1.0 + operator_norm(A))
    return {
        "unitary_invariant": kinds[0] is base.kind,
        "rotation_invariant": kinds[1] is base.kind,
        "scaling_invariant": kinds[2] is base.kind,
        "negation_invariant": kinds[3] is base.kind,
        "decided": base.kind is not Verdict.INCONCLUSIVE,
        "symmetric_range_necessary": nec,
        "roberts_implies_bj": base.kind is not Verdict.ROBERTS or bj_to_identity(A),
    }


def _ellipse(seed, trial, cfg):
    A = generate(GenSpec("ginibre", 2, seed, trial))
    prof = nr_profile(A, 360)
    params = ellipse_params_2x2(A)
    pts = np.array([ellipse_point(params, t) for t in prof.thetas])
    dist = float(np.max(np.abs(prof.boundary - pts)))
    return {"boundary_on_ellipse": dist <= 1e-8 * (1.0 + operator_norm(A))}


def _dwaxis(seed, trial, cfg):
    A = generate(GenSpec("ginibre", 2, seed, trial))
    ax = dw_axis_2x2(A)
    c = ax.center[1]
    cloud = dv_upper_samples(A, hemisphere_grid(cfg.n_phi, cfg.n_lon))
    inside = bool(np.all(np.abs(cloud.r - c) <= ax.axis_halflength + 1e-10))
    top = shell_point(A, (0.0, 0.0, 1.0)).r
    bottom = shell_point(A, (0.0, 0.0, -1.0)).r
    return {
        "vertical_bound": inside,
        "top_attained": abs(max(float(np.max(cloud.r)), top) - (c + ax.axis_halflength)) <= 1e-6,
        "bottom_attained": abs(bottom - (c - ax.axis_halflength)) <= 1e-6,
    }


_ROBERTS_CLASSES = (("trace_zero_2x2", 2), ("symmetric_spectrum_normal", 4), ("mirrored_block", 4),
                    ("mirrored_block", 3), ("symmetric_spectrum_normal", 5))


def diameter(A, theta: float, n_theta: int = 720) -> float:
    """Radius ``rho`` with ``rho e^{i theta}`` on the sampled boundary of ``W(A)``."""
    phis = theta_grid(n_theta)
    h = nr_support_many(A, phis)
    c = np.cos(phis - theta)
    pos = c > 1e-12
    return float(np.min(h[pos] / c[pos]))


def _evenness(seed, trial, cfg, points: int = 21):
    cls, n = _ROBERTS_CLASSES[trial % len(_ROBERTS_CLASSES)]
    A = generate(GenSpec(cls, n, seed, trial))
    v = roberts_to_identity(A, cfg)
    theta = 2 * np.pi * ((13 * trial) % cfg.n_lon) / cfg.n_lon
    # grid-based radius can overshoot the true boundary by O(mesh^2); stay inside
    rho = diameter(A, theta, cfg.n_theta) * (1.0 - 1e-3)
    mus = np.linspace(-1.0, 1.0, points) * rho * np.exp(1j * theta)
    res = l_mu_max_many(A, np.concatenate([mus, -mus]))
    scale = 1.0 + operator_norm(A) ** 2
    ok, used = True, 0
    for k in range(points):
        p, m = res[k], res[points + k]
        if p.flagged or m.flagged:
            continue
        used += 1
        ok &= abs(p.value - m.value) <= 1e-5 * scale
    return {"certified": v.kind is Verdict.ROBERTS, "even": bool(ok) and used > 0}


def _forced(cfg: DeciderConfig) -> DeciderConfig:
    return DeciderConfig(**{**vars(cfg), "force_shell": True})


SUITES = {
    "chain": _chain,
    "twobytwo": _twobytwo,
    "selfadjoint": _selfadjoint,
    "normal": _normal,
    "oracle": _oracle,
    "invariance": _invariance,
    "ellipse": _ellipse,
    "dwaxis": _dwaxis,
    "evenness": _evenness,
}


def run_suite(name: str, trials: int, seed: int = 0, cfg: DeciderConfig = DEFAULT_CONFIG) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    fn = SUITES[name]
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        outcomes = list(pool.map(lambda t: fn(seed, t, cfg), range(trials)))
    result = SuiteResult(name, trials, seed)
    for trial, props in enumerate(outcomes):
        for key, value in props.items():
            tally = result.properties.setdefault(key, PropertyTally())
            if value:
                tally.passed += 1
            else:
                tally.failed += 1
                if tally.first_failing_trial is None:
                    tally.first_failing_trial = trial
    return result
