import json

import numpy as np
import pytest

from conftest import ginibre
from dwroberts.example import EXAMPLE_MATRIX
from dwroberts.linalg_core import InvalidInputError, adjoint, operator_norm
from dwroberts.matrix_gen import GenSpec, generate
from dwroberts.orthogonality import (
    DeciderConfig,
    MatrixClass,
    Verdict,
    bj_pair,
    bj_to_identity,
    center_selfadjoint,
    classify,
    dw_axis_2x2,
    ellipse_params_2x2,
    lambda_grid,
    norm_pm,
    roberts_refute_pair,
    roberts_to_identity,
    similarity_certificate,
    single_lambda_check,
)

JORDAN = np.array([[0, 1], [0, 0]])
FORCED = DeciderConfig(force_shell=True)


def _norm_gap_scan(A, lams):
    n = A.shape[0]
    return max(abs(np.subtract(*norm_pm(A, np.eye(n), lam))) for lam in lams)


def test_classify():
    assert classify(np.diag([1, -1])).kind is MatrixClass.SELF_ADJOINT
    assert classify(np.diag([1j, -1])).kind is MatrixClass.UNITARY
    assert classify(np.diag([2j, -1])).kind is MatrixClass.NORMAL
    assert classify(JORDAN).kind is MatrixClass.TWO_BY_TWO
    assert classify(ginibre(np.random.default_rng(0), 4)).kind is MatrixClass.GENERIC


def test_norm_pm():
    p, m = norm_pm(EXAMPLE_MATRIX, np.eye(4), 1)
    assert abs(p - 2.6918) <= 5e-4 and abs(m - 2.7578) <= 5e-4
    A = ginibre(np.random.default_rng(1), 3)
    assert norm_pm(A, np.eye(3), 0) == pytest.approx((operator_norm(A),) * 2)
    with pytest.raises(InvalidInputError):
        norm_pm(A, np.eye(2), 1)


def test_norm_pm_orthogonal_ranges():
    A, B = generate(GenSpec("orthogonal_pair", 4, seed=5))
    scale = 1 + operator_norm(A) ** 2 + operator_norm(B) ** 2
    for lam in (0.3, 2 - 1j, 10j):
        p, m = norm_pm(A, B, lam)
        assert abs(p - m) <= 1e-10 * scale


def test_example_not_roberts():
    v = roberts_to_identity(EXAMPLE_MATRIX)
    assert v.kind is Verdict.NOT_ROBERTS
    assert v.method == "shell-sweep"
    assert v.defect == pytest.approx(0.16135, abs=1e-4)
    # the reported witness separates the norms on its own
    assert abs(v.norm_plus - v.norm_minus) > 1e-6 * (1 + operator_norm(EXAMPLE_MATRIX))
    assert norm_pm(EXAMPLE_MATRIX, np.eye(4), v.witness_lambda) == pytest.approx((v.norm_plus, v.norm_minus))


@pytest.mark.parametrize("A, kind, method", [
    (JORDAN, Verdict.ROBERTS, "trace"),
    (np.diag([1.0, -1.0]), Verdict.ROBERTS, "selfadjoint"),
    (np.diag([1.0, 0.0]), Verdict.NOT_ROBERTS, "selfadjoint"),
    (np.diag([1j, -1j, 1, -1]), Verdict.ROBERTS, "nr-symmetry"),
    (np.diag([1j, 1, -1]), Verdict.NOT_ROBERTS, "nr-symmetry"),
    (np.array([[1, 1], [0, 0]]), Verdict.NOT_ROBERTS, "trace"),
])
def test_fast_paths(A, kind, method):
    v = roberts_to_identity(A)
    assert (v.kind, v.method) == (kind, method)
    forced = roberts_to_identity(A, FORCED)
    assert forced.kind is kind and forced.method == "shell-sweep"


def test_fast_path_witness_is_real():
    v = roberts_to_identity(np.diag([1.0, 0.0]))
    assert abs(v.norm_plus - v.norm_minus) > 0.1


def test_certificate_kinds():
    rng = np.random.default_rng(3)
    Q, _ = np.linalg.qr(ginibre(rng, 4))
    X = ginibre(rng, 2)
    M = Q @ np.block([[X, np.zeros((2, 2))], [np.zeros((2, 2)), -X]]) @ adjoint(Q)
    v = roberts_to_identity(M)
    assert v.kind is Verdict.ROBERTS
    assert v.certificate in ("unitary-similarity", "transpose-similarity")
    assert v.bound <= 1e-8 * (1 + operator_norm(M) ** 2)
    cert = similarity_certificate(M)
    assert np.linalg.norm(adjoint(cert.U) @ (M if cert.kind == "unitary-similarity" else M.T) @ cert.U + M) <= 1e-9


def test_no_certificate_for_generic():
    assert similarity_certificate(ginibre(np.random.default_rng(4), 3)) is None


def test_roberts_verdict_matches_norm_scan():
    # oracle: direct norm comparison over a dense lambda grid
    rng = np.random.default_rng(9)
    lams = lambda_grid(3.0, 36, (1e-2, 1e2, 30))
    for cls, n in (("ginibre", 3), ("mirrored_block", 4), ("symmetric_spectrum_normal", 3)):
        A = generate(GenSpec(cls, n, seed=int(rng.integers(1 << 30))))
        v = roberts_to_identity(A, FORCED)
        gap = _norm_gap_scan(A, lams)
        if v.kind is Verdict.ROBERTS:
            assert gap <= 1e-9 * (1 + operator_norm(A)) ** 2
        else:
            assert v.kind is Verdict.NOT_ROBERTS and gap > 1e-6


def test_verdict_json():
    d = json.loads(roberts_to_identity(EXAMPLE_MATRIX).to_json())
    assert set(d) == {"kind", "method", "bound", "witness", "defect", "certificate", "tolerances"}
    assert set(d["witness"]) == {"lambda", "norm_plus", "norm_minus"}
    assert json.loads(roberts_to_identity(JORDAN).to_json())["witness"] is None


@pytest.mark.parametrize("kw", [dict(n_theta=7), dict(n_lon=9), dict(tol_pass=1e-5, tol_fail=1e-6)])
def test_config_validation(kw):
    with pytest.raises(InvalidInputError):
        DeciderConfig(**kw)


def test_refute_pair():
    # radii are multiples of (1 + ||A||) / ||B|| = 2
    lam = roberts_refute_pair(np.eye(2), np.diag([1.0, 0.0]), radii=[0.5], angles=1)
    assert lam == 1
    assert norm_pm(np.eye(2), np.diag([1.0, 0.0]), lam) == pytest.approx((2, 1))
    A, B = generate(GenSpec("orthogonal_pair", 5, seed=2))
    assert roberts_refute_pair(A, B) is None
    assert roberts_refute_pair(EXAMPLE_MATRIX, np.eye(4)) is not None


def test_lambda_grid_layout():
    g = lambda_grid(2.0, 4, (1.0, 10.0, 2))
    np.testing.assert_allclose(g, [2, 2j, -2, -2j, 20, 20j, -20, -20j], atol=1e-12)


def test_bj_to_identity():
    assert bj_to_identity(np.diag([1, -1]))
    assert not bj_to_identity(np.diag([1, 0]))
    assert bj_to_identity(JORDAN)


def test_bj_example_is_false():
    # top eigenspace of A*A is a line, the compression is a negative scalar,
    # so a small positive shift lowers the norm
    A = EXAMPLE_MATRIX
    assert not bj_to_identity(A)
    assert not bj_pair(A, np.eye(4))
    assert operator_norm(A + 0.05 * np.eye(4)) < operator_norm(A) - 1e-3


def test_bj_pair():
    A = ginibre(np.random.default_rng(6), 3)
    assert not bj_pair(A, A)
    X, Y = generate(GenSpec("orthogonal_pair", 4, seed=8))
    assert bj_pair(X, Y) and bj_pair(Y, X)
    assert bj_pair(A, np.zeros((3, 3)))


def test_bj_paths_agree(rng):
    for _ in range(10):
        A = ginibre(rng, 3)
        assert bj_to_identity(A) == bj_pair(A, np.eye(3))


def test_roberts_implies_bj():
    for cls, n in (("mirrored_block", 4), ("trace_zero_2x2", 2), ("symmetric_spectrum_normal", 5)):
        A = generate(GenSpec(cls, n, seed=11))
        assert roberts_to_identity(A).kind is Verdict.ROBERTS
        assert bj_to_identity(A)


def test_center_selfadjoint():
    assert center_selfadjoint(np.diag([0.0, 1.0])) == pytest.approx(0.5)
    assert center_selfadjoint(np.diag([-3.0, 5.0])) == pytest.approx(1)
    H = generate(GenSpec("hermitian", 5, seed=1))
    c = center_selfadjoint(H)
    assert roberts_to_identity(H - c * np.eye(5)).kind is Verdict.ROBERTS
    with pytest.raises(InvalidInputError):
        center_selfadjoint(JORDAN)


def test_single_lambda_check():
    assert single_lambda_check(np.diag([1.0, -1.0]), 1)
    assert not single_lambda_check(np.diag([1.0, 0.0]), 1)
    w = np.array([-2.0, -0.5, 1.0, 2.0])
    H = generate(GenSpec("normal_with_spectrum", 4, seed=4, params={"spectrum": list(w)}))
    H = (H + adjoint(H)) / 2
    assert single_lambda_check(H, 0.7)
    assert roberts_to_identity(H).kind is Verdict.ROBERTS
    with pytest.raises(InvalidInputError):
        single_lambda_check(H, 0)


def test_ellipse_params():
    e = ellipse_params_2x2(JORDAN)
    assert e.center == 0 and e.foci == (0, 0) and e.minor_axis == pytest.approx(1)
    e = ellipse_params_2x2(np.diag([1.0, -1.0]))
    assert sorted(f.real for f in e.foci) == [-1, 1] and e.minor_axis == pytest.approx(0, abs=1e-15)
    assert ellipse_params_2x2([[0, 2], [0, 0]]).minor_axis == pytest.approx(2)
    with pytest.raises(InvalidInputError):
        ellipse_params_2x2(np.eye(3))


def test_dw_axis():
    ax = dw_axis_2x2(JORDAN)
    assert ax.center == (0, 0.5) and ax.axis_halflength == pytest.approx(0.5)
    ax = dw_axis_2x2(np.diag([1.0, -1.0]))
    assert ax.center == (0, 1) and ax.axis_halflength == pytest.approx(0, abs=1e-15)
