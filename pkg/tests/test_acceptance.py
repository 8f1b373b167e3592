"""Exit-criteria battery.

Each test prints one ``PASS``/``FAIL`` line (run with ``-s`` to see them, or
``python tests/test_acceptance.py`` for a standalone report).
"""

import time

import numpy as np
import pytest

from dwroberts.example import EXAMPLE_MATRIX
from dwroberts.harness import run_suite
from dwroberts.orthogonality import DEFAULT_CONFIG, Verdict, norm_pm, roberts_to_identity
from dwroberts.ranges import nr_symmetry_defect

pytestmark = pytest.mark.acceptance

SEED = 20240917
LINES = []  # echoed in the terminal summary by conftest


def _report(num, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num:2d} {title}: {detail}"
    LINES.append((num, line))
    print(line)
    return ok


def _suite(num, title, name, trials, props, extra=None):
    res = run_suite(name, trials, SEED)
    tallies = {p: res.properties[p] for p in props}
    ok = all(t.failed == 0 for t in tallies.values())
    detail = ", ".join(f"{p} {t.passed}/{trials}" for p, t in tallies.items())
    if extra is not None:
        more_ok, more = extra(res)
        ok = ok and more_ok
        detail += f", {more}"
    assert _report(num, title, ok, detail), "\n".join(res.lines())


def test_c01_example_reproduction():
    t0 = time.perf_counter()
    plus, minus = norm_pm(EXAMPLE_MATRIX, np.eye(4), 1.0)
    v = roberts_to_identity(EXAMPLE_MATRIX)
    defect = nr_symmetry_defect(EXAMPLE_MATRIX, 720)
    elapsed = time.perf_counter() - t0
    ok = (abs(plus - 2.6918) <= 5e-4 and abs(minus - 2.7578) <= 5e-4
          and v.kind is Verdict.NOT_ROBERTS and defect <= 1e-6 and elapsed < 1.0)
    assert _report(1, "example reproduction", ok,
                   f"||A+I||={plus:.4f} ||A-I||={minus:.4f} {v.kind.value} "
                   f"nr defect={defect:.1e} time={elapsed:.2f}s")


def test_c02_two_by_two_trace_vs_shell():
    _suite(2, "2x2 trace path vs shell sweep (500)", "twobytwo", 500, ["trace_vs_shell"])


def test_c03_normal_ground_truth():
    _suite(3, "normal matrices vs construction (200)", "normal", 200, ["shell_matches_truth"])


def test_c04_selfadjoint():
    _suite(4, "hermitian spectral symmetry and centring (200)", "selfadjoint", 200,
           ["verdict_is_spectral_symmetry", "centred_is_roberts"])


def test_c05_implication_chain():
    _suite(5, "A*B=0 implication chain (200)", "chain", 200,
           ["no_roberts_witness", "bj_ab", "bj_ba"])


def test_c06_oracle_equivalence():
    def inconclusive_rate(res):
        t = res.properties["decided"]
        rate = t.failed / res.trials
        return rate <= 0.02, f"inconclusive {rate:.0%}"
    _suite(6, "shell sweep vs brute-force oracle (100)", "oracle", 100,
           ["agrees_with_oracle"], extra=inconclusive_rate)


def test_c07_elliptical_range():
    _suite(7, "2x2 boundary on ellipse (100)", "ellipse", 100, ["boundary_on_ellipse"])


def test_c08_dw_axis():
    _suite(8, "2x2 shell vertical axis (100)", "dwaxis", 100,
           ["vertical_bound", "top_attained", "bottom_attained"])


def test_c09_invariance():
    _suite(9, "invariance battery (100)", "invariance", 100,
           ["unitary_invariant", "rotation_invariant", "scaling_invariant", "symmetric_range_necessary"])


def test_c10_fiber_evenness():
    _suite(10, "fiber-maximum evenness (20)", "evenness", 20, ["certified", "even"])


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q", "-s", "-p", "no:cacheprovider"]))
