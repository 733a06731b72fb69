import math
import os
import subprocess

try:
    import weylab as wl
except ImportError:
    import _weylab as wl


def test_sigma_profile():
    d = wl.sigma([3, 1])
    assert d["sigma_num"] == 1 and d["sigma_den"] == 2
    assert d["l"] == 1
    assert d["missing"] == [2]
    assert d["s_threshold_general"] == 10

    d = wl.sigma([10, 9, 8])
    assert d["sigma_num"] == 1 and d["sigma_den"] == 10
    assert d["l"] == 2


def test_eval_sum():
    z = wl.eval_sum({2: "1/4"}, 4)
    assert abs(z - complex(2.0, 2.0)) < 1e-12
    assert abs(wl.eval_sum({}, 7) - 7.0) < 1e-12


def test_counts():
    for X in (5, 10, 20):
        assert wl.vinogradov_count(2, 2, X) == 2 * X * X - X
        assert wl.vinogradov_count(2, 2, X, backend="brute") == 2 * X * X - X
    assert wl.profile_count([3, 1], 2, 6) == wl.profile_count(
        [3, 1], 2, 6, backend="brute")


def test_arc_mean_value():
    full = wl.arc_mean_value([2], 2, 6, arcs="full")
    major = wl.arc_mean_value([2], 2, 6, arcs="major")
    minor = wl.arc_mean_value([2], 2, 6, arcs="minor")
    assert abs(full - float(wl.profile_count([2], 2, 6))) < 1e-9
    assert abs((major + minor) - full) < 1e-6


def test_classify_arc():
    d = wl.classify_arc("1/3", 10, 2)
    assert d["major"] and d["q"] == 3 and d["err"] < 1e-30


def test_baker():
    assert wl.baker_count(1, "1/2", "0", 10, 4.0) == 11
    assert abs(wl.baker_bound(1, 2, 10, 4.0) - 63.0) < 1e-9


def test_min_frac_engines_agree():
    a = wl.min_frac([{2: "sqrt2"}], 10, engine="mitm")
    b = wl.min_frac([{2: "sqrt2"}], 10, engine="exhaustive")
    assert a["argmin"] == b["argmin"] == [6]
    assert math.isclose(a["value"], b["value"], rel_tol=1e-12)


def test_budget_exception():
    try:
        wl.vinogradov_count(12, 2, 1000)
    except wl.BudgetExceeded:
        pass
    else:
        raise AssertionError("expected BudgetExceeded")


def test_cli_exit_codes():
    cli = os.environ.get("WEYLAB_CLI")
    if not cli:
        return
    ok = subprocess.run([cli, "sigma", "--profile", "3,1"],
                        capture_output=True, text=True)
    assert ok.returncode == 0
    assert '"den": 2' in ok.stdout or '"den":2' in ok.stdout
    usage = subprocess.run([cli, "nonsense"], capture_output=True)
    assert usage.returncode == 2
    env = dict(os.environ, WEYLAB_BUDGET="10")
    budget = subprocess.run(
        [cli, "meanvalue", "--profile", "4,2,1", "-s", "6", "-X", "50"],
        capture_output=True, env=env)
    assert budget.returncode == 3
