import math

import pytest

from primseq import optimizer as O
from primseq import witness as W


@pytest.fixture(scope="module")
def result2():
    return O.optimize_theorem2()


@pytest.fixture(scope="module")
def result1():
    return O.optimize_theorem1()


def test_theorem2_reproduces_reference(result2):
    assert result2.feasible
    assert result2.degree == 5
    assert 0.4110 <= result2.alpha <= 0.4120
    assert 362.2 <= result2.c <= 362.5
    assert math.ceil(result2.c) == 363
    assert result2.constraint_value >= 1.0


def test_theorem2_discrete_optimality():
    cfg = O.SearchConfig()
    cs = {}
    for d in (4, 5, 6):
        found = O.rightmost_feasible_alpha(
            lambda a: W.gain_factor_degree(d, a),
            cfg.alpha_lo, cfg.alpha_hi, cfg.alpha_tol, cfg.scan_points)
        assert found is not None
        cs[d] = W.c_from_degree(found.alpha, d)
    assert cs[4] > cs[5] and cs[6] > cs[5]
    # small degrees cannot reach gain >= 1 at all
    for d in (1, 2, 3):
        assert O.rightmost_feasible_alpha(
            lambda a: W.gain_factor_degree(d, a),
            cfg.alpha_lo, cfg.alpha_hi, cfg.alpha_tol, cfg.scan_points) is None


def test_theorem1_reproduces_reference(result1):
    assert result1.feasible
    assert 6.9 <= result1.beta <= 7.0
    assert 0.44 <= result1.alpha <= 0.45
    assert 2309 <= result1.c <= 2311
    assert result1.c <= 2310.5
    assert result1.constraint_value >= 1.0


def test_theorem1_restricted_beta_is_worse(result1):
    cfg = O.SearchConfig()
    c_at_min_beta, _ = O._c_at_beta(2.5, cfg)
    assert c_at_min_beta > result1.c


def test_determinism(result1, result2):
    assert O.optimize_theorem2() == result2
    assert O.optimize_theorem1() == result1


def test_feasibility_soundness(result1, result2):
    assert W.gain_factor_degree(result2.degree, result2.alpha) >= 1.0
    assert W.gain_factor_beta(result1.alpha, result1.beta) >= 1.0


def test_certify_accepts_real_optima(result1, result2):
    cert2 = O.certify(result2)
    assert cert2.certified
    assert cert2.constraint_value >= 1 - 1e-9
    assert abs(cert2.c_recomputed - result2.c) < 1e-6
    assert O.certify(result1).certified


def test_certify_rejects_doctored_results(result2):
    # push alpha past the feasible boundary: the 30-digit recheck must flag it
    bad = O.OptimizationResult(
        mode="theorem2", feasible=True, alpha=result2.alpha + 1e-3,
        degree=5, c=result2.c, constraint_value=0.999, iterations=1)
    cert = O.certify(bad)
    assert not cert.certified
    assert cert.messages


def test_certify_precondition_errors(result2):
    with pytest.raises(ValueError):
        O.certify(O.OptimizationResult(mode="theorem2", feasible=False))
    with pytest.raises(ValueError):
        O.certify(O.OptimizationResult(mode="theorem2", feasible=True,
                                       alpha=0.4, degree=0, c=1.0,
                                       constraint_value=1.0, iterations=1))


def test_rightmost_feasible_alpha_monotone_case():
    # f decreasing through 1 at alpha = 3
    found = O.rightmost_feasible_alpha(lambda a: 4.0 - a, 0.1, 10.0, 1e-10)
    assert found is not None
    assert abs(found.alpha - 3.0) < 1e-8
    assert found.value >= 1.0
    assert not found.used_fallback


def test_rightmost_feasible_alpha_infeasible_and_saturated():
    assert O.rightmost_feasible_alpha(lambda a: 0.5, 0.1, 10.0, 1e-10) is None
    always = O.rightmost_feasible_alpha(lambda a: 2.0, 0.1, 10.0, 1e-10)
    assert always.alpha == 10.0  # feasible through the cap


def test_rightmost_feasible_alpha_non_monotone_fallback():
    # wiggly constraint (several sine periods per scan bracket, crossings all
    # confined near a = 1): the bracket check must detect the non-monotonicity
    # and still land on the rightmost crossing
    def f(a):
        return 2.0 - a + 0.05 * math.sin(400 * a)

    found = O.rightmost_feasible_alpha(f, 0.1, 10.0, 1e-10, scan_points=64)
    assert found is not None
    assert found.used_fallback
    assert found.value >= 1.0
    # brute-force rightmost crossing for comparison
    grid = [0.1 + i * (10.0 - 0.1) / 2_000_000 for i in range(2_000_001)]
    brute = max(a for a in grid if f(a) >= 1.0)
    assert abs(found.alpha - brute) < 1e-5


def test_result_record(result2):
    rec = result2.to_record()
    assert rec["mode"] == "theorem2" and rec["d"] == 5
    assert rec["feasible"] is True
    assert isinstance(rec["iterations"], int)
