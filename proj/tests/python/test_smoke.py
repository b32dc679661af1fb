import json
import math

import pytest

import phip


def test_g4_values():
    chain, C = phip.gen_ht_counterexample(4)
    assert C == pytest.approx(2.125, abs=1e-15)
    assert chain.P[0][1:] == pytest.approx([8 / 17, 1 / 17, 8 / 17], abs=1e-15)
    assert phip.lambda2_reversible(chain).lambda2 == pytest.approx(18 / 17, abs=1e-10)
    row = phip.ht_first_row_laplacian(4)
    assert phip.circulant_lambda2_analytic(row) == pytest.approx(18 / 17, abs=1e-12)


def test_dumbbell_conductance():
    cut = phip.phi_p_exact(phip.gen_dumbbell(4), 1.0)
    assert cut.phi == pytest.approx(1 / 13, abs=1e-12)
    assert cut.method == "exact"


def test_main_theorem_on_random_chain():
    chain = phip.gen_random_reversible(8, 0.4, 7)
    for p in (0.6, 0.75, 1.0):
        r = phip.check_main_theorem(chain, p)
        assert r.holds
        assert r.lhs <= r.rhs + 1e-9


def test_sweep_within_guarantee():
    chain = phip.gen_random_reversible(10, 0.3, 3)
    cert = phip.lambda2_reversible(chain)
    cut = phip.sweep_cut(chain, 0.75, cert)
    assert cut.pi_mass <= 0.5 + 1e-12
    assert cut.phi <= phip.sweep_guarantee(0.75, cert.lambda2) + 1e-8


def test_errors_map_to_phip_error():
    with pytest.raises(phip.PhipError, match="TooSmall"):
        phip.gen_ht_counterexample(2)
    with pytest.raises(ValueError, match="TooLarge"):
        phip.phi_p_exact(phip.gen_cycle(30), 0.5)


def test_blocks():
    assert phip.blocks_h([2, 2]) == pytest.approx(2 * math.log(3) - math.log(5), abs=1e-15)
    assert phip.merge_zero_block([2, 0, 3, 4]) == [5, 4]
    assert phip.blocks_merge_check([1, 2, 0, 3]) <= 1e-12


def test_scan_rows():
    rows = phip.scaling_scan([128, 64])
    assert [r.n for r in rows] == [64, 128]
    assert rows[1].rho > rows[0].rho


def test_analyze_json():
    report = json.loads(phip.analyze(phip.gen_cycle(6), [0.5, 1.0], "exact"))
    assert report["chain"]["n"] == 6
    assert all(b["holds"] for b in report["bounds"])
