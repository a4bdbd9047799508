import json
import math

import numpy as np
import pytest

import relqi

P_PLUS = relqi.MomentumLabel(1.0, [0.0, 0.0, 1.0])
P_MINUS = relqi.MomentumLabel(1.0, [0.0, 0.0, -1.0])


def test_boost_preserves_metric():
    eta = np.diag([1.0, -1.0, -1.0, -1.0])
    lam = relqi.boost_along_axis([0.0, 0.6, 0.8], 1.7)
    assert np.allclose(lam.matrix.T @ eta @ lam.matrix, eta, atol=1e-12)
    ident = lam @ relqi.inverse(lam)
    assert np.allclose(ident.matrix, np.eye(4), atol=1e-12)


def test_wigner_angle_perpendicular():
    xi, rap = 2.0, math.asinh(1.0)
    w = relqi.wigner_rotation(relqi.boost_along_axis([1, 0, 0], xi), P_PLUS)
    axis, angle = relqi.axis_angle(w)
    assert angle == pytest.approx(2 * math.atan(math.tanh(xi / 2) * math.tanh(rap / 2)), abs=1e-12)
    assert axis[1] == pytest.approx(1.0, abs=1e-12)
    u = relqi.su2_lift(w)
    assert np.allclose(u.conj().T @ u, np.eye(2), atol=1e-12)


def test_comparison_state_rest_frame_entropies():
    s = relqi.friis_state(math.pi / 4, math.pi / 4, P_PLUS, P_MINUS)
    assert len(s) == 4
    assert relqi.state_entropy(s, "p1.spin") == pytest.approx(0.5, abs=1e-12)
    assert relqi.state_entropy(s, "p2.mom") == pytest.approx(0.5, abs=1e-12)
    assert relqi.state_entropy(s, "particle1") == pytest.approx(0.75, abs=1e-12)


def test_boosted_spin_pair_varies_for_eighth_turn():
    s = relqi.friis_state(math.pi / 4, math.pi / 8, P_PLUS, P_MINUS)
    t = relqi.boost_state(s, relqi.boost_along_axis([1, 0, 0], 2.0))
    assert relqi.state_entropy(t, "p1.spin,p2.spin") == pytest.approx(0.091790527023298596, abs=1e-12)
    assert relqi.state_entropy(t, "particle1") == pytest.approx(0.625, abs=1e-12)


def test_make_state_and_partial_trace():
    s = relqi.make_state([
        (1.0, [(P_PLUS, relqi.Spin.up)]),
        (1j, [(P_MINUS, relqi.Spin.down)]),
    ])
    rho = relqi.from_state(s)
    assert rho.dimension == 4
    spin = relqi.partial_trace(rho, "p1.spin")
    assert np.allclose(spin.matrix, np.diag([0.5, 0.5]), atol=1e-15)
    assert relqi.linear_entropy(spin) == pytest.approx(0.5)
    assert str(relqi.PartitionSpec.parse("p1.mom,p1.spin")) == "particle1"


def test_scan_and_sweep():
    s = relqi.friis_state(math.pi / 4, math.pi / 4, P_PLUS, P_MINUS)
    scans = relqi.invariance_scan(s, ["particle1"], samples=100, seed=3)
    assert scans[0]["verdict"] == "invariant"
    sweep = relqi.entropy_sweep(s, [1, 0, 0], [0.0, 1.0], ["p1.spin"])
    assert sweep["entropies"][0][0] == pytest.approx(0.5)


def test_round_trip_and_json():
    s = relqi.friis_state(0.3, 1.1, P_PLUS, P_MINUS)
    lam = relqi.boost_along_axis([0, 1, 0], 2.5)
    back = relqi.boost_state(relqi.boost_state(s, lam), relqi.inverse(lam))
    assert relqi.amplitude_distance(back, s) < 1e-9
    again = relqi.state_from_json(relqi.state_to_json(s))
    assert relqi.amplitude_distance(again, s) < 1e-15


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        relqi.PartitionSpec.parse("p0.spin")
    with pytest.raises(ValueError):
        relqi.MomentumLabel(0.0, [0, 0, 1])
    with pytest.raises(relqi.NumericalError):
        relqi.LorentzTransform.from_matrix(np.diag([1.0, -1.0, -1.0, -1.0]))


def test_cli_entry_and_self_checks():
    code, out, err = relqi.cli(["entropy", "--friis", "alpha=pi/4,beta=pi/4", "--format", "json"])
    assert code == 0, err
    assert json.loads(out)["sum"] == pytest.approx(3.5)
    assert relqi.cli(["scan", "--friis", "alpha=pi/4,beta=pi/4", "--samples", "0"])[0] == 2
    assert all(passed for _, passed, _ in relqi.run_self_checks(1))
