import json

import numpy as np
import pytest

from nlkpp import cli


def run_cli(tmp_path, *argv):
    out = tmp_path / "out"
    code = cli.main(list(argv) + ["--out", str(out)])
    return code, out


def load(out, name):
    return json.loads((out / name).read_text())


def test_roots_reports_quadratic_and_census(tmp_path):
    code, out = run_cli(tmp_path, "roots", "--c", "2.5", "--tau", "5")
    assert code == 0
    rep = load(out, "roots.json")
    assert rep["quadratic"]["lam"] == pytest.approx(0.5)
    assert rep["quadratic"]["mu"] == pytest.approx(2.0)
    assert rep["census"]["count"] == 3


def test_roots_without_arguments_is_config_error(tmp_path):
    code, _ = run_cli(tmp_path, "roots")
    assert code == 1


def test_classify_subcritical_speed(tmp_path):
    code, out = run_cli(tmp_path, "classify", "--c", "1.5")
    assert code == 0
    rep = load(out, "classify.json")
    assert rep["semi_wavefront_exists"] is False


def test_classify_local_kernel(tmp_path):
    code, out = run_cli(tmp_path, "classify", "--c", "2.5")
    assert code == 0
    rep = load(out, "classify.json")
    assert rep["semi_wavefront_exists"] is True
    assert rep["monotone_front_exists"] is True
    assert rep["intensity_case"] == "local"


def test_classify_with_kernel_config(tmp_path):
    cfgp = tmp_path / "cfg.json"
    cfgp.write_text(json.dumps(
        {"kernel": {"atoms": [{"s": -0.5, "mass": 1.0}]}}))
    code, out = run_cli(tmp_path, "classify", "--c", "2.5",
                        "--config", str(cfgp))
    assert code == 0
    rep = load(out, "classify.json")
    assert rep["alpha_plus"] > 0 and rep["alpha_minus"] == 0
    assert rep["intensity_case"] == "c"


def test_bad_config_path_exit_code(tmp_path):
    code, _ = run_cli(tmp_path, "classify", "--c", "2.5",
                      "--config", str(tmp_path / "missing.json"))
    assert code == 1


def test_region_artifacts(tmp_path):
    code, out = run_cli(tmp_path, "region", "--aplus", "0.0",
                        "--aminus", "0.3", "--grid-n", "100")
    assert code == 0
    rep = load(out, "region.json")
    assert rep["p_min"] == pytest.approx(1.0, abs=1e-2)
    assert rep["P_max"] == pytest.approx(1.0, abs=5e-2)
    lines = (out / "region.csv").read_text().strip().split("\n")
    assert lines[0] == "p,P,feasible"
    assert len(lines) == 1 + 100 * 100


def test_toy_constants_json(tmp_path):
    code, out = run_cli(tmp_path, "toy")
    assert code == 0
    rep = load(out, "toy.json")
    assert rep["a"] == pytest.approx(0.28785, abs=5e-4)
    assert rep["b"] == pytest.approx(0.21215, abs=5e-4)
    lines = (out / "toy.csv").read_text().strip().split("\n")
    assert lines[0] == "t,phi1,phi2,phi3"


def test_simulate_speed_json(tmp_path):
    code, out = run_cli(tmp_path, "simulate", "--T", "25", "--snap", "10")
    assert code == 0
    rep = load(out, "speed.json")
    assert rep["speed"] == pytest.approx(2.0, rel=0.06)
    assert rep["u_min"] >= -1e-12
    lines = (out / "snapshots.csv").read_text().strip().split("\n")
    assert lines[0] == "t,x,u"
    assert len(lines) == 1 + 2 * 2001


def test_manifest_written(tmp_path):
    code, out = run_cli(tmp_path, "toy", "--seed", "7")
    assert code == 0
    man = load(out, "manifest.json")
    assert man["command"] == "toy"
    assert man["seed"] == 7
    assert set(man["versions"]) == {"nlkpp", "numpy", "scipy", "python"}
    assert man["wall_time_s"] >= 0


def test_determinism_byte_identical(tmp_path):
    _, out1 = run_cli(tmp_path / "a", "atlas", "--n", "6", "--seed", "3")
    _, out2 = run_cli(tmp_path / "b", "atlas", "--n", "6", "--seed", "3")
    for name in ("atlas.csv", "atlas.json"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


def test_atlas_labels_all_five_cases(tmp_path):
    code, out = run_cli(tmp_path, "atlas", "--n", "12",
                        "--aplus-range", "0", "0.6",
                        "--aminus-range", "0", "0.6")
    assert code == 0
    rep = load(out, "atlas.json")
    assert set(rep["cases"]) == {"local", "a", "b", "c", "d", "e"}
    lines = (out / "atlas.csv").read_text().strip().split("\n")
    assert len(lines) == 1 + 12 * 12
    # row-major ordering: alpha_plus varies slowest
    ap_col = [float(l.split(",")[0]) for l in lines[1:]]
    assert ap_col == sorted(ap_col)


def test_atlas_threads_deterministic(tmp_path):
    _, out1 = run_cli(tmp_path / "a", "atlas", "--n", "10", "--threads", "1")
    _, out2 = run_cli(tmp_path / "b", "atlas", "--n", "10", "--threads", "4")
    assert (out1 / "atlas.csv").read_bytes() == (out2 / "atlas.csv").read_bytes()


def test_periodic_below_threshold_is_config_error(tmp_path):
    code, _ = run_cli(tmp_path, "periodic", "--tau", "1.0")
    assert code == 1


def test_connect_unknown_kind(tmp_path):
    code, _ = run_cli(tmp_path, "connect", "--tau", "5", "--kind", "spiral")
    assert code == 1


def test_connect_heteroclinic(tmp_path):
    code, out = run_cli(tmp_path, "connect", "--tau", "5", "--eps", "1e-3")
    assert code == 0
    rep = load(out, "connect.json")
    assert rep["eps_ladder"][0] == 0.0
    assert rep["eps_ladder"][-1] == pytest.approx(1e-3)
    for fit in rep["decay_fits"]:
        assert fit["decay_rate"] == pytest.approx(fit["target"], rel=0.05)
    lines = (out / "trajectory.csv").read_text().strip().split("\n")
    assert lines[0] == "t,y"
    y = np.array([float(l.split(",")[1]) for l in lines[1:]])
    assert y[0] == pytest.approx(0.0, abs=1e-3)
    assert y[-1] == pytest.approx(1.0, abs=1e-3)
