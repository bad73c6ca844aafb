import json

import pytest

from itsp.cli import main
from itsp.instances import write_instance
from itsp.temperature import Instance, ProfilePair


@pytest.fixture
def instance_file(tmp_path):
    path = tmp_path / "net.json"
    write_instance(Instance([5, 6, 2], [[0, 4, 5], [4, 0, 3], [5, 3, 0]], 3), path)
    return path


def run_cli(*argv):
    return main([str(a) for a in argv])


def test_gen_single_cell(tmp_path):
    out = tmp_path / "inst"
    assert run_cli("gen", "--out", out, "--nodes", 10, "--p-range", "10-20",
                   "--d-range", "10-20", "--B", 20) == 0
    files = sorted(out.glob("*.json"))
    assert len(files) == 10
    assert files[0].name == "itsp_n10_p10-20_d10-20_B20_v0.json"


def test_gen_full_grid(tmp_path):
    out = tmp_path / "grid"
    assert run_cli("gen", "--out", out, "--master-seed", 1) == 0
    assert len(list(out.glob("*.json"))) == 400


def test_gen_is_byte_identical(tmp_path):
    args = ["--nodes", 10, "--p-range", "10-100", "--d-range", "10-100", "--B", 60, "--variations", 2]
    run_cli("gen", "--out", tmp_path / "a", *args)
    run_cli("gen", "--out", tmp_path / "b", *args)
    for f in (tmp_path / "a").iterdir():
        assert f.read_bytes() == (tmp_path / "b" / f.name).read_bytes()


@pytest.mark.parametrize("bad", ["20-10", "ten-20", "5"])
def test_gen_bad_range_is_usage_error(tmp_path, bad):
    with pytest.raises(SystemExit) as exc:
        run_cli("gen", "--out", tmp_path, "--nodes", 3, "--p-range", bad, "--d-range", "1-2", "--B", 5)
    assert exc.value.code == 1


def test_gen_partial_cell_is_usage_error(tmp_path):
    assert run_cli("gen", "--out", tmp_path, "--nodes", 3) == 1


def test_solve_deterministic_and_verifiable(tmp_path, instance_file):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for out in (a, b):
        assert run_cli("solve", instance_file, "--repr", "3L", "--seed", 4,
                       "--budget", 300, "--out", out, "--log", out.with_suffix(".csv")) == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.with_suffix(".csv").read_bytes() == b.with_suffix(".csv").read_bytes()
    assert run_cli("verify", instance_file, a) == 0


def test_solve_budget_equal_to_population(tmp_path, instance_file):
    out = tmp_path / "s.json"
    assert run_cli("solve", instance_file, "--seed", 1, "--budget", 20, "--population", 20,
                   "--elite", 2, "--out", out) == 0
    assert json.loads(out.read_text())["evaluations"] == 20


def test_solve_without_seed_still_runs(tmp_path, instance_file, caplog):
    out = tmp_path / "s.json"
    assert run_cli("solve", instance_file, "--budget", 60, "--out", out) == 0
    assert "random seed" in caplog.text
    assert isinstance(json.loads(out.read_text())["seed"], int)


def test_solve_profile_override(tmp_path, instance_file):
    out = tmp_path / "q.json"
    assert run_cli("solve", instance_file, "--seed", 2, "--budget", 100, "--profile", "Q", "--out", out) == 0
    data = json.loads(out.read_text())
    assert data["profile"] == ProfilePair.same("Q").to_dict()
    assert run_cli("verify", instance_file, out) == 0


def test_mixed_profile_flags_rejected(tmp_path, instance_file):
    assert run_cli("solve", instance_file, "--seed", 1, "--profile", "Q", "--increase", "L",
                   "--decrease", "E", "--out", tmp_path / "x.json") == 1


def test_invalid_instance_exits_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 2, "p": [1, 1]')
    assert run_cli("solve", bad, "--seed", 1) == 2


def test_verify_reports_corrupted_ptl(tmp_path, instance_file, capsys):
    out = tmp_path / "s.json"
    run_cli("solve", instance_file, "--repr", "2L", "--seed", 3, "--budget", 100, "--out", out)
    data = json.loads(out.read_text())
    k = data["nl"].index(1)
    data["ptl"][k] += 1
    out.write_text(json.dumps(data))
    capsys.readouterr()
    assert run_cli("verify", instance_file, out) == 3
    assert "node 1" in capsys.readouterr().out


def test_verify_reports_over_hot_schedule_with_time(tmp_path, capsys):
    inst_path = tmp_path / "one.json"
    write_instance(Instance([4], [[0]], 3), inst_path)
    out = tmp_path / "s.json"
    run_cli("solve", inst_path, "--seed", 0, "--budget", 60, "--out", out)
    data = json.loads(out.read_text())
    data["schedule"] = {
        "start": 0,
        "total": 4,
        "visits": [{"node": 0, "arrive": 0, "process": 4, "wait": 0, "depart": 4}],
    }
    out.write_text(json.dumps(data))
    capsys.readouterr()
    assert run_cli("verify", inst_path, out) == 3
    assert "t=4: node 0" in capsys.readouterr().out


def test_bench_requires_seed(instance_file):
    assert run_cli("bench", instance_file) == 1


def test_bench_single_cell_and_byte_stable(tmp_path, instance_file):
    outputs = []
    for tag in ("a", "b"):
        summary, runs = tmp_path / f"{tag}.csv", tmp_path / f"{tag}_runs.csv"
        assert run_cli("bench", instance_file, "--reprs", "1L", "--profiles", "L", "--seed", 7,
                       "--budget", 200, "--out", summary, "--runs", runs) == 0
        outputs.append((summary.read_bytes(), runs.read_bytes()))
    assert outputs[0] == outputs[1]
    lines = outputs[0][0].decode().splitlines()
    assert lines[0] == "repr,profile,AvDur,mean_travel,mean_wait,n_instances"
    assert len(lines) == 2 and lines[1].startswith("1L,L,")


def test_report_reaggregates(tmp_path, instance_file):
    runs = tmp_path / "runs.csv"
    summary = tmp_path / "summary.csv"
    run_cli("bench", instance_file, "--reprs", "1L,2L", "--profiles", "L,Q", "--seed", 1,
            "--budget", 100, "--out", summary, "--runs", runs)
    again = tmp_path / "again.csv"
    assert run_cli("report", runs, "--out", again) == 0
    assert again.read_bytes() == summary.read_bytes()
    assert len(summary.read_text().splitlines()) == 5


def test_bad_repr_choice_is_usage_error(instance_file):
    with pytest.raises(SystemExit) as exc:
        run_cli("bench", instance_file, "--reprs", "4L", "--seed", 1)
    assert exc.value.code == 1
