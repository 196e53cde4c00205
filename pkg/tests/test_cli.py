import json

import pytest

from scatpoly import cli


def _run(capsys, argv):
    rc = cli.main(argv)
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def _run_json(capsys, argv):
    rc, out, err = _run(capsys, argv)
    assert rc == 0, err
    return json.loads(out)


def test_verify_scattered_negative(capsys):
    obj = _run_json(capsys, ["verify-scattered", "--p", "3", "--t", "4",
                             "--k", "2"])
    assert obj["schema"] == 1
    assert obj["field"] == {"p": 3, "e": 1, "t": 4, "q": 3, "n": 8,
                            "modulus": [2, 0, 1, 0, 0, 0, 0, 0, 1]}
    assert obj["predicate"] is False
    assert obj["fibers"]["scattered"] is False
    assert obj["ranks"]["scattered"] is False
    assert obj["agree"] is True
    assert obj["scaling_witness"] is not None
    assert set(obj["scaling_witness"]) == {"rho", "x"}


def test_verify_scattered_positive(capsys):
    obj = _run_json(capsys, ["verify-scattered", "--p", "5", "--t", "3",
                             "--k", "1"])
    assert obj["predicate"] is True and obj["agree"] is True
    assert obj["fibers"]["n_values"] == (5**6 - 1) // 4
    assert "scaling_witness" not in obj


def test_output_bytes_deterministic(capsys, tmp_path):
    argv = ["verify-scattered", "--p", "3", "--t", "3", "--k", "1"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert cli.main(argv + ["--out", str(a)]) == 0
    assert cli.main(argv + ["--out", str(b)]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()
    # file output matches stdout output byte for byte
    rc, out, _ = _run(capsys, argv)
    assert rc == 0 and out.encode() == a.read_bytes()


def test_code_report_json(capsys):
    obj = _run_json(capsys, ["code-report", "--p", "3", "--t", "3", "--k", "1"])
    assert obj["parameters"] == {"rows": 6, "cols": 6, "q": 3, "d": 3}
    assert obj["size"] == 3**12
    assert obj["mrd"] is False and obj["degenerate"] is False
    assert sum(obj["rank_distribution"]["counts"]) == 3**12
    assert obj["idealisers"]["left"]["dim_q"] == 6
    assert obj["idealisers"]["left"]["is_field"] is True
    assert obj["idealisers"]["right"]["dim_q"] == 2


def test_code_report_csv(capsys):
    rc, out, _ = _run(capsys, ["code-report", "--p", "3", "--t", "3",
                               "--k", "1", "--format", "csv"])
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0] == "rank,count"
    assert len(lines) == 8  # header + ranks 0..6
    counts = [int(line.split(",")[1]) for line in lines[1:]]
    assert sum(counts) == 3**12 and counts[0] == 1


def test_csv_rejected_elsewhere(capsys):
    rc, _, err = _run(capsys, ["verify-scattered", "--p", "3", "--t", "3",
                               "--k", "1", "--format", "csv"])
    assert rc == 2
    assert "csv output is only available" in err


def test_equiv_adjoint_pair(capsys):
    obj = _run_json(capsys, ["equiv", "--p", "3", "--t", "4",
                             "--left", "psi:1", "--right", "psi:7"])
    assert obj["verified"] is True
    assert obj["certificate"]["matrix"] == [[0, 1], [1, 0]]


def test_equiv_family_targets(capsys):
    obj = _run_json(capsys, ["equiv", "--p", "3", "--t", "3",
                             "--left", "u1:5", "--right", "pseudoregulus"])
    assert obj["family_member"] is True
    obj = _run_json(capsys, ["equiv", "--p", "3", "--t", "3",
                             "--left", "psi:1", "--right", "pseudoregulus"])
    assert obj["family_member"] is False


def test_equiv_budget_exit_code(capsys):
    rc, _, err = _run(capsys, ["equiv", "--p", "3", "--t", "4",
                               "--left", "psi:1", "--right", "psi:7",
                               "--budget", "10"])
    assert rc == 3
    assert "budget exceeded" in err
    assert "exceeds budget 10" in err


def test_bad_inputs_exit_code(capsys):
    cases = [
        ["verify-scattered", "--p", "9", "--t", "3", "--k", "1"],   # p not prime
        ["verify-scattered", "--p", "2", "--t", "3", "--k", "1"],   # even p
        ["verify-scattered", "--p", "3", "--t", "2", "--k", "1"],   # t too small
        ["verify-scattered", "--p", "3", "--t", "3", "--k", "6"],   # k = 0 mod n
        ["equiv", "--p", "3", "--t", "3", "--left", "junk", "--right", "psi:1"],
        ["equiv", "--p", "3", "--t", "3", "--left", "u2:1,1", "--right", "psi:1"],
        ["equiv", "--p", "3", "--t", "3", "--left", "pseudoregulus",
         "--right", "psi:1"],
        ["geometry", "--p", "3", "--t", "4", "--k", "2"],           # gcd(k, n) > 1
    ]
    for argv in cases:
        rc, _, err = _run(capsys, argv)
        assert rc == 2, argv
        assert err.startswith("invalid config:"), argv


def test_modulus_file(capsys, tmp_path):
    default = _run_json(capsys, ["verify-scattered", "--p", "3", "--t", "3",
                                 "--k", "1"])
    path = tmp_path / "mod.txt"
    path.write_text("2, 1, 0, 0, 0, 0, 1\n")
    explicit = _run_json(capsys, ["verify-scattered", "--p", "3", "--t", "3",
                                  "--k", "1", "--modulus-file", str(path)])
    assert explicit == default
    missing = tmp_path / "nope.txt"
    rc, _, err = _run(capsys, ["verify-scattered", "--p", "3", "--t", "3",
                               "--k", "1", "--modulus-file", str(missing)])
    assert rc == 2 and "invalid config:" in err


def test_geometry_report(capsys):
    obj = _run_json(capsys, ["geometry", "--p", "3", "--t", "4", "--k", "1"])
    assert obj["gamma"]["projdim"] == 5
    assert obj["meets_orbit"] is False
    assert obj["self_intersection_dims"] == [3, 1]
    assert obj["intn"] == {"1": 3, "7": 3}
    assert obj["projection_matches"] is True
    assert obj["pseudoregulus"] is False


def test_acceptance_text_mode(capsys):
    rc, out, err = _run(capsys, ["acceptance", "--only", "geometry"])
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("PASS  geometry")
    assert lines[-1] == "passed 1/1 criteria"


def test_acceptance_json_mode(capsys):
    rc, out, _ = _run(capsys, ["acceptance", "--only", "size",
                               "--format", "json"])
    assert rc == 0
    obj = json.loads(out)
    assert obj["schema"] == 1 and obj["total"] == 1 and obj["passed"] == 1
    entry = obj["criteria"][0]
    assert entry["slug"] == "size" and entry["ok"] is True
    assert "seconds" not in entry


def test_acceptance_rejects_bad_field_injection(capsys):
    rc, _, err = _run(capsys, ["acceptance", "--only", "size", "--p", "2"])
    assert rc == 2 and "invalid config:" in err
    # unknown slugs are rejected by the argument parser itself
    with pytest.raises(SystemExit) as exc:
        cli.main(["acceptance", "--only", "nosuch"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_acceptance_text_to_file(capsys, tmp_path):
    path = tmp_path / "report.txt"
    rc, out, _ = _run(capsys, ["acceptance", "--only", "size",
                               "--out", str(path)])
    assert rc == 0
    text = path.read_text()
    assert "PASS  size" in text and "passed 1/1 criteria" in text
