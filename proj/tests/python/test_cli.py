import json
import subprocess

import jsonschema


def run(cli, *args):
    return subprocess.run([cli, *args], capture_output=True, text=True)


def test_classical_suite_passes(cli, root):
    p = run(cli, "run", str(root / "suites" / "classical-bv.yaml"))
    assert p.returncode == 0, p.stdout + p.stderr
    assert p.stdout.rstrip().endswith("overall: PASS (4 jobs)")


def test_corrupted_suite_fails_once(cli, root):
    p = run(cli, "run", str(root / "suites" / "corrupted.yaml"))
    assert p.returncode == 1
    assert p.stdout.count("COUNTEREXAMPLE") == 1


def test_empty_suite_warns(cli, root):
    p = run(cli, "run", str(root / "suites" / "empty.yaml"))
    assert p.returncode == 0
    assert "warning: empty job list" in p.stdout


def test_configuration_errors_exit_two(cli, tmp_path):
    bad = tmp_path / "bad.yaml"
    bad.write_text("version: 1\njobs:\n  - name: x\n    suite: nope\n")
    p = run(cli, "run", str(bad))
    assert p.returncode == 2
    assert "line 4, column 12" in p.stderr
    assert run(cli, "run", str(tmp_path / "missing.yaml")).returncode == 2
    assert run(cli, "verify-gbva", "--algebra", "poly(2,2,3)", "--format", "xml").returncode == 2


def test_json_report_validates(cli, root, tmp_path):
    schema = json.loads((root / "schema" / "report.schema.json").read_text())
    for suite in ["classical-bv.yaml", "corrupted.yaml", "empty.yaml"]:
        out = tmp_path / (suite + ".json")
        run(cli, "run", str(root / "suites" / suite), "--format", "json", "--out", str(out))
        jsonschema.validate(json.loads(out.read_text()), schema)
    out = tmp_path / "single.json"
    p = run(cli, "check-order", "--algebra", "poly(1,0,6)", "--set", "ops=[{op: 'd/dx1*d/dx1', expect: 2}]",
            "--format", "json", "-o", str(out))
    assert p.returncode == 0
    report = json.loads(out.read_text())
    jsonschema.validate(report, schema)
    assert report["jobs"][0]["orders"][0]["witnesses"]


def test_text_is_deterministic(cli, root):
    suite = str(root / "suites" / "classical-bv.yaml")
    a = run(cli, "run", suite, "--jobs", "1").stdout
    b = run(cli, "run", suite, "--jobs", "3").stdout
    c = run(cli, "run", suite, "--jobs", "3").stdout
    assert a == b == c


def test_counterexample_reruns_alone(cli, root, tmp_path):
    out = tmp_path / "r.json"
    run(cli, "run", str(root / "suites" / "corrupted.yaml"), "--format", "json", "-o", str(out))
    job = json.loads(out.read_text())["jobs"][0]
    cfg = tmp_path / "job.json"
    cfg.write_text(json.dumps(job["params"]))  # JSON is YAML
    p = run(cli, job["suite"], "--config", str(cfg))
    assert p.returncode == 1
    assert p.stdout.count("COUNTEREXAMPLE") == 1


def test_overrides(cli):
    p = run(cli, "verify-gbva", "--algebra", "poly(1,1,4)", "--seed", "5", "--cap", "3", "--format", "json")
    r = json.loads(p.stdout)
    assert p.returncode == 0
    assert r["jobs"][0]["params"]["seed"] == 5
    assert r["jobs"][0]["algebra"] == "poly(1,1,3)"
