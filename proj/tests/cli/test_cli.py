import json

from conftest import validate


def test_blocks_table(cli, data):
    r = cli("blocks", "--group", data / "a5.grp", "--field", "2,2")
    assert r.returncode == 0, r.stderr
    rows = [line.split() for line in r.stdout.splitlines()[2:]]
    assert [(row[1], row[2]) for row in rows] == [("44", "4"), ("16", "1")]


def test_blocks_json_and_artifacts(cli, tmp_path):
    r = cli("blocks", "--builtin", "a5", "--json", "--artifacts", tmp_path)
    assert r.returncode == 0, r.stderr
    doc = json.loads(r.stdout)
    validate(doc, "blocks")
    assert [s["label"] for s in doc["blocks"][0]["simples"]] == ["1a", "2a", "2b"]
    for s in doc["blocks"][0]["simples"]:
        validate(json.loads((tmp_path / s["artifact"]).read_text()), "module")


def test_trivial_group(cli, tmp_path):
    path = tmp_path / "trivial.grp"
    path.write_text("# nothing\n()\n")
    r = cli("blocks", "--group", path, "--json")
    assert r.returncode == 0, r.stderr
    assert [b["dim"] for b in json.loads(r.stdout)["blocks"]] == [1]


def test_malformed_group_file(cli, tmp_path):
    path = tmp_path / "bad.grp"
    path.write_text("(1 2 3)\n# fine\n(1 2\n")
    r = cli("blocks", "--group", path)
    assert r.returncode == 2
    assert "line 3" in r.stderr


def test_usage_errors(cli, tmp_path):
    assert cli("blocks").returncode == 2
    assert cli("frobnicate").returncode == 2
    assert cli("blocks", "--builtin", "a5", "--field", "2").returncode == 2
    assert cli("blocks", "--builtin", "a5", "--field", "4,1").returncode == 2
    assert cli("verify", "--builtin", "a5", "--theorem", "7").returncode == 2
    assert cli("verify", "--builtin", "a5", "--block", "1").returncode == 2
    assert cli("blocks", "--builtin", "a5", env={"BLOCKDESCENT_SEED": "x"}).returncode == 2
    assert cli("descend", "--module", tmp_path / "missing.json").returncode == 2
    assert cli("--help").returncode == 0


def test_cap_exceeded(cli, data):
    r = cli("blocks", "--group", data / "a5.grp", "--max-order", "30")
    assert r.returncode == 3


def test_classify(cli):
    expected = {"v4": "P", "a4": "A4", "v4xc3": "P", "a5": "A5b0"}
    for name, kind in expected.items():
        r = cli("classify", "--builtin", name, "--json")
        assert r.returncode == 0, r.stderr
        doc = json.loads(r.stdout)
        validate(doc, "classification")
        assert doc["classification"]["kind"] == kind


def test_verify_reports(cli, tmp_path):
    for name, theorem in [("v4xc3", "3.1"), ("v4xc3", "3"), ("a4", "3"), ("a4", "3.1")]:
        r = cli("verify", "--builtin", name, "--theorem", theorem)
        assert r.returncode == 0, (name, theorem, r.stderr)
        doc = json.loads(r.stdout)
        validate(doc, "theorem_report")
        assert doc["verdicts"] == {"rickard": True, "splendid": True, "descent": True, "pass": True}
        assert doc["timings"] == {}


def test_theorem_3_a5_unsatisfiable(cli):
    r = cli("verify", "--builtin", "a5", "--theorem", "3")
    assert r.returncode == 1
    doc = json.loads(r.stdout)
    validate(doc, "theorem_report")
    assert doc["hypothesis"]["satisfied"] is False
    assert "Cartan" in doc["hypothesis"]["note"]


def test_byte_identical_output(cli, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert cli("verify", "--builtin", "a4", "--theorem", "3", "--seed", "5", "-o", a).returncode == 0
    assert cli("verify", "--builtin", "a4", "--theorem", "3", "-o", b, env={"BLOCKDESCENT_SEED": "5"}).returncode == 0
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text())["input"]["seed"] == 5


def test_seed_changes_nothing_structural(cli):
    docs = [json.loads(cli("verify", "--builtin", "v4xc3", "--seed", s).stdout) for s in ("1", "2")]
    for key in ("verdicts", "blocks", "complex", "classification"):
        assert docs[0][key] == docs[1][key]


def test_timings_flag(cli):
    doc = json.loads(cli("verify", "--builtin", "v4xc3", "--timings").stdout)
    validate(doc, "theorem_report")
    assert "descent" in doc["timings"]


def test_splitting_check(cli, data, tmp_path):
    # GF(2) does not split the principal block of A4.
    path = tmp_path / "a4.grp"
    path.write_text((data / "a4.grp").read_text())
    r = cli("verify", "--group", path, "--theorem", "3", "--kprime", "2,1")
    assert r.returncode == 2
    assert "--assert-splitting" in r.stderr
    r = cli("verify", "--group", path, "--theorem", "3", "--kprime", "2,1", "--assert-splitting")
    assert r.returncode == 0, r.stderr
    assert json.loads(r.stdout)["input"]["splitting_field"] == "asserted"
    r = cli("verify", "--builtin", "a4", "--theorem", "3", "--kprime", "2,1")
    assert r.returncode == 0
    assert "warning" in r.stderr
    assert json.loads(r.stdout)["input"]["splitting_field"] is False


def test_descend(cli, tmp_path):
    assert cli("blocks", "--builtin", "a5", "--artifacts", tmp_path).returncode == 0
    r = cli("descend", "--module", tmp_path / "block0_2a.json", "--k", "2,1")
    assert r.returncode == 1
    doc = json.loads(r.stdout)
    validate(doc, "instability")
    twist = tmp_path / "twist.json"
    twist.write_text(json.dumps(doc["witness"]["twist"]))
    fp_2b = cli("descend", "--module", tmp_path / "block0_2b.json")
    assert json.loads(fp_2b.stdout)["witness"]["fingerprint"] == doc["witness"]["twist_fingerprint"]

    r = cli("descend", "--module", tmp_path / "block0_1a.json")
    assert r.returncode == 0, r.stderr
    cert = json.loads(r.stdout)
    validate(cert, "descent_certificate")
    assert cert["verified"] is True

    r = cli("descend", "--module", tmp_path / "block0_2a.json", "--k", "2,2")
    assert r.returncode == 0, r.stderr
    cert = json.loads(r.stdout)
    assert cert["verified"] and cert["dim"] == 2
    assert cert["isomorphism"]["data"] == ["10", "01"]


def test_descend_stage_artifact(cli, tmp_path):
    r = cli("verify", "--builtin", "v4xc3", "--artifacts", tmp_path)
    assert r.returncode == 0
    validate(json.loads((tmp_path / "complex_ext.json").read_text()), "complex")
    validate(json.loads((tmp_path / "certificate_0.json").read_text()), "descent_certificate")
    r = cli("descend", "--module", tmp_path / "ext_Tp.json", "--k", "2,1")
    assert r.returncode == 0, r.stderr
    assert json.loads(r.stdout)["verified"] is True
