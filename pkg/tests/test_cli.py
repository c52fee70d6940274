import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from combinach import cli
from combinach.acceptance import CLI_EXAMPLES
from combinach.ordinal import ord_parse, format_ordinal


def run(*argv):
    buf = io.StringIO()
    code = cli.main(list(argv), stream=buf)
    return code, buf.getvalue()


S1 = '{"kind":"schreier","alpha":"1"}'


def test_norm_examples():
    assert run("norm", "--family", S1, "--vec", '{"4":"1/4","5":"1/4","6":"1/4","7":"1/4"}') == (0, "1\n")
    assert run("norm", "--family", '{"kind":"all-finite"}', "--vec", '{"1":"1/2","3":"-3/4"}') == (0, "5/4\n")
    assert run("norm", "--family", "singletons", "--vec", '{"2":"-7/3"}') == (0, "7/3\n")


def test_summable_like_report():
    code, out = run("witness", "summable-like", "--alpha", "2", "--N", "2")
    assert code == 0
    assert out.count("value=1/4") == 4 and "union_value: 1" in out


def test_records_are_json_and_round_trip():
    code, out = run("witness", "summable-like", "--alpha", "w", "--N", "1", "--output", "records")
    rec = json.loads(out)
    assert format_ordinal(ord_parse(rec["alpha"])) == rec["alpha"] == "w"
    assert all(Fraction(p["value"]) == Fraction(1, 2) for p in rec["pieces"])
    code, out = run("rank", "--family", '{"kind":"schreier","alpha":"w*2"}', "--output", "records")
    rec = json.loads(out)
    assert ord_parse(rec["rank"]) == ord_parse("w^(w*2)+1")


def test_tail_profile_csv():
    code, out = run("tail-profile", "--family", "partition-blocks", "--gen", '{"kind":"block-prefix","rule":"one"}',
                    "--cutoffs", "1,2,4", "--horizon", "64", "--output", "csv")
    assert code == 0
    assert out.splitlines() == ["cutoff,horizon,value_rational,value_decimal",
                                "1,64,1,1", "2,64,1/2,0.5", "4,64,1/4,0.25"]


def test_tail_profile_with_epsilon():
    code, out = run("tail-profile", "--family", S1, "--gen", '{"kind":"all"}', "--cutoffs", "4,16",
                    "--horizon", "256", "--epsilon", "1/2", "--output", "records")
    assert json.loads(out)["verdict"] == "REFUTES-MEMBERSHIP-AT"


@pytest.mark.parametrize("argv,expected", [
    (["tail", "--family", "all-finite", "--vec", '{"1":1,"5":1}', "--n", "2"], "1"),
    (["phi", "--family", "all-finite", "--weights", "harmonic", "--set", "[1,2,4]"], "7/4"),
    (["phi", "--family", S1, "--gen", '{"kind":"tail-from","n":4}', "--horizon", "8"], "1"),
    (["schreier-check", "--alpha", "2", "--set", "[2,5,6,7,8]"], "true"),
    (["schreier-check", "--alpha", "1", "--set", "[2,5,8]"], "false"),
])
def test_scalar_subcommands(argv, expected):
    assert run(*argv) == (0, expected + "\n")


@pytest.mark.parametrize("argv,needle", [
    (["spreading", "--family", "partition-blocks", "--window", "6"], '"F":[2,3],"G":[2,4]'),
    (["delta-system", "--sets", "[[1,2],[1,3],[1,4]]", "--m", "3"], '"root":[1]'),
    (["delta-system", "--sets", "[[1,2],[2,3],[1,3]]", "--m", "3"], '"NotFound"'),
    (["l1-check", "--family", "farah", "--gen", '{"kind":"block-prefix","rule":"one"}', "--N", "64",
      "--samples", '[{"1":"1/2","8":"-3"}]'], '"l1":"7/2"'),
    (["c0-check", "--period", "0", "--N", "3", "--samples", '[["1","-1/2","1/4"]]'], '"norm":"1"'),
    (["schur", "--family", "all-finite", "--blocks", '[{"1":"1"},{"2":"-1","3":"1/2"}]',
      "--epsilon", "1/2", "--gen", '{"kind":"all"}', "--horizon", "8"], '"values":["1","1"]'),
    (["variation", "--measure", '["1","-1"]'], '"variation":"2"'),
    (["ptak", "--family", S1, "--epsilon", "1/4", "--horizon", "1024"], '"E":[[4,1024]]'),
    (["mazur", "--family", S1, "--epsilon", "1/4", "--horizon", "1024"], '"value":"1/8"'),
    (["exh-fin", "--family", "singletons", "--weights", "one", "--gen", '{"kind":"all"}',
      "--horizon", "64"], '"verdict":"FIN-MINUS-EXH-EVIDENCE"'),
    (["witness", "trace-i2", "--k-max", "1"], '"skipped":[]'),
    (["witness", "density-bound", "--j", "4", "--gen", '{"kind":"block-prefix","rule":"one"}',
      "--N", "5", "--horizon", "4096"], '"bound":"5/16"'),
])
def test_record_subcommands(argv, needle):
    code, out = run(*argv, "--output", "records")
    assert code == 0 and needle in out


def test_text_mode_renders_certificates():
    code, out = run("variation", "--measure", '["1","-1"]')
    assert code == 0 and out.startswith("certificate: variation\n")


@pytest.mark.parametrize("argv", [
    ["norm", "--family", '{"kind":"bogus"}', "--vec", "{}"],
    ["norm", "--family", S1, "--vec", '{"1":0.5}'],
    ["norm", "--family", S1, "--vec", "[1]"],
    ["norm", "--family", S1],
    ["schreier-check", "--alpha", "w+(", "--set", "[1]"],
    ["schreier-check", "--alpha", "w^w^w", "--set", "[1]"],
    ["phi", "--family", S1, "--set", "[1]", "--gen", '{"kind":"all"}', "--horizon", "4"],
    ["norm", "--family", '{"kind":"schreier","alpha":"1","extra":1}', "--vec", "{}"],
    ["rank", "--family", S1, "--output", "csv"],
    [],
    ["frobnicate"],
])
def test_validation_errors_exit_2(argv):
    assert run(*argv)[0] == 2


@pytest.mark.parametrize("argv", [
    ["witness", "summable-like", "--alpha", "1", "--N", "2"],
    ["l1-check", "--family", S1, "--gen", '{"kind":"all"}', "--N", "16", "--samples", "[]"],
    ["ptak", "--family", S1, "--weights", "geometric", "--epsilon", "1/4", "--horizon", "64"],
    ["witness", "density-bound", "--j", "4", "--gen", '{"kind":"block-prefix","rule":"one"}',
     "--N", "4", "--horizon", "64"],
])
def test_precondition_errors_exit_3(argv):
    assert run(*argv)[0] == 3


def test_verification_failure_exits_4(monkeypatch):
    import combinach.diagnostics as diag

    monkeypatch.setattr(diag, "ext_norm", lambda f, x: 0)
    code, _ = run("c0-check", "--period", "0", "--N", "2", "--samples", '[["1","1"]]')
    assert code == 4


def test_job_file(tmp_path):
    job = tmp_path / "job.json"
    job.write_text(json.dumps({"subcommand": "norm", "family": {"kind": "schreier", "alpha": "1"},
                               "vec": {"4": "1/4", "5": "1/4", "6": "1/4", "7": "1/4"}}))
    assert run("--job", str(job)) == (0, "1\n")
    job.write_text(json.dumps({"subcommand": "witness summable-like", "alpha": "3", "N": 1,
                               "output": "records"}))
    code, out = run("--job", str(job))
    assert code == 0 and json.loads(out)["union_value"] == "1"
    job.write_text(json.dumps({"subcommand": "norm", "family": "all-finite", "vec": {}, "colour": 1}))
    assert run("--job", str(job))[0] == 2
    assert run("--job", str(tmp_path / "missing.json"))[0] == 2


def test_examples_are_byte_identical_across_processes():
    for argv in CLI_EXAMPLES[:3]:
        outs = [subprocess.run([sys.executable, "-m", "combinach", *argv], capture_output=True).stdout
                for _ in range(2)]
        assert outs[0] == outs[1] and outs[0]
