import json
import subprocess
import sys

from schramsey import cli


def run_cli(args, capsys):
    code = cli.main(args)
    out = capsys.readouterr().out
    return code, out


def run_json(args, capsys):
    code, out = run_cli(args, capsys)
    return code, json.loads(out)


def test_schreier_mem_true(capsys):
    code, rep = run_json(["schreier", "mem", "--xi", "w", "--set", "{3,5,9}"], capsys)
    assert code == 0 and rep["member"] is True


def test_schreier_mem_false_exit(capsys):
    code, rep = run_json(["schreier", "mem", "--xi", "w", "--set", "{2,3,4}"], capsys)
    assert code == 1 and rep["member"] is False


def test_schreier_decompose(capsys):
    code, rep = run_json(
        ["schreier", "decompose", "--xi", "w", "--stream", "3,7,8,9,10"], capsys
    )
    assert code == 0 and rep["initial_segment"] == [3, 7, 8]


def test_schreier_enumerate_and_transfer(capsys):
    code, rep = run_json(["schreier", "enumerate", "--xi", "w", "--max-n", "4"], capsys)
    assert code == 0 and rep["members"] == [[1], [2, 3], [2, 4]]
    code, rep = run_json(["schreier", "transfer", "--xi", "w", "-n", "3"], capsys)
    assert code == 0 and rep["transfer_index"] == "2"


def test_ordinal_commands(capsys):
    code, rep = run_json(["ordinal", "eval", "w^2*3 + w + 5"], capsys)
    assert code == 0 and rep["canonical"] == "w^2*3 + w + 5"
    code, rep = run_json(["ordinal", "fixed-seq", "w^w", "-n", "2", "--succ"], capsys)
    assert rep["value"] == "w + 2"
    code, rep = run_json(["ordinal", "classify", "w+4"], capsys)
    assert rep["kind"] == "successor" and rep["pred"] == "w + 3"


def test_words_and_wxi_commands(capsys):
    code, rep = run_json(
        ["words", "d", "--alphabet", "ab", "--seq", "(ab,ba,aab)"], capsys
    )
    assert rep["d"] == [3, 5]
    code, rep = run_json(
        ["wxi", "member", "--xi", "2", "--alphabet", "ab", "--side", "c", "--seq", "(ab,ba,aab)"],
        capsys,
    )
    assert code == 0 and rep["member"] is True
    code, rep = run_json(
        ["wxi", "decompose", "--xi", "1", "--alphabet", "ab", "--seq", "(a,b,a)"], capsys
    )
    assert rep["boundaries"] == [2, 3] and rep["residual"] is False


def test_family_commands(tmp_path, capsys):
    fam = {
        "alphabet": ["a", "b"],
        "side": "constant",
        "members": [["a"], []],
    }
    path = tmp_path / "fam.json"
    path.write_text(json.dumps(fam))
    code, rep = run_json(["family", "tree", "--file", str(path)], capsys)
    assert code == 0 and rep["tree"] is True
    code, rep = run_json(
        ["family", "dichotomy", "--file", str(path), "--xi", "1", "--stream", "e:3", "--letters", "3"],
        capsys,
    )
    assert code == 0 and rep["equivalent"] is True


def test_cbindex_command(capsys):
    code, rep = run_json(
        ["cbindex", "--family", "len:2", "--stream", "e:40", "--oracle", "exact:length"],
        capsys,
    )
    assert code == 0 and rep["so_index"] == 2
    code, rep = run_json(
        ["cbindex", "--family", "len:1", "--stream", "e:30", "--oracle", "horizon:3", "--levels", "2"],
        capsys,
    )
    assert rep["profile"] == [3, 1, 0]  # seeds, then only the empty sequence, then nothing


def test_verify_commands(capsys):
    code, rep = run_json(
        ["verify", "hj", "--r", "2", "--n", "1", "--k", "2", "--xi", "0", "--mmax", "4"],
        capsys,
    )
    assert code == 0 and rep["M"] == 2
    code, rep = run_json(
        ["verify", "ramsey", "--xi", "1", "--max-n", "5", "--coloring", "min_mod:2", "--target", "3"],
        capsys,
    )
    assert code == 0 and rep["found"] and rep["witness_checked"] is True
    code, rep = run_json(
        ["verify", "nw", "--fixture", "narrow", "--alphabet", "ab", "--letters", "6"], capsys
    )
    assert code == 0 and rep["consistent"] is True


def test_usage_errors(capsys):
    code, _ = run_cli(["schreier", "mem", "--xi", "w+w", "--set", "{1}"], capsys)
    assert code == 2
    code, _ = run_cli(["ordinal", "eval", "w^"], capsys)
    assert code == 2


def test_budget_exit_code(capsys):
    code, _ = run_cli(["schreier", "enumerate", "--xi", "w", "--max-n", "30"], capsys)
    assert code == 3


def test_reports_embed_bounds(capsys):
    _, rep = run_json(["verify", "pair-sweep", "--max-n", "5"], capsys)
    assert rep["colorings"] == 1024 and "max_n" in rep
    assert rep["schema_version"] == 1


def test_plain_and_csv_formats(capsys):
    code, out = run_cli(["--format", "plain", "ordinal", "eval", "w"], capsys)
    assert code == 0 and "canonical: w" in out
    code, out = run_cli(["--format", "csv", "schreier", "transfer", "--xi", "w", "-n", "2"], capsys)
    assert code == 0 and out.count("\n") == 2


def test_config_file_defaults(tmp_path, capsys):
    cfgfile = tmp_path / "cfg.json"
    cfgfile.write_text(json.dumps({"max_n": 4}))
    _, rep = run_json(
        ["--config", str(cfgfile), "schreier", "enumerate", "--xi", "w"], capsys
    )
    assert rep["max_n"] == 4


BATTERY = [
    ["schreier", "enumerate", "--xi", "w^2", "--max-n", "8"],
    ["verify", "hj", "--r", "2", "--n", "1", "--k", "2", "--xi", "0", "--mmax", "4"],
    ["verify", "pair-sweep", "--max-n", "5"],
    ["cbindex", "--family", "len:2", "--stream", "e:40", "--oracle", "horizon:4"],
    ["wxi", "enumerate", "--xi", "w", "--alphabet", "ab", "--side", "c", "--letters", "5"],
]


def test_thread_hint_does_not_change_output():
    for args in BATTERY:
        runs = []
        for hint in ("1", "8"):
            proc = subprocess.run(
                [sys.executable, "-m", "schramsey.cli", "--threads", hint, *args],
                capture_output=True,
            )
            runs.append((proc.returncode, proc.stdout))
        assert runs[0] == runs[1]
        assert runs[0][1]  # some output was produced
