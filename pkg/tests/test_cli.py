import json

import pytest

from chiralwords.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_group_list(capsys):
    code, out, _ = run(capsys, "group", "list", "--max-order", "8",
                       "--format", "structured")
    assert code == 0
    doc = json.loads(out)
    specs = [g["spec"] for g in doc["groups"]]
    assert "C8" in specs and "Q8" in specs and "S3" in specs


def test_group_show(capsys):
    code, out, _ = run(capsys, "group", "show", "C4", "--format", "structured")
    assert code == 0
    doc = json.loads(out)
    assert doc["order"] == 4
    assert doc["table"][1][3] == 0


def test_group_autos(capsys):
    code, out, _ = run(capsys, "group", "autos", "C4", "--format", "structured")
    assert code == 0
    assert len(json.loads(out)["automorphisms"]) == 2
    code, out, _ = run(capsys, "group", "autos", "S3", "--format", "structured")
    assert len(json.loads(out)["automorphisms"]) == 6


def test_image_command(capsys):
    code, out, _ = run(capsys, "image", "--group", "C4", "--word", "x1^2",
                       "--fibers", "--format", "structured")
    assert code == 0
    doc = json.loads(out)
    assert doc["members"] == [0, 2]
    assert doc["counts"] == [2, 0, 2, 0]
    code, out, _ = run(capsys, "image", "--group", "S3",
                       "--word", "x1 x2 x1^-1 x2^-1", "--format", "structured")
    assert len(json.loads(out)["members"]) == 3
    code, out, _ = run(capsys, "image", "--group", "C6", "--word", "x1",
                       "--format", "structured")
    assert len(json.loads(out)["members"]) == 6


def test_chiral_command(capsys):
    code, out, _ = run(capsys, "chiral", "--group", "C12",
                       "--word", "x1^3 x2^2", "--format", "structured")
    assert code == 0
    doc = json.loads(out)
    assert doc["chiral"] is False
    assert doc["all_gammas_agree"] is True
    code, out, _ = run(capsys, "chiral", "--group", "S4", "--word", "x1^2",
                       "--format", "structured")
    assert code == 0
    assert json.loads(out)["chiral"] is False


def test_weak_chiral_command(capsys):
    code, out, _ = run(capsys, "weak-chiral", "--group", "C4",
                       "--word", "x1^2", "--gamma", "inv",
                       "--format", "structured")
    assert code == 0
    assert json.loads(out)["weakly_chiral"] is False
    code, out, _ = run(capsys, "weak-chiral", "--group", "S3",
                       "--word", "x1^2", "--format", "structured")
    assert json.loads(out)["all_gammas_agree"] is True


def test_gamma_index_selection(capsys):
    code, out, _ = run(capsys, "chiral", "--group", "S3", "--word", "x1 x2",
                       "--gamma", "0", "--format", "structured")
    assert code == 0
    code, _, err = run(capsys, "chiral", "--group", "S3", "--word", "x1 x2",
                       "--gamma", "99")
    assert code == 2
    assert "out of range" in err


def test_verify_command(capsys):
    code, out, _ = run(capsys, "verify", "all", "--max-order", "6",
                       "--max-len", "2", "--theta-samples", "2",
                       "--gamma-samples", "2", "--format", "structured")
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] is True
    assert "stable_digest" in doc


def test_verify_degenerate_bounds(capsys):
    code, out, _ = run(capsys, "verify", "all", "--max-order", "1",
                       "--max-len", "0")
    assert code == 0


def test_verify_seed_reproducible(capsys):
    args = ("verify", "lemma1", "--max-order", "6", "--max-len", "2",
            "--seed", "3", "--format", "structured")
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert json.loads(out1)["stable_digest"] == \
        json.loads(out2)["stable_digest"]


def test_search_and_replay_commands(capsys, tmp_path):
    out_path = tmp_path / "findings.jsonl"
    code, _, _ = run(capsys, "search", "--rank", "2", "--max-len", "3",
                     "--max-order", "6", "--full", "--out", str(out_path))
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert lines
    code, out, _ = run(capsys, "replay", str(out_path))
    assert code == 0
    assert all("pass" in line for line in out.splitlines())
    # tamper with one record
    record = json.loads(lines[0])
    record["image_size"] = (record["image_size"] or 0) + 1
    bad_path = tmp_path / "bad.jsonl"
    bad_path.write_text(json.dumps(record) + "\n")
    code, out, _ = run(capsys, "replay", str(bad_path))
    assert code == 1
    assert "MISMATCH" in out


def test_usage_errors_exit_2(capsys):
    code, _, err = run(capsys, "group", "show", "E8")
    assert code == 2
    code, _, err = run(capsys, "image", "--group", "C4", "--word", "x1^^")
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_budget_exceeded_exit_3(capsys):
    code, _, err = run(capsys, "image", "--group", "S4", "--word", "x1 x2",
                       "--budget", "10")
    assert code == 3
    assert "budget" in err


def test_threads_do_not_change_output(capsys):
    outputs = set()
    for threads in ("1", "2", "8"):
        _, out, _ = run(capsys, "image", "--group", "S4", "--word",
                        "x1 x2 x1^-1 x2^-1", "--fibers",
                        "--threads", threads, "--format", "structured")
        outputs.add(out)
    assert len(outputs) == 1


def test_human_format_default(capsys):
    code, out, _ = run(capsys, "chiral", "--group", "C6", "--word", "x1 x2")
    assert code == 0
    assert "not chiral" in out
