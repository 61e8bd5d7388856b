import os

import pytest

from palette import engine
from palette.adversaries import nf_path_killer
from palette.cli import main


def run_cli(*argv, capsys=None):
    return main(list(argv))


def test_run_ok(capsys):
    code = main(["run", "--adv", "nf-path-killer", "--alg", "nf", "--m", "100"])
    out = capsys.readouterr().out
    assert code == 0
    assert "ratio 0.50" in out


def test_run_bound_violation_exits_one(capsys):
    # first-fit colors the whole order, far above the next-fit ceiling
    code = main(["run", "--adv", "nf-path-killer", "--alg", "ff", "--m", "100"])
    assert code == 1


def test_usage_error_exits_two(capsys):
    assert main(["run", "--adv", "no-such-thing", "--m", "5"]) == 2
    assert main(["run", "--adv", "nf-path-killer"]) == 2  # missing --m
    assert main(["run", "--adv", "det-path-killer", "--alg", "rp", "--p", "0.7",
                 "--n", "5"]) == 2


def test_run_writes_csv(tmp_path, capsys):
    out = tmp_path / "report.csv"
    code = main(["run", "--adv", "nf-path-killer", "--alg", "nf", "--m", "50",
                 "--out", str(out)])
    assert code == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0] == "construction,algorithm,k,trial,colored,opt,ratio"
    assert lines[1].startswith("nf-path-killer,nf,2,0,51,101,")


def test_csv_bytes_reproducible(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["run", "--adv", "rp-oddeven", "--alg", "rp", "--p", "0.7236068",
            "--m", "51", "--trials", "500", "--seed", "7"]
    assert main(args + ["--out", str(a)]) in (0, 1)
    assert main(args + ["--out", str(b)]) in (0, 1)
    assert a.read_bytes() == b.read_bytes()


def test_seed_env_override(tmp_path, capsys):
    a, b, c = (tmp_path / name for name in ("a.csv", "b.csv", "c.csv"))
    args = ["yao", "--b", "3", "--trials", "500"]
    os.environ["PALETTE_SEED"] = "123"
    try:
        main(args + ["--seed", "1", "--out", str(a)])
        main(args + ["--seed", "2", "--out", str(b)])
    finally:
        del os.environ["PALETTE_SEED"]
    main(args + ["--seed", "123", "--out", str(c)])
    assert a.read_bytes() == b.read_bytes() == c.read_bytes()


def test_yao_command(capsys):
    code = main(["yao", "--b", "3", "--trials", "2000", "--seed", "4"])
    out = capsys.readouterr().out
    assert code == 0
    assert "yao vs ff" in out and "yao vs nf" in out


def test_exhaustive_path_command(capsys):
    assert main(["exhaustive", "--class", "path", "--max-edges", "5"]) == 0
    out = capsys.readouterr().out
    assert "min ratio" in out


def test_exhaustive_fair_path_command(capsys):
    assert main(["exhaustive", "--class", "fair-path", "--max-edges", "4"]) == 0


def test_exhaustive_tree_command(capsys):
    assert main(["exhaustive", "--class", "tree", "--max-edges", "3", "--k", "2"]) == 0


def test_verify_commands(capsys):
    assert main(["verify", "--strategy", "ff-tree", "--random", "25",
                 "--max-edges", "9", "--k", "3", "--seed", "5"]) == 0
    assert main(["verify", "--strategy", "fair-tree", "--random", "20",
                 "--max-edges", "9", "--k", "4", "--seed", "5"]) == 0
    assert main(["verify", "--strategy", "rp-path", "--random", "25",
                 "--max-edges", "40", "--p", "0.7236068", "--seed", "5"]) == 0
    assert main(["verify", "--strategy", "fair-tree", "--adv", "nf-tree",
                 "--k", "4", "--N", "4"]) == 0


def test_verify_writes_verdict_csv(tmp_path, capsys):
    out = tmp_path / "verdict.csv"
    assert main(["verify", "--strategy", "fair-tree", "--adv", "nf-tree",
                 "--k", "4", "--N", "2", "--out", str(out)]) == 0
    header = out.read_text().split("\n", 1)[0]
    assert header == "edge,class,v_i,v_f,margin,case"


def test_opt_command_with_file(tmp_path, capsys):
    path = tmp_path / "edges.txt"
    path.write_text("0 1\n1 2\n2 3\n# comment\n")
    assert main(["opt", "--file", str(path), "--k", "1"]) == 0
    out = capsys.readouterr().out
    assert "opt 2 of 3" in out


def test_opt_command_with_construction(capsys):
    assert main(["opt", "--adv", "nf-path-killer", "--m", "10", "--k", "2"]) == 0
    out = capsys.readouterr().out
    assert "opt 21 of 21" in out


def test_opt_writes_witness(tmp_path, capsys):
    edges = tmp_path / "edges.txt"
    edges.write_text("0 1\n1 2\n")
    out = tmp_path / "witness.csv"
    assert main(["opt", "--file", str(edges), "--k", "2", "--out", str(out)]) == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0] == "step,u,v,decision,color"
    assert len(lines) == 3


def test_nf_order_round_trip(tmp_path, capsys):
    # produce a trace CSV, extract the reproduction order, check equivalence
    trace = engine.run("nf", nf_path_killer(4))
    src = tmp_path / "trace.csv"
    src.write_text(trace.to_csv())
    out = tmp_path / "order.txt"
    assert main(["nf-order", "--file", str(src), "--k", "2",
                 "--out", str(out)]) == 0
    printed = capsys.readouterr().out
    assert "equivalent to target: True" in printed
    assert len(out.read_text().strip().split("\n")) == trace.colored_count


def test_list_command(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    for name in ("nf-path-killer", "det-path-killer", "star-chain", "yao",
                 "nf-tree", "path-then-stars", "rp-mod3", "rp-oddeven"):
        assert name in out
