import math
import random

import pytest

from oracles import FIG28_EDGES, fig4, naive_count
from trie_entropy.cli import main
from trie_entropy.textio import read_dictionary, read_edges, write_edges
from trie_entropy.trie import random_trie


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def parse(out):
    return dict(line.split("=", 1) for line in out.splitlines() if "=" in line)


@pytest.fixture
def fig_file(tmp_path):
    p = tmp_path / "fig.txt"
    p.write_text(write_edges(fig4()))
    return p


def test_stats_figure(capsys, fig_file):
    code, out, _ = run(capsys, "stats", fig_file, "--k", 2, "--machine")
    assert code == 0
    kv = parse(out)
    assert float(kv["h_wc"]) == pytest.approx(math.log2(6))
    assert kv["r"] == "3" and kv["n"] == "4"
    assert all(v == "pass" for k, v in kv.items() if k.startswith("check."))


def test_stats_figure28_runs(capsys, tmp_path):
    p = tmp_path / "f28.txt"
    lines = ["28 3"] + [f"{a - 1} {b - 1} {s}" for a, b, s in FIG28_EDGES]
    p.write_text("\n".join(lines) + "\n")
    code, out, _ = run(capsys, "stats", p, "--machine", "--k", 1)
    assert code == 0 and parse(out)["r"] == "12"


def test_stats_empty_dictionary(capsys, tmp_path):
    p = tmp_path / "empty.txt"
    p.write_bytes(b"")
    code, out, _ = run(capsys, "stats", p, "--machine")
    kv = parse(out)
    assert code == 0 and kv["n"] == "1"
    assert all(float(v) == 0 for k, v in kv.items() if k.startswith(("nh_k", "label_k", "h_wc")))


def test_compress_round_trip(capsys, tmp_path, fig_file):
    tac = tmp_path / "fig.tac"
    code, out, _ = run(capsys, "compress", fig_file, "-o", tac, "--machine")
    assert code == 0 and parse(out)["d"] == "9"
    back = tmp_path / "back.txt"
    assert run(capsys, "decompress", tac, "-o", back)[0] == 0
    assert back.read_bytes() == fig_file.read_bytes()


def test_compress_root_only(capsys, tmp_path):
    p = tmp_path / "root.txt"
    p.write_text("1 1\n")
    code, out, _ = run(capsys, "compress", p, "-o", tmp_path / "r.tac", "--machine")
    assert code == 0 and parse(out)["d"] == "1"


def test_random_round_trip_is_identical(capsys, tmp_path):
    t = random_trie(120, 4, random.Random(3))
    src = tmp_path / "t.txt"
    src.write_text(write_edges(t))
    for k in (0, 1, 2):
        tac = tmp_path / f"t{k}.tac"
        assert run(capsys, "compress", src, "-o", tac, "--k", k)[0] == 0
        back = tmp_path / f"back{k}.txt"
        assert run(capsys, "decompress", tac, "-o", back)[0] == 0
        assert back.read_bytes() == src.read_bytes()


def test_corrupt_container_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.tac"
    bad.write_bytes(b"TAC0junk")
    code, _, err = run(capsys, "decompress", bad)
    assert code == 3 and "magic" in err


def test_index_query_prefix(capsys, tmp_path):
    words = [b"banana", b"band", b"bandana", b"can", b"cane"]
    d = tmp_path / "dict.txt"
    d.write_bytes(b"\n".join(words) + b"\n")
    idx = tmp_path / "d.xbw"
    assert run(capsys, "index", d, "-o", idx)[0] == 0
    t = read_dictionary(d.read_bytes())
    patterns = ["an", "nd", "", "a", "zz", "bandana", "x"]
    batch = tmp_path / "q.txt"
    batch.write_text("\n".join(patterns) + "\n")
    code, out, _ = run(capsys, "query", idx, "--batch", batch)
    assert code == 0
    rows = [line.split("\t") for line in out.splitlines()]
    assert [r[0] for r in rows] == patterns
    for p, row in zip(patterns, rows):
        assert int(row[1]) == naive_count(t, tuple(p.encode()))
    code, out, _ = run(capsys, "query", idx, "", "--machine")
    assert parse(out)["count"] == str(t.n)
    assert run(capsys, "prefix", idx, "band")[1].strip() != "absent"
    assert run(capsys, "prefix", idx, "bx")[1].strip() == "absent"


def test_query_alphabet_mismatch(capsys, tmp_path):
    d = tmp_path / "dict.txt"
    d.write_text("héllo\n", encoding="utf-8")
    idx = tmp_path / "d.xbw"
    assert run(capsys, "index", d, "-o", idx, "--alphabet", "utf8")[0] == 0
    assert run(capsys, "query", idx, "é", "--machine")[1].startswith("count=1")
    assert run(capsys, "query", idx, "l", "--alphabet", "bytes")[0] == 3


def test_enumerate(capsys):
    assert parse(run(capsys, "enumerate", 4, "a:2", "b:1", "--machine")[1])["count"] == "6"
    assert parse(run(capsys, "enumerate", 5, "a:4", "--machine")[1])["count"] == "1"
    assert parse(run(capsys, "enumerate", 4, "--sigma", 2, "--machine")[1])["count"] == "14"
    code, out, _ = run(capsys, "enumerate", 4, "a:2", "b:1", "--list")
    assert code == 0 and out.count("alphabet: a b") == 6
    body = out.split("\n", 1)[1]
    listed = [read_edges(block) for block in body.split("\n\n") if block.strip()]
    assert len(set(listed)) == 6
    code, _, err = run(capsys, "enumerate", 12, "a:6", "b:5", "--list", "--cap", 10)
    assert code == 2 and "count only" in err


def test_bijection(capsys, fig_file):
    code, out, _ = run(capsys, "bijection", fig_file, "--machine")
    kv = parse(out)
    assert code == 0 and kv["matrix"] == "1010 1000" and kv["path"] == "1 0 0 -1"
    code, out, _ = run(capsys, "bijection", "--n", 7, "--dist", "a:3", "b:3", "--seed", 5, "--machine")
    assert code == 0 and parse(out)["round_trip"] == "pass"


def test_usage_and_input_errors(capsys, tmp_path, fig_file):
    with pytest.raises(SystemExit) as exc:
        main(["stats"])
    assert exc.value.code == 2
    assert run(capsys, "stats", tmp_path / "missing.txt")[0] == 3
    bad = tmp_path / "bad.txt"
    bad.write_text("3 2\n0 1 a\n0 2 a\n")
    assert run(capsys, "stats", bad)[0] == 3
    assert run(capsys, "stats", fig_file, "--k", -1)[0] == 2
    assert run(capsys, "compress", fig_file, "--k", -1)[0] == 2
    assert run(capsys, "enumerate", 4, "a:5")[0] == 2


def test_edge_list_without_alphabet_line():
    t = read_edges("4 2\n0 1 a\n0 2 b\n2 3 a\n")
    assert t == fig4()
    with pytest.raises(ValueError):
        read_edges("3 2\n0 1 x\n")
