import io

import pytest

from quatcayley.cli import main
from quatcayley.export import read_edgelist, read_kv, read_reports_csv


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_params(capsys):
    code, out, _ = run(capsys, "params", "--d", "10")
    kv = read_kv(io.StringIO(out))
    assert code == 0 and kv["p"] == "11" and kv["parity_rule"] == "p3"


def test_basis(capsys):
    code, out, _ = run(capsys, "basis", "--p", "5")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "index,quaternion,type,conjugate_index"
    assert "0,1-2i+0j+0k,mu,5" in lines


def test_factor(capsys):
    code, out, _ = run(capsys, "factor", "--p", "5", "--quaternion", "1,2,2,4")
    kv = read_kv(io.StringIO(out))
    assert code == 0
    assert kv["word"] == "1+2i+0j+0k 1+0i+2j+0k" and kv["unit"] == "1+0i+0j+0k"


def test_reduce(capsys):
    code, out, _ = run(capsys, "reduce", "--d", "10", "--q", "13")
    assert code == 0 and "group_kind=PGL2" in out and "legendre_pq=-1" in out
    assert "theoretical_regime=false" in out


def test_graph_commands(capsys, tmp_path):
    path = tmp_path / "g.txt"
    code, _, _ = run(capsys, "graph", "build", "--d", "10", "--q", "7", "--out", str(path))
    header, e = read_edgelist(path.open())
    assert code == 0 and header["n"] == "168" and len(e) == 924
    code, out, _ = run(capsys, "graph", "girth", "--d", "10", "--q", "13")
    kv = read_kv(io.StringIO(out))
    assert code == 0 and kv["girth_bfs"] == kv["girth_words"] and kv["agreement"] == "true"
    code, out, _ = run(capsys, "graph", "verify", "--d", "10", "--q", "13")
    assert code == 0 and "psl_bipartition=true" in out


def test_family(capsys, tmp_path):
    code, out, _ = run(capsys, "family", "list", "--d", "10", "--q-max", "50", "--branch", "y")
    assert code == 0 and [line.split(",")[2] for line in out.split()[1:]] == ["7", "19", "37", "43"]
    path = tmp_path / "r.csv"
    code, _, _ = run(capsys, "family", "run", "--d", "10", "--q-max", "30", "--branch", "x", "--out", str(path))
    reports = read_reports_csv(path.open())
    assert code == 0 and [r.q for r in reports] == [13, 17, 23, 29]
    code, out, _ = run(capsys, "family", "run", "--d", "10", "--q-max", "5", "--branch", "x")
    assert code == 0 and len(out.strip().splitlines()) == 1


def test_table(capsys):
    code, out, _ = run(capsys, "table", "c", "--d-min", "20", "--d-max", "22")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 4
    assert lines[-1].startswith("22,43,") and lines[-1].endswith(",1.1,false,false")


@pytest.mark.parametrize(
    "argv",
    [
        ["basis", "--p", "4"],
        ["params", "--d", "5"],
        ["reduce", "--d", "10", "--q", "11"],
        ["reduce", "--d", "12", "--p", "11", "--q", "13"],
        ["graph", "build", "--d", "10", "--q", "13", "--memory-gib", "0.00001"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["graph"])
    assert exc.value.code == 2


def test_violation_exit_code(capsys, monkeypatch):
    import quatcayley.cli as cli
    from quatcayley.graph import GraphReport

    monkeypatch.setattr(GraphReport, "violations", lambda self: ["moore"])
    code, _, _ = run(capsys, "graph", "verify", "--d", "10", "--q", "7")
    assert code == cli.EXIT_VIOLATION
