import io

import numpy as np
import pytest

from quatcayley.export import (
    edges,
    read_edgelist,
    read_kv,
    report_from_kv,
    write_csv,
    write_dot,
    write_edgelist,
    write_kv,
)
from quatcayley.graph import build, verify_report


def test_edgelist_roundtrip(spec_10_11_7):
    g = build(spec_10_11_7)
    buf = io.StringIO()
    write_edgelist(g, buf)
    header, e = read_edgelist(io.StringIO(buf.getvalue()))
    assert header == {"d": "10", "p": "11", "q": "7", "group_kind": "PSL2", "legendre_pq": "1", "n": "168"}
    assert e.shape == (168 * 11 // 2, 2)
    assert (e[:, 0] < e[:, 1]).all()
    assert (np.lexsort((e[:, 1], e[:, 0])) == np.arange(len(e))).all()
    assert (e == edges(g)).all()
    # every adjacency slot appears exactly once as an undirected edge
    pairs = {(min(u, int(v)), max(u, int(v))) for u in range(g.n) for v in g.adjacency[u]}
    assert pairs == {tuple(map(int, row)) for row in e}


def test_dot(spec_10_11_7):
    buf = io.StringIO()
    write_dot(build(spec_10_11_7), buf)
    text = buf.getvalue()
    assert text.startswith('graph "G_10_11_7" {')
    assert text.count(" -- ") == 168 * 11 // 2
    assert '0 [label="1 0; 0 1"];' in text


def test_kv_roundtrip(spec_10_11_13):
    r = verify_report(build(spec_10_11_13))
    buf = io.StringIO()
    write_kv(r.as_record(), buf)
    kv = read_kv(io.StringIO(buf.getvalue()))
    assert list(kv) == list(r.as_record())
    assert kv["bipartite"] == "true"
    assert report_from_kv(kv) == r


def test_csv_formatting():
    buf = io.StringIO()
    write_csv([{"a": 1, "b": 0.1, "c": None, "d": False}], buf)
    assert buf.getvalue() == "a,b,c,d\n1,0.1,,false\n"


def test_dot_limit(monkeypatch, spec_10_11_7):
    import quatcayley.export as ex

    monkeypatch.setattr(ex, "DOT_MAX_VERTICES", 100)
    with pytest.raises(ValueError):
        write_dot(build(spec_10_11_7), io.StringIO())
