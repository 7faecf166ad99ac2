import pytest
from hypothesis import given, strategies as st

from bisfptas import build, exact_count, max_degrees
from bisfptas.errors import InvalidParams, ParseError
from bisfptas.io import (digest, gen_complete, gen_cycle, gen_path, gen_random, parse, read_graph,
                         serialize, write_graph)

from conftest import graphs, naive_count


def test_parse_k11():
    assert parse("p bis 1 1 1\ne 0 0") == build(1, 1, [(0, 0)])


def test_parse_edgeless():
    g = parse("p bis 2 2 0\n")
    assert (g.n, g.m, g.edge_count) == (2, 2, 0)


def test_parse_comments_and_blank_lines():
    g = parse("c hello\n\np bis 2 1 2\nc mid\ne 1 0\ne 0 0\n")
    assert g.left_adj == ((0,), (0,))


@pytest.mark.parametrize("text, line", [
    ("p bis 2 2 1\ne 5 0", 2),
    ("p bis 2 2 1\ne 0 x", 2),
    ("e 0 0\np bis 1 1 1", 1),
    ("p bis 1 1\n", 1),
    ("p cnf 1 1 0\n", 1),
    ("p bis 1 1 0\nq 0 0", 2),
    ("p bis 1 1 0\np bis 1 1 0", 2),
    ("p bis 2 2 1\ne -1 0", 2),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.line == line


def test_parse_global_errors():
    with pytest.raises(ParseError):
        parse("c nothing here\n")
    with pytest.raises(ParseError):
        parse("p bis 2 2 2\ne 0 0\n")
    with pytest.raises(ParseError):
        parse("p bis 2 2 2\ne 0 0\ne 0 0\n")


def test_serialize_sorted():
    g = build(2, 2, [(1, 1), (0, 1), (1, 0)])
    assert serialize(g, ["x"]) == "c x\np bis 2 2 3\ne 0 1\ne 1 0\ne 1 1\n"


@given(graphs(max_n=8, max_m=8))
def test_roundtrip(g):
    assert parse(serialize(g)) == g


def test_file_roundtrip(tmp_path):
    g = gen_random(20, 15, 4, "heavy", seed=3)
    path = tmp_path / "g.bis"
    write_graph(g, path, ["seed 3"])
    assert read_graph(path) == g
    assert digest(read_graph(path)) == digest(g)


def test_generators_count():
    assert exact_count(gen_complete(3, 3)) == 15
    assert exact_count(gen_path(6)) == 21
    assert exact_count(gen_cycle(6)) == 18
    assert naive_count(gen_path(7)) == exact_count(gen_path(7)) == 34
    assert gen_path(0) == build(0, 0, [])
    assert gen_path(1) == build(1, 0, [])


@pytest.mark.parametrize("length", [3, 5, 2, 0])
def test_bad_cycles(length):
    with pytest.raises(InvalidParams):
        gen_cycle(length)


def test_random_seed_determinism():
    a = gen_random(10, 10, 5, "bounded", k=10, seed=42)
    b = gen_random(10, 10, 5, "bounded", k=10, seed=42)
    assert a == b
    assert gen_random(10, 10, 5, "bounded", k=10, seed=43) != a


def test_random_bounded_respects_caps():
    g = gen_random(200, 50, 5, "bounded", k=4, seed=1)
    du, dv = max_degrees(g)
    assert du <= 5 and dv <= 4


def test_random_heavy_has_hub():
    g = gen_random(100, 3, 5, "heavy", seed=7)
    assert max_degrees(g)[1] >= 20
    g = gen_random(500, 500, 5, "heavy", seed=2)
    du, dv = max_degrees(g)
    assert du <= 5 and dv >= 100


@pytest.mark.parametrize("kwargs", [dict(delta_u_max=6), dict(style="dense"), dict(k=-1)])
def test_random_invalid(kwargs):
    params = dict(n=5, m=5, delta_u_max=5, style="bounded", seed=0)
    params.update(kwargs)
    with pytest.raises(InvalidParams):
        gen_random(**params)


@given(st.integers(0, 30), st.integers(0, 30), st.integers(0, 5),
       st.sampled_from(["bounded", "heavy"]), st.integers(0, 10**6))
def test_generated_graphs_roundtrip(n, m, delta, style, seed):
    g = gen_random(n, m, delta, style, seed=seed)
    assert max_degrees(g)[0] <= delta
    assert parse(serialize(g)) == g
