from __future__ import annotations

import pytest
from hypothesis import given

from hampreserve.errors import ParseError
from hampreserve.graph import Graph
from hampreserve.io import format_edge_list, parse_graph, read_graph

from conftest import graphs


def test_edge_list_and_dimacs_agree():
    a = parse_graph("# comment\n4 3\n0 1\n1 2\n2 3\n")
    b = parse_graph("c path\np edge 4 3\ne 1 2\ne 2 3\ne 3 4\n")
    assert a == b == Graph.path(4)


@pytest.mark.parametrize(
    "text,line",
    [
        ("3 2\n0 1\n", 2),
        ("3 1\n0 x\n", 2),
        ("3 1\n0 3\n", 2),
        ("3 1\n1 1\n", 2),
        ("3 2\n0 1\n1 0\n", 3),
        ("p edge 3 1\ne 0 1\n", 2),
        ("e 1 2\n", 1),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        parse_graph(text)
    assert info.value.line == line


def test_missing_file(tmp_path):
    with pytest.raises(ParseError):
        read_graph(tmp_path / "nope.txt")


@given(graphs(max_n=10))
def test_roundtrip(G):
    assert parse_graph(format_edge_list(G, ["x=1"])) == G
