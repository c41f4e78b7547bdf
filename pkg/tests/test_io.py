import json

import pytest

from gisemi.core import classify
from gisemi.errors import NotAssociative, ParseError
from gisemi.workbench.io import format_sgp, parse_sgp, read_semigroup, read_yamada_spec
from gisemi.workbench.suites import FIXTURES, fixture_path

EXPECTED = {
    "rz2": "band: right normal, right regular; right generalized inverse",
    "lz2": "band: left normal, left regular; left generalized inverse",
    "sl2": "band: left normal, right normal, left regular, right regular; inverse",
    "y3": "band: right normal, right regular; right generalized inverse",
    "i2": "idempotents: left normal, right normal, left regular, right regular; inverse",
    "m_full2": "band: right normal, right regular; right generalized inverse",
}


@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_classification(name):
    S = read_semigroup(fixture_path(f"{name}.sgp"))
    assert classify(S).summary() == EXPECTED[name]


def test_text_roundtrip(i2):
    S = parse_sgp(format_sgp(i2, "comment"))
    assert S.table == i2.table and S.labels == i2.labels


def test_json_form():
    S = parse_sgp(json.dumps({"order": 2, "table": [[0, 1], [0, 1]], "labels": ["a", "b"]}))
    assert S.label(1) == "b"


def test_comments_and_blank_lines():
    S = parse_sgp("# header\n\n2  # order\n0 1\n0 1 # row\n")
    assert S.table == ((0, 1), (0, 1))


@pytest.mark.parametrize(
    "text, line",
    [("x\n", 1), ("2\n0 1\n0\n", 3), ("2\n0 a\n0 1\n", 2), ("2\n0 1\n", 2), ("2\n0 1\n0 1\nlabels: a\n", 4)],
)
def test_parse_errors(text, line, tmp_path):
    p = tmp_path / "bad.sgp"
    p.write_text(text)
    with pytest.raises(ParseError) as info:
        read_semigroup(p)
    assert info.value.line == line and info.value.path == p


def test_domain_error_passthrough():
    with pytest.raises(NotAssociative):
        parse_sgp("3\n1 2 0\n1 2 0\n1 2 0\n")


def test_yamada_spec():
    T, X, Y = read_yamada_spec(fixture_path("yamada5.json"))
    assert T.order == 2 and X.size == 3 and Y.labels == ("x0", "y0", "y1")
