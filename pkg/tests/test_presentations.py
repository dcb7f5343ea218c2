from itertools import product

import pytest

from speciallab.presentations import (
    GroupTable,
    PresentationError,
    make_mn,
    make_pi,
    parse_presentation,
    serialize_presentation,
)
from speciallab.rewriting import normal_form
from speciallab.words import ParamPattern

PI2_FILE = """\
monoid: Pi_2
alphabet: a b c
param: i >= 1
rule: (a b^i c)^2 -> 1
"""


def test_make_pi():
    assert make_pi(2).rules[0].lhs == ParamPattern.parse("(a b^i c)^2")
    assert make_pi(3).rules[0].lhs == ParamPattern.parse("(a b^i c)^3")
    assert make_pi(1).rules[0].lhs == ParamPattern.parse("a b^i c")
    assert all(r.rhs is None for r in make_pi(2).rules)
    with pytest.raises(ValueError):
        make_pi(0)


def test_make_mn_shapes():
    m1 = make_mn(1)
    assert m1.alphabet.display_names() == ("a", "b_1", "c")
    assert len(m1.rules) == 1 and m1.rules[0].rhs is None
    m2 = make_mn(2)
    assert m2.alphabet.display_names() == ("a", "b_1", "b_2", "b_3", "c")
    assert m2.metadata["relations"] == 6
    assert len(m2.rules) == 9
    assert serialize_presentation(m2).count("rule: ") == 9
    assert "rule: a b_1^t c a b_2^t c -> a b_3^t c" in serialize_presentation(m2)
    with pytest.raises(ValueError):
        make_mn(5)
    with pytest.raises(ValueError):
        make_mn(0)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_mn_relation_count(n):
    m = 2 ** n
    schema = make_mn(n)
    assert schema.metadata["relations"] == len([(i, j) for i in range(1, m) for j in range(i, m)])
    assert len(schema.rules) == (m - 1) ** 2
    assert schema.to_rewrite_system().is_length_reducing


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_group_table_laws(n):
    g = GroupTable(n)
    elems = range(g.order)
    for x, y, z in product(elems, repeat=3):
        assert g.product(g.product(x, y), z) == g.product(x, g.product(y, z))
    for x in elems:
        assert g.product(x, x) == 0
        assert g.product(x, 0) == x
        for y in elems:
            assert g.product(x, y) == g.product(y, x)


def test_m1_is_pi2_renamed():
    m1 = make_mn(1)
    pi2 = make_pi(2)
    text = serialize_presentation(m1).replace("b_1", "b").replace("^t", "^i").replace("t >=", "i >=")
    assert parse_presentation(text).rules == pi2.rules
    assert m1.rules == pi2.rules  # b_1 is stored as the letter b


@pytest.mark.parametrize("schema", [make_pi(1), make_pi(2), make_pi(5), make_mn(1), make_mn(2), make_mn(3), make_mn(4)],
                         ids=lambda s: s.name)
def test_round_trip(schema):
    assert parse_presentation(serialize_presentation(schema)) == schema


def test_parse_pi2_file():
    assert parse_presentation(PI2_FILE) == make_pi(2)
    assert serialize_presentation(make_pi(2)) == PI2_FILE


def test_parse_comments_and_params():
    text = "; a comment\nmonoid: X\nalphabet: a b c  ; trailing\nparam: t >= 2\nrule: a b^t c -> 1\n"
    schema = parse_presentation(text)
    assert schema.param_min == 2 and schema.param_name == "t"
    sys = schema.to_rewrite_system()
    assert normal_form(sys, "abc") == "abc"
    assert normal_form(sys, "abbc") == ""


def test_three_runs_parse():
    schema = parse_presentation("alphabet: a b c\nrule: a^i b^i c^i -> 1\n")
    assert schema.rules[0].lhs.param_count == 3


@pytest.mark.parametrize("text, fragment", [
    ("alphabet: a b\nrule: b b^i -> 1\n", "ambiguous boundary"),
    ("alphabet: a b c\nrule: ab -> abc\n", "not length-reducing"),
    ("alphabet: a b c\nrule: a^i b^j -> 1\n", "parameter"),
    ("alphabet: a b c\nrule: a b^i c\n", "->"),
    ("alphabet: a b c\nrule: a d -> 1\n", "unknown letter"),
    ("alphabet: a b c\nfoo: bar\n", "unknown field"),
    ("alphabet: a b c\nparam: k >= 1\n", "named i or t"),
    ("rule: ab -> 1\n", "alphabet"),
    ("alphabet: a b c\nrule: (a b -> 1\n", "unbalanced"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(PresentationError) as info:
        parse_presentation(text)
    assert fragment in str(info.value)


def test_parse_error_line_number():
    with pytest.raises(PresentationError) as info:
        parse_presentation("monoid: X\nalphabet: a b\n\nrule: b b^i -> 1\n")
    assert info.value.line == 4
