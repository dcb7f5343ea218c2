"""Acceptance criteria, one test per criterion.

The conftest hook prints a PASS/FAIL line per test at the end of the run.
"""

import io
import random
import time
from itertools import product

import pytest

from speciallab import cli
from speciallab.language import (
    WpQuery,
    export_lhs_grammar,
    enumerate_wp_slice,
    grammar_member,
    wp_member,
)
from speciallab.presentations import make_mn, make_pi
from speciallab.rewriting import check_local_confluence, critical_pairs, normal_form, reduction_trace
from speciallab.special import (
    classify_units,
    compute_lambda,
    decode_over_lambda,
    is_invertible,
    minimal_factorization,
    units_presentation,
)
from speciallab.words import ParamPattern, find_matches, instantiate


def run_kv(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(["--format", "kv", *argv], out, err)
    fields = {}
    for line in out.getvalue().splitlines():
        key, _, value = line.partition(": ")
        fields.setdefault(key, []).append(value)
    return code, fields, err.getvalue()


def block(i):
    return "a" + "b" * i + "c"


def random_word(rng, max_len, alphabet="abc"):
    return "".join(rng.choice(alphabet) for _ in range(rng.randint(0, max_len)))


def redex_rich_word(rng, max_len):
    # splice squares (a b^i c)^2 and single blocks into random letters so
    # reductions actually happen
    parts = []
    while sum(map(len, parts)) < max_len:
        r = rng.random()
        if r < 0.4:
            parts.append(block(rng.randint(1, 2)) * 2)
        elif r < 0.7:
            parts.append(block(rng.randint(1, 3)))
        else:
            parts.append(rng.choice("abc"))
    w = "".join(parts)
    return w[: rng.randint(0, max_len)]


def test_criterion_1_t2_completeness(t2):
    report = check_local_confluence(t2, i_bound=8)
    assert report.pairs_examined > 0
    assert report.unjoinable == []
    assert report.mixed_parameter_pairs == 0
    pairs = critical_pairs(t2, i_bound=8)
    assert len(pairs) == report.pairs_examined
    proper = [cp for cp in pairs if cp.overlap_kind == "proper-overlap"]
    assert proper
    for cp in proper:
        i = cp.params[0]
        assert cp.params == (i, i)
        assert cp.source == block(i) * 3
    assert sorted(cp.params[0] for cp in proper) == list(range(1, 9))

    code, kv, _ = run_kv("--family", "pi", "--n", "2", "--i-bound", "8", "check")
    assert code == 0
    assert kv["unjoinable"] == ["0"]
    assert kv["mixed_parameter_pairs"] == ["0"]
    assert kv["shape"] == ["proper-overlap rules 0,0: (a b^i c)^3 (i=1..8)"]
    assert kv["verdict"] == ["locally-confluent-up-to-bound"]


def word_with_square(rng, max_len):
    square = block(rng.randint(1, (max_len - 4) // 2)) * 2
    room = max_len - len(square)
    left = random_word(rng, room)
    return left + square + random_word(rng, room - len(left))


def test_criterion_2_strategy_independence(t2):
    rng = random.Random(20261016)
    reduced = 0
    for k in range(10_000):
        w = random_word(rng, 14) if k % 2 else word_with_square(rng, 14)
        assert len(w) <= 14
        leftmost = reduction_trace(t2, w)
        randomised = reduction_trace(t2, w, choose=rng.choice)
        final = leftmost[-1][0] if leftmost else w
        assert (randomised[-1][0] if randomised else w) == final == normal_form(t2, w, rng=rng)
        assert len(leftmost) <= len(w) // 6
        assert len(randomised) <= len(w) // 6
        reduced += bool(leftmost)
    # the sample must exercise reductions, not only irreducible words
    assert reduced >= 5000


@pytest.mark.parametrize("i", range(1, 6))
def test_criterion_3_factor_square(t2, i):
    w = block(i) * 2
    assert minimal_factorization(t2, w, 16).factors == (block(i), block(i))
    code, kv, _ = run_kv("--family", "pi", "--n", "2", "factor", w)
    assert code == 0
    assert kv["factors"] == [f"{block(i)} | {block(i)}"]
    assert kv["count"] == ["2"]


def test_criterion_3_factor_mixed(t2):
    assert minimal_factorization(t2, "abcabbc", 16).factors == ("abc", "abbc")
    code, kv, _ = run_kv("--family", "pi", "--n", "2", "factor", "abcabbc")
    assert code == 0
    assert kv["factors"] == ["abc | abbc"]


def test_criterion_4_lambda_and_units(t2, t3):
    lam = compute_lambda(t2)
    assert lam.patterns == (ParamPattern.parse("a b^i c"),)
    up = units_presentation(t2, lam)
    assert up.render_relators() == ["x_i^2 = 1"]
    cls = classify_units(up)
    assert cls.finitely_generated is False
    assert cls.description == "free product of C2, one per generator; not finitely generated"

    code, kv, _ = run_kv("--family", "pi", "--n", "2", "lambda")
    assert code == 0 and kv["pattern"] == ["a b^i c"]
    code, kv, _ = run_kv("--family", "pi", "--n", "2", "units")
    assert code == 0
    assert kv["relator"] == ["x_i^2 = 1"]
    assert kv["finitely_generated"] == ["false"]
    code, kv, _ = run_kv("--family", "pi", "--n", "2", "classify")
    assert "free product of C2" in kv["classification"][0]
    assert "not finitely generated" in kv["classification"][0]

    up3 = units_presentation(t3, compute_lambda(t3, i_bound=4))
    assert up3.render_relators() == ["x_i^3 = 1"]
    code, kv, _ = run_kv("--family", "pi", "--n", "3", "--i-bound", "4", "units")
    assert code == 0 and kv["relator"] == ["x_i^3 = 1"]


def test_criterion_5_invertible_iff_decodable(t2):
    rng = random.Random(5)
    lam = compute_lambda(t2)
    words = set()
    while len(words) < 1200:
        if rng.random() < 0.5:
            w = "".join(block(rng.randint(1, 4)) for _ in range(rng.randint(0, 3)))
            if rng.random() < 0.5 and w:
                # perturb one letter so non-units near Λ* are covered too
                k = rng.randrange(len(w))
                w = w[:k] + rng.choice("abc") + w[k + 1:]
        else:
            w = random_word(rng, 16)
        if len(w) <= 16 and normal_form(t2, w) == w:
            words.add(w)
    decodable = 0
    for w in sorted(words):
        found = is_invertible(t2, w, 16) is not None
        decoded = decode_over_lambda(lam, w) is not None
        assert found == decoded, w
        decodable += decoded
    assert len(words) >= 1000
    assert decodable > 40


def test_criterion_6_wp_slices(t2, t3):
    r2 = enumerate_wp_slice(t2, 2, 5)
    assert r2.members == {(i, i) for i in range(1, 6)}
    assert r2.agreement

    r3 = enumerate_wp_slice(t3, 3, 4)
    assert r3.members == {(i, i, i) for i in range(1, 5)}
    assert r3.agreement

    t4 = make_pi(4).to_rewrite_system()
    start = time.perf_counter()
    r4 = enumerate_wp_slice(t4, 4, 4)
    elapsed = time.perf_counter() - start
    assert r4.members == {(i,) * 4 for i in range(1, 5)}
    assert r4.agreement
    assert elapsed <= 10.0

    code, kv, _ = run_kv("--family", "pi", "--n", "2", "--e-bound", "5", "slice", "2")
    assert code == 0 and kv["members"] == ["(1,1) (2,2) (3,3) (4,4) (5,5)"]
    start = time.perf_counter()
    code, kv, _ = run_kv("--family", "pi", "--n", "4", "--e-bound", "4", "slice", "4")
    assert time.perf_counter() - start <= 10.0
    assert code == 0 and kv["members"] == ["(1,1,1,1) (2,2,2,2) (3,3,3,3) (4,4,4,4)"]


def test_criterion_7_grammar_cross_check():
    p = ParamPattern.parse("(a b^i c)^2")
    g = export_lhs_grammar(p)
    members = []
    for n in range(13):
        for letters in product("abc", repeat=n):
            w = "".join(letters)
            by_cyk = grammar_member(g, w)
            by_matcher = any(m.start == 0 and m.length == n for m in find_matches(p, w))
            assert by_cyk == by_matcher, w
            if by_cyk:
                members.append(w)
    # exhaustive enumeration: (a b^i c)^2 has length 4 + 2i, so i = 1..4 fit
    # in length 12, not only i = 1, 2
    assert members == [instantiate(p, i) for i in range(1, 5)]
    assert members[:2] == ["abcabc", "abbcabbc"]

    code, _, err = run_kv("grammar", "--pattern", "(a b^i c)^3")
    assert code == 2
    assert "not context-free" in err


def test_criterion_8_mn_evidence(m2):
    report = check_local_confluence(m2, i_bound=6)
    assert report.pairs_examined > 0
    assert report.unjoinable == []
    assert report.ok

    code, kv, _ = run_kv("--family", "mn", "--n", "2", "--i-bound", "6", "check")
    assert code == 0 and kv["unjoinable"] == ["0"]
    code, kv, _ = run_kv("--family", "mn", "--n", "2", "--i-bound", "6", "units")
    assert code == 0
    assert kv["classification"] == ["free product of copies of C2×C2, one per value of t; not finitely generated"]

    cls = classify_units(units_presentation(m2, compute_lambda(m2, i_bound=6)))
    assert cls.finitely_generated is False
    assert "C2×C2" in cls.description


def test_criterion_9_wp_laws(t2):
    rng = random.Random(9)

    def sample():
        return redex_rich_word(rng, 12) if rng.random() < 0.5 else random_word(rng, 10)

    for _ in range(1000):
        u, v = sample(), sample()
        assert wp_member(t2, WpQuery.of(u, u))
        assert wp_member(t2, WpQuery.of(u, v)) == wp_member(t2, WpQuery.of(v, u))

    equal_pairs = 0
    for _ in range(200):
        # an equal pair: u and u with a block square inserted somewhere
        u = sample()
        k = rng.randint(0, len(u))
        v = u[:k] + block(rng.randint(1, 3)) * 2 + u[k:]
        x, y = sample(), sample()
        assert wp_member(t2, WpQuery.of(u, v))
        assert wp_member(t2, WpQuery.of(x + u + y, x + v + y))
        equal_pairs += 1
    assert equal_pairs == 200
