import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from speciallab.presentations import make_pi
from speciallab.rewriting import (
    IncompleteSystemError,
    RewriteSystem,
    Rule,
    check_local_confluence,
    critical_pairs,
    equal_in_monoid,
    incremental_normal_form,
    normal_form,
    reduce_once,
    reduction_trace,
)
from speciallab.words import Alphabet, ParamPattern, instantiate

from oracles import all_words, brute_normal_forms


def constant_system(*rules, letters="abc"):
    return RewriteSystem(
        Alphabet.of(letters),
        tuple(Rule(ParamPattern.constant(l), ParamPattern.constant(r) if r else None) for l, r in rules),
    )


def test_flags(t2, m2):
    assert t2.is_special and t2.is_monadic and t2.is_length_reducing
    assert not m2.is_special and not m2.is_monadic and m2.is_length_reducing
    grow = Rule(ParamPattern.parse("b^i c"), ParamPattern.parse("a b^i c c"))
    assert not grow.is_length_reducing


def test_reduce_once(t2):
    assert reduce_once(t2, "abcabc")[0] == ""
    assert reduce_once(t2, "abcabc")[1].i == 1
    assert reduce_once(t2, "ababc") is None
    assert reduce_once(t2, "abcabcabc")[0] == "abc"
    assert reduce_once(t2, "abcabcabc")[1].start == 0


def test_normal_form_examples(t2):
    assert normal_form(t2, "") == ""
    assert normal_form(t2, "abbcabbcabc") == "abc"
    assert normal_form(t2, "abcabbc") == "abcabbc"


@pytest.mark.parametrize("w", ["abbcabbcabc", "abcabbc", "aabcabcbcabc", "abcabbcabbcabc"])
def test_normal_form_is_the_unique_brute_force_leaf(t2, w):
    assert brute_normal_forms(t2, w) == {normal_form(t2, w)}


def test_critical_pairs_t2():
    t2 = make_pi(2).to_rewrite_system()
    pairs = critical_pairs(t2, 1)
    assert any(cp.source == "abcabcabc" and cp.left_result == cp.right_result == "abc" for cp in pairs)
    pairs = critical_pairs(t2, 2)
    assert any(cp.source == "abbcabbcabbc" and cp.left_result == cp.right_result == "abbc" for cp in pairs)
    assert critical_pairs(constant_system(("ab", "")), 1) == []


def test_critical_pairs_t2_shape_up_to_eight(t2):
    pairs = critical_pairs(t2, 8)
    assert len(pairs) == 8
    for cp in pairs:
        i = cp.params[0]
        assert cp.params == (i, i)
        assert cp.overlap_kind == "proper-overlap"
        assert cp.source == ("a" + "b" * i + "c") * 3


def test_critical_pairs_against_definition():
    # every pair's source must rewrite in one step to both results
    from oracles import brute_one_step

    sys = constant_system(("aba", ""), ("ab", ""), ("bab", "a"))
    for cp in critical_pairs(sys, 1):
        steps = brute_one_step(sys, cp.source)
        assert cp.left_result in steps and cp.right_result in steps


def test_confluence_t2_and_m2(t2, m2):
    rep = check_local_confluence(t2, 8)
    assert rep.verdict == "locally-confluent-up-to-bound"
    assert rep.unjoinable == []
    assert check_local_confluence(m2, 6).ok


def test_refuted_system():
    sys = constant_system(("aba", ""), ("ab", ""))
    rep = check_local_confluence(sys, 1)
    assert rep.verdict == "refuted"
    # aba -> 1 by the first rule, aba -> a by the second; both irreducible
    cp = next(cp for cp in rep.unjoinable if cp.source == "aba")
    assert {cp.left_result, cp.right_result} == {"", "a"}
    assert brute_normal_forms(sys, "aba") == {"", "a"}


def test_equal_in_monoid(t2):
    assert equal_in_monoid(t2, "abcabc", "")
    assert not equal_in_monoid(t2, "abc", "abbc")
    assert equal_in_monoid(t2, "abbc", "abbc")


def test_equality_refused_without_completeness():
    sys = constant_system(("aba", ""), ("ab", ""))
    with pytest.raises(IncompleteSystemError) as info:
        equal_in_monoid(sys, "a", "b")
    assert info.value.stage == "local-confluence"
    grow = RewriteSystem(Alphabet.of("ab"), (Rule(ParamPattern.constant("a"), ParamPattern.constant("bb")),))
    with pytest.raises(IncompleteSystemError) as info:
        equal_in_monoid(grow, "a", "b")
    assert info.value.stage == "termination"
    with pytest.raises(IncompleteSystemError):
        normal_form(grow, "a")


def test_incremental_normal_form(t2, m2):
    assert incremental_normal_form(t2, "abcabcabc") == "abc"
    assert incremental_normal_form(t2, "abbcabbc") == ""
    assert incremental_normal_form(t2, "") == ""
    with pytest.raises(ValueError):
        incremental_normal_form(m2, "abc")


def test_incremental_normal_form_with_letter_rhs():
    sys = constant_system(("ab", "c"), ("cc", ""), letters="abc")
    for w in all_words("abc", 7):
        assert incremental_normal_form(sys, w) == normal_form(sys, w)


@settings(max_examples=300, deadline=None)
@given(st.text("abc", max_size=20))
def test_incremental_agrees_with_normal_form(w):
    t2 = make_pi(2).to_rewrite_system()
    assert incremental_normal_form(t2, w) == normal_form(t2, w)


@settings(max_examples=300, deadline=None)
@given(st.lists(st.sampled_from(["abc", "abbc", "abbbc", "a", "b", "c"]), max_size=8))
def test_normal_form_idempotent_and_irreducible(parts):
    t2 = make_pi(2).to_rewrite_system()
    w = "".join(parts)
    nf = normal_form(t2, w)
    assert normal_form(t2, nf) == nf
    assert reduce_once(t2, nf) is None


def test_special_steps_strictly_shrink(t2):
    rng = random.Random(5)
    for _ in range(200):
        w = "".join(rng.choice(["abc", "abbc", "a", "c"]) for _ in range(6))
        prev = len(w)
        for word, _ in reduction_trace(t2, w):
            assert len(word) < prev
            prev = len(word)


def test_random_strategy_matches_leftmost_m2(m2):
    rng = random.Random(11)
    blocks = ["a" + x * t + "c" for x in "bde" for t in (1, 2)]
    for _ in range(300):
        w = "".join(rng.choice(blocks) for _ in range(rng.randint(0, 6)))
        assert normal_form(m2, w, rng) == normal_form(m2, w)
