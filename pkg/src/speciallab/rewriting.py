"""
Rewriting with schema rules ``lhs(i) -> rhs(i)``, critical pairs and confluence.

A rule's left side is a :class:`ParamPattern`; its right side is a pattern
sharing the same parameter, or the empty word.  Every rule must be
length-reducing for all admissible ``i``, which makes the system terminating.
Local confluence is checked by instantiating every rule for ``i`` up to a
bound and resolving all superpositions of the resulting left-hand sides.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional, Sequence

from .words import (
    Alphabet,
    ParamPattern,
    PatternError,
    Word,
    anti_unify,
    find_matches,
    format_pattern,
    instantiate,
    match_at,
)

__all__ = [
    "Rule",
    "RuleInstance",
    "RewriteSystem",
    "CriticalPair",
    "OverlapShape",
    "ConfluenceReport",
    "IncompleteSystemError",
    "reduce_once",
    "redexes",
    "normal_form",
    "reduction_trace",
    "critical_pairs",
    "check_local_confluence",
    "ensure_complete",
    "equal_in_monoid",
    "incremental_normal_form",
    "DEFAULT_I_BOUND",
    "TRACE_CAP",
]

DEFAULT_I_BOUND = 8
TRACE_CAP = 10_000


class IncompleteSystemError(ValueError):
    """Completeness could not be established; ``stage`` names what failed."""

    def __init__(self, stage: str, detail: str):
        super().__init__(f"{stage}: {detail}")
        self.stage = stage
        self.detail = detail


@dataclass(frozen=True)
class Rule:
    lhs: ParamPattern
    rhs: Optional[ParamPattern] = None  # None is the empty word

    def __post_init__(self):
        if self.rhs is not None:
            if self.rhs.param_count and self.lhs.param_count == 0:
                raise PatternError("right side uses the parameter but the left side does not")

    @property
    def param_min(self) -> int:
        return self.lhs.param_min

    @property
    def is_special(self) -> bool:
        return self.rhs is None

    @property
    def is_monadic(self) -> bool:
        return self.rhs is None or (self.rhs.is_constant and self.rhs.const_length == 1)

    @property
    def is_length_reducing(self) -> bool:
        # both lengths are linear in i, so checking the slope and the first value suffices
        if self.rhs is None:
            return self.lhs.length(self.param_min) > 0
        if self.rhs.param_count > self.lhs.param_count:
            return False
        return self.lhs.length(self.param_min) > self.rhs.length(self.param_min)

    def lhs_at(self, i: int) -> Word:
        return instantiate(self.lhs, i)

    def rhs_at(self, i: int) -> Word:
        if self.rhs is None:
            return ""
        return instantiate(self.rhs, max(i, self.rhs.param_min)) if self.rhs.param_count else self.rhs.segments[0].word

    def values(self, i_bound: int) -> range:
        """Admissible parameter values up to ``i_bound`` (one value for constant rules)."""
        if self.lhs.is_constant:
            return range(self.param_min, self.param_min + 1)
        return range(self.param_min, i_bound + 1)


@dataclass(frozen=True)
class RuleInstance:
    rule: int
    i: int
    start: int
    lhs: Word
    rhs: Word

    def apply(self, w: Word) -> Word:
        return w[: self.start] + self.rhs + w[self.start + len(self.lhs):]


@dataclass(frozen=True)
class RewriteSystem:
    alphabet: Alphabet
    rules: tuple[Rule, ...]
    param_name: str = "i"

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        for k, rule in enumerate(self.rules):
            for p in (rule.lhs, rule.rhs):
                if p is None:
                    continue
                bad = p.letters() - set(self.alphabet.letters)
                if bad:
                    raise PatternError(f"rule {k} uses letters outside the alphabet: {sorted(bad)}")

    @property
    def is_special(self) -> bool:
        return all(r.is_special for r in self.rules)

    @property
    def is_monadic(self) -> bool:
        return all(r.is_monadic and r.is_length_reducing for r in self.rules)

    @property
    def is_length_reducing(self) -> bool:
        return all(r.is_length_reducing for r in self.rules)

    def max_lhs_length(self, i_bound: int) -> int:
        return max((r.lhs.length(max(r.values(i_bound))) for r in self.rules), default=0)

    def render_word(self, w: Word) -> str:
        return self.alphabet.render(w)

    def render_pattern(self, p: Optional[ParamPattern]) -> str:
        return "1" if p is None else format_pattern(p, self.alphabet, self.param_name)

    def render_rule(self, k: int) -> str:
        r = self.rules[k]
        return f"{self.render_pattern(r.lhs)} -> {self.render_pattern(r.rhs)}"


def redexes(sys: RewriteSystem, w: Word) -> list[RuleInstance]:
    """Every rule instance occurring in ``w``, ordered by (start, rule, i)."""
    out = []
    for k, rule in enumerate(sys.rules):
        for m in find_matches(rule.lhs, w):
            out.append(RuleInstance(k, m.i, m.start, w[m.start:m.start + m.length], rule.rhs_at(m.i)))
    out.sort(key=lambda r: (r.start, r.rule, r.i))
    return out


def reduce_once(sys: RewriteSystem, w: Word) -> Optional[tuple[Word, RuleInstance]]:
    """Apply the leftmost redex (ties: lower rule index, then smaller i)."""
    for start in range(len(w)):
        for k, rule in enumerate(sys.rules):
            m = match_at(rule.lhs, w, start)
            if m is not None:
                inst = RuleInstance(k, m.i, start, w[start:start + m.length], rule.rhs_at(m.i))
                return inst.apply(w), inst
    return None


def _require_terminating(sys: RewriteSystem):
    if not sys.is_length_reducing:
        bad = [k for k, r in enumerate(sys.rules) if not r.is_length_reducing]
        raise IncompleteSystemError("termination", f"rules {bad} are not length-reducing")


def reduction_trace(sys: RewriteSystem, w: Word,
                    choose: Optional[Callable[[list[RuleInstance]], RuleInstance]] = None,
                    cap: int = TRACE_CAP) -> list[tuple[Word, RuleInstance]]:
    """Reduce ``w`` to an irreducible word, recording each step.

    With ``choose`` given, each step applies ``choose(redexes(sys, w))``
    instead of the leftmost redex.
    """
    _require_terminating(sys)
    trace = []
    while True:
        if choose is None:
            step = reduce_once(sys, w)
            if step is None:
                return trace
            w, inst = step
        else:
            options = redexes(sys, w)
            if not options:
                return trace
            inst = choose(options)
            w = inst.apply(w)
        trace.append((w, inst))
        if len(trace) > cap:
            raise RuntimeError(f"reduction exceeded {cap} steps on a length-reducing system")


def normal_form(sys: RewriteSystem, w: Word, rng: Optional[random.Random] = None) -> Word:
    """Irreducible descendant of ``w``; leftmost strategy unless ``rng`` is given,
    in which case redexes are picked at random."""
    choose = None if rng is None else rng.choice
    trace = reduction_trace(sys, w, choose)
    return trace[-1][0] if trace else w


def _suffix_instance(sys: RewriteSystem, s: Word) -> Optional[tuple[int, int, int]]:
    n = len(s)
    for k, rule in enumerate(sys.rules):
        lhs = rule.lhs
        if instantiate(lhs, lhs.param_min)[-1] != s[-1]:
            continue
        for i in rule.values(n):
            size = lhs.length(i)
            if size > n:
                break
            if s.endswith(instantiate(lhs, i)):
                return k, i, size
    return None


def incremental_normal_form(sys: RewriteSystem, w: Word) -> Word:
    """Left-to-right normal form with an irreducible stack.

    Each letter is pushed and any left-hand side that now ends the stack is
    replaced by its right side.  Only defined for monadic systems, where the
    right side is empty or one letter.
    """
    if not sys.is_monadic:
        raise ValueError("incremental_normal_form needs a monadic length-reducing system")
    stack: list[str] = []
    pending = list(reversed(w))
    while pending:
        stack.append(pending.pop())
        hit = _suffix_instance(sys, "".join(stack))
        if hit is not None:
            k, i, size = hit
            del stack[len(stack) - size:]
            rhs = sys.rules[k].rhs_at(i)
            if rhs:
                pending.append(rhs)
    return "".join(stack)


# -- critical pairs ------------------------------------------------------------


@dataclass(frozen=True)
class CriticalPair:
    source: Word
    left_result: Word
    right_result: Word
    overlap_kind: str  # "proper-overlap" or "inclusion"
    rules: tuple[int, int]
    params: tuple[int, int]
    offset: int  # overlap length, or inclusion position
    ordinal: int = 0


@dataclass(frozen=True)
class OverlapShape:
    rules: tuple[int, int]
    overlap_kind: str
    same_parameter: bool
    pattern: Optional[ParamPattern]
    sources: tuple[Word, ...]
    params: tuple[tuple[int, int], ...]


@dataclass
class ConfluenceReport:
    i_bound: int
    pairs_examined: int
    unjoinable: list[CriticalPair]
    shapes: list[OverlapShape] = field(default_factory=list)
    mixed_parameter_pairs: int = 0

    @property
    def verdict(self) -> str:
        return "refuted" if self.unjoinable else "locally-confluent-up-to-bound"

    @property
    def ok(self) -> bool:
        return not self.unjoinable


def _instances(sys: RewriteSystem, i_bound: int):
    for k, rule in enumerate(sys.rules):
        for i in rule.values(i_bound):
            yield k, i, rule.lhs_at(i), rule.rhs_at(i)


def critical_pairs(sys: RewriteSystem, i_bound: int = DEFAULT_I_BOUND) -> list[CriticalPair]:
    """All superpositions of left-hand sides instantiated with ``i <= i_bound``.

    Both proper overlaps (a suffix of one left side is a prefix of another)
    and inclusions (one left side is a factor of another) are produced,
    including those between different parameter values.
    """
    if sys.rules and i_bound < max(r.param_min for r in sys.rules):
        raise ValueError("i_bound is below a rule's minimum parameter")
    inst = list(_instances(sys, i_bound))
    seen = set()
    out = []

    def add(cp: CriticalPair):
        key = (cp.source, frozenset((cp.left_result, cp.right_result)))
        if key not in seen:
            seen.add(key)
            out.append(cp)

    for k1, i1, l1, r1 in inst:
        for k2, i2, l2, r2 in inst:
            ordinal = 0
            for size in range(1, min(len(l1), len(l2))):
                if l1.endswith(l2[:size]):
                    add(CriticalPair(l1 + l2[size:], r1 + l2[size:], l1[: len(l1) - size] + r2,
                                     "proper-overlap", (k1, k2), (i1, i2), size, ordinal))
                    ordinal += 1
            if (k1, i1) == (k2, i2) or len(l2) > len(l1):
                continue
            pos = l1.find(l2)
            ordinal = 0
            while pos != -1:
                add(CriticalPair(l1, r1, l1[:pos] + r2 + l1[pos + len(l2):],
                                 "inclusion", (k1, k2), (i1, i2), pos, ordinal))
                ordinal += 1
                pos = l1.find(l2, pos + 1)
    return out


def _shapes(pairs: Sequence[CriticalPair]) -> list[OverlapShape]:
    groups = defaultdict(list)
    for cp in pairs:
        delta = cp.params[1] - cp.params[0]
        groups[(cp.rules, cp.overlap_kind, delta, cp.ordinal)].append(cp)
    out = []
    for (rules, kind, delta, _), members in groups.items():
        pattern = None
        if delta == 0:
            family = {cp.params[0]: cp.source for cp in members}
            pattern = anti_unify(family)
        out.append(OverlapShape(rules, kind, delta == 0, pattern,
                                tuple(cp.source for cp in members),
                                tuple(cp.params for cp in members)))
    return out


def check_local_confluence(sys: RewriteSystem, i_bound: int = DEFAULT_I_BOUND) -> ConfluenceReport:
    _require_terminating(sys)
    pairs = critical_pairs(sys, i_bound)
    cache: dict[Word, Word] = {}

    def nf(w):
        if w not in cache:
            cache[w] = normal_form(sys, w)
        return cache[w]

    bad = [cp for cp in pairs if nf(cp.left_result) != nf(cp.right_result)]
    mixed = sum(cp.params[0] != cp.params[1] for cp in pairs)
    return ConfluenceReport(i_bound, len(pairs), bad, _shapes(pairs), mixed)


@lru_cache(maxsize=64)
def ensure_complete(sys: RewriteSystem, i_bound: int = DEFAULT_I_BOUND) -> ConfluenceReport:
    """Run the completeness gate once per (system, bound); raise if it fails."""
    _require_terminating(sys)
    report = check_local_confluence(sys, i_bound)
    if not report.ok:
        cp = report.unjoinable[0]
        raise IncompleteSystemError(
            "local-confluence",
            f"{len(report.unjoinable)} unjoinable critical pairs up to i={i_bound}, "
            f"e.g. {sys.render_word(cp.source)} -> {sys.render_word(cp.left_result)} "
            f"| {sys.render_word(cp.right_result)}",
        )
    return report


def equal_in_monoid(sys: RewriteSystem, u: Word, v: Word, i_bound: int = DEFAULT_I_BOUND) -> bool:
    ensure_complete(sys, i_bound)
    return normal_form(sys, u) == normal_form(sys, v)
