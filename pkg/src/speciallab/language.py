"""
The word problem {u # v^rev : u = v in M} as a formal language.

Membership is decided by comparing normal forms.  Grammars for the
left-hand-side languages of schema rules are exported in a line format and
tested with CYK over Chomsky normal form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Optional

from .presentations import make_pi
from .rewriting import (
    DEFAULT_I_BOUND,
    RewriteSystem,
    ensure_complete,
    equal_in_monoid,
    incremental_normal_form,
    normal_form,
)
from .words import SEPARATOR, Alphabet, Const, Param, ParamPattern, PatternError, Word, parse_word

__all__ = [
    "WpQuery",
    "Grammar",
    "GrammarError",
    "SliceReport",
    "Verdict",
    "wp_member",
    "export_lhs_grammar",
    "format_grammar",
    "parse_grammar",
    "grammar_member",
    "slice_word",
    "enumerate_wp_slice",
    "cf_verdict",
]


class GrammarError(ValueError):
    pass


@dataclass(frozen=True)
class WpQuery:
    raw: str
    u: Word
    v_rev: Word

    @classmethod
    def parse(cls, raw: str, alphabet: Optional[Alphabet] = None) -> "WpQuery":
        if raw.count(SEPARATOR) != 1:
            raise PatternError(f"a word-problem query needs exactly one {SEPARATOR!r}: {raw!r}")
        left, right = raw.split(SEPARATOR)
        u = parse_word(left, alphabet) if left.strip() else ""
        v_rev = parse_word(right, alphabet) if right.strip() else ""
        if alphabet is not None:
            alphabet.check(u)
            alphabet.check(v_rev)
        return cls(raw, u, v_rev)

    @classmethod
    def of(cls, u: Word, v: Word) -> "WpQuery":
        return cls(f"{u}{SEPARATOR}{v[::-1]}", u, v[::-1])

    @property
    def v(self) -> Word:
        return self.v_rev[::-1]


def wp_member(sys: RewriteSystem, q, i_bound: int = DEFAULT_I_BOUND) -> bool:
    if isinstance(q, str):
        q = WpQuery.parse(q, sys.alphabet)
    sys.alphabet.check(q.u)
    sys.alphabet.check(q.v_rev)
    return equal_in_monoid(sys, q.u, q.v, i_bound)


# -- grammars -------------------------------------------------------------------


@dataclass(frozen=True)
class Grammar:
    start: str
    productions: tuple[tuple[str, tuple[str, ...]], ...]
    terminals: frozenset = field(default_factory=frozenset)

    @property
    def nonterminals(self) -> list[str]:
        seen = [self.start]
        for lhs, rhs in self.productions:
            for x in (lhs, *rhs):
                if x not in self.terminals and x not in seen:
                    seen.append(x)
        return seen

    def __post_init__(self):
        heads = {lhs for lhs, _ in self.productions}
        if self.start not in heads:
            raise GrammarError(f"start symbol {self.start!r} has no production")
        for lhs, rhs in self.productions:
            if lhs in self.terminals:
                raise GrammarError(f"terminal {lhs!r} used as a production head")
            for x in rhs:
                if x not in self.terminals and x not in heads:
                    raise GrammarError(f"symbol {x!r} is neither a terminal nor defined")


def _fresh(base: str, taken: set) -> str:
    name = base
    while name in taken:
        name += "'"
    taken.add(name)
    return name


def export_lhs_grammar(p: ParamPattern) -> Grammar:
    """A grammar for {instantiate(p, i) : i >= p.param_min}.

    Two parameterised runs grow together from a centre nonterminal; one run
    is regular; three or more synchronised runs are not context-free and
    are refused.
    """
    params = [k for k, s in enumerate(p.segments) if isinstance(s, Param)]
    if len(params) >= 3:
        raise GrammarError(
            f"pattern has {len(params)} synchronised runs x^i; a language "
            "{x_1^i x_2^i ... x_n^i} is context-free only for n <= 2, so no grammar exists"
        )
    terminals = frozenset(p.letters())
    taken = set(terminals)
    S = _fresh("S", taken)

    def const(seg_range):
        out = []
        for seg in (p.segments[k] for k in seg_range):
            out.extend(seg.word)
        return tuple(out)

    lo = p.param_min
    segs = p.segments
    if not params:
        return Grammar(S, ((S, const(range(len(segs)))),), terminals)
    if len(params) == 1:
        k = params[0]
        x = segs[k].letter
        R = _fresh("R", taken)
        prods = (
            (S, const(range(k)) + (R,) + const(range(k + 1, len(segs)))),
            (R, (x, R)),
            (R, (x,) * lo),
        )
        return Grammar(S, prods, terminals)
    k1, k2 = params
    x, y = segs[k1].letter, segs[k2].letter
    M = _fresh("M", taken)
    prods = (
        (S, const(range(k1)) + (M,) + const(range(k2 + 1, len(segs)))),
        (M, (x, M, y)),
        (M, (x,) * lo + const(range(k1 + 1, k2)) + (y,) * lo),
    )
    return Grammar(S, prods, terminals)


def format_grammar(g: Grammar) -> str:
    order = {nt: k for k, nt in enumerate(g.nonterminals)}
    lines = [f"start: {g.start}"]
    for lhs, rhs in sorted(g.productions, key=lambda pr: order[pr[0]]):
        lines.append(f"{lhs} -> {' '.join(rhs) if rhs else 'EPS'}")
    return "\n".join(lines) + "\n"


def parse_grammar(text: str) -> Grammar:
    """Inverse of :func:`format_grammar`; symbols never heading a production are terminals."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("start:"):
        raise GrammarError("first line must be 'start: <NT>'")
    start = lines[0].split(":", 1)[1].strip()
    prods = []
    for ln in lines[1:]:
        lhs, arrow, rhs = ln.partition("->")
        if not arrow:
            raise GrammarError(f"bad production {ln!r}")
        body = tuple(rhs.split())
        prods.append((lhs.strip(), () if body == ("EPS",) else body))
    heads = {lhs for lhs, _ in prods}
    terminals = frozenset(x for _, rhs in prods for x in rhs if x not in heads)
    return Grammar(start, tuple(prods), terminals)


@dataclass(frozen=True)
class _CNF:
    start_nullable: bool
    unary: dict  # terminal -> set of heads
    binary: dict  # (B, C) -> set of heads
    start: str


def _to_cnf(g: Grammar) -> _CNF:
    taken = set(g.terminals) | set(g.nonterminals)
    prods: set[tuple[str, tuple[str, ...]]] = set()
    term_nt: dict[str, str] = {}

    def nt_for(t):
        if t not in term_nt:
            term_nt[t] = _fresh(f"T_{t}", taken)
            prods.add((term_nt[t], (t,)))
        return term_nt[t]

    # terminals out of long bodies, then binarise
    for lhs, rhs in g.productions:
        if len(rhs) >= 2:
            rhs = tuple(nt_for(x) if x in g.terminals else x for x in rhs)
        while len(rhs) > 2:
            head = _fresh(f"{lhs}_", taken)
            prods.add((lhs, (rhs[0], head)))
            lhs, rhs = head, rhs[1:]
        prods.add((lhs, rhs))

    # remove epsilon productions
    nullable: set[str] = set()
    changed = True
    while changed:
        changed = False
        for lhs, rhs in prods:
            if lhs not in nullable and all(x in nullable for x in rhs):
                nullable.add(lhs)
                changed = True
    expanded = set()
    for lhs, rhs in prods:
        options = [((x,), ()) if x in nullable else ((x,),) for x in rhs]
        for choice in product(*options):
            body = tuple(x for part in choice for x in part)
            if body:
                expanded.add((lhs, body))

    # remove unit productions
    nts = {lhs for lhs, _ in expanded} | {g.start}
    unit = {a: {a} for a in nts}
    changed = True
    while changed:
        changed = False
        for lhs, rhs in expanded:
            if len(rhs) == 1 and rhs[0] not in g.terminals and rhs[0] in unit:
                for a in nts:
                    if lhs in unit[a] and rhs[0] not in unit[a]:
                        unit[a].add(rhs[0])
                        changed = True
    unary: dict = {}
    binary: dict = {}
    for a in nts:
        for lhs, rhs in expanded:
            if lhs not in unit[a]:
                continue
            if len(rhs) == 1 and rhs[0] in g.terminals:
                unary.setdefault(rhs[0], set()).add(a)
            elif len(rhs) == 2:
                binary.setdefault(rhs, set()).add(a)
    return _CNF(g.start in nullable, unary, binary, g.start)


class _Recognizer:
    """CYK over a Chomsky normal form, with cells as bitmasks over nonterminals.

    A cell depends only on the substring it spans, so cells are memoised by
    substring; sweeping many words then shares the work for common factors.
    """

    MEMO_LIMIT = 2_000_000

    def __init__(self, g: Grammar):
        cnf = _to_cnf(g)
        names = sorted({a for heads in cnf.unary.values() for a in heads}
                       | {a for heads in cnf.binary.values() for a in heads}
                       | {x for pair in cnf.binary for x in pair} | {cnf.start})
        bit = {a: 1 << k for k, a in enumerate(names)}
        self.nullable = cnf.start_nullable
        self.start_bit = bit[cnf.start]
        self.unary = {t: sum(bit[a] for a in heads) for t, heads in cnf.unary.items()}
        self.rules = [(bit[b], bit[c], sum(bit[a] for a in heads)) for (b, c), heads in cnf.binary.items()]
        self.pairs: dict[tuple[int, int], int] = {}
        self.memo: dict[str, int] = {}

    def _combine(self, left: int, right: int) -> int:
        key = (left, right)
        out = self.pairs.get(key)
        if out is None:
            out = 0
            for b, c, heads in self.rules:
                if left & b and right & c:
                    out |= heads
            self.pairs[key] = out
        return out

    def cell(self, w: str) -> int:
        memo = self.memo
        got = memo.get(w)
        if got is not None:
            return got
        if len(w) == 1:
            mask = self.unary.get(w, 0)
        else:
            mask = 0
            for k in range(1, len(w)):
                left = self.cell(w[:k])
                if left:
                    right = self.cell(w[k:])
                    if right:
                        mask |= self._combine(left, right)
        if len(memo) > self.MEMO_LIMIT:
            memo.clear()
        memo[w] = mask
        return mask

    def member(self, w: str) -> bool:
        if not w:
            return self.nullable
        return bool(self.cell(w) & self.start_bit)


@lru_cache(maxsize=64)
def _recognizer(g: Grammar) -> _Recognizer:
    return _Recognizer(g)


def grammar_member(g: Grammar, w: Word) -> bool:
    """CYK membership; the empty word is accepted iff the start symbol is nullable."""
    return _recognizer(g).member(w)


# -- slices of the word problem ----------------------------------------------------


@dataclass
class SliceReport:
    n: int
    e_bound: int
    tested: int
    members: set
    expected: set

    @property
    def agreement(self) -> bool:
        return self.members == self.expected


def slice_word(exponents) -> Word:
    return "".join(f"a{'b' * e}c" for e in exponents)


def enumerate_wp_slice(sys: RewriteSystem, n: int, e_bound: int) -> SliceReport:
    """Test ``a b^e1 c ... a b^en c #`` for every exponent tuple in [1, e_bound]^n."""
    if e_bound < 1 or n < 1:
        raise ValueError("n and e_bound must be >= 1")
    if not {"a", "b", "c"} <= set(sys.alphabet.letters):
        raise ValueError("slice words need letters a, b, c")
    ensure_complete(sys)
    nf = incremental_normal_form if sys.is_monadic else normal_form
    members = set()
    tested = 0
    for exps in product(range(1, e_bound + 1), repeat=n):
        tested += 1
        if nf(sys, slice_word(exps)) == "":
            members.add(exps)
    expected = {(e,) * n for e in range(1, e_bound + 1)}
    return SliceReport(n, e_bound, tested, members, expected)


@dataclass
class Verdict:
    n: int
    context_free: bool
    claim: str
    grammar: Optional[Grammar] = None
    slice: Optional[SliceReport] = None


def cf_verdict(n: int, e_bound: int = 4) -> Verdict:
    """Context-freeness of the word problem of Π_n, with supporting evidence.

    The verdict itself is the cited theorem (context-free iff n <= 2); for
    n <= 2 the attached grammar generates the left-hand-side language, for
    n > 2 the attached slice shows the n synchronised runs.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    schema = make_pi(n)
    claim = "Pi_n has context-free word problem iff n <= 2 (cited theorem; pumping argument not mechanised)"
    if n <= 2:
        return Verdict(n, True, claim, grammar=export_lhs_grammar(schema.rules[0].lhs))
    sys = schema.to_rewrite_system()
    return Verdict(n, False, claim, slice=enumerate_wp_slice(sys, n, e_bound))
