"""
Units of special monoids: invertible words, minimal factors and the group of units.

Invertibility is decided by a bounded search for a witness ``w'`` with
``w w' = 1`` (right) or ``w' w = 1`` (left).  The search relies on the system
being complete and length-reducing: a shortest witness is irreducible, so the
first reduction of ``w w'`` must straddle the boundary, and the search
branches only over such straddling rule instances.  Within its bound the
answer is exact.

The minimal invertible factors of the defining words form a biprefix code
Λ; every relation decodes over Λ, which gives a presentation of the submonoid
generated by Λ on one abstract generator per code word.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Optional

from .rewriting import (
    DEFAULT_I_BOUND,
    RewriteSystem,
    ensure_complete,
    normal_form,
)
from .words import (
    Alphabet,
    ParamPattern,
    Word,
    anti_unify,
    format_pattern,
    instantiate,
    match_at,
)

__all__ = [
    "InvertibilityWitness",
    "MinimalFactorization",
    "MinimalWordSet",
    "LambdaElement",
    "BiprefixResult",
    "UnitsPresentation",
    "RelationSchema",
    "UnitsClassification",
    "NotInvertibleError",
    "InconclusiveError",
    "default_witness_bound",
    "right_inverse",
    "left_inverse",
    "is_right_invertible",
    "is_left_invertible",
    "is_invertible",
    "invertibility_status",
    "minimal_factorization",
    "compute_lambda",
    "check_biprefix",
    "decode_over_lambda",
    "encode",
    "units_presentation",
    "classify_units",
    "MAXIMAL_SUBGROUP_CITATION",
]

MAXIMAL_SUBGROUP_CITATION = (
    "all maximal subgroups of a special monoid are isomorphic to its group of units "
    "(Malheiro 2005, Thm 4.6; cited, not computed)"
)


class NotInvertibleError(ValueError):
    pass


class InconclusiveError(RuntimeError):
    pass


def default_witness_bound(sys: RewriteSystem, i_bound: int = DEFAULT_I_BOUND) -> int:
    return 2 * sys.max_lhs_length(i_bound)


# -- witness search ---------------------------------------------------------------


def _search(sys: RewriteSystem, side: str):
    """Build a memoised shortest-witness search for one system and side."""
    rules = sys.rules

    @lru_cache(maxsize=None)
    def solve(s: Word, budget: int) -> Optional[Word]:
        if not s:
            return ""
        best = None
        n = len(s)
        for cut in range(n):
            # right: s = s0 s1 with s1 a proper prefix of an lhs; left: mirror
            part = s[cut:] if side == "right" else s[: n - cut]
            rest = s[:cut] if side == "right" else s[n - cut:]
            for rule in rules:
                for i in rule.values(len(part) + budget):
                    lhs = rule.lhs_at(i)
                    extra = len(lhs) - len(part)
                    if extra > budget:
                        break
                    if extra <= 0:
                        continue
                    if side == "right" and not lhs.startswith(part):
                        continue
                    if side == "left" and not lhs.endswith(part):
                        continue
                    rhs = rule.rhs_at(i)
                    nxt = normal_form(sys, rest + rhs if side == "right" else rhs + rest)
                    limit = budget - extra if best is None else min(budget - extra, len(best) - extra - 1)
                    if limit < 0:
                        continue
                    tail = solve(nxt, limit)
                    if tail is None:
                        continue
                    cand = lhs[len(part):] + tail if side == "right" else tail + lhs[:extra]
                    if best is None or len(cand) < len(best):
                        best = cand
        return best

    return solve


_SEARCHES: dict = {}


def _solver(sys: RewriteSystem, side: str):
    key = (sys, side)
    if key not in _SEARCHES:
        if len(_SEARCHES) > 32:
            _SEARCHES.clear()
        _SEARCHES[key] = _search(sys, side)
    return _SEARCHES[key]


def _check_bound(bound: int):
    if bound < 0:
        raise ValueError("search bound must be non-negative")


def right_inverse(sys: RewriteSystem, w: Word, bound: int) -> Optional[Word]:
    """A shortest ``w'`` with ``|w'| <= bound`` and ``w w' = 1``, or None."""
    _check_bound(bound)
    ensure_complete(sys)
    found = _solver(sys, "right")(normal_form(sys, w), bound)
    if found is not None:
        assert normal_form(sys, w + found) == ""
    return found


def left_inverse(sys: RewriteSystem, w: Word, bound: int) -> Optional[Word]:
    _check_bound(bound)
    ensure_complete(sys)
    found = _solver(sys, "left")(normal_form(sys, w), bound)
    if found is not None:
        assert normal_form(sys, found + w) == ""
    return found


@dataclass(frozen=True)
class InvertibilityWitness:
    side: str  # "left", "right" or "two-sided"
    word: Word
    right: Optional[Word]
    left: Optional[Word]
    bound: int


def is_right_invertible(sys: RewriteSystem, w: Word, search_bound: int) -> Optional[InvertibilityWitness]:
    r = right_inverse(sys, w, search_bound)
    return None if r is None else InvertibilityWitness("right", w, r, None, search_bound)


def is_left_invertible(sys: RewriteSystem, w: Word, search_bound: int) -> Optional[InvertibilityWitness]:
    l = left_inverse(sys, w, search_bound)
    return None if l is None else InvertibilityWitness("left", w, None, l, search_bound)


def is_invertible(sys: RewriteSystem, w: Word, search_bound: int) -> Optional[InvertibilityWitness]:
    r = right_inverse(sys, w, search_bound)
    if r is None:
        return None
    l = left_inverse(sys, w, search_bound)
    if l is None:
        return None
    return InvertibilityWitness("two-sided", w, r, l, search_bound)


def invertibility_status(sys: RewriteSystem, w: Word, search_bound: int,
                         lam: Optional["MinimalWordSet"] = None) -> str:
    """``invertible``, ``not invertible`` (certified by the Λ decoder on an
    irreducible word) or ``not found within bound``."""
    if is_invertible(sys, w, search_bound):
        return "invertible"
    if lam is not None and normal_form(sys, w) == w and check_biprefix(lam):
        if decode_over_lambda(lam, w) is None:
            return "not invertible"
    return "not found within bound"


# -- minimal factorisation -------------------------------------------------------


@dataclass(frozen=True)
class MinimalFactorization:
    word: Word
    factors: tuple[Word, ...]
    bound: int


def minimal_factorization(sys: RewriteSystem, w: Word, search_bound: int) -> MinimalFactorization:
    """Split an invertible word into its minimal invertible factors.

    Greedy: the shortest invertible non-empty prefix is cut off repeatedly.
    The remainder of an invertible word after an invertible prefix is again
    invertible, and the factorisation is unique, so greed is safe.
    """
    if not is_invertible(sys, w, search_bound):
        raise NotInvertibleError(
            f"{sys.render_word(w)} is not invertible (no witness within bound {search_bound})"
        )
    factors = []
    rest = w
    while rest:
        for k in range(1, len(rest) + 1):
            if is_invertible(sys, rest[:k], search_bound):
                factors.append(rest[:k])
                rest = rest[k:]
                break
        else:
            raise InconclusiveError(
                f"no invertible prefix of {sys.render_word(rest)} within bound {search_bound}"
            )
    return MinimalFactorization(w, tuple(factors), search_bound)


# -- the minimal word set Λ ------------------------------------------------------


@dataclass(frozen=True)
class MinimalWordSet:
    patterns: tuple[ParamPattern, ...]
    bound: int
    warnings: tuple[str, ...] = ()

    def words(self, bound: Optional[int] = None) -> list[Word]:
        bound = self.bound if bound is None else bound
        out = []
        for p in self.patterns:
            if p.is_constant:
                out.append(instantiate(p, p.param_min))
            else:
                out.extend(instantiate(p, i) for i in range(p.param_min, bound + 1))
        return out

    def render(self, alphabet: Optional[Alphabet] = None, param: str = "i") -> list[str]:
        return [format_pattern(p, alphabet, param) for p in self.patterns]


def _defining_words(sys: RewriteSystem, i: int, rule) -> list[Word]:
    out = [rule.lhs_at(i)]
    rhs = rule.rhs_at(i)
    if rhs:
        out.append(rhs)
    return out


def compute_lambda(sys: RewriteSystem, search_bound: Optional[int] = None,
                   i_bound: int = DEFAULT_I_BOUND) -> MinimalWordSet:
    """Factor every defining word (for ``i <= i_bound``) and fold the factors
    back into patterns over the rule parameter.

    Right-hand sides that are non-empty count as defining words too, so the
    same procedure covers the non-special M_n systems.
    """
    ensure_complete(sys, i_bound)
    if search_bound is None:
        search_bound = default_witness_bound(sys, i_bound)
    patterns: list[ParamPattern] = []
    notes: list[str] = []

    def add(p):
        if p not in patterns:
            patterns.append(p)

    for k, rule in enumerate(sys.rules):
        families: dict[tuple[int, int], dict[int, Word]] = {}
        values = list(rule.values(i_bound))
        for i in values:
            for side, word in enumerate(_defining_words(sys, i, rule)):
                fac = minimal_factorization(sys, word, search_bound).factors
                for pos, f in enumerate(fac):
                    families.setdefault((side, pos, len(fac)), {})[i] = f
        for key in sorted(families):
            family = families[key]
            if rule.lhs.is_constant:
                add(ParamPattern.constant(family[values[0]]))
                continue
            if len(set(family.values())) == 1 and len(family) == len(values):
                add(ParamPattern.constant(next(iter(family.values()))))
                continue
            p = anti_unify(family)
            if p is None:
                notes.append(
                    f"rule {k}: factors {sorted(set(family.values()))} do not follow a "
                    f"single-parameter shape; kept as concrete words"
                )
                for f in family.values():
                    add(ParamPattern.constant(f))
            else:
                add(p)
    for note in notes:
        warnings.warn(note)
    return MinimalWordSet(tuple(patterns), i_bound, tuple(notes))


# -- biprefix check ----------------------------------------------------------------


@dataclass(frozen=True)
class BiprefixResult:
    ok: bool
    counterexample: Optional[tuple[Word, Word, str]] = None  # (u, v, "prefix"|"suffix")

    def __bool__(self):
        return self.ok


def _affix_witness(p: ParamPattern, q: ParamPattern, suffix: bool) -> Optional[tuple[int, int]]:
    """Find ``i, j`` with ``p(i)`` a proper prefix (or suffix) of ``q(j)``.

    Instances of a pattern share a fixed run structure whose run lengths are
    constants or the parameter itself, so the question reduces to equalities
    and one inequality between ``i``, ``j`` and constants.  Such a system has
    a solution iff it has one with every value below the largest constant
    plus a small margin, which is searched directly.
    """
    P, Q = p.runs(), q.runs()
    if suffix:
        P, Q = P[::-1], Q[::-1]
    if len(P) > len(Q) or any(P[t][0] != Q[t][0] for t in range(len(P))):
        return None
    consts = [r[2] for r in P + Q] + [p.param_min, q.param_min]
    top = max(consts) + 3
    irange = [p.param_min] if p.is_constant else range(p.param_min, top)
    jrange = [q.param_min] if q.is_constant else range(q.param_min, top)
    m = len(P)
    for i, j in product(irange, jrange):
        lp = [c * i + d for _, c, d in P]
        lq = [c * j + d for _, c, d in Q]
        if lp[: m - 1] != lq[: m - 1] or lp[m - 1] > lq[m - 1]:
            continue
        if m < len(Q) or lp[m - 1] < lq[m - 1]:
            return i, j
    return None


def check_biprefix(lam: MinimalWordSet) -> BiprefixResult:
    """No code word is a proper prefix or proper suffix of another.

    Checked symbolically on the patterns, then cross-checked on every
    instance up to ``lam.bound``.
    """
    pats = lam.patterns
    for p in pats:
        for q in pats:
            for suffix in (False, True):
                hit = _affix_witness(p, q, suffix)
                if hit is not None:
                    i, j = hit
                    return BiprefixResult(False, (instantiate(p, i), instantiate(q, j),
                                                  "suffix" if suffix else "prefix"))
    words = lam.words()
    for u in words:
        for v in words:
            if u != v and (v.startswith(u) or v.endswith(u)):
                raise AssertionError(f"symbolic biprefix check missed {u!r} / {v!r}")
    return BiprefixResult(True)


# -- decoding over Λ ----------------------------------------------------------------


@dataclass(frozen=True)
class LambdaElement:
    pattern: int  # index into MinimalWordSet.patterns
    i: Optional[int]  # None for constant patterns
    word: Word


def decode_over_lambda(lam: MinimalWordSet, w: Word) -> Optional[list[LambdaElement]]:
    """Unique factorisation of ``w`` over the code, or None if there is none."""
    out = []
    pos = 0
    while pos < len(w):
        for k, p in enumerate(lam.patterns):
            m = match_at(p, w, pos)
            if m is not None:
                out.append(LambdaElement(k, None if p.is_constant else m.i, w[pos:pos + m.length]))
                pos += m.length
                break
        else:
            return None
    return out


def encode(lam: MinimalWordSet, elements: list[LambdaElement]) -> Word:
    return "".join(
        instantiate(lam.patterns[e.pattern], e.i if e.i is not None else lam.patterns[e.pattern].param_min)
        for e in elements
    )


# -- units presentation --------------------------------------------------------------

Generator = tuple[int, Optional[int]]  # (pattern index, parameter value)


@dataclass(frozen=True)
class RelationSchema:
    """One relation family ``lhs = rhs`` over generator families.

    Entries are ``(pattern index, symbolic)`` where ``symbolic`` says the
    generator carries the rule parameter.
    """

    rule: int
    lhs: tuple[tuple[int, bool], ...]
    rhs: tuple[tuple[int, bool], ...]


@dataclass(frozen=True)
class UnitsPresentation:
    lam: MinimalWordSet
    generator_names: tuple[str, ...]
    relators: tuple[tuple[tuple[Generator, ...], tuple[Generator, ...]], ...]
    schemas: tuple[Optional[RelationSchema], ...]
    relators_per_value: tuple[tuple[int, int], ...]
    relator_rules: tuple[int, ...] = ()
    param: str = "i"
    bound: int = DEFAULT_I_BOUND

    def generator(self, g: Generator, symbolic: bool = False) -> str:
        name = self.generator_names[g[0]]
        if g[1] is None:
            return name
        return f"{name}_{self.param if symbolic else g[1]}"

    def is_infinite(self) -> bool:
        return any(not p.is_constant for p in self.lam.patterns)

    def render_generators(self) -> list[str]:
        out = []
        for k, p in enumerate(self.lam.patterns):
            if p.is_constant:
                out.append(self.generator_names[k])
            else:
                out.append(f"{self.generator_names[k]}_{self.param} ({self.param} >= {p.param_min})")
        return out

    def _word(self, gens, show) -> str:
        if not gens:
            return "1"
        parts: list[list] = []
        for g in gens:
            s = show(g)
            if parts and parts[-1][0] == s:
                parts[-1][1] += 1
            else:
                parts.append([s, 1])
        return " ".join(s if e == 1 else f"{s}^{e}" for s, e in parts)

    def render_relators(self) -> list[str]:
        """Relation families, symbolic where every instance shares the parameter."""
        out = []
        for k, schema in enumerate(self.schemas):
            if schema is not None:
                show = lambda g: self.generator((g[0], 0 if g[1] else None), symbolic=True)
                rels = [f"{self._word(schema.lhs, show)} = {self._word(schema.rhs, show)}"]
            else:
                rels = [
                    f"{self._word(lhs, self.generator)} = {self._word(rhs, self.generator)}"
                    for rule, (lhs, rhs) in zip(self.relator_rules, self.relators)
                    if rule == k
                ]
            out.extend(r for r in rels if r not in out)
        return out


def _generator_names(n: int) -> tuple[str, ...]:
    return ("x",) if n == 1 else tuple(f"x{k + 1}" for k in range(n))


def units_presentation(sys: RewriteSystem, lam: MinimalWordSet) -> UnitsPresentation:
    """Presentation of the submonoid generated by Λ on abstract generators.

    Each rule instance ``l -> r`` with ``i <= lam.bound`` is decoded over Λ
    and becomes the relation ``φ(l) = φ(r)``; a rule whose decodings always
    carry the rule's own parameter is reported as one relation family.
    """
    ensure_complete(sys, lam.bound)
    if not check_biprefix(lam):
        raise ValueError("Λ is not a biprefix code")
    relators = []
    relator_rules = []
    schemas: list[Optional[RelationSchema]] = []
    per_value: dict[int, int] = {}
    for k, rule in enumerate(sys.rules):
        symbolic: Optional[RelationSchema] = None
        uniform = True
        for i in rule.values(lam.bound):
            sides = []
            for word in (rule.lhs_at(i), rule.rhs_at(i)):
                dec = decode_over_lambda(lam, word)
                if dec is None:
                    raise ValueError(
                        f"rule {k} at {sys.param_name}={i}: {sys.render_word(word)} does not "
                        f"decode over Λ, so the code hypothesis fails"
                    )
                sides.append(tuple((e.pattern, e.i) for e in dec))
            relators.append((sides[0], sides[1]))
            relator_rules.append(k)
            per_value[i] = per_value.get(i, 0) + 1
            shape = RelationSchema(
                k,
                tuple((g, v is not None) for g, v in sides[0]),
                tuple((g, v is not None) for g, v in sides[1]),
            )
            if any(v is not None and v != i for side in sides for _, v in side):
                uniform = False
            if symbolic is None:
                symbolic = shape
            elif symbolic != shape:
                uniform = False
        schemas.append(symbolic if uniform else None)
    return UnitsPresentation(
        lam,
        _generator_names(len(lam.patterns)),
        tuple(relators),
        tuple(schemas),
        tuple(sorted(per_value.items())),
        tuple(relator_rules),
        sys.param_name,
        lam.bound,
    )


# -- classification -----------------------------------------------------------------


@dataclass(frozen=True)
class UnitsClassification:
    kind: str  # "cyclic-free-product", "table-free-product" or "unclassified"
    factor: Optional[str]
    finitely_generated: Optional[bool]
    description: str


def _name_group(table: dict, elements: list) -> str:
    order = len(elements)
    one = elements[0]

    def power_order(x):
        k, y = 1, x
        while y != one:
            y = table[(y, x)]
            k += 1
        return k

    orders = [power_order(x) for x in elements]
    abelian = all(table[(x, y)] == table[(y, x)] for x in elements for y in elements)
    if order in orders:
        return f"C{order}"
    if abelian and set(orders) <= {1, 2}:
        rank = order.bit_length() - 1
        return "×".join(["C2"] * rank)
    return f"group of order {order}"


def _table_group(relators, gens) -> Optional[str]:
    """Name of the group whose full multiplication table the relators give."""
    one = None
    elements = [one] + sorted(gens, key=lambda g: (g[0], g[1] or 0))
    table = {}
    for x in elements:
        table[(one, x)] = x
        table[(x, one)] = x
    for lhs, rhs in relators:
        if len(lhs) != 2 or len(rhs) > 1:
            return None
        table[(lhs[0], lhs[1])] = rhs[0] if rhs else one
    for x in elements:
        for y in elements:
            if (x, y) not in table or table[(x, y)] not in elements:
                return None
    for x in elements:
        if not any(table[(x, y)] is one for y in elements):
            return None
        for y in elements:
            for z in elements:
                if table[(table[(x, y)], z)] != table[(x, table[(y, z)])]:
                    return None
    return _name_group(table, elements)


def classify_units(up: UnitsPresentation) -> UnitsClassification:
    """Recognise the two shapes of units presentation this package produces."""
    infinite = up.is_infinite()
    fg_text = "not finitely generated" if infinite else "finitely generated"
    gens = {g for lhs, rhs in up.relators for g in lhs + rhs}
    gens |= {(k, None) for k, p in enumerate(up.lam.patterns) if p.is_constant}

    # (a) x^n = 1, one relator per generator
    powers = {}
    for lhs, rhs in up.relators:
        if rhs or not lhs or len(set(lhs)) != 1 or lhs[0] in powers:
            break
        powers[lhs[0]] = len(lhs)
    else:
        if powers and set(powers) == gens and len(set(powers.values())) == 1:
            n = next(iter(powers.values()))
            factor = f"C{n}"
            if len(powers) == 1 and not infinite:
                desc = f"{factor}; finitely generated"
            else:
                desc = f"free product of {factor}, one per generator; {fg_text}"
            return UnitsClassification("cyclic-free-product", factor, not infinite, desc)

    # (b) a full group table on each block of generators sharing a parameter value
    blocks: dict = {}
    for lhs, rhs in up.relators:
        values = {g[1] for g in lhs + rhs}
        if len(values) != 1:
            return UnitsClassification("unclassified", None, None, "unclassified")
        blocks.setdefault(values.pop(), []).append((lhs, rhs))
    names = set()
    for value, rels in blocks.items():
        block_gens = {g for g in gens if g[1] == value}
        name = _table_group(rels, block_gens)
        if name is None:
            return UnitsClassification("unclassified", None, None, "unclassified")
        names.add(name)
    if len(names) == 1:
        factor = names.pop()
        per = f"one per value of {up.param}" if infinite else "one copy"
        return UnitsClassification(
            "table-free-product", factor, not infinite,
            f"free product of copies of {factor}, {per}; {fg_text}",
        )
    return UnitsClassification("unclassified", None, None, "unclassified")
