"""
The Π_n and M_n families, and a plain-text presentation format.

File format::

    monoid: Pi_2
    alphabet: a b c
    param: i >= 1
    rule: (a b^i c)^2 -> 1

``1`` is the empty word, ``x^i`` a run of the shared parameter, and
``(...)^k`` or ``x^k`` with a literal integer ``k`` a repetition.  Lines
starting with ``;`` are comments.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Optional

from .rewriting import RewriteSystem, Rule
from .words import Alphabet, Const, Param, ParamPattern, PatternError, format_pattern, parse_segments

__all__ = [
    "PresentationSchema",
    "PresentationError",
    "GroupTable",
    "make_pi",
    "make_mn",
    "parse_presentation",
    "serialize_presentation",
    "load_presentation",
    "MN_MAX",
]

MN_MAX = 4
# internal symbols for b_1, b_2, ... (a and c are taken)
_B_SYMBOLS = "bdefghjklmnopqrsuvwxyz"


class PresentationError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


@dataclass(frozen=True)
class PresentationSchema:
    name: str
    alphabet: Alphabet
    rules: tuple[Rule, ...]
    param_name: str = "i"
    param_min: int = 1
    metadata: dict = field(default_factory=dict, compare=False, hash=False)

    def to_rewrite_system(self) -> RewriteSystem:
        for k, rule in enumerate(self.rules):
            if not rule.is_length_reducing:
                raise PresentationError(f"rule {k + 1} is not length-reducing")
        return RewriteSystem(self.alphabet, self.rules, self.param_name)


@dataclass(frozen=True)
class GroupTable:
    """Multiplication table of the elementary abelian group C_2^n.

    Elements ``1..m-1`` are the non-trivial elements; ``0`` is the identity.
    Element ``j`` is the vector of binary digits of ``j``, so the product is
    bitwise xor.
    """

    n: int

    @property
    def order(self) -> int:
        return 2 ** self.n

    @property
    def elements(self) -> range:
        return range(1, self.order)

    def product(self, i: int, j: int) -> int:
        return i ^ j

    def relations(self) -> list[tuple[int, int, int]]:
        """``(i, j, k)`` for ``x_i x_j = x_k`` (``k == 0`` meaning 1), ``i <= j``."""
        return [(i, j, self.product(i, j)) for i in self.elements for j in self.elements if i <= j]


def _mn_alphabet(n: int) -> Alphabet:
    m = 2 ** n
    letters = ("a",) + tuple(_B_SYMBOLS[: m - 1]) + ("c",)
    names = ("a",) + tuple(f"b_{j}" for j in range(1, m)) + ("c",)
    return Alphabet(letters, names)


def make_pi(n: int) -> PresentationSchema:
    """Π_n = Mon<a, b, c | (a b^i c)^n = 1, i >= 1>."""
    if n < 1:
        raise ValueError("n must be >= 1")
    lhs = ParamPattern((Const("a"), Param("b"), Const("c")) * n)
    return PresentationSchema(f"Pi_{n}", Alphabet.of("abc"), (Rule(lhs),), "i", 1,
                              {"family": "pi", "n": n, "relations": 1})


def make_mn(n: int) -> PresentationSchema:
    """M_n: the multiplication table of C_2^n under x_j -> a b_j^t c.

    Both ``x_i x_j`` and ``x_j x_i`` become rules for ``i != j``, so the
    rule count is ``(m-1)^2`` while the table has one relation per pair
    ``i <= j``.
    """
    if not 1 <= n <= MN_MAX:
        raise ValueError(f"n must be between 1 and {MN_MAX}")
    table = GroupTable(n)
    alphabet = _mn_alphabet(n)

    def block(j):
        return (Const("a"), Param(_B_SYMBOLS[j - 1]), Const("c"))

    rules = []
    for i, j in product(table.elements, repeat=2):
        k = table.product(i, j)
        rhs = ParamPattern(block(k)) if k else None
        rules.append(Rule(ParamPattern(block(i) + block(j)), rhs))
    return PresentationSchema(f"M_{n}", alphabet, tuple(rules), "t", 1,
                              {"family": "mn", "n": n, "relations": len(table.relations()),
                               "table": table})


def serialize_presentation(schema: PresentationSchema) -> str:
    lines = [
        f"monoid: {schema.name}",
        f"alphabet: {' '.join(schema.alphabet.display_names())}",
        f"param: {schema.param_name} >= {schema.param_min}",
    ]
    for rule in schema.rules:
        rhs = "1" if rule.rhs is None else format_pattern(rule.rhs, schema.alphabet, schema.param_name)
        lines.append(f"rule: {format_pattern(rule.lhs, schema.alphabet, schema.param_name)} -> {rhs}")
    return "\n".join(lines) + "\n"


def _symbol_for(name: str, taken: set) -> str:
    if len(name) == 1:
        return name
    for x in name[0] + _B_SYMBOLS + "ABCDEFGHIJKLMNOPQRSTUVWXYZ":
        if x not in taken:
            return x
    raise PresentationError(f"ran out of symbols for {name!r}")


def parse_presentation(text: str) -> PresentationSchema:
    """Read the line format produced by :func:`serialize_presentation`."""
    name = None
    alphabet = None
    param_name, param_min = "i", 1
    raw_rules: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split(";", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise PresentationError(f"expected 'key: value', got {line!r}", lineno)
        key, value = key.strip(), value.strip()
        if key == "monoid":
            name = value
        elif key == "alphabet":
            names = value.split()
            if not names:
                raise PresentationError("empty alphabet", lineno)
            single = [x for x in names if len(x) == 1]
            taken = set(single) | {"1", "#"}
            letters = []
            for x in names:
                sym = _symbol_for(x, taken)
                taken.add(sym)
                letters.append(sym)
            try:
                alphabet = Alphabet(tuple(letters), tuple(names))
            except PatternError as e:
                raise PresentationError(str(e), lineno) from None
        elif key == "param":
            parts = value.replace(">=", " >= ").split()
            if len(parts) != 3 or parts[1] != ">=" or not parts[2].isdigit():
                raise PresentationError(f"expected 'param: i >= N', got {value!r}", lineno)
            if parts[0] not in ("i", "t"):
                raise PresentationError(f"parameter must be named i or t, not {parts[0]!r}", lineno)
            param_name, param_min = parts[0], int(parts[2])
            if param_min < 1:
                raise PresentationError("parameter minimum must be >= 1", lineno)
        elif key == "rule":
            raw_rules.append((lineno, value))
        else:
            raise PresentationError(f"unknown field {key!r}", lineno)
    if alphabet is None:
        raise PresentationError("missing 'alphabet:' line")
    rules = []
    for lineno, value in raw_rules:
        lhs_text, arrow, rhs_text = value.partition("->")
        if not arrow:
            raise PresentationError("rule needs '->'", lineno)
        try:
            lhs_segs = parse_segments(lhs_text, alphabet, (param_name,))
            rhs_segs = parse_segments(rhs_text, alphabet, (param_name,))
            if not lhs_segs:
                raise PresentationError("left side is the empty word", lineno)
            lhs = ParamPattern(tuple(lhs_segs), param_min)
            rhs = ParamPattern(tuple(rhs_segs), param_min) if rhs_segs else None
            rule = Rule(lhs, rhs)
        except PatternError as e:
            raise PresentationError(f"invariant violated: {e}", lineno) from None
        if not rule.is_length_reducing:
            raise PresentationError("invariant violated: rule is not length-reducing", lineno)
        rules.append(rule)
    return PresentationSchema(name or "M", alphabet, tuple(rules), param_name, param_min)


def load_presentation(path) -> PresentationSchema:
    with open(path, encoding="utf-8") as f:
        return parse_presentation(f.read())
