"""
Word combinatorics over a finite alphabet, and parameterised patterns.

Words are plain Python strings whose characters are letters of an
:class:`Alphabet`.  A :class:`ParamPattern` describes an infinite family of
words sharing one integer parameter ``i``, such as ``(a b^i c)^2``::

    >>> p = ParamPattern.parse("(a b^i c)^2")
    >>> instantiate(p, 2)
    'abbcabbc'
    >>> find_matches(p, "aabcabcc")
    [PatternMatch(start=1, i=1, length=6)]
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

__all__ = [
    "SEPARATOR",
    "Word",
    "Alphabet",
    "Const",
    "Param",
    "ParamPattern",
    "PatternMatch",
    "PatternError",
    "prefixes",
    "suffixes",
    "self_overlap_free",
    "overlaps",
    "instantiate",
    "find_matches",
    "match_at",
    "run_length",
    "anti_unify",
]

SEPARATOR = "#"

Word = str


class PatternError(ValueError):
    """A pattern or word violates a structural invariant."""


@dataclass(frozen=True)
class Alphabet:
    """An ordered set of single-character letters.

    ``names`` optionally gives a display name per letter (``b_1`` for an
    internal symbol ``b``); display names are what files and the command line
    use.
    """

    letters: tuple[str, ...]
    names: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        if not letters:
            raise PatternError("alphabet must contain at least one letter")
        if len(set(letters)) != len(letters):
            raise PatternError(f"alphabet letters are not distinct: {letters}")
        for x in letters:
            if len(x) != 1 or x == SEPARATOR or x.isspace():
                raise PatternError(f"invalid letter {x!r}")
        if self.names is not None:
            names = tuple(self.names)
            object.__setattr__(self, "names", names)
            if len(names) != len(letters) or len(set(names)) != len(names):
                raise PatternError("alphabet names must be distinct, one per letter")
            if names == letters:
                object.__setattr__(self, "names", None)

    @classmethod
    def of(cls, letters: Union[str, Iterable[str]]) -> "Alphabet":
        return cls(tuple(letters))

    def __contains__(self, x) -> bool:
        return x in self.letters

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def display_names(self) -> tuple[str, ...]:
        return self.names if self.names is not None else self.letters

    def name_of(self, letter: str) -> str:
        if self.names is None:
            return letter
        return self.names[self.letters.index(letter)]

    def letter_of(self, name: str) -> str:
        if self.names is None:
            if name not in self.letters:
                raise PatternError(f"unknown letter {name!r}")
            return name
        try:
            return self.letters[self.names.index(name)]
        except ValueError:
            raise PatternError(f"unknown letter {name!r}") from None

    def check(self, w: Word) -> Word:
        for x in w:
            if x not in self.letters:
                raise PatternError(f"letter {x!r} of {w!r} is not in the alphabet")
        return w

    def render(self, w: Word) -> str:
        """Show ``w`` using display names; the empty word is shown as ``1``."""
        if not w:
            return "1"
        if self.names is None:
            return w
        return " ".join(
            self.name_of(x) if k == 1 else f"{self.name_of(x)}^{k}" for x, k in run_length(w)
        )


def prefixes(w: Word) -> set[Word]:
    """The set of non-empty prefixes of ``w``."""
    return {w[:k] for k in range(1, len(w) + 1)}


def suffixes(w: Word) -> set[Word]:
    """The set of non-empty suffixes of ``w``."""
    return {w[k:] for k in range(len(w))}


def overlaps(u: Word, v: Word) -> set[Word]:
    """Non-empty prefixes of ``u`` that are also suffixes of ``v``."""
    if not u or not v:
        raise ValueError("overlaps needs non-empty words")
    if u == v:
        raise ValueError("overlaps needs distinct words; use self_overlap_free")
    return {u[:k] for k in range(1, min(len(u), len(v)) + 1) if u[:k] == v[len(v) - k:]}


def self_overlap_free(w: Word) -> bool:
    if not w:
        raise ValueError("self_overlap_free is undefined on the empty word")
    return not any(w[:k] == w[len(w) - k:] for k in range(1, len(w)))


# -- patterns ---------------------------------------------------------------


@dataclass(frozen=True)
class Const:
    word: Word

    def __post_init__(self):
        if not self.word:
            raise PatternError("Const segment must be non-empty")


@dataclass(frozen=True)
class Param:
    letter: str


Segment = Union[Const, Param]


@dataclass(frozen=True)
class PatternMatch:
    start: int
    i: int
    length: int


def _canonical(segments: Iterable[Segment]) -> tuple[Segment, ...]:
    out: list[Segment] = []
    for seg in segments:
        if isinstance(seg, Const) and out and isinstance(out[-1], Const):
            out[-1] = Const(out[-1].word + seg.word)
        else:
            out.append(seg)
    return tuple(out)


@dataclass(frozen=True)
class ParamPattern:
    """A word with runs ``x^i`` that all share one parameter ``i >= param_min``.

    Adjacent constant segments are merged on construction, so two patterns
    denoting the same family compare equal.  Every ``Param(x)`` must be
    flanked by letters other than ``x`` (where it has neighbours), and a
    trailing ``Param`` needs an earlier one to pin ``i``; together these make
    a match at a given start position unique.
    """

    segments: tuple[Segment, ...]
    param_min: int = 1

    def __post_init__(self):
        segs = _canonical(self.segments)
        object.__setattr__(self, "segments", segs)
        if not segs:
            raise PatternError("pattern must have at least one segment")
        if self.param_min < 1:
            raise PatternError("param_min must be >= 1")
        for k, seg in enumerate(segs):
            if not isinstance(seg, Param):
                continue
            before = _edge_letter(segs[k - 1], last=True) if k > 0 else None
            after = _edge_letter(segs[k + 1], last=False) if k + 1 < len(segs) else None
            if seg.letter in (before, after):
                raise PatternError(
                    f"ambiguous boundary: {seg.letter}^i is next to another {seg.letter}"
                )
        if isinstance(segs[-1], Param) and self.param_count == 1:
            raise PatternError(
                f"pattern ends in {segs[-1].letter}^i with nothing fixing i"
            )

    @classmethod
    def constant(cls, w: Word) -> "ParamPattern":
        if not w:
            raise PatternError("a pattern cannot be the empty word")
        return cls((Const(w),))

    @classmethod
    def parse(cls, text: str, param_min: int = 1, alphabet: Optional[Alphabet] = None,
              param_names: Sequence[str] = ("i", "t")) -> "ParamPattern":
        segs = parse_segments(text, alphabet, param_names)
        if not segs:
            raise PatternError("a pattern cannot be the empty word")
        return cls(tuple(segs), param_min)

    @property
    def param_count(self) -> int:
        return sum(isinstance(s, Param) for s in self.segments)

    @property
    def is_constant(self) -> bool:
        return self.param_count == 0

    @property
    def const_length(self) -> int:
        return sum(len(s.word) for s in self.segments if isinstance(s, Const))

    def length(self, i: int) -> int:
        return self.const_length + self.param_count * i

    def letters(self) -> set[str]:
        out = set()
        for s in self.segments:
            out.update(s.word if isinstance(s, Const) else s.letter)
        return out

    def tokens(self) -> list[tuple[str, bool]]:
        """Flatten to ``(letter, is_param)`` tokens, one per letter or run."""
        out = []
        for s in self.segments:
            if isinstance(s, Const):
                out.extend((x, False) for x in s.word)
            else:
                out.append((s.letter, True))
        return out

    def runs(self) -> list[tuple[str, int, int]]:
        """Run-length form ``(letter, coef, const)``: each run of an instance
        has length ``coef * i + const`` with ``coef`` in {0, 1}."""
        out: list[list] = []
        for letter, is_param in self.tokens():
            if is_param:
                out.append([letter, 1, 0])
            elif out and out[-1][0] == letter and out[-1][1] == 0:
                out[-1][2] += 1
            else:
                out.append([letter, 0, 1])
        return [tuple(r) for r in out]

    def render(self, alphabet: Optional[Alphabet] = None, param: str = "i") -> str:
        return format_pattern(self, alphabet, param)

    def __str__(self):
        return self.render()


def _edge_letter(seg: Segment, last: bool) -> str:
    if isinstance(seg, Param):
        return seg.letter
    return seg.word[-1] if last else seg.word[0]


def instantiate(p: ParamPattern, i: int) -> Word:
    if i < p.param_min:
        raise ValueError(f"parameter {i} is below the minimum {p.param_min}")
    return "".join(s.word if isinstance(s, Const) else s.letter * i for s in p.segments)


def match_at(p: ParamPattern, w: Word, start: int) -> Optional[PatternMatch]:
    """The unique match of ``p`` in ``w`` beginning at ``start``, if any."""
    pos = start
    i = None
    n = len(w)
    for seg in p.segments:
        if isinstance(seg, Const):
            if not w.startswith(seg.word, pos):
                return None
            pos += len(seg.word)
        elif i is None:
            x = seg.letter
            end = pos
            while end < n and w[end] == x:
                end += 1
            i = end - pos
            if i < p.param_min:
                return None
            pos = end
        else:
            if w[pos:pos + i] != seg.letter * i:
                return None
            pos += i
    return PatternMatch(start, p.param_min if i is None else i, pos - start)


def find_matches(p: ParamPattern, w: Word) -> list[PatternMatch]:
    out = []
    first = _edge_letter(p.segments[0], last=False)
    for start in range(len(w)):
        if w[start] != first:
            continue
        m = match_at(p, w, start)
        if m is not None:
            out.append(m)
    return out


# -- run-length helpers and anti-unification ---------------------------------


def run_length(w: Word) -> list[tuple[str, int]]:
    out: list[list] = []
    for x in w:
        if out and out[-1][0] == x:
            out[-1][1] += 1
        else:
            out.append([x, 1])
    return [tuple(r) for r in out]


def anti_unify(family: dict[int, Word], min_values: int = 3) -> Optional[ParamPattern]:
    """Find the pattern ``p`` with ``instantiate(p, i) == family[i]`` for all i.

    Needs at least ``min_values`` consecutive parameter values.  Each run of
    the words must have either a fixed length or length exactly ``i``; if the
    family does not fit that shape, return None.
    """
    keys = sorted(family)
    if len(keys) < min_values or keys != list(range(keys[0], keys[0] + len(keys))):
        return None
    encoded = {i: run_length(family[i]) for i in keys}
    shape = [x for x, _ in encoded[keys[0]]]
    if any([x for x, _ in encoded[i]] != shape for i in keys):
        return None
    segs: list[Segment] = []
    for k, x in enumerate(shape):
        lengths = [encoded[i][k][1] for i in keys]
        if len(set(lengths)) == 1:
            segs.append(Const(x * lengths[0]))
        elif lengths == keys:
            segs.append(Param(x))
        else:
            return None
    try:
        p = ParamPattern(tuple(segs), keys[0])
    except PatternError:
        return None
    if p.is_constant or any(instantiate(p, i) != family[i] for i in keys):
        return None
    return p


# -- literal syntax ----------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\()|(\))|(\^)|(\d+)|([A-Za-z_][A-Za-z_0-9]*|\S))")


def _lex(text: str) -> list[str]:
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        out.append(m.group(m.lastindex))
        pos = m.end()
    return out


def _split_names(chunk: str, alphabet: Optional[Alphabet]) -> list[str]:
    """Split an identifier like ``ab_1c`` into alphabet names, longest first."""
    names = sorted(alphabet.display_names(), key=len, reverse=True) if alphabet else None
    out = []
    pos = 0
    while pos < len(chunk):
        if names is None:
            out.append(chunk[pos])
            pos += 1
            continue
        for name in names:
            if chunk.startswith(name, pos):
                out.append(name)
                pos += len(name)
                break
        else:
            raise PatternError(f"unknown letter at {chunk[pos:]!r}")
    return out


def parse_segments(text: str, alphabet: Optional[Alphabet] = None,
                   param_names: Sequence[str] = ("i", "t")) -> list[Segment]:
    """Parse the literal syntax used in presentation files and on the command line.

    ``1`` is the empty word, ``x^i`` a parameterised run, ``x^3`` or
    ``(...)^3`` a literal repetition.  Any exponent that is neither an integer
    nor one of ``param_names`` is a second parameter and is rejected.
    """
    toks = _lex(text)
    pos = 0
    seen_param: list[str] = []

    def letter(name: str) -> str:
        if alphabet is None:
            if len(name) != 1 or name == SEPARATOR:
                raise PatternError(f"invalid letter {name!r}")
            return name
        return alphabet.letter_of(name)

    def exponent():
        nonlocal pos
        if pos < len(toks) and toks[pos] == "^":
            if pos + 1 >= len(toks):
                raise PatternError("dangling '^'")
            e = toks[pos + 1]
            pos += 2
            if e.isdigit():
                return int(e)
            if e in param_names:
                if seen_param and seen_param[0] != e:
                    raise PatternError(f"pattern uses two parameters: {seen_param[0]} and {e}")
                seen_param.append(e)
                return "param"
            raise PatternError(f"unsupported exponent {e!r}: only one shared parameter is allowed")
        return None

    def sequence(depth: int) -> list[Segment]:
        nonlocal pos
        out: list[Segment] = []
        while pos < len(toks):
            tok = toks[pos]
            if tok == ")":
                if depth == 0:
                    raise PatternError("unbalanced ')'")
                return out
            if tok == "(":
                pos += 1
                inner = sequence(depth + 1)
                if pos >= len(toks) or toks[pos] != ")":
                    raise PatternError("unbalanced '('")
                pos += 1
                e = exponent()
                if e == "param":
                    raise PatternError("a parenthesised group needs a literal integer exponent")
                out.extend(inner * (1 if e is None else e))
                continue
            if tok == "^":
                raise PatternError("'^' without a base")
            pos += 1
            if tok == "1" and not (alphabet and "1" in alphabet.display_names()):
                continue
            if tok.isdigit():
                raise PatternError(f"unexpected number {tok}")
            chars = _split_names(tok, alphabet)
            for name in chars[:-1]:
                out.append(Const(letter(name)))
            last = letter(chars[-1])
            e = exponent()
            if e == "param":
                out.append(Param(last))
            elif e is None:
                out.append(Const(last))
            elif e > 0:
                out.append(Const(last * e))
        if depth:
            raise PatternError("unbalanced '('")
        return out

    segs = sequence(0)
    return list(_canonical(segs))


def parse_word(text: str, alphabet: Optional[Alphabet] = None) -> Word:
    """A concrete word in literal syntax (``""`` or ``1`` for the empty word)."""
    segs = parse_segments(text, alphabet, param_names=())
    return "".join(s.word for s in segs)


def format_pattern(p: ParamPattern, alphabet: Optional[Alphabet] = None, param: str = "i") -> str:
    toks = p.tokens()
    name = alphabet.name_of if alphabet else (lambda x: x)

    def show(block):
        return " ".join(f"{name(x)}^{param}" if is_param else name(x) for x, is_param in block)

    n = len(toks)
    for period in range(1, n // 2 + 1):
        if n % period == 0 and toks == toks[:period] * (n // period):
            block = toks[:period]
            if period == 1 and not block[0][1]:
                return f"{name(block[0][0])}^{n // period}"
            return f"({show(block)})^{n // period}"
    return show(toks)
