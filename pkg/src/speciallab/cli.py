"""Command-line driver: ``speciallab [source options] <command> [args]``."""

from __future__ import annotations

import argparse
import sys as _sys
from dataclasses import dataclass
from typing import Optional

from .language import (
    GrammarError,
    WpQuery,
    cf_verdict,
    enumerate_wp_slice,
    export_lhs_grammar,
    format_grammar,
    wp_member,
)
from .presentations import PresentationError, load_presentation, make_mn, make_pi
from .rewriting import (
    IncompleteSystemError,
    RewriteSystem,
    check_local_confluence,
    ensure_complete,
    normal_form,
)
from .special import (
    MAXIMAL_SUBGROUP_CITATION,
    InconclusiveError,
    NotInvertibleError,
    check_biprefix,
    classify_units,
    compute_lambda,
    default_witness_bound,
    invertibility_status,
    is_invertible,
    left_inverse,
    minimal_factorization,
    right_inverse,
    units_presentation,
)
from .words import ParamPattern, PatternError, format_pattern, parse_word

EXIT_OK, EXIT_FALSE, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    family: Optional[str]
    n: Optional[int]
    file: Optional[str]
    i_bound: int = 8
    witness_bound: Optional[int] = None
    e_bound: int = 5
    format: str = "text"

    def __post_init__(self):
        for name in ("i_bound", "e_bound", "witness_bound"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise UsageError(f"--{name.replace('_', '-')} must be positive")
        if self.family is not None and self.file is not None:
            raise UsageError("give either --family or --file, not both")
        if self.family is not None and self.n is None:
            raise UsageError("--family needs --n")

    @property
    def has_source(self) -> bool:
        return self.family is not None or self.file is not None

    def system(self) -> RewriteSystem:
        if self.file is not None:
            return load_presentation(self.file).to_rewrite_system()
        if self.family == "pi":
            return make_pi(self.n).to_rewrite_system()
        if self.family == "mn":
            return make_mn(self.n).to_rewrite_system()
        raise UsageError("no presentation given: use --family {pi,mn} --n N or --file PATH")

    def witness(self, sys: RewriteSystem) -> int:
        return self.witness_bound or default_witness_bound(sys, self.i_bound)


class Report:
    def __init__(self, fmt: str, out):
        self.fmt = fmt
        self.out = out

    def put(self, key: str, value) -> None:
        if isinstance(value, bool):
            value = "true" if value else "false"
        if self.fmt == "kv":
            print(f"{key}: {value}", file=self.out)
        else:
            print(f"{key.replace('_', ' '):<22} {value}", file=self.out)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="speciallab",
        description="Analyse special monoids presented by parameterised rule schemas.",
    )
    ap.add_argument("--family", choices=["pi", "mn"])
    ap.add_argument("--n", type=int)
    ap.add_argument("--file")
    ap.add_argument("--i-bound", type=int, default=8, help="parameter bound for instantiation (default 8)")
    ap.add_argument("--witness-bound", type=int, default=None, help="inverse search length (default: auto)")
    ap.add_argument("--e-bound", type=int, default=5, help="exponent bound for slice (default 5)")
    ap.add_argument("--format", choices=["text", "kv"], default="text")
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("check", help="termination and bounded local confluence")
    sub.add_parser("nf", help="normal form of a word").add_argument("word")
    p = sub.add_parser("eq", help="equality in the monoid")
    p.add_argument("u")
    p.add_argument("v")
    sub.add_parser("wp", help="membership of u#v^rev in the word problem").add_argument("query")
    sub.add_parser("invertible", help="left/right inverse search").add_argument("word")
    sub.add_parser("factor", help="minimal invertible factorisation").add_argument("word")
    sub.add_parser("lambda", help="the minimal word set")
    sub.add_parser("units", help="presentation of the group of units")
    sub.add_parser("classify", help="structure of the group of units")
    p = sub.add_parser("grammar", help="grammar for a left-hand-side language")
    p.add_argument("--pattern", help="pattern to export instead of the system's rules")
    sub.add_parser("slice", help="word-problem slice (a b* c)^n #").add_argument("n", type=int)
    sub.add_parser("verdict", help="context-freeness of Pi_n").add_argument("n", type=int)
    return ap


def _word(cfg_sys: RewriteSystem, text: str) -> str:
    return cfg_sys.alphabet.check(parse_word(text, cfg_sys.alphabet))


def _bounds(rep: Report, cfg: RunConfig, sys: Optional[RewriteSystem] = None, witness=False):
    rep.put("i_bound", cfg.i_bound)
    if witness and sys is not None:
        rep.put("witness_bound", cfg.witness(sys))


def cmd_check(cfg, rep, args) -> int:
    sys = cfg.system()
    _bounds(rep, cfg)
    rep.put("length_reducing", sys.is_length_reducing)
    rep.put("special", sys.is_special)
    rep.put("monadic", sys.is_monadic)
    if not sys.is_length_reducing:
        rep.put("verdict", "termination not established")
        return EXIT_FALSE
    report = check_local_confluence(sys, cfg.i_bound)
    rep.put("pairs_examined", report.pairs_examined)
    rep.put("unjoinable", len(report.unjoinable))
    rep.put("mixed_parameter_pairs", report.mixed_parameter_pairs)
    for shape in report.shapes:
        k1, k2 = shape.rules
        if shape.pattern is not None:
            desc = format_pattern(shape.pattern, sys.alphabet, sys.param_name)
            values = [p[0] for p in shape.params]
            desc += f" ({sys.param_name}={min(values)}..{max(values)})"
        else:
            desc = ", ".join(sys.render_word(s) for s in shape.sources)
        rep.put("shape", f"{shape.overlap_kind} rules {k1},{k2}: {desc}")
    for cp in report.unjoinable:
        rep.put("unjoinable_pair",
                f"{sys.render_word(cp.source)} -> {sys.render_word(cp.left_result)} | "
                f"{sys.render_word(cp.right_result)}")
    rep.put("verdict", report.verdict)
    return EXIT_OK if report.ok else EXIT_FALSE


def cmd_nf(cfg, rep, args) -> int:
    sys = cfg.system()
    w = _word(sys, args.word)
    rep.put("word", sys.render_word(w))
    rep.put("normal_form", sys.render_word(normal_form(sys, w)))
    return EXIT_OK


def _gate(cfg, rep, sys) -> None:
    ensure_complete(sys, cfg.i_bound)
    _bounds(rep, cfg)
    rep.put("completeness", "locally-confluent-up-to-bound")


def cmd_eq(cfg, rep, args) -> int:
    sys = cfg.system()
    u, v = _word(sys, args.u), _word(sys, args.v)
    _gate(cfg, rep, sys)
    nu, nv = normal_form(sys, u), normal_form(sys, v)
    rep.put("normal_form_u", sys.render_word(nu))
    rep.put("normal_form_v", sys.render_word(nv))
    rep.put("equal", nu == nv)
    return EXIT_OK if nu == nv else EXIT_FALSE


def cmd_wp(cfg, rep, args) -> int:
    sys = cfg.system()
    q = WpQuery.parse(args.query, sys.alphabet)
    _gate(cfg, rep, sys)
    member = wp_member(sys, q, cfg.i_bound)
    rep.put("u", sys.render_word(q.u))
    rep.put("v", sys.render_word(q.v))
    rep.put("member", member)
    return EXIT_OK if member else EXIT_FALSE


def cmd_invertible(cfg, rep, args) -> int:
    sys = cfg.system()
    w = _word(sys, args.word)
    _gate(cfg, rep, sys)
    bound = cfg.witness(sys)
    rep.put("witness_bound", bound)
    r, l = right_inverse(sys, w, bound), left_inverse(sys, w, bound)
    rep.put("right_inverse", "not found within bound" if r is None else sys.render_word(r))
    rep.put("left_inverse", "not found within bound" if l is None else sys.render_word(l))
    lam = None
    if r is None or l is None:
        try:
            lam = compute_lambda(sys, bound, cfg.i_bound)
        except (NotInvertibleError, InconclusiveError):
            lam = None
    status = invertibility_status(sys, w, bound, lam)
    rep.put("status", status)
    return EXIT_OK if status == "invertible" else EXIT_FALSE


def cmd_factor(cfg, rep, args) -> int:
    sys = cfg.system()
    w = _word(sys, args.word)
    _gate(cfg, rep, sys)
    bound = cfg.witness(sys)
    rep.put("witness_bound", bound)
    try:
        fac = minimal_factorization(sys, w, bound)
    except (NotInvertibleError, InconclusiveError) as e:
        rep.put("error", str(e))
        return EXIT_FALSE
    rep.put("factors", " | ".join(sys.render_word(f) for f in fac.factors))
    rep.put("count", len(fac.factors))
    return EXIT_OK


def _lambda(cfg, rep, sys):
    _gate(cfg, rep, sys)
    bound = cfg.witness(sys)
    rep.put("witness_bound", bound)
    return compute_lambda(sys, bound, cfg.i_bound)


def cmd_lambda(cfg, rep, args) -> int:
    sys = cfg.system()
    lam = _lambda(cfg, rep, sys)
    for text in lam.render(sys.alphabet, sys.param_name):
        rep.put("pattern", text)
    for note in lam.warnings:
        rep.put("warning", note)
    rep.put("biprefix", bool(check_biprefix(lam)))
    return EXIT_OK


def cmd_units(cfg, rep, args, only_classify=False) -> int:
    sys = cfg.system()
    lam = _lambda(cfg, rep, sys)
    up = units_presentation(sys, lam)
    if not only_classify:
        for k, g in enumerate(up.render_generators()):
            pat = format_pattern(lam.patterns[k], sys.alphabet, sys.param_name)
            rep.put("generator", f"{g} <- {pat}")
        for rel in up.render_relators():
            rep.put("relator", rel)
    cls = classify_units(up)
    rep.put("classification", cls.description)
    rep.put("finitely_generated", "unknown" if cls.finitely_generated is None else cls.finitely_generated)
    if sys.is_special:
        rep.put("maximal_subgroups", MAXIMAL_SUBGROUP_CITATION)
    return EXIT_OK


def cmd_grammar(cfg, rep, args) -> int:
    if args.pattern is not None:
        sys = cfg.system() if cfg.has_source else None
        alphabet = sys.alphabet if sys else None
        patterns = [ParamPattern.parse(args.pattern, alphabet=alphabet)]
    else:
        sys = cfg.system()
        patterns = [r.lhs for r in sys.rules]
    for p in patterns:
        g = export_lhs_grammar(p)
        rep.put("pattern", format_pattern(p))
        for line in format_grammar(g).splitlines():
            rep.put("grammar", line)
    return EXIT_OK


def _pi_or_source(cfg, n):
    return cfg.system() if cfg.has_source else make_pi(n).to_rewrite_system()


def cmd_slice(cfg, rep, args) -> int:
    sys = _pi_or_source(cfg, args.n)
    report = enumerate_wp_slice(sys, args.n, cfg.e_bound)
    rep.put("n", report.n)
    rep.put("e_bound", report.e_bound)
    rep.put("tested", report.tested)
    rep.put("members", " ".join("(" + ",".join(map(str, t)) + ")" for t in sorted(report.members)))
    rep.put("agreement", report.agreement)
    return EXIT_OK if report.agreement else EXIT_FALSE


def cmd_verdict(cfg, rep, args) -> int:
    v = cf_verdict(args.n, e_bound=min(cfg.e_bound, 4))
    rep.put("n", v.n)
    rep.put("context_free", v.context_free)
    rep.put("claim", v.claim)
    if v.grammar is not None:
        for line in format_grammar(v.grammar).splitlines():
            rep.put("grammar", line)
    if v.slice is not None:
        rep.put("e_bound", v.slice.e_bound)
        rep.put("slice_members", " ".join("(" + ",".join(map(str, t)) + ")" for t in sorted(v.slice.members)))
        rep.put("slice_agreement", v.slice.agreement)
    return EXIT_OK if v.context_free else EXIT_FALSE


COMMANDS = {
    "check": cmd_check,
    "nf": cmd_nf,
    "eq": cmd_eq,
    "wp": cmd_wp,
    "invertible": cmd_invertible,
    "factor": cmd_factor,
    "lambda": cmd_lambda,
    "units": cmd_units,
    "classify": lambda cfg, rep, args: cmd_units(cfg, rep, args, only_classify=True),
    "grammar": cmd_grammar,
    "slice": cmd_slice,
    "verdict": cmd_verdict,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or _sys.stdout
    err = err or _sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else EXIT_OK
    rep = Report(args.format, out)
    try:
        cfg = RunConfig(args.family, args.n, args.file, args.i_bound, args.witness_bound,
                        args.e_bound, args.format)
        return COMMANDS[args.command](cfg, rep, args)
    except IncompleteSystemError as e:
        print(f"error: completeness not established at stage {e.stage}: {e.detail}", file=err)
    except GrammarError as e:
        print(f"error: not context-free: {e}", file=err)
    except (UsageError, PatternError, PresentationError, ValueError, OSError) as e:
        print(f"error: {e}", file=err)
    return EXIT_ERROR


def main():
    _sys.exit(run())


if __name__ == "__main__":
    main()
