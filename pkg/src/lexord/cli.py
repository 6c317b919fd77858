"""Command-line front end: ``lexord COMMAND ...``.

Exit status is 0 on success, 1 on a domain or I/O error (message on
stderr) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import catalog
from .errors import LexordError
from .grammar import format_word, height, load_grammar, member, parse_word, reduce, render_grammar
from .interval import fc_rank_bound, finite_distance, interval_grammar, sim1_partition
from .lexorder import DEFAULT_BOTTOM, enumerate_window
from .terms import classify, condense_step, fc_rank, parse_term, render_term, step_label

GRAMMAR_COMMANDS = {
    "normalize": "print the grammar in weak Greibach normal form",
    "height": "height of a weak-GNF grammar",
    "bound": "FC-rank bound w^height + 1",
    "member": "decide membership of a word",
    "enumerate": "list the language up to --max-len, in lexicographic order",
    "interval": "grammar for the words between U and V",
    "findist": "are U and V at finite distance?",
    "classes": "~1 classes of the window up to --max-len",
}
TERM_COMMANDS = {
    "rank": "FC-rank of an order term",
    "condense": "one finite-condensation step of an order term",
    "classify": "scattered / dense / quasi-dense classification",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lexord", description="Lexicographic orderings of context-free languages and FC-ranks of order terms.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")

    gram = argparse.ArgumentParser(add_help=False, parents=[common])
    gram.add_argument("grammar", help="grammar file")
    gram.add_argument("--prefixify", metavar="SYM",
                      help=f"append the fresh least symbol SYM to every word (e.g. {DEFAULT_BOTTOM!r})")
    gram.add_argument("--encode-binary", action="store_true", help="encode the alphabet over 0 < 1")
    gram.add_argument("--gnf", action="store_true", help="convert to weak Greibach normal form")

    for name, help_ in GRAMMAR_COMMANDS.items():
        p = sub.add_parser(name, parents=[gram], help=help_)
        if name == "member":
            p.add_argument("word")
        if name in ("interval", "findist"):
            p.add_argument("u")
            p.add_argument("v")
        if name in ("enumerate", "classes"):
            p.add_argument("--max-len", type=int, default=8, metavar="K")

    for name, help_ in TERM_COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("term", help="order term text, or a file containing one")
        if name == "rank":
            p.add_argument("--trace", action="store_true", help="print every condensation step")

    p = sub.add_parser("check", parents=[common], help="run the fixture catalog")
    p.add_argument("--fixtures", default=str(catalog.FIXTURE_DIR), help="fixture directory")
    p.add_argument("--seed", type=int, default=0)
    return parser


def _load(args):
    raw = load_grammar(args.grammar)
    steps = []
    if args.prefixify is not None:
        steps.append("prefixify")
    if args.encode_binary:
        steps.append("encode_binary")
    if args.gnf or args.command == "normalize":
        steps.append("gnf")
    g, word_map = catalog.apply_pipeline(raw, steps, args.prefixify or DEFAULT_BOTTOM)
    return raw, reduce(g), word_map


def _word(text, raw, word_map):
    return word_map(parse_word(text, raw.alphabet))


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (tuple, list)):
        return [_jsonable(y) for y in x]
    return x


def _run_grammar(args) -> tuple[list, dict]:
    raw, g, word_map = _load(args)
    show = lambda w: format_word(w, g.alphabet)  # noqa: E731
    cmd = args.command
    if cmd == "normalize":
        text = render_grammar(g).rstrip("\n")
        return text.splitlines(), {"result": text}
    if cmd == "height":
        h = height(g)
        return [str(h)], {"result": h}
    if cmd == "bound":
        b = str(fc_rank_bound(g))
        return [b], {"result": b}
    if cmd == "member":
        ok = member(g, _word(args.word, raw, word_map))
        return [str(ok).lower()], {"result": ok}
    if cmd == "enumerate":
        words = [show(w) for w in enumerate_window(g, args.max_len)]
        return words, {"result": words}
    if cmd == "interval":
        res = interval_grammar(g, _word(args.u, raw, word_map), _word(args.v, raw, word_map))
        text = render_grammar(res.gprime).rstrip("\n")
        stats = res.stats()
        lines = text.splitlines() + [f"# {k}: {v}" for k, v in stats.items()]
        return lines, {"result": {"grammar": text, **stats}}
    if cmd == "findist":
        fin = finite_distance(g, _word(args.u, raw, word_map), _word(args.v, raw, word_map))
        word = "finite" if fin else "infinite"
        return [word], {"result": word}
    if cmd == "classes":
        classes = [[show(w) for w in c] for c in sim1_partition(g, args.max_len)]
        return [" ".join(c) for c in classes], {"result": classes}
    raise AssertionError(cmd)


def _read_term(arg: str):
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            arg = fh.read()
    return parse_term(arg)


def _run_term(args) -> tuple[list, dict]:
    t = _read_term(args.term)
    if args.command == "rank":
        tr = fc_rank(t)
        rank = str(tr.rank)
        report = {"result": rank, "outcome": tr.outcome.value}
        lines = []
        if args.trace:
            trace = []
            for i, step in enumerate(tr.steps):
                label = f"step {step_label(tr, i)}"
                trace.append({"label": label, "term": render_term(step)})
                lines.append(f"{label}: {render_term(step)}")
            report["trace"] = trace
            lines.append(f"outcome: {tr.outcome.value}")
            lines.append(f"rank: {rank}")
        else:
            lines.append(rank)
        return lines, report
    if args.command == "condense":
        text = render_term(condense_step(t)[0])
        return [text], {"result": text}
    cls = classify(t).value
    return [cls], {"result": cls}


def _run_check(args) -> tuple[list, dict, int]:
    results = catalog.check(args.fixtures, args.seed)
    failed = [r for r in results if not r.passed]
    lines = [r.line() for r in results]
    lines.append(f"{len(results) - len(failed)}/{len(results)} checks passed")
    report = {
        "result": [
            {"entry": r.entry, "check": r.check, "passed": r.passed, "detail": r.detail}
            for r in results
        ],
        "failed": len(failed),
    }
    return lines, report, 1 if failed else 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    inputs = {k: v for k, v in vars(args).items() if k not in ("command", "json")}
    status = 0
    try:
        if args.command in GRAMMAR_COMMANDS:
            lines, report = _run_grammar(args)
        elif args.command in TERM_COMMANDS:
            lines, report = _run_term(args)
        else:
            lines, report, status = _run_check(args)
    except (LexordError, OSError) as exc:
        print(f"lexord: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if args.json:
        out = {"command": args.command, "inputs": inputs, **report}
        print(json.dumps(_jsonable(out), indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)
    return status


def run() -> None:
    sys.exit(main())
