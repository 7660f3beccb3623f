"""Command line front end: ``soire infer|metrics|soa|match``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Sequence

from . import ingest
from .inference import isoire
from .metrics import DEFAULT_STATE_CAP, StateLimitExceeded, evaluate
from .regex import Alphabet, RegexSyntaxError, matches, parse, to_text
from .soa import SampleSet, build_soa

log = logging.getLogger("soire")


class UsageError(Exception):
    pass


class _StderrHandler(logging.StreamHandler):
    # looks sys.stderr up on every record so redirection after startup works
    @property
    def stream(self):
        return sys.stderr

    @stream.setter
    def stream(self, _value):
        pass


def _setup_logging(verbosity: int) -> None:
    root = logging.getLogger("soire")
    if not any(isinstance(h, _StderrHandler) for h in root.handlers):
        handler = _StderrHandler()
        handler.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
        root.addHandler(handler)
        root.propagate = False
    root.setLevel(logging.WARNING - 10 * min(verbosity, 2))


def _open_samples(path: str, alphabet: Alphabet, letters: bool) -> SampleSet:
    if path == "-":
        return ingest.read_samples(sys.stdin, alphabet, letters)
    with open(path, encoding="utf-8") as fh:
        return ingest.read_samples(fh, alphabet, letters)


def _abbreviations(args) -> dict[str, str] | None:
    if args.abbrev_file:
        with open(args.abbrev_file, encoding="utf-8") as fh:
            return ingest.read_abbreviations(fh)
    if args.abbrev:
        return dict(ingest.DBLP_ABBREVIATIONS)
    return None


def _dedup(samples: SampleSet) -> SampleSet:
    return SampleSet(samples.distinct(), samples.alphabet)


def _infer_one(name: str | None, samples: SampleSet, args, names) -> tuple[dict, bool]:
    total = len(samples)
    if args.dedup:
        samples = _dedup(samples)
    if not samples.words:
        log.warning("no samples%s; the result is the empty language",
                    f" for <{name}>" if name else "")
    r = isoire(samples)
    doc = {"expression": to_text(r, names), "samples": total,
           "distinct": len(samples.distinct())}
    if name is not None:
        doc = {"element": name, **doc}
    ok = True
    if args.verify:
        misses = [w for w in samples.distinct() if not matches(r, w)]
        doc["verified"] = not misses
        for w in misses[:10]:
            log.error("sample %r is not matched", samples.alphabet.spell(w))
        ok = not misses
    return doc, ok


def cmd_infer(args) -> int:
    names = _abbreviations(args)
    jobs: list[tuple[str | None, SampleSet]] = []
    if args.xml:
        if not args.element:
            raise UsageError("--xml needs at least one --element")
        table = ingest.ElementSampleTable()
        with open(args.xml, "rb") as fh:
            table.add_document(fh, args.element)
        jobs = [(e, table[e]) for e in args.element]
    else:
        jobs = [(None, _open_samples(args.samples, Alphabet(), args.letters))]
    all_ok = True
    for name, samples in jobs:
        doc, ok = _infer_one(name, samples, args, names)
        all_ok &= ok
        if args.json:
            print(json.dumps(doc, ensure_ascii=False))
        else:
            prefix = f"{name}: " if name is not None else ""
            print(prefix + doc["expression"])
    return 0 if all_ok else 1


def cmd_metrics(args) -> int:
    alphabet = Alphabet()
    r = parse(args.expr, alphabet)
    samples = _open_samples(args.samples, alphabet, args.letters) if args.samples else None
    report = evaluate(r, samples, args.state_cap)
    if report.note:
        log.warning("datacost omitted: %s", report.note)
    print(report.to_json() if args.json else report.to_text())
    return 0


def cmd_soa(args) -> int:
    samples = _open_samples(args.samples, Alphabet(), args.letters)
    sys.stdout.write(build_soa(samples).to_dot())
    return 0


def cmd_match(args) -> int:
    alphabet = Alphabet()
    r = parse(args.expr, alphabet)
    letters = True if args.letters else None
    ok = matches(r, alphabet.word(args.word, letters))
    if not args.quiet:
        print("match" if ok else "no match")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="soire", description="Learn and evaluate SOIREs.")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    def word_opts(q):
        q.add_argument("--letters", action="store_true",
                       help="treat every character of a sample line as a symbol")

    q = sub.add_parser("infer", help="infer a SOIRE from samples or XML")
    src = q.add_mutually_exclusive_group(required=True)
    src.add_argument("--samples", metavar="FILE", help="one word per line, '-' for stdin")
    src.add_argument("--xml", metavar="FILE")
    q.add_argument("--element", action="append", metavar="NAME",
                   help="element whose content model is learned (repeatable)")
    q.add_argument("--verify", action="store_true", help="check every sample is matched")
    q.add_argument("--json", action="store_true")
    q.add_argument("--dedup", action="store_true", help="collapse identical words first")
    q.add_argument("--abbrev", action="store_true", help="print DBLP element abbreviations")
    q.add_argument("--abbrev-file", metavar="FILE", help="'name abbrev' pairs for printing")
    word_opts(q)
    q.set_defaults(func=cmd_infer)

    q = sub.add_parser("metrics", help="language size, datacost, Len and ND of an expression")
    q.add_argument("--expr", required=True)
    q.add_argument("--samples", metavar="FILE")
    q.add_argument("--json", action="store_true")
    q.add_argument("--state-cap", type=int, default=DEFAULT_STATE_CAP)
    word_opts(q)
    q.set_defaults(func=cmd_metrics)

    q = sub.add_parser("soa", help="print the 2T-INF automaton of the samples")
    q.add_argument("--samples", metavar="FILE", required=True)
    q.add_argument("--dot", action="store_true", help="DOT output (the only format)")
    word_opts(q)
    q.set_defaults(func=cmd_soa)

    q = sub.add_parser("match", help="exit 0 iff the word is in the language")
    q.add_argument("--expr", required=True)
    q.add_argument("--word", required=True)
    q.add_argument("-q", "--quiet", action="store_true")
    word_opts(q)
    q.set_defaults(func=cmd_match)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    _setup_logging(args.verbose)
    try:
        return args.func(args)
    except (RegexSyntaxError, ingest.XmlSyntaxError, UsageError, ValueError) as exc:
        print(f"soire: error: {exc}", file=sys.stderr)
        return 2
    except StateLimitExceeded as exc:
        print(f"soire: resource limit: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"soire: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
