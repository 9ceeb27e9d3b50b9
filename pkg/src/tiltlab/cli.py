"""Command line interface: ``tiltlab <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage error."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import padic, projectors, quiveralg, repchar
from .cache import DiskCache
from .exactnum import check_prime

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _prime(s: str) -> int:
    p = int(s)
    try:
        check_prime(p)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))
    return p


def _positive(s: str) -> int:
    n = int(s)
    if n < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return n


def _write(path: str | None, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_padic(a) -> int:
    ctx = padic.expand(a.v, a.p).to_json()
    anc = padic.ancestry(a.v, a.p)
    ctx.update(
        vertex=a.v - 1,
        mother=anc.mother,
        ancestors=list(anc.ancestors),
        eve=anc.eve,
        block=padic.block_of(a.v, a.p) - 1,
        minimal_down_stretches=[list(S) for S in padic.minimal_down_stretches(a.v, a.p)],
        generators=[str(g) for g in quiveralg.generators_at(a.v, a.p)],
    )
    print(json.dumps(ctx, indent=None if a.compact else 2))
    return EXIT_OK


def cmd_projector(a) -> int:
    projectors.set_max_strands(a.max_strands)
    if a.v - 1 > a.max_strands:
        raise UsageError(f"v-1={a.v - 1} strands exceeds --max-strands {a.max_strands}")
    cache = None if a.no_cache else DiskCache(a.cache_dir)
    if a.rational:
        build = lambda: projectors.pqjw_closed(a.v, a.p)  # noqa: E731
        f = cache.get_or_build((f"pqjw{a.p}", "Q", a.v), build) if cache else build()
    else:
        projectors.set_disk_cache(cache)
        f = projectors.pjw(a.v, a.p)
    _write(a.out, json.dumps(f.to_json()) + "\n")
    if a.out not in (None, "-"):
        print(f"{'pqJW' if a.rational else 'pJW'}({a.v - 1}) over {'Q' if a.rational else f'F{a.p}'}: "
              f"{len(f)} terms -> {a.out}")
    return EXIT_OK


def cmd_rewrite(a) -> int:
    try:
        word = quiveralg.parse_word(a.word, a.p)
    except (ValueError, quiveralg.NotComposable) as e:
        raise UsageError(f"invalid word: {e}")
    nf = quiveralg.rewrite(word, fuel=a.fuel)
    if a.json:
        print(json.dumps(nf.to_json()))
    else:
        print(f"{word.written()}  ({word.v - 1} -> {word.target - 1})")
        print(f"  = {nf}")
    return EXIT_OK


def cmd_quiver(a) -> int:
    g = quiveralg.quiver_graph(a.p, a.vmax)
    if a.dot:
        _write(a.dot, g.to_dot())
    if a.json:
        _write(a.json, json.dumps(g.to_json()) + "\n")
    if not a.dot and not a.json:
        sys.stdout.write(g.to_dot())
    else:
        print(f"{len(g.vertices)} vertices, {len(g.arrows)} arrows, {len(g.blocks())} blocks")
    return EXIT_OK


def cmd_characters(a) -> int:
    text = repchar.to_csv(repchar.table(a.p, a.vmax))
    _write(a.csv, text)
    return EXIT_OK


def cmd_verify(a) -> int:
    from . import verify

    names = a.suite or None
    for n in names or []:
        if n not in verify.SUITES:
            raise UsageError(f"unknown suite {n!r}; choose from {', '.join(verify.SUITES)}")
    report = verify.verify(a.p, a.vmax, names, jobs=a.jobs, seed=a.seed)
    for s in report.suites:
        status = "ok" if s.passed else "FAIL"
        print(f"[{status}] {s.suite}: {len(s.checks) - len(s.failures)}/{len(s.checks)} passed ({s.seconds:.1f}s)")
        for c in s.failures:
            print(f"    failed: {c.name} {c.detail}")
        for f in s.findings:
            print(f"    finding: {f}")
    if a.json:
        _write(a.json, json.dumps(report.to_json(), indent=2) + "\n")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_report(a) -> int:
    from .report import make_report

    for f in make_report(a.p, a.vmax, a.out):
        print(f)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tiltlab", description=__doc__.splitlines()[0])
    ap.add_argument("--log-level", default="WARNING")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("padic", help="digit combinatorics of v")
    sp.add_argument("action", choices=["info"])
    sp.add_argument("--p", type=_prime, required=True)
    sp.add_argument("--v", type=_positive, required=True)
    sp.add_argument("--compact", action="store_true")
    sp.set_defaults(func=cmd_padic)

    sp = sub.add_parser("projector", help="compute a (p-)Jones-Wenzl projector")
    sp.add_argument("--p", type=_prime, required=True)
    sp.add_argument("--v", type=_positive, required=True)
    sp.add_argument("--rational", action="store_true", help="the rational projector instead of its reduction")
    sp.add_argument("--out", default="-")
    sp.add_argument("--cache-dir", default=None, help="defaults to $TILTLAB_CACHE or ./.tiltlab-cache")
    sp.add_argument("--no-cache", action="store_true")
    sp.add_argument("--max-strands", type=int, default=projectors.MAX_STRANDS)
    sp.set_defaults(func=cmd_projector)

    sp = sub.add_parser("rewrite", help="normal form of a quiver word")
    sp.add_argument("--p", type=_prime, required=True)
    sp.add_argument("--word", required=True, help='e.g. "D{0} U{0} @ 10"')
    sp.add_argument("--fuel", type=int, default=quiveralg.DEFAULT_FUEL)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_rewrite)

    sp = sub.add_parser("quiver", help="export the quiver")
    sp.add_argument("--p", type=_prime, required=True)
    sp.add_argument("--vmax", type=_positive, required=True)
    sp.add_argument("--dot")
    sp.add_argument("--json")
    sp.set_defaults(func=cmd_quiver)

    sp = sub.add_parser("characters", help="character table as CSV")
    sp.add_argument("--p", type=_prime, required=True)
    sp.add_argument("--vmax", type=_positive, required=True)
    sp.add_argument("--csv", default="-")
    sp.set_defaults(func=cmd_characters)

    sp = sub.add_parser("verify", help="run verification suites")
    sp.add_argument("--p", type=_prime, required=True)
    sp.add_argument("--vmax", type=_positive, default=12)
    sp.add_argument("--suite", action="append", help="repeatable; default all")
    sp.add_argument("--jobs", type=_positive, default=1)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--json")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("report", help="figures and CSV tables")
    sp.add_argument("--p", type=_prime, required=True)
    sp.add_argument("--vmax", type=_positive, default=53)
    sp.add_argument("--out", default="report")
    sp.set_defaults(func=cmd_report)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    logging.basicConfig(level=getattr(logging, str(a.log_level).upper(), logging.WARNING))
    try:
        return a.func(a)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except quiveralg.RewriteError as e:
        print(f"error: {e}; stuck term: {e.term}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
