"""Command-line front end.

Exit codes: 0 success, 1 certificate rejected, 2 unreadable or malformed
input, 3 learner round limit reached, 4 explicit-state budget exceeded,
5 unrealizable game (an initial vertex is losing).
"""

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import automata, benchmarks, kernels, lstar
from .errors import (BudgetExceeded, InputError, RegsynthError, RoundLimitExceeded,
                     TeacherContractError, Unrealizable)
from .game import DEFAULT_BUDGET, PLAYER0, load_game, parse_game, slice_arena, solve_finite
from .teacher import Teacher, verify_certificate

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INPUT = 2
EXIT_ROUNDS = 3
EXIT_BUDGET = 4
EXIT_UNREALIZABLE = 5

SYNTHESIZED = "Synthesized"
VALID = "CertificateValid"
INVALID = "CertificateInvalid"
ABORTED = "Aborted"


@dataclass
class RunReport:
    game: str
    outcome: str
    size: int = None
    stats: dict = None
    seconds: float = 0.0
    failures: list = field(default_factory=list)
    message: str = ""
    exit_code: int = EXIT_OK

    def as_dict(self):
        return {"game": self.game, "outcome": self.outcome, "size": self.size,
                "seconds": round(self.seconds, 4), "stats": self.stats,
                "failures": self.failures, "message": self.message,
                "exit_code": self.exit_code}

    def text(self):
        line = f"{self.game}: {self.outcome}"
        if self.size is not None:
            line += f", size {self.size}"
        if self.stats:
            line += (f", {self.stats['membership_queries']} membership / "
                     f"{self.stats['equivalence_queries']} equivalence queries")
        line += f", {self.seconds:.2f}s"
        if self.message:
            line += f" ({self.message})"
        out = [line]
        out += [f"  {f['cause']}: witness {f['witness']}" for f in self.failures]
        return "\n".join(out)


def _emit(report, fmt, stream):
    if fmt == "json-lines":
        stream.write(json.dumps(report.as_dict()) + "\n")
    else:
        stream.write(report.text() + "\n")


def certificate_text(g, dfa):
    return ("alphabet: " + " ".join(g.alphabet.symbols) + "\n"
            "automaton W\n" + automata.render_automaton(dfa))


def load_certificate(g, path):
    text = Path(path).read_text(encoding="utf-8")
    return automata.parse_automaton(text, g.alphabet)


def _failure_records(g, cert):
    return [{"cause": c.cause.value, "witness": g.alphabet.show(c.witness)}
            for c in cert.failures()]


@dataclass
class Synthesis:
    report: RunReport
    dfa: object = None
    teacher: object = None
    learning: object = None


def synthesize(g, rounds=lstar.DEFAULT_ROUNDS, trace=None):
    """Learn a winning set for ``g`` and re-verify it independently.

    Never raises for the expected failure modes; they are reported through the
    outcome ``Aborted`` and the matching exit code.
    """
    name = g.name or "game"
    teacher = Teacher(g, trace=trace)
    start = time.perf_counter()
    try:
        h, stats = lstar.learn(teacher, max_rounds=rounds, trace=trace)
    except RoundLimitExceeded as exc:
        return Synthesis(RunReport(name, ABORTED, stats=exc.stats.as_dict(),
                                   seconds=time.perf_counter() - start, message=str(exc),
                                   exit_code=EXIT_ROUNDS), teacher=teacher)
    except BudgetExceeded as exc:
        return Synthesis(RunReport(name, ABORTED, seconds=time.perf_counter() - start,
                                   message=str(exc), exit_code=EXIT_BUDGET), teacher=teacher)
    except Unrealizable as exc:
        return Synthesis(RunReport(name, ABORTED, seconds=time.perf_counter() - start,
                                   message=str(exc), exit_code=EXIT_UNREALIZABLE), teacher=teacher)
    dfa = automata.minimize(h)
    cert = verify_certificate(g, dfa)
    seconds = time.perf_counter() - start
    report = RunReport(name, SYNTHESIZED, dfa.n_states, stats.as_dict(), seconds)
    problems = stats.envelope_violations()
    if not cert.valid:
        # the teacher accepted something the verifier rejects: never report success
        report.outcome, report.exit_code = INVALID, EXIT_INVALID
        report.failures = _failure_records(g, cert)
        report.message = "learned set failed re-verification"
    elif problems:
        report.message = "; ".join(problems)
    return Synthesis(report, dfa, teacher, stats)


class _Trace:
    def __init__(self, path):
        self.handle = open(path, "w", encoding="utf-8") if path else None

    def __call__(self, record):
        self.handle.write(json.dumps(record) + "\n")

    @property
    def sink(self):
        return self if self.handle else None

    def close(self):
        if self.handle:
            self.handle.close()


def _with_budget(g, args):
    g.budget = args.budget
    return g


def cmd_synth(args, out):
    g = _with_budget(load_game(args.game), args)
    trace = _Trace(args.trace)
    try:
        result = synthesize(g, args.rounds, trace.sink)
    finally:
        trace.close()
    report = result.report
    if result.dfa is not None and report.outcome == SYNTHESIZED:
        target = Path(args.output) if args.output else Path(args.game).with_suffix(".cert")
        target.write_text(certificate_text(g, result.dfa), encoding="utf-8")
        if args.dot:
            Path(args.dot).write_text(automata.to_dot(result.dfa, g.name or "W"), encoding="utf-8")
        report.message = (report.message + "; " if report.message else "") + f"wrote {target}"
    _emit(report, args.format, out)
    return report.exit_code


def cmd_verify(args, out):
    g = _with_budget(load_game(args.game), args)
    dfa = load_certificate(g, args.certificate)
    cert = verify_certificate(g, dfa)
    d = automata.minimize(cert.dfa)
    report = RunReport(g.name, VALID if cert.valid else INVALID, d.n_states,
                       seconds=cert.seconds, failures=_failure_records(g, cert),
                       exit_code=EXIT_OK if cert.valid else EXIT_INVALID)
    _emit(report, args.format, out)
    if args.dot:
        Path(args.dot).write_text(automata.to_dot(d, g.name or "W"), encoding="utf-8")
    return report.exit_code


def cmd_slice(args, out):
    g = _with_budget(load_game(args.game), args)
    arena = slice_arena(g, args.length, args.budget)
    won = solve_finite(arena)
    show = g.alphabet.show
    for w, owner, bad, win in zip(arena.vertices, arena.owner, arena.bad, won):
        record = {"word": show(w), "owner": 0 if owner == PLAYER0 else 1, "bad": bool(bad),
                  "winner": 0 if win else 1}
        if args.format == "json-lines":
            out.write(json.dumps(record) + "\n")
        else:
            out.write(f"{record['word']}\tP{record['owner']}\t{'bad' if bad else '-'}\t"
                      f"won by P{record['winner']}\n")
    if args.format == "text":
        out.write(f"# {len(arena)} vertices, {sum(won)} won by Player 0\n")
    return EXIT_OK


def cmd_bench(args, out):
    names = benchmarks.list_benchmarks() if args.names in ([], ["all"]) else args.names
    outdir = Path(args.out) if args.out else None
    if outdir:
        outdir.mkdir(parents=True, exist_ok=True)
    worst = EXIT_OK
    total = time.perf_counter()
    for name in names:
        try:
            text = benchmarks.generate(name)
            if outdir:
                (outdir / f"{name}.game").write_text(text, encoding="utf-8")
            g = parse_game(text, name=name)
            g.budget = args.budget
            result = synthesize(g, args.rounds)
            if outdir and result.dfa is not None and result.report.outcome == SYNTHESIZED:
                (outdir / f"{name}.cert").write_text(certificate_text(g, result.dfa),
                                                     encoding="utf-8")
            report = result.report
        except (KeyError, RegsynthError) as exc:
            # one broken benchmark must not stop the batch
            code = EXIT_INPUT if isinstance(exc, (KeyError, InputError)) else EXIT_INVALID
            report = RunReport(name, ABORTED, message=str(exc), exit_code=code)
        _emit(report, args.format, out)
        worst = max(worst, report.exit_code)
    if args.format == "text":
        out.write(f"# total {time.perf_counter() - total:.2f}s, backend {kernels.BACKEND}\n")
    return worst


def cmd_generate(args, out):
    names = benchmarks.list_benchmarks() if args.names in ([], ["all"]) else args.names
    if args.out:
        for path in benchmarks.write_all(args.out, names):
            out.write(f"{path}\n")
    else:
        for name in names:
            out.write(benchmarks.generate(name))
    return EXIT_OK


def cmd_list(args, out):
    for spec in benchmarks.CATALOG:
        if args.verbose:
            out.write(benchmarks.describe(spec) + "\n\n")
        else:
            out.write(f"{spec.name:<20} {spec.summary}\n")
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, metavar="VERTICES",
                        help="bound on explicit vertices per finite game (default %(default)s)")
    common.add_argument("--rounds", type=int, default=lstar.DEFAULT_ROUNDS, metavar="K",
                        help="maximum number of equivalence queries (default %(default)s)")
    common.add_argument("--format", choices=("text", "json-lines"), default="text")

    p = argparse.ArgumentParser(prog="regsynth",
                                description="Learn winning sets of regular safety games.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("synth", parents=[common], help="synthesize a winning-set certificate")
    s.add_argument("game")
    s.add_argument("-o", "--output", help="certificate path (default: GAME with .cert suffix)")
    s.add_argument("--dot", help="also write the certificate as a DOT graph")
    s.add_argument("--trace", help="write one JSON record per query to this file")
    s.set_defaults(func=cmd_synth)

    s = sub.add_parser("verify", parents=[common], help="check a certificate against a game")
    s.add_argument("game")
    s.add_argument("certificate")
    s.add_argument("--dot", help="write the minimized certificate as a DOT graph")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("slice", parents=[common], help="solve the finite game on words of length N")
    s.add_argument("game")
    s.add_argument("length", type=int)
    s.set_defaults(func=cmd_slice)

    s = sub.add_parser("bench", parents=[common], help="generate and synthesize benchmarks")
    s.add_argument("names", nargs="*", help="benchmark names, or 'all' (default)")
    s.add_argument("--out", help="directory for the generated games and certificates")
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("generate", help="write benchmark game files")
    s.add_argument("names", nargs="*", help="benchmark names, or 'all' (default)")
    s.add_argument("--out", help="target directory (default: print to stdout)")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("list", help="list the available benchmarks")
    s.add_argument("-v", "--verbose", action="store_true")
    s.set_defaults(func=cmd_list)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (OSError, InputError, KeyError) as exc:
        print(f"regsynth: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"regsynth: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except TeacherContractError as exc:
        print(f"regsynth: internal contract violation: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
