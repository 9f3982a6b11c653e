"""Compare the compiled and pure-Python kernels.

Each workload runs in a fresh interpreter per backend, so the backend is
chosen exactly as a user would get it (``REGSYNTH_PURE_PYTHON`` forces the
fallback).  Usage::

    python3 benchmarks/bench_kernels.py [--repeat 3] [--json out.json]
"""

import argparse
import json
import os
import statistics
import subprocess
import sys

WORKLOADS = {
    # full pipeline over all nine games: membership arenas dominate
    "synthesize-all": """
from regsynth import benchmarks
from regsynth.cli import synthesize
for name in benchmarks.list_benchmarks():
    r = synthesize(benchmarks.load(name)).report
    assert r.outcome == "Synthesized", r
""",
    # explicit slice construction plus attractor
    "slice-follow-9": """
from regsynth import benchmarks
from regsynth.game import slice_arena, solve_finite
g = benchmarks.load("follow")
solve_finite(slice_arena(g, 9))
""",
    "slice-nim-6": """
from regsynth import benchmarks
from regsynth.game import slice_arena, solve_finite
g = benchmarks.load("nim")
solve_finite(slice_arena(g, 6))
""",
    # one large induced arena per query, nothing cached across words
    "membership-evasion-10": """
from regsynth import benchmarks, automata
g = benchmarks.load("evasion")
words = automata.enumerate_length(g.initial_dfa, 10)[:40]
for w in words:
    g.oracle.cache.clear()
    g.oracle(w)
""",
}

_HARNESS = """
import time
from regsynth import kernels
start = time.perf_counter()
exec(compile({body!r}, "workload", "exec"))
print(kernels.BACKEND, time.perf_counter() - start)
"""


def run(body, pure):
    env = dict(os.environ)
    env.pop("REGSYNTH_PURE_PYTHON", None)
    if pure:
        env["REGSYNTH_PURE_PYTHON"] = "1"
    out = subprocess.run([sys.executable, "-c", _HARNESS.format(body=body)], env=env,
                         capture_output=True, text=True, check=True).stdout.split()
    return out[0], float(out[1])


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--only", nargs="*", choices=sorted(WORKLOADS))
    p.add_argument("--json", help="also write the results table here")
    args = p.parse_args(argv)

    rows = []
    print(f"{'workload':<24}{'cython s':>10}{'python s':>10}{'speedup':>9}")
    for name in args.only or WORKLOADS:
        body = WORKLOADS[name]
        times = {}
        for pure in (False, True):
            samples = [run(body, pure) for _ in range(args.repeat)]
            backend = samples[0][0]
            times[backend if not pure else "python"] = statistics.median(s for _, s in samples)
        fast = times.get("cython")
        slow = times["python"]
        speedup = slow / fast if fast else float("nan")
        print(f"{name:<24}{fast if fast else float('nan'):>10.3f}{slow:>10.3f}{speedup:>8.1f}x")
        rows.append({"workload": name, "cython": fast, "python": slow, "speedup": speedup})
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
