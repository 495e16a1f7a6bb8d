"""Time the counting kernels under numba and under the numpy fallback.

Each backend runs in its own interpreter because the choice is fixed at
import time.  Usage: python benchmarks/bench_backends.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys
import time

WORKER = r"""
import json, sys, time
from fqgraph import _kernels
from fqgraph.counting import PolySystem, count_projective_complement, quartic_nbar
from fqgraph.fqft import TheoryConfig, amplitude
from fqgraph.graphs import complete_graph, theta_graph, wheel_graph
from fqgraph.polynomials import graph_polynomial

repeat = int(sys.argv[1])

def psi_system(g):
    return PolySystem((graph_polynomial(g),), tuple(sorted(g.labels)))

cases = {
    "K4 enumeration q=7": lambda: count_projective_complement(psi_system(complete_graph(4)), 7),
    "W4 enumeration q=5": lambda: count_projective_complement(psi_system(wheel_graph(4)), 5),
    "W4 enumeration q=8": lambda: count_projective_complement(psi_system(wheel_graph(4)), 8),
    "quartic fibres p=1009": lambda: quartic_nbar(1009, "fibres"),
    "theta amplitude d=2 q=7": lambda: amplitude(theta_graph(), TheoryConfig(2), 7).value,
}
out = {"backend": _kernels.backend(), "timings": {}, "values": {}}
for name, fn in cases.items():
    out["values"][name] = fn()  # warm-up, includes jit compilation
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    out["timings"][name] = best
print(json.dumps(out))
"""


def run(no_numba: bool, repeat: int) -> dict:
    env = dict(os.environ)
    if no_numba:
        env["FQGRAPH_NO_NUMBA"] = "1"
    else:
        env.pop("FQGRAPH_NO_NUMBA", None)
    res = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env, capture_output=True, text=True,
                         check=True)
    return json.loads(res.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    fast = run(False, args.repeat)
    slow = run(True, args.repeat)
    if fast["values"] != slow["values"]:
        sys.exit(f"backends disagree: {fast['values']} vs {slow['values']}")
    print(f"{'case':28s} {fast['backend']:>10s} {slow['backend']:>10s} {'speedup':>8s}")
    for name, t in fast["timings"].items():
        s = slow["timings"][name]
        print(f"{name:28s} {t:10.4f} {s:10.4f} {s / t:8.1f}x")


if __name__ == "__main__":
    main()
