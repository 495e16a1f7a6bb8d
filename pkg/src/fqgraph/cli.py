"""Command-line entry point: ``fqgraph <command> ...``.

Output is JSON unless --pretty is given.  Exit codes: 0 success, 2 bad
input, 3 enumeration budget exceeded, 4 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from .counting import (
    BudgetExceeded,
    CountJob,
    PolySystem,
    count_multilinear,
    merge_shards,
    read_system,
    result4_scan,
    sup_ratio,
)
from .fqft import AmplitudeError, TheoryConfig, amplitude, superficial_degree, vanishing_predicate
from .gf import field_of_order, is_prime
from .graphs import Multigraph, corpus, graph_to_json, graph_to_text, read_graph
from .interpolation import crt_reconstruct, parse_samples, residue_class_reconstruct
from .polynomials import ConsistencyError, dual_polynomial, graph_polynomial
from .reduction import ReductionError, Reducer, replay, run_method1

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_CONSISTENCY = 0, 2, 3, 4


@dataclass
class RunManifest:
    """Everything needed to rerun a command and get the same JSON."""

    command: str
    inputs: list
    fields: list = field(default_factory=list)
    shard: list | None = None
    outputs: list = field(default_factory=list)
    seed: int | None = None
    options: dict = field(default_factory=dict)
    version: str = __version__

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, text: str) -> RunManifest:
        return cls(**json.loads(text))


def _emit(obj, args, pretty_text: str | None = None):
    text = pretty_text if (getattr(args, "pretty", False) and pretty_text is not None) else json.dumps(obj, sort_keys=True)
    if getattr(args, "output", None):
        Path(args.output).write_text(text + "\n")
    else:
        print(text)
    if getattr(args, "manifest", None):
        opts = {k: v for k, v in vars(args).items() if k not in ("func", "manifest", "output")}
        man = RunManifest(
            command=args.command,
            inputs=[str(p) for p in getattr(args, "inputs", [])],
            fields=[int(x) for x in _int_list(getattr(args, "q", None))],
            shard=opts.get("shard") and list(_parse_shard(opts["shard"])),
            outputs=[args.output] if getattr(args, "output", None) else [],
            seed=opts.get("seed"),
            options={k: v for k, v in opts.items() if isinstance(v, (int, str, float, bool, list, type(None)))},
        )
        Path(args.manifest).write_text(man.to_json() + "\n")


def _int_list(text) -> list[int]:
    if text is None:
        return []
    if isinstance(text, int):
        return [text]
    return [int(t) for t in str(text).replace(",", " ").split()]


def _parse_shard(text: str) -> tuple[int, int]:
    i, _, n = text.partition("/")
    i, n = int(i), int(n)
    if not 0 <= i < n:
        raise ValueError(f"bad shard {text!r}")
    return i, n


def _graph(args) -> Multigraph:
    args.inputs = [args.graph]
    return read_graph(args.graph)


# -- commands ---------------------------------------------------------------------


def cmd_psi(args) -> int:
    g = _graph(args)
    f = dual_polynomial(g) if args.dual else graph_polynomial(g)
    if args.json:
        _emit({"poly": f.to_json(), "text": f.to_text()}, args)
    else:
        text = f.to_text()
        if args.output:
            Path(args.output).write_text(text + "\n")
        else:
            print(text)
    return EXIT_OK


def _load_system(args) -> PolySystem:
    if args.graph:
        args.inputs = [args.graph]
        g = read_graph(args.graph)
        f = dual_polynomial(g) if args.dual else graph_polynomial(g)
        return PolySystem((f,), tuple(sorted(g.labels)), "affine" if args.affine else "projective")
    args.inputs = [args.system]
    text = Path(args.system).read_text()
    if text.lstrip().startswith("{"):
        return PolySystem.from_json(json.loads(text))
    return read_system(text, "affine" if args.affine else "projective")


def cmd_count(args) -> int:
    system = _load_system(args)
    spec = field_of_order(args.q)
    if args.multilinear:
        if args.shard:
            raise ValueError("--multilinear does not shard")
        value = count_multilinear(system, spec)
        out = {"q": spec.q, "system_hash": system.system_hash(), "n": system.n, "ambient": system.ambient}
        if system.ambient == "projective":
            out["Nbar"] = value
            if not any(f.is_constant() for f in system.polys):
                out["N"] = spec.q**system.n - (spec.q - 1) * value
        else:
            out["N"] = value
            out["Nbar"] = spec.q**system.n - value
    else:
        shard = _parse_shard(args.shard) if args.shard else None
        out = CountJob(system, spec, shard).run(budget=args.budget)
    _emit(out, args)
    return EXIT_OK


def cmd_merge(args) -> int:
    args.inputs = list(args.shards)
    results = [json.loads(Path(p).read_text()) for p in args.shards]
    system = None
    if args.system:
        text = Path(args.system).read_text()
        system = PolySystem.from_json(json.loads(text)) if text.lstrip().startswith("{") else read_system(text)
    _emit(merge_shards(results, system), args)
    return EXIT_OK


def cmd_reduce(args) -> int:
    g = _graph(args)
    seq = _int_list(args.sequence) or None
    mode = None if args.mode == "none" else args.mode
    reducer = Reducer(choice=args.choice, max_nodes=args.max_nodes) if args.choice else None
    report = run_method1(g, seq, mode=mode, certify=tuple(_int_list(args.certify_q)), reducer=reducer,
                         max_nodes=args.max_nodes)
    pretty = None
    if args.pretty:
        pretty = f"Nbar = {report.grothendieck().replace('L', 'q')}\nclass: {report.grothendieck()}"
    _emit(report.to_json(), args, pretty)
    return EXIT_OK


def cmd_replay(args) -> int:
    g = _graph(args)
    args.inputs.append(args.report)
    saved = json.loads(Path(args.report).read_text())
    report = replay(g, saved["trace"], certify=tuple(_int_list(args.certify_q)))
    same = report.to_json()["resolved"] == saved["resolved"] and len(report.residuals) == len(saved["residuals"])
    out = {"reproduced": same, "report": report.to_json()}
    _emit(out, args)
    return EXIT_OK if same else EXIT_CONSISTENCY


def cmd_interp(args) -> int:
    args.inputs = [args.samples]
    samples = parse_samples(Path(args.samples).read_text(), drop=_int_list(args.drop_prime))
    primes = [(q, v) for q, v in samples if is_prime(q)]
    powers = [(q, v) for q, v in samples if not is_prime(q)]
    kw = dict(branching=args.branching, factor=args.factor, verify=powers)
    if args.residue_class:
        m, r = args.residue_class
        res = residue_class_reconstruct(primes, m, r, args.degree, graph_form=args.graph_form, **kw)
    else:
        res = crt_reconstruct(primes, args.degree, graph_form=args.graph_form, **kw)
    _emit(res.to_json(), args)
    return EXIT_OK


def cmd_amplitude(args) -> int:
    g = _graph(args)
    rows = []
    for d in _int_list(args.d):
        for q in _int_list(args.q):
            theory = TheoryConfig.minkowski(d, args.m2) if args.metric == "minkowski" else TheoryConfig(d, args.m2)
            amp = amplitude(g, theory, q)
            c = superficial_degree(g, d)
            rows.append({"graph": args.graph, "d": d, "q": q, "c": c, "lhs": (q - 1) * c + 2 * g.n,
                         "predicate": vanishing_predicate(g, d, q), "value": amp.value,
                         "power_form": amp.power_form, "excluded": amp.excluded,
                         "tree_convention": amp.tree_convention})
    pretty = None
    if args.pretty:
        head = "graph d q c (q-1)c+2n predicate value"
        pretty = "\n".join([head] + [f"{r['graph']} {r['d']} {r['q']} {r['c']} {r['lhs']} {r['predicate']} {r['value']}"
                                     for r in rows])
    _emit(rows, args, pretty)
    return EXIT_OK


def cmd_corpus(args) -> int:
    args.inputs = []
    graphs = corpus(size=args.size, max_edges=args.max_edges, exhaustive_edges=args.exhaustive_edges, seed=args.seed)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for i, g in enumerate(graphs):
            (out / f"g{i:04d}.txt").write_text(graph_to_text(g))
        _emit({"count": len(graphs), "dir": str(out)}, args)
    else:
        _emit([graph_to_json(g) for g in graphs], args)
    return EXIT_OK


def cmd_scan(args) -> int:
    args.inputs = []
    p_max = args.p_max if args.p_max else (4999 if args.extended else 199)
    rows = result4_scan(p_max, p_min=args.p_min)
    bad = [r.p for r in rows if not r.ok]
    out = {"p_max": p_max, "rows": [asdict(r) for r in rows], "falsifications": bad, "sup_ratio": sup_ratio(rows)}
    _emit(out, args)
    return EXIT_OK if not bad else EXIT_CONSISTENCY


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fqgraph", description="Point counts of graph hypersurfaces over finite fields.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("-o", "--output", help="write the result here instead of stdout")
        p.add_argument("--manifest", help="write a run manifest to this path")
        p.add_argument("--pretty", action="store_true", help="human-readable output where supported")
        return p

    p = common(sub.add_parser("psi", help="graph polynomial of a graph file"))
    p.add_argument("graph")
    p.add_argument("--dual", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_psi)

    p = common(sub.add_parser("count", help="count points over F_q"))
    p.add_argument("system", nargs="?", help="polynomial file (text or JSON)")
    p.add_argument("--graph", help="count the graph polynomial of this graph instead")
    p.add_argument("--dual", action="store_true")
    p.add_argument("--affine", action="store_true")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--shard", help="i/N: count only the i-th of N slices")
    p.add_argument("--multilinear", action="store_true", help="use the recursive elimination counter")
    p.add_argument("--budget", type=int, default=2**36)
    p.set_defaults(func=cmd_count)

    p = common(sub.add_parser("merge", help="sum shard results"))
    p.add_argument("shards", nargs="+")
    p.add_argument("--system")
    p.set_defaults(func=cmd_merge)

    p = common(sub.add_parser("reduce", help="symbolic reduction to a polynomial in q"))
    p.add_argument("graph")
    p.add_argument("--sequence", help="edge order, comma separated")
    p.add_argument("--mode", default="auto", choices=["auto", "none", "vertex", "vertex_alt", "triangle"])
    p.add_argument("--certify-q", default="2,3")
    p.add_argument("--choice", choices=["order", "fewest", "lookahead"])
    p.add_argument("--max-nodes", type=int, default=30000)
    p.set_defaults(func=cmd_reduce)

    p = common(sub.add_parser("replay", help="rerun a saved reduction report"))
    p.add_argument("graph")
    p.add_argument("report")
    p.add_argument("--certify-q", default="2,3")
    p.set_defaults(func=cmd_replay)

    p = common(sub.add_parser("interp", help="reconstruct a polynomial from counts"))
    p.add_argument("samples")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--drop-prime", default="")
    p.add_argument("--residue-class", nargs=2, type=int, metavar=("M", "R"))
    p.add_argument("--graph-form", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--branching", type=int, default=2)
    p.add_argument("--factor", type=float, default=4.0)
    p.set_defaults(func=cmd_interp)

    p = common(sub.add_parser("amplitude", help="amplitudes over F_q"))
    p.add_argument("graph")
    p.add_argument("--d", default="4")
    p.add_argument("--q", default="3")
    p.add_argument("--m2", type=int, default=1)
    p.add_argument("--metric", choices=["euclidean", "minkowski"], default="euclidean")
    p.set_defaults(func=cmd_amplitude)

    p = common(sub.add_parser("corpus", help="write the test corpus"))
    p.add_argument("--size", type=int, default=500)
    p.add_argument("--max-edges", type=int, default=12)
    p.add_argument("--exhaustive-edges", type=int, default=8)
    p.add_argument("--seed", type=int, default=2009)
    p.add_argument("--out")
    p.set_defaults(func=cmd_corpus)

    p = common(sub.add_parser("scan", help="congruence scan of the quartic"))
    p.add_argument("--p-max", type=int)
    p.add_argument("--p-min", type=int, default=3)
    p.add_argument("--extended", action="store_true", help="scan primes up to 4999")
    p.set_defaults(func=cmd_scan)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "count" and not (args.system or args.graph):
        ap.error("count needs a system file or --graph")
    try:
        return args.func(args)
    except BudgetExceeded as e:
        print(f"budget: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except ConsistencyError as e:
        print(f"consistency: {e}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except AmplitudeError as e:
        code = EXIT_BUDGET if "exceed" in str(e) else EXIT_INPUT
        print(f"error: {e}", file=sys.stderr)
        return code
    except (ValueError, OSError, KeyError, ReductionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
