"""Command-line front end.

Exit codes: 0 when every check passes, 1 on an invariant violation,
2 on a usage error.
"""

from __future__ import annotations

import argparse
import contextlib
import logging
import math
import sys

from . import export
from .basis import InfeasibleSelection, build_basis, select_generators
from .family import FamilyQuery, c_table, girth_lower_bound_words, list_family, run_grid
from .graph import MEMORY_ENV, MemoryBudgetExceeded, build, default_memory_gib, girth_bfs, verify_report
from .primes import family_params, is_prime
from .projective import QTooSmall, image_generators
from .quaternion import format_quaternion, parse_quaternion
from .wordgirth import girth_words
from .words import factor

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@contextlib.contextmanager
def _output(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _emit(records: list[dict], fmt: str, out) -> None:
    if fmt == "csv":
        export.write_csv(records, out)
    else:
        for i, r in enumerate(records):
            if i:
                out.write("\n")
            export.write_kv(r, out)


def _prime_for(d: int, p: int | None) -> int:
    if p is None:
        return family_params(d).p
    if not is_prime(p) or p < 3:
        raise UsageError(f"--p must be an odd prime, got {p}")
    return p


def _spec(args):
    p = _prime_for(args.d, args.p)
    gens = select_generators(args.d, build_basis(p))
    return image_generators(gens, args.q)


def cmd_params(args) -> int:
    fp = family_params(args.d)
    with _output(args.out) as out:
        _emit([fp.as_record()], args.format, out)
    return EXIT_OK


def cmd_basis(args) -> int:
    if not is_prime(args.p) or args.p < 3:
        raise UsageError(f"--p must be an odd prime, got {args.p}")
    b = build_basis(args.p)
    rows = []
    for i, (a, partner) in enumerate(zip(b.elements, b.pairing)):
        rows.append(
            {
                "index": i,
                "quaternion": format_quaternion(a),
                "type": "nu" if partner is None else "mu",
                "conjugate_index": "" if partner is None else partner,
            }
        )
    with _output(args.out) as out:
        if args.format == "kv":
            export.write_kv({"p": b.p, "size": len(b), "s": b.s, "t": b.t}, out)
            for r in rows:
                out.write(f"{r['index']}\t{r['quaternion']}\t{r['type']}\t{r['conjugate_index']}\n")
        else:
            export.write_csv(rows, out)
    return EXIT_OK


def cmd_factor(args) -> int:
    if not is_prime(args.p) or args.p < 3:
        raise UsageError(f"--p must be an odd prime, got {args.p}")
    a = parse_quaternion(args.quaternion)
    f = factor(a, build_basis(args.p))
    ok = f.reconstruct() == a
    with _output(args.out) as out:
        export.write_kv(
            {
                "quaternion": format_quaternion(a),
                "content_exponent": f.content_exponent,
                "unit": format_quaternion(f.unit),
                "word": " ".join(format_quaternion(x) for x in f.word),
                "length": len(f.word),
                "reconstructs": ok,
            },
            out,
        )
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_reduce(args) -> int:
    spec = _spec(args)
    with _output(args.out) as out:
        export.write_kv(spec.as_record() | {"generator_rule": spec.gens.rule}, out)
        for i, (a, e, pure) in enumerate(zip(spec.gens.elements, spec.generator_images, spec.gens.pure)):
            out.write(f"{i}\t{format_quaternion(a)}\t{'nu' if pure else 'mu'}\t{e}\n")
    return EXIT_OK


def cmd_graph_build(args) -> int:
    spec = _spec(args)
    g = build(spec, memory_gib=args.memory_gib)
    with _output(args.out) as out:
        if args.format == "dot":
            export.write_dot(g, out)
        elif args.format == "edgelist":
            export.write_edgelist(g, out)
        else:
            _emit([export.edgelist_header(g) | {"degree": g.degree, "edges": g.n * g.degree // 2}], args.format, out)
    return EXIT_OK


def cmd_graph_girth(args) -> int:
    spec = _spec(args)
    record: dict = {"d": spec.d, "p": spec.p, "q": spec.q, "legendre_pq": spec.legendre_pq}
    bfs = None
    if args.engine in ("bfs", "both"):
        bfs = girth_bfs(build(spec, memory_gib=args.memory_gib))
        record["girth_bfs"] = None if math.isinf(bfs) else int(bfs)
    if args.engine in ("words", "both"):
        wg = girth_words(spec, max_len=args.max_len)
        record["girth_words"] = wg.girth
        record["girth_words_exceeded"] = wg.exceeded
        record["words_enumerated"] = wg.words_enumerated
        if wg.witness is not None:
            record["witness"] = " ".join(str(x) for x in wg.witness)
    record["norm_lower_bound"] = girth_lower_bound_words(spec.p, spec.q, spec.legendre_pq)
    status = EXIT_OK
    if args.engine == "both" and record.get("girth_bfs") is not None and not record["girth_words_exceeded"]:
        record["agreement"] = record["girth_bfs"] == record["girth_words"]
        status = EXIT_OK if record["agreement"] else EXIT_VIOLATION
    found = record.get("girth_words") or record.get("girth_bfs")
    if found is not None and found < record["norm_lower_bound"]:
        status = EXIT_VIOLATION
    with _output(args.out) as out:
        _emit([record], args.format, out)
    return status


def cmd_graph_verify(args) -> int:
    spec = _spec(args)
    report = verify_report(build(spec, memory_gib=args.memory_gib))
    with _output(args.out) as out:
        _emit([report.as_record()], args.format, out)
    return EXIT_VIOLATION if report.violations() else EXIT_OK


def _query(args) -> FamilyQuery:
    return FamilyQuery(
        d=args.d,
        q_min=args.q_min,
        q_max=args.q_max,
        branch=args.branch,
        enforce_regime=args.enforce_regime,
        p=args.p,
    )


def cmd_family_list(args) -> int:
    specs = list_family(_query(args))
    with _output(args.out) as out:
        export.write_csv([s.as_record() for s in specs], out, fieldnames=None if specs else ["d", "p", "q"])
    return EXIT_OK


def cmd_family_run(args) -> int:
    result = run_grid(_query(args), jobs=args.jobs, memory_gib=args.memory_gib)
    with _output(args.out) as out:
        records = [r.as_record() for r in result.reports]
        if args.format == "csv":
            out.write(export.reports_to_csv_text(result.reports))
        else:
            _emit(records, "kv", out)
    for d, p, q, msg in result.failures:
        print(f"FAILED G({d},{p},{q}): {msg}", file=sys.stderr)
    for d, p, q, bad in result.violations:
        print(f"VIOLATION G({d},{p},{q}): {', '.join(bad)}", file=sys.stderr)
    return EXIT_OK if result.ok else EXIT_VIOLATION


def cmd_table_c(args) -> int:
    rows = c_table(args.d_min, args.d_max, include_prime_powers=args.all)
    with _output(args.out) as out:
        _emit([r.as_record() for r in rows], args.format, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quatcayley", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt_choices=("kv", "csv"), default="kv"):
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=fmt_choices, default=default)

    def graph_args(p, need_q=True):
        p.add_argument("--d", type=int, required=True)
        p.add_argument("--p", type=int, default=None, help="prime (default: the family prime of d)")
        if need_q:
            p.add_argument("--q", type=int, required=True)
        p.add_argument(
            "--memory-gib",
            type=float,
            default=None,
            help=f"memory budget for full graphs (default ${MEMORY_ENV} or 8)",
        )

    p = sub.add_parser("params", help="family parameters p, kappa, c(d), Q for a degree")
    p.add_argument("--d", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("basis", help="the canonical prime set P(p)")
    p.add_argument("--p", type=int, required=True)
    common(p, default="csv")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("factor", help="unique factorization of a quaternion of norm p^k")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--quaternion", required=True, help='"a0,a1,a2,a3" or "a0+a1i+a2j+a3k"')
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("reduce", help="generator images in PGL_2(F_q)")
    graph_args(p)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_reduce)

    g = sub.add_parser("graph", help="build or analyse one graph G_{d,p,q}").add_subparsers(
        dest="graph_command", required=True
    )
    p = g.add_parser("build")
    graph_args(p)
    common(p, fmt_choices=("kv", "csv", "dot", "edgelist"), default="edgelist")
    p.set_defaults(func=cmd_graph_build)
    p = g.add_parser("girth")
    graph_args(p)
    p.add_argument("--engine", choices=("bfs", "words", "both"), default="both")
    p.add_argument("--max-len", type=int, default=12)
    common(p)
    p.set_defaults(func=cmd_graph_girth)
    p = g.add_parser("verify")
    graph_args(p)
    common(p)
    p.set_defaults(func=cmd_graph_verify)

    f = sub.add_parser("family", help="enumerate or verify a family X_d / Y_d").add_subparsers(
        dest="family_command", required=True
    )
    for name, func in (("list", cmd_family_list), ("run", cmd_family_run)):
        p = f.add_parser(name)
        graph_args(p, need_q=False)
        p.add_argument("--q-min", type=int, default=3)
        p.add_argument("--q-max", type=int, required=True)
        p.add_argument("--branch", choices=("x", "y"), required=True)
        p.add_argument("--enforce-regime", action="store_true", help="keep only q > Q_d(p)")
        p.add_argument("--jobs", type=int, default=1)
        common(p, default="csv")
        p.set_defaults(func=func)

    t = sub.add_parser("table", help="tables").add_subparsers(dest="table_command", required=True)
    p = t.add_parser("c", help="c(d) = 4 / (3 log_d p) against the tabulated bounds")
    p.add_argument("--d-min", type=int, default=10)
    p.add_argument("--d-max", type=int, required=True)
    p.add_argument("--all", action="store_true", help="include prime powers")
    common(p, default="csv")
    p.set_defaults(func=cmd_table_c)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if getattr(args, "memory_gib", None) is None and hasattr(args, "memory_gib"):
        args.memory_gib = default_memory_gib()
    try:
        return args.func(args)
    except (UsageError, InfeasibleSelection, QTooSmall, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MemoryBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
