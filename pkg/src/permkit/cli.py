"""``permkit`` command-line entry point.

Exit status: 0 when a verdict was produced (including "inconclusive"),
2 for usage errors, 3 when a capacity or budget limit is hit, 4 for unreadable
or malformed input files.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from . import anticode as ac
from . import certificate as cert
from . import classes as cls
from . import codes
from . import metric as met
from . import nonexistence as nx
from .perm import format_perm, identity, parse_perm

EXIT_OK, EXIT_USAGE, EXIT_CAPACITY, EXIT_INPUT = 0, 2, 3, 4


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


def _positive(name: str, value: int, minimum: int = 1) -> int:
    if value < minimum:
        raise UsageError(f"{name} must be >= {minimum}, got {value}")
    return value


def _perm(text: str, zero_based: bool):
    try:
        return parse_perm(text, zero_based=zero_based)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------------------
# command handlers; each returns (result dict, text lines)


def cmd_dist(a):
    p, q = _perm(a.perm1, a.zero_based), _perm(a.perm2, a.zero_based)
    if len(p) != len(q):
        raise UsageError("permutations have different lengths")
    d = met.distance(p, q, a.metric)
    return {"metric": a.metric, "perm1": format_perm(p), "perm2": format_perm(q), "distance": d}, [str(d)]


def cmd_ball(a):
    p = _perm(a.perm, a.zero_based)
    _positive("radius", a.radius, 0)
    members = sorted(met.ball(p, a.radius, a.metric))
    res = {
        "metric": a.metric,
        "center": format_perm(p),
        "radius": a.radius,
        "size": len(members),
        "members": [format_perm(m) for m in members],
    }
    return res, [f"size {len(members)}"] + [format_perm(m) for m in members]


def cmd_mahonian(a):
    _positive("n", a.n)
    row = list(met.mahonian_row(a.n))
    return {"n": a.n, "row": row, "total": sum(row)}, [" ".join(map(str, row))]


def cmd_verify_code(a):
    try:
        code = codes.read_code_file(a.file, zero_based=a.zero_based)
    except (OSError, ValueError) as exc:
        raise InputError(f"cannot read code file {a.file}: {exc}") from None
    res = {"n": code.n, "metric": code.metric.value, "size": len(code)}
    lines = [f"n={code.n} metric={code.metric.value} size={len(code)}"]
    if len(code) >= 2:
        md = codes.min_distance(code)
        res["min_distance"] = md
        lines.append(f"minimum distance {md}")
        if a.min_dist is not None:
            res["min_distance_ok"] = md >= a.min_dist
            lines.append(f"min distance >= {a.min_dist}: {'yes' if md >= a.min_dist else 'NO'}")
    if a.perfect is not None:
        rep = codes.verify_perfect(code, _positive("radius", a.perfect, 0))
        res["perfection"] = rep.to_dict()
        lines.append(
            f"{rep.verdict} (radius {rep.radius}, ball size {rep.ball_size}, "
            f"{rep.code_size}*{rep.ball_size}={rep.code_size * rep.ball_size} vs {rep.space_size}, "
            f"defects {rep.defect_count})"
        )
    return res, lines


def cmd_construct(a):
    if a.kind == "cyclic-prime":
        code = codes.cyclic_prime_code(_positive("n", a.n, 5))
    elif a.kind == "paper-s5":
        code = codes.paper_s5_cyclic_code()
    else:
        code = codes.reverse_pair_code(identity(_positive("n", a.n, 2)))
    if a.out:
        codes.write_code_file(code, a.out)
    md = codes.min_distance(code) if len(code) >= 2 else None
    res = {
        "kind": a.kind,
        "n": code.n,
        "metric": code.metric.value,
        "size": len(code),
        "min_distance": md,
        "code": [format_perm(w) for w in code.sorted_words()],
    }
    lines = [f"n={code.n} metric={code.metric.value}"] + res["code"]
    if not a.out:
        return res, lines
    return res, [f"wrote {len(code)} words to {a.out} (min distance {md})"]


def cmd_search(a):
    if a.kind == "perfect":
        c = codes.exact_cover_perfect_search(a.n, a.radius, a.metric, time_budget=a.time_budget)
        _save(c, a.save)
        return c.to_dict(), _cert_lines(c)
    _positive("d", a.d)
    r = codes.max_code_search(a.n, a.d, a.metric, method=a.method, time_budget=a.time_budget)
    status = "maximum" if r.exact else ("maximal (greedy)" if a.method == "greedy_lex" else "best found, budget exhausted")
    return r.to_dict(), [f"size {len(r.code)} ({status})"] + [format_perm(w) for w in r.code.sorted_words()]


def cmd_nonexist(a):
    _positive("n", a.n, 4)
    c = nx.nonexistence_check(
        a.n,
        r=_positive("pattern r", a.pattern_r),
        escalate=a.escalate_exact_cover,
        time_budget=a.time_budget,
        seed=a.seed,
        threads=a.threads,
    )
    _save(c, a.save)
    return c.to_dict(), _cert_lines(c)


def cmd_anticode(a):
    if a.action == "construct":
        if a.diameter3 is not None:
            x = ac.construct_diameter3_anticode(a.diameter3)
        elif a.half_space is not None:
            x = ac.half_space_anticode(a.half_space)
        else:
            raise UsageError("anticode construct needs --diameter3 N or --half-space N")
        return x.to_dict(), [f"{x.description}: size {len(x)}, diameter {x.diameter}"]
    r = ac.optimal_anticode_search(a.n, a.D, a.metric, enumerate_optima=a.enumerate_optima,
                                   time_budget=a.time_budget)
    lines = [f"max size {r.max_size}" + ("" if r.exhausted else " (lower bound, budget exhausted)")]
    if r.num_optima is not None:
        lines.append(f"optima: {r.num_optima}, all balls: {r.all_optima_are_balls}")
    lines.append("witness: " + "; ".join(format_perm(p) for p in sorted(r.witnesses[0].members)))
    return r.to_dict(), lines


def cmd_bound(a):
    r = ac.code_anticode_bound(_positive("n", a.n, 2), _positive("d", a.d), use_search=a.use_search)
    return r.to_dict(), [f"|C| <= {r.bound_value}  (n!/{r.anticode_size}, anticode: {r.anticode_used})"]


def cmd_probe(a):
    r = ac.distance_regularity_probe(_positive("n", a.n, 4))
    d = r.to_dict()
    return d, [f"{k}: {v}" for k, v in d.items()]


def cmd_classes(a):
    s = cls.classes_summary(_positive("n", a.n, 2), graph_stats=a.graph_stats)
    lines = [f"{s['classes']} classes of size {s['class_size']}"]
    if a.graph_stats:
        lines.append(json.dumps(s["graph"]))
    return s, lines


def cmd_recheck(a):
    try:
        data = json.loads(Path(a.certificate).read_text())
        c = cert.Certificate.from_dict(data.get("result", data))
    except (OSError, ValueError, KeyError) as exc:
        raise InputError(f"cannot read certificate {a.certificate}: {exc}") from None
    try:
        fresh = nx.recheck(c, time_budget=a.time_budget)
    except ValueError as exc:
        return {"recorded": c.verdict, "confirmed": False, "reason": str(exc)}, [f"MISMATCH: {exc}"]
    return {"recorded": c.verdict, "confirmed": True, "method": c.method, "n": c.n}, [
        f"confirmed: {fresh.verdict} ({fresh.method}, n={fresh.n})"
    ]


def _cert_lines(c: cert.Certificate) -> list[str]:
    lines = [f"n={c.n}: {c.verdict} via {c.method}"]
    for k, v in c.evidence.items():
        if k != "code":
            lines.append(f"  {k}: {v}")
    if c.solution is not None and len(c.solution) <= 12:
        lines.append("  solution: " + ", ".join(c.solution))
    if c.verdict == cert.EXISTENCE and "code" in c.evidence:
        lines.extend("  " + w for w in c.evidence["code"])
    return lines


def _save(c: cert.Certificate, path):
    if path:
        Path(path).write_text(c.to_json(indent=2) + "\n")


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--time-budget", type=float, default=60.0, metavar="S")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--zero-based", action="store_true", help="input symbols are 0..n-1")

    p = argparse.ArgumentParser(prog="permkit", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"permkit {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def metric_arg(sp, default="kendall"):
        sp.add_argument("--metric", choices=["kendall", "cyclic"], default=default)

    sp = sub.add_parser("dist", parents=[common], help="distance between two permutations")
    metric_arg(sp)
    sp.add_argument("perm1")
    sp.add_argument("perm2")
    sp.set_defaults(func=cmd_dist)

    sp = sub.add_parser("ball", parents=[common], help="enumerate a ball")
    metric_arg(sp)
    sp.add_argument("--radius", type=int, required=True)
    sp.add_argument("perm")
    sp.set_defaults(func=cmd_ball)

    sp = sub.add_parser("mahonian", parents=[common], help="inversion-count row for S_n")
    sp.add_argument("n", type=int)
    sp.set_defaults(func=cmd_mahonian)

    sp = sub.add_parser("verify-code", parents=[common], help="check a code file")
    sp.add_argument("file")
    sp.add_argument("--min-dist", type=int)
    sp.add_argument("--perfect", type=int, metavar="R")
    sp.set_defaults(func=cmd_verify_code)

    sp = sub.add_parser("construct", parents=[common], help="build an explicit code")
    sp.add_argument("kind", choices=["cyclic-prime", "paper-s5", "reverse-pair"])
    sp.add_argument("n", type=int, nargs="?", default=5)
    sp.add_argument("--out", help="write the code file here")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("search", parents=[common], help="perfect-code or maximum-code search")
    sp.add_argument("kind", choices=["perfect", "maxcode"])
    sp.add_argument("n", type=int)
    sp.add_argument("d", type=int, nargs="?", help="minimum distance (maxcode)")
    sp.add_argument("--radius", type=int, default=1)
    sp.add_argument("--method", choices=["exact_clique", "greedy_lex"], default="exact_clique")
    sp.add_argument("--save", help="write the certificate JSON here (perfect)")
    metric_arg(sp)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("nonexist", parents=[common], help="perfect 1-code nonexistence certificate")
    sp.add_argument("n", type=int)
    sp.add_argument("--pattern-r", type=int, default=1)
    sp.add_argument("--escalate-exact-cover", action="store_true")
    sp.add_argument("--save", help="write the certificate JSON here")
    sp.set_defaults(func=cmd_nonexist)

    sp = sub.add_parser("anticode", parents=[common], help="anticode construction and search")
    asub = sp.add_subparsers(dest="action", required=True)
    c = asub.add_parser("construct", parents=[common])
    c.add_argument("--diameter3", type=int, metavar="N")
    c.add_argument("--half-space", type=int, metavar="N")
    c.set_defaults(func=cmd_anticode)
    s = asub.add_parser("search", parents=[common])
    s.add_argument("n", type=int)
    s.add_argument("D", type=int)
    s.add_argument("--enumerate-optima", action="store_true")
    metric_arg(s)
    s.set_defaults(func=cmd_anticode)

    sp = sub.add_parser("bound", parents=[common], help="code-anticode upper bound")
    sp.add_argument("n", type=int)
    sp.add_argument("d", type=int)
    sp.add_argument("--use-search", action="store_true")
    sp.set_defaults(func=cmd_bound)

    sp = sub.add_parser("probe", parents=[common], help="graph property probes")
    sp.add_argument("what", choices=["distance-regularity"])
    sp.add_argument("n", type=int)
    sp.set_defaults(func=cmd_probe)

    sp = sub.add_parser("classes", parents=[common], help="rotation classes of S_n")
    sp.add_argument("n", type=int)
    sp.add_argument("--graph-stats", action="store_true")
    sp.set_defaults(func=cmd_classes)

    sp = sub.add_parser("recheck", parents=[common], help="replay a saved certificate")
    sp.add_argument("certificate")
    sp.set_defaults(func=cmd_recheck)
    return p


def _validate(a) -> None:
    if a.time_budget is not None and a.time_budget <= 0:
        raise UsageError("--time-budget must be positive")
    _positive("--threads", a.threads)
    if getattr(a, "kind", None) == "maxcode" and a.d is None:
        raise UsageError("search maxcode needs <n> <d>")
    if getattr(a, "n", None) is not None:
        _positive("n", a.n)


def _params(a) -> dict:
    skip = {"func", "json"}
    return {k: v for k, v in sorted(vars(a).items()) if k not in skip}


def run(argv=None, out=sys.stdout, err=sys.stderr) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    started = time.monotonic()
    try:
        _validate(a)
        result, lines = a.func(a)
    except UsageError as exc:
        print(f"permkit: usage error: {exc}", file=err)
        return EXIT_USAGE
    except InputError as exc:
        print(f"permkit: input error: {exc}", file=err)
        return EXIT_INPUT
    except met.CapacityError as exc:
        print(f"permkit: capacity exceeded: {exc}", file=err)
        return EXIT_CAPACITY
    except ValueError as exc:
        print(f"permkit: invalid argument: {exc}", file=err)
        return EXIT_USAGE
    if a.json:
        report = {
            "tool": "permkit",
            "version": __version__,
            "command": a.command,
            "params": _params(a),
            "result": result,
            "timing": {
                "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
                "runtime_seconds": round(time.monotonic() - started, 4),
            },
        }
        print(json.dumps(report, sort_keys=True, indent=2), file=out)
    else:
        for line in lines:
            print(line, file=out)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
