"""Command line front end.

Every subcommand reads a problem file, runs one computation and prints
a result document, either human readable or as JSON with --json.

Exit codes: 0 success, 1 negative decision (not a member, not flat,
not finite, not a base, inconsistent), 2 usage or parse error, 3 the
completion cap was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .deltabasis import (
    CompletionCapExceeded,
    GeneratorSet,
    _first_failure,
    complete,
    cone_ideal,
    member,
    reduce,
    s_delta_operators,
)
from .dmodule import finiteness_test, flatness_report
from .groebner import PolyIdeal, syzygies
from .orders import ORDER_KINDS, MonomialOrder
from .poly import display_order
from .problems import (
    ParseError,
    ProblemFile,
    parse_expression,
    parse_problem,
    rebind_order,
)
from .weylbasis import WeylOrder, buchberger_weyl, divide_weyl, gb_implies_delta_check

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_CAP = 3


class UsageError(Exception):
    """Bad invocation that is not a syntax error in the problem file."""


@dataclass
class ResultDocument:
    """Uniform output record for every subcommand."""

    command: str
    ring: dict
    inputs: list[str]
    outputs: dict
    verdict: bool | None = None
    certificate: dict | None = None

    def to_json(self) -> str:
        return json.dumps(
            {
                "command": self.command,
                "ring": self.ring,
                "inputs": self.inputs,
                "outputs": self.outputs,
                "verdict": self.verdict,
                "certificate": self.certificate,
            },
            indent=2,
        )

    def render(self) -> str:
        lines = [f"command: {self.command}"]
        r = self.ring
        lines.append(
            "ring: " + " ".join(r["variables"])
            + " | " + " ".join(r["derivations"])
            + " | order " + r["order"]
        )
        for s in self.inputs:
            lines.append(f"input: {s}")
        lines.extend(_render_block(self.outputs, 0))
        if self.verdict is not None:
            lines.append("verdict: " + ("yes" if self.verdict else "no"))
        if self.certificate is not None:
            lines.append("certificate:")
            lines.extend(_render_block(self.certificate, 1))
        return "\n".join(lines)


def _is_exp(v) -> bool:
    return isinstance(v, list) and v and all(type(t) is int for t in v)


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    if _is_exp(v):
        return "(" + ", ".join(str(t) for t in v) + ")"
    return str(v)


def _simple(v) -> bool:
    return v is None or isinstance(v, (str, int, bool)) or _is_exp(v)


def _render_block(value, depth: int) -> list[str]:
    pad = "  " * depth
    lines: list[str] = []
    if isinstance(value, dict):
        for k, v in value.items():
            if _simple(v):
                lines.append(f"{pad}{k}: {_fmt(v)}")
            else:
                lines.append(f"{pad}{k}:")
                lines.extend(_render_block(v, depth + 1))
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, dict):
                mark = "- "
                for k, v in item.items():
                    if _simple(v):
                        lines.append(f"{pad}{mark}{k}: {_fmt(v)}")
                    else:
                        lines.append(f"{pad}{mark}{k}:")
                        lines.extend(_render_block(v, depth + 2))
                    mark = "  "
            elif isinstance(item, list) and all(_simple(t) for t in item):
                lines.append(pad + "(" + ", ".join(_fmt(t) for t in item) + ")")
            elif _simple(item):
                lines.append(f"{pad}{_fmt(item)}")
            else:
                lines.extend(_render_block(item, depth))
    else:
        lines.append(f"{pad}{_fmt(value)}")
    return lines


# -- result construction ---------------------------------------------------


def _ring_info(ring) -> dict:
    return {
        "variables": list(ring.names),
        "derivations": list(ring.dnames),
        "order": ring.order_delta.kind,
    }


def _named_ops(problem: ProblemFile):
    if not problem.operators:
        raise UsageError("the problem defines no operators")
    return list(problem.operators), list(problem.operators.values())


def _ideal_strs(ideal: PolyIdeal, names) -> list[str]:
    gens = ideal.groebner
    if not gens:
        return ["0"]
    disp = display_order(len(names))
    return [g.primitive(disp).to_str(names) for g in gens]


def _basis_names(problem: ProblemFile, total: int) -> list[str]:
    names = list(problem.operators)
    while len(names) < total:
        names.append(f"G{len(names) + 1}")
    return names


def _parse_alpha(ring, value) -> tuple:
    if isinstance(value, tuple):
        entries = value
    else:
        body = str(value).strip().strip("()")
        try:
            entries = tuple(int(t.strip()) for t in body.split(",") if t.strip())
        except ValueError:
            raise UsageError(f"cannot read exponent tuple {value!r}") from None
    if len(entries) != ring.n or any(t < 0 for t in entries):
        raise UsageError(
            f"alpha must be {ring.n} nonnegative integers, got {value!r}")
    return tuple(entries)


def _resolve_expr(problem: ProblemFile, expr):
    if expr is None:
        raise UsageError("this command needs an operator expression")
    if isinstance(expr, str):
        return parse_expression(expr, problem)
    return expr


def run_command(problem: ProblemFile, command: str, *, expr=None, alpha=None,
                order_x: str = "deglex", cap: int = 10000,
                tail: bool = False) -> ResultDocument:
    """Execute one subcommand against a parsed problem."""
    ring = problem.ring
    names, ops = _named_ops(problem)
    inputs = [f"{k} = {v.to_str()}" for k, v in problem.operators.items()]
    doc = ResultDocument(command, _ring_info(ring), inputs, {})

    if command == "run":
        payload = problem.command
        if payload is None:
            raise UsageError("the problem file carries no command statement")
        return run_command(problem, payload.name, expr=payload.expr,
                           alpha=payload.alpha, order_x=order_x, cap=cap,
                           tail=tail)

    if command == "delta-gb":
        b = complete(ops, cap)
        bnames = _basis_names(problem, len(b.ops))
        doc.outputs = {
            "basis": [f"{n} = {p.to_str()}" for n, p in zip(bnames, b.ops)],
            "stair": [list(a) for a in b.stair],
            "cones": {_fmt(list(a)): _ideal_strs(b.cones[a], ring.names)
                      for a in b.stair},
            "stats": dict(b.stats),
        }
    elif command == "gb":
        worder = WeylOrder(MonomialOrder(order_x), ring.order_delta)
        w = buchberger_weyl(ops, worder, cap)
        doc.outputs = {
            "order_x": order_x,
            "basis": [p.to_str() for p in w.ops],
            "stats": dict(w.stats),
        }
    elif command == "reduce":
        p = _resolve_expr(problem, expr)
        doc.inputs.append(f"operand = {p.to_str()}")
        tr = reduce(p, GeneratorSet(ops, ring), tail=tail)
        doc.outputs = {
            "remainder": tr.remainder.to_str(),
            "cofactors": {n: c.to_str() for n, c in zip(names, tr.cofactors)},
            "steps": tr.steps,
        }
    elif command == "member":
        p = _resolve_expr(problem, expr)
        doc.inputs.append(f"operand = {p.to_str()}")
        b = complete(ops, cap)
        bnames = _basis_names(problem, len(b.ops))
        ok, tr = member(p, b)
        doc.outputs = {
            "basis": [f"{n} = {q.to_str()}" for n, q in zip(bnames, b.ops)],
            "stats": dict(b.stats),
        }
        doc.verdict = ok
        if ok:
            doc.certificate = {
                "cofactors": {n: c.to_str()
                              for n, c in zip(bnames, tr.cofactors)},
            }
        else:
            doc.certificate = {
                "remainder": reduce(p, b.genset).remainder.to_str(),
            }
    elif command == "stair":
        b = complete(ops, cap)
        bnames = _basis_names(problem, len(b.ops))
        doc.outputs = {
            "basis": [f"{n} = {q.to_str()}" for n, q in zip(bnames, b.ops)],
            "stair": [list(a) for a in b.stair],
        }
    elif command == "cone":
        a = _parse_alpha(ring, alpha)
        ideal = cone_ideal(a, GeneratorSet(ops, ring))
        doc.outputs = {
            "alpha": list(a),
            "generators": _ideal_strs(ideal, ring.names),
            "unit": ideal.is_unit(),
        }
    elif command == "sdelta":
        a = _parse_alpha(ring, alpha)
        try:
            sops = s_delta_operators(GeneratorSet(ops, ring), a)
        except ValueError as e:
            raise UsageError(str(e)) from None
        doc.outputs = {
            "alpha": list(a),
            "operators": [
                {
                    "lambda": {n: lam.to_str(ring.names)
                               for n, lam in zip(names, sop.lam)},
                    "operator": sop.operator.to_str(),
                }
                for sop in sops
            ],
        }
    elif command == "verify-delta-gb":
        hit = _first_failure(GeneratorSet(ops, ring))
        doc.verdict = hit is None
        if hit is not None:
            sop, tr = hit
            doc.certificate = {
                "alpha": list(sop.alpha),
                "s_operator": sop.operator.to_str(),
                "remainder": tr.remainder.to_str(),
            }
    elif command == "flatness":
        b = complete(ops, cap)
        rep = flatness_report(b)
        doc.outputs = {
            "stair": [list(a) for a in rep.stair],
            "cones": {_fmt(list(a)): _ideal_strs(rep.cone_ideals[a], ring.names)
                      for a in rep.stair},
            "J": _ideal_strs(rep.J, ring.names),
            "zero_cone": _ideal_strs(rep.zero_cone, ring.names),
            "maximal_set_known": rep.maximal_set_known,
        }
        doc.verdict = rep.globally_flat
    elif command == "finiteness":
        b = complete(ops, cap)
        rep = finiteness_test(b)
        doc.outputs = {
            "witnesses": [
                {
                    "direction": ring.dnames[w.coordinate],
                    "degree": w.degree,
                    "certificate": _ideal_strs(w.certificate, ring.names),
                    "unit": w.unit,
                }
                for w in rep.witnesses
            ],
        }
        doc.verdict = rep.finite
        if not rep.finite:
            bad = next(w for w in rep.witnesses if not w.unit)
            doc.certificate = {
                "direction": ring.dnames[bad.coordinate],
                "certificate": _ideal_strs(bad.certificate, ring.names),
            }
    elif command == "syzygy":
        zero = (0,) * ring.n
        polys = []
        for n, op in problem.operators.items():
            if op.is_zero() or set(op.support()) != {zero}:
                raise UsageError(
                    f"syzygy needs derivation-free nonzero operators, {n} is not")
            polys.append(op.terms[zero])
        rows = syzygies(polys, ring.x_order())
        doc.outputs = {
            "rows": [[p.to_str(ring.names) for p in row] for row in rows],
        }
    elif command == "compare":
        worder = WeylOrder(MonomialOrder(order_x), ring.order_delta)
        b = complete(ops, cap)
        try:
            w = buchberger_weyl(ops, worder, cap)
        except ValueError as e:
            raise UsageError(str(e)) from None
        checks = {
            "delta_basis_divides_to_zero": all(
                divide_weyl(p, list(w.ops), worder)[1].is_zero() for p in b.ops),
            "weyl_basis_reduces_to_zero": all(
                member(p, b)[0] for p in w.ops),
            "weyl_basis_passes_delta_criterion": gb_implies_delta_check(
                list(w.ops), worder),
        }
        doc.outputs = {
            "delta": {
                "basis": [p.to_str() for p in b.ops],
                "stats": dict(b.stats),
            },
            "weyl": {
                "order_x": order_x,
                "basis": [p.to_str() for p in w.ops],
                "stats": dict(w.stats),
            },
            "checks": checks,
        }
        doc.verdict = all(checks.values())
    else:
        raise UsageError(f"unknown command {command!r}")
    return doc


# -- argument handling -------------------------------------------------------

_SUBCOMMANDS = (
    "run", "delta-gb", "gb", "reduce", "member", "stair", "cone", "sdelta",
    "verify-delta-gb", "flatness", "finiteness", "syzygy", "compare",
)

_HELP = {
    "run": "execute the command statement embedded in the problem file",
    "delta-gb": "complete the generators to a certified base",
    "gb": "classical basis under the elimination order (no parameters)",
    "reduce": "divide an operator by the generators as given",
    "member": "decide left ideal membership of an operator",
    "stair": "minimal exponent stair of the ideal",
    "cone": "cone ideal of the generators at one exponent",
    "sdelta": "S-operators of the generators at one lcm target",
    "verify-delta-gb": "check the base criterion for the generators as given",
    "flatness": "cone ideals over the stair and the product ideal J",
    "finiteness": "decide finiteness of the quotient over the coefficient ring",
    "syzygy": "syzygies of derivation-free operators",
    "compare": "run both basis algorithms and cross-check them",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diffgb",
        description="bases for left ideals of linear differential operators",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _SUBCOMMANDS:
        p = sub.add_parser(name, help=_HELP[name])
        p.add_argument("file", help="problem file")
        p.add_argument("--order", choices=sorted(ORDER_KINDS),
                       help="override the d-order declared in the file")
        p.add_argument("--order-x", default="deglex", choices=sorted(ORDER_KINDS),
                       help="x-part order for the elimination order")
        p.add_argument("--json", action="store_true",
                       help="print the result document as JSON")
        p.add_argument("--cap", type=int, default=10000,
                       help="bound on basis additions (default 10000)")
        p.add_argument("--tail-reduce", action="store_true",
                       help="keep reducing below an irreducible head")
        if name in ("reduce", "member"):
            p.add_argument("expr", help="operator expression")
        if name in ("cone", "sdelta"):
            p.add_argument("--alpha", required=True,
                           help="exponent tuple, e.g. '1,1' or '(1,1)'")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        text = Path(args.file).read_text()
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    try:
        problem = parse_problem(text)
        if args.order is not None:
            problem = rebind_order(problem, args.order)
        doc = run_command(
            problem,
            args.command,
            expr=getattr(args, "expr", None),
            alpha=getattr(args, "alpha", None),
            order_x=args.order_x,
            cap=args.cap,
            tail=args.tail_reduce,
        )
    except (ParseError, UsageError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except CompletionCapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    print(doc.to_json() if args.json else doc.render())
    if doc.verdict is None or doc.verdict:
        return EXIT_OK
    return EXIT_NEGATIVE


if __name__ == "__main__":
    sys.exit(main())
