"""``cstkit`` command line front end.

Every command builds a JSON document; ``--format text`` renders that same
document as indented text.  Exit codes: 0 ok, 1 bad input, 2 resource
limit, 3 theorem-equivalence violation.
"""

import argparse
import json
import sys

from . import __version__
from .descent import descent_demo
from .diag import GradedAction, pseudo_reflections
from .errors import InconclusiveError, InputError, LimitError, TheoremViolation
from .fields import QQ, field_from_json
from .linalg import poly_str
from .monoid import (
    KernelMonoid,
    box_limit,
    coordinate_gcds,
    hilbert_basis,
    hilbert_basis_degrees,
    invariant_monomials_up_to,
    verify_torsor_theorem,
)
from .reflection import (
    DEFAULT_GROUP_CAP,
    close_group,
    invariant_basis,
    is_polynomial_invariants,
    matrix_from_json,
    molien_series,
    pseudo_reflection_elements,
    subgroup_generated_by_pseudo_reflections,
)
from .report import AnalysisReport, provenance
from .sweep import SweepConfig, run_sweep
from .wellsplit import WellSplitAction, analyze as analyze_wellsplit, monomial_group

EXIT_OK, EXIT_INPUT, EXIT_LIMIT, EXIT_VIOLATION = 0, 1, 2, 3


def load_document(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not valid JSON ({exc})") from exc
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc


def parse_input(doc):
    """-> (kind, object) for a diag, constant or wellsplit document."""
    if not isinstance(doc, dict):
        raise InputError("input must be a JSON object")
    kind = doc.get("kind")
    if kind == "diag":
        return kind, GradedAction.from_json(doc)
    if kind == "constant":
        field = field_from_json(doc.get("field"))
        gens = doc.get("generators")
        if not isinstance(gens, list) or not gens:
            raise InputError("constant input needs a nonempty 'generators' list of matrices")
        return kind, close_group([matrix_from_json(g, field) for g in gens], field)
    if kind == "wellsplit":
        return kind, WellSplitAction.from_json(doc)
    raise InputError(f"unknown kind {kind!r}; expected diag, constant or wellsplit")


def limits(**extra):
    return {"box": box_limit(), "group_cap": DEFAULT_GROUP_CAP, **extra}


def analyze_diag(act, doc):
    prs = pseudo_reflections(act)
    K = prs.generated_kernel
    P = KernelMonoid(act)
    basis = hilbert_basis(P)
    free = len(basis) == act.n
    echo = act.to_json()
    if "char" in doc:
        echo["char"] = doc["char"]
    report = AnalysisReport(
        kind="diag",
        input=echo,
        pseudo_reflection_count=len(prs),
        generated_subgroup={
            "kernel": K.to_json(),
            "kernel_order": K.order,
            "order": act.group.order // K.order,
        },
        criterion_verdict=K.is_trivial,
        oracle_verdict=free,
        oracle={
            "degrees": hilbert_basis_degrees(basis) if free else None,
            "hilbert_basis": [list(f) for f in basis],
            "gcds": coordinate_gcds(P),
        },
        limits=limits(),
        details={"pseudo_reflections": prs.to_json()},
    )
    return report


def analyze_constant(G, degree_cap=None):
    H = subgroup_generated_by_pseudo_reflections(G)
    verdict = is_polynomial_invariants(G, degree_cap=degree_cap)
    oracle = verdict.to_json()
    oracle.pop("polynomial")
    return AnalysisReport(
        kind="constant",
        input=G.to_json(),
        pseudo_reflection_count=len(pseudo_reflection_elements(G)),
        generated_subgroup={"order": H.order, "group_order": G.order},
        criterion_verdict=H.order == G.order,
        oracle_verdict=verdict.polynomial,
        oracle=oracle,
        limits=limits(degree_cap=degree_cap if degree_cap is not None else G.order),
    )


def analyze_document(doc, degree_cap=None):
    kind, obj = parse_input(doc)
    if kind == "diag":
        report = analyze_diag(obj, doc)
    elif kind == "constant":
        report = analyze_constant(obj, degree_cap)
    else:
        report = analyze_wellsplit(obj, degree_cap=degree_cap)
        report.limits = {**limits(), **report.limits}
    if not report.agreement and report.open_question is None:
        report.warnings.append("criterion and oracle disagree; this contradicts the equivalence theorem")
    out = report.to_json()
    out["provenance"] = provenance(report.limits)
    return out


def hilbert_basis_document(doc):
    kind, obj = parse_input(doc)
    act = obj.action if kind == "wellsplit" else obj
    if kind == "constant":
        raise InputError("hilbert-basis needs a diag or wellsplit action")
    P = KernelMonoid(act)
    basis = hilbert_basis(P)
    return {
        "kind": "hilbert-basis",
        "input": act.to_json(),
        "basis": [list(f) for f in basis],
        "free": len(basis) == act.n,
        "gcds": coordinate_gcds(P),
        "provenance": provenance(limits()),
    }


def _diag_counts(act, max_degree):
    counts = [0] * (max_degree + 1)
    for f in invariant_monomials_up_to(KernelMonoid(act), max_degree):
        counts[sum(f)] += 1
    return counts


def _matrix_group(kind, obj):
    if kind == "constant":
        return obj
    if obj.characteristic:
        raise InputError("this command runs wellsplit inputs in characteristic 0 only")
    return monomial_group(obj)


def molien_document(doc, max_degree):
    kind, obj = parse_input(doc)
    if kind == "diag":
        # for a diagonal group the invariants are spanned by P-monomials
        coeffs = _diag_counts(obj, max_degree)
    else:
        coeffs = molien_series(_matrix_group(kind, obj), max_degree)
    return {
        "kind": "molien",
        "input": obj.to_json(),
        "max_degree": max_degree,
        "coefficients": coeffs,
        "provenance": provenance(limits()),
    }


def invariants_document(doc, max_degree):
    kind, obj = parse_input(doc)
    degrees = []
    if kind == "diag":
        P = KernelMonoid(obj)
        by_degree = {d: [] for d in range(max_degree + 1)}
        for f in invariant_monomials_up_to(P, max_degree):
            by_degree[sum(f)].append(f)
        for d in range(max_degree + 1):
            monos = sorted(by_degree[d], reverse=True)
            degrees.append({"degree": d, "dimension": len(monos), "basis": [poly_str({f: 1}, QQ) for f in monos]})
    else:
        G = _matrix_group(kind, obj)
        for d in range(max_degree + 1):
            basis = invariant_basis(G, d, degree_cap=max_degree)
            degrees.append({"degree": d, "dimension": len(basis), "basis": [poly_str(f, G.field) for f in basis]})
    return {
        "kind": "invariants",
        "input": obj.to_json(),
        "degrees": degrees,
        "provenance": provenance(limits(degree_cap=max_degree)),
    }


def torsor_document(doc):
    kind, obj = parse_input(doc)
    if kind != "diag":
        raise InputError("torsor-check needs a diag action")
    report = verify_torsor_theorem(obj)
    out = {"kind": "torsor-check", **report.to_json(), "non_smooth": report.non_smooth_supports()}
    out["provenance"] = provenance(limits())
    return out


def render_text(obj, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for key in sorted(obj):
            value = obj[key]
            if isinstance(value, (dict, list)) and value and not _is_flat(value):
                lines.append(f"{pad}{key}:")
                lines.append(render_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(value)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, dict):
                lines.append(f"{pad}-")
                lines.append(render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(f"{pad}{_scalar(obj)}")
    return "\n".join(lines)


def _is_flat(value):
    return isinstance(value, list) and all(not isinstance(x, dict) for x in value) and len(json.dumps(value)) <= 72


def _scalar(value):
    if isinstance(value, str):
        return value
    return json.dumps(value, sort_keys=True)


def emit(doc, fmt):
    if fmt == "text":
        print(render_text(doc))
    else:
        print(json.dumps(doc, sort_keys=True, indent=2))


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS, help="output format")
    parser = argparse.ArgumentParser(
        prog="cstkit",
        description="Decide polynomiality of invariant rings of finite linearly reductive group actions.",
        parents=[common],
    )
    parser.add_argument("--version", action="version", version=f"cstkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="criterion and oracle verdicts for one input")
    p.add_argument("file", help="JSON input ('-' for stdin)")
    p.add_argument("--degree-cap", type=int, default=None, help="highest degree searched by the invariant oracle")

    p = sub.add_parser("sweep", parents=[common], help="cross-validate the diagonalizable criteria")
    p.add_argument("--max-order", type=int, default=16)
    p.add_argument("--dim", type=int, default=3)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true", help="every faithful action up to permutation")
    mode.add_argument("--count", type=int, default=500, help="number of random instances")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("hilbert-basis", parents=[common], help="Hilbert basis of the kernel monoid")
    p.add_argument("file")

    for name, help_ in (("molien", "Hilbert series coefficients"), ("invariants", "invariant bases by degree")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("file")
        p.add_argument("--max-degree", type=int, required=True)

    p = sub.add_parser("torsor-check", parents=[common], help="smooth strata have trivial stabilizers")
    p.add_argument("file")

    sub.add_parser("descent-demo", parents=[common], help="Galois descent counterexample table")
    return parser


def run(args):
    """-> (document, exit code)"""
    cmd = args.command
    if cmd == "analyze":
        return analyze_document(load_document(args.file), args.degree_cap), EXIT_OK
    if cmd == "sweep":
        for name in ("max_order", "dim", "count", "jobs"):
            if getattr(args, name) < (0 if name == "count" else 1):
                raise InputError(f"--{name.replace('_', '-')} is out of range")
        config = SweepConfig(args.max_order, args.dim, args.exhaustive, args.count, args.seed, args.jobs)
        doc = run_sweep(config)
        doc["provenance"] = provenance(limits(), seed=None if args.exhaustive else args.seed)
        return doc, EXIT_VIOLATION if doc["discrepancies"] else EXIT_OK
    if cmd in ("molien", "invariants") and args.max_degree < 0:
        raise InputError("--max-degree must be >= 0")
    if cmd == "hilbert-basis":
        return hilbert_basis_document(load_document(args.file)), EXIT_OK
    if cmd == "molien":
        return molien_document(load_document(args.file), args.max_degree), EXIT_OK
    if cmd == "invariants":
        return invariants_document(load_document(args.file), args.max_degree), EXIT_OK
    if cmd == "torsor-check":
        doc = torsor_document(load_document(args.file))
        return doc, EXIT_OK if doc["pass"] else EXIT_VIOLATION
    return {**descent_demo(), "provenance": provenance(limits())}, EXIT_OK


def main(argv=None):
    args = build_parser().parse_args(argv)
    fmt = getattr(args, "format", "json")
    try:
        doc, code = run(args)
    except InputError as exc:
        print(f"cstkit: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (LimitError, InconclusiveError) as exc:
        print(f"cstkit: limit reached: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except TheoremViolation as exc:
        print(f"cstkit: theorem violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    emit(doc, fmt)
    return code


if __name__ == "__main__":
    sys.exit(main())
