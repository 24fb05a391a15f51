"""Command-line front end: ``build``, ``xm``, ``check`` and ``verify``.

Exit codes: 0 success, 1 disagreement found, 2 input error, 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager

from .coxeter import build_coxeter_group, coxeter_from_json, hecke_monoid, verify_initial_subword
from .errors import BudgetExceeded, NotAssociative
from .faces import THREE_LINES, Arrangement, arrangement_from_normals, face_monoid, realizable_sign_vectors
from .functions import (FunctionClassSpec, all_op_regressive, all_regressive, catalan_monoid,
                        k_level_lipschitz_filter, tetris_monoid)
from .monoid import (ACTIONS, DEFAULT_BUDGET, LEFT, RIGHT, closure_from_transformations, coset_poset,
                     coset_table, export_hasse_dot, is_almost_r_trivial, is_j_trivial, is_r_trivial,
                     monoid_from_cayley, monoid_of_functions, xm_witness)
from .posets import FinitePoset
from .verify import ClassificationReport, InstanceRecord, generator_incomparability, run_classification, tetris_report

EXIT_OK, EXIT_DISAGREE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

KINDS = ("catalan", "tetris", "regressive", "op_regressive", "k_level_lipschitz",
         "hecke", "faces", "cayley", "function_class")
KIND_ACTION = {"regressive": RIGHT}


class InputError(ValueError):
    pass


def _field(spec, name, kind):
    if name not in spec:
        raise InputError(f"spec of kind {kind!r} is missing field {name!r}")
    return spec[name]


def _int_field(spec, name, kind, minimum=1):
    v = _field(spec, name, kind)
    if not isinstance(v, int) or isinstance(v, bool) or v < minimum:
        raise InputError(f"field {name!r} must be an integer >= {minimum}")
    return v


def _action(spec, kind, override=None):
    action = override or spec.get("action", "auto")
    if action == "auto":
        return KIND_ACTION.get(kind, LEFT)
    if action not in ACTIONS:
        raise InputError(f"field 'action' must be one of auto, left, right; got {action!r}")
    return action


def _poset_field(spec, kind) -> FinitePoset:
    try:
        return FinitePoset.from_json(_field(spec, "poset", kind))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"field 'poset': {exc}") from None


def build_from_spec(spec: dict, budget: int = DEFAULT_BUDGET, action: str | None = None):
    """Construct the monoid described by a spec dictionary."""
    if not isinstance(spec, dict):
        raise InputError("spec must be a JSON object")
    kind = spec.get("kind")
    if kind not in KINDS:
        raise InputError(f"field 'kind' must be one of {', '.join(KINDS)}; got {kind!r}")
    act = _action(spec, kind, action)
    if kind == "catalan":
        return catalan_monoid(_int_field(spec, "n", kind), act, budget)
    if kind == "tetris":
        return tetris_monoid(_int_field(spec, "n", kind), act, budget)
    if kind in ("regressive", "op_regressive"):
        P = _poset_field(spec, kind)
        fns = all_regressive(P) if kind == "regressive" else all_op_regressive(P)
        return monoid_of_functions(fns, action=act, budget=budget)
    if kind == "k_level_lipschitz":
        P = _poset_field(spec, kind)
        k = _int_field(spec, "k", kind)
        fns = k_level_lipschitz_filter(P, all_op_regressive(P), k)
        gens = [f for f in fns if f.images != tuple(range(P.n))]
        return closure_from_transformations(P.n, gens, action=act, budget=budget)
    if kind == "function_class":
        try:
            fcs = FunctionClassSpec.from_json(spec.get("class", spec))
        except (KeyError, TypeError) as exc:
            raise InputError(f"function class: {exc}") from None
        fns = fcs.functions()
        gens = [f for f in fns if f.images != tuple(range(fcs.poset.n))]
        return closure_from_transformations(fcs.poset.n, gens, action=act, budget=budget)
    if kind == "hecke":
        try:
            R = coxeter_from_json(spec.get("coxeter", spec))
        except (KeyError, TypeError) as exc:
            raise InputError(f"Coxeter spec: {exc}") from None
        return hecke_monoid(build_coxeter_group(R, budget), budget)
    if kind == "faces":
        data = spec.get("arrangement", spec)
        if data.get("preset") == "three_lines" or ("normals" not in data and "dim" not in data):
            A = arrangement_from_normals(2, THREE_LINES)
        else:
            A = Arrangement.from_json(data)
        return face_monoid(A)[0]
    if kind == "cayley":
        mul = _field(spec, "mul", kind)
        try:
            return monoid_from_cayley(mul, int(spec.get("identity", 0)), gens=spec.get("gens"))
        except (TypeError, IndexError) as exc:
            raise InputError(f"field 'mul': {exc}") from None
    raise InputError(f"unsupported kind {kind!r}")


def summary(M) -> dict:
    out = {
        "size": M.size,
        "generators": [M.name(g) for g in M.gens],
        "r_trivial": is_r_trivial(M),
        "almost_r_trivial": is_almost_r_trivial(M),
        "j_trivial": is_j_trivial(M),
        "cosets": int(M.coset_leq.shape[0]),
    }
    if M.action is not None:
        out["action"] = M.action
    return out


def _render_summary(info, fmt):
    if fmt == "json":
        return json.dumps(info, sort_keys=True, ensure_ascii=False)
    lines = [f"{k}: {', '.join(v) if isinstance(v, list) else v}" for k, v in info.items()]
    return "\n".join(lines)


def render_xm(M, fmt: str) -> str:
    if fmt == "dot":
        return export_hasse_dot(M)
    if fmt == "table":
        rows = coset_table(M, aliases=bool(M.symbol))
        width = max(len(r[0]) for r in rows)
        return "\n".join(f"{label.rjust(width)} | {{{', '.join(members)}}}" for label, members in rows)
    X = coset_poset(M)
    data = {
        "cosets": [
            {"label": X.label(i), "owners": [M.name(m) for m in X.owners[i]],
             "members": [M.name(m) for m in sorted(X.cosets[i])]}
            for i in range(len(X))
        ],
        "leq": [[int(v) for v in row] for row in X.leq],
        "linear": xm_witness(M) is None,
    }
    return json.dumps(data, ensure_ascii=False, indent=1)


def check_verdict(M) -> dict:
    w = xm_witness(M)
    if w is None:
        return {"verdict": "linear"}
    return {"verdict": "nonlinear", "witness": [f"{M.name(w[0])} M", f"{M.name(w[1])} M"]}


@contextmanager
def _output(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as fh:
            yield fh


def _load_spec(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from None


def cmd_build(args) -> int:
    M = build_from_spec(_load_spec(args.spec), args.budget, args.action)
    with _output(args.out) as fh:
        print(_render_summary(summary(M), args.format or "text"), file=fh)
    return EXIT_OK


def cmd_xm(args) -> int:
    M = build_from_spec(_load_spec(args.spec), args.budget, args.action)
    with _output(args.out) as fh:
        print(render_xm(M, args.format or "table"), file=fh)
    return EXIT_OK


def cmd_check(args) -> int:
    M = build_from_spec(_load_spec(args.spec), args.budget, args.action)
    verdict = check_verdict(M)
    with _output(args.out) as fh:
        if (args.format or "text") == "json":
            print(json.dumps(verdict, ensure_ascii=False), file=fh)
        elif verdict["verdict"] == "linear":
            print("linear", file=fh)
        else:
            print(f"nonlinear: {verdict['witness'][0]} and {verdict['witness'][1]} are incomparable", file=fh)
    return EXIT_OK


HECKE_SUITE = (("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3),
               ("I2", 3), ("I2", 4), ("I2", 5), ("I2", 6))
FACE_SUITE = (
    ("line", 1, [["1"]], 3),
    ("three_lines", 2, [list(v) for v in THREE_LINES], 13),
    ("four_lines", 2, [["1", "0"], ["0", "1"], ["1", "1"], ["1", "-1"]], 17),
    ("coordinate_3d", 3, [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]], 27),
)


def hecke_suite(budget=DEFAULT_BUDGET) -> ClassificationReport:
    """Linearity of ``X(H_0(W))`` is predicted exactly for one generator."""
    report = ClassificationReport("hecke", LEFT)
    for kind, n in HECKE_SUITE:
        W = build_coxeter_group(coxeter_from_json({"type": kind, "n": n}), budget)
        H = hecke_monoid(W, budget)
        sub = verify_initial_subword(H, W, max(W.length))
        gi = generator_incomparability(H)
        w = xm_witness(H)
        rec = InstanceRecord(f"{kind}{n}", len(H.gens) < 2, w is None, size=H.size,
                             extra={"group_order": len(W), "r_trivial": is_r_trivial(H),
                                    "j_trivial": is_j_trivial(H), "initial_subword_ok": sub.ok,
                                    "generator_witness": None if gi is None else [H.name(g) for g in gi]})
        if w is not None:
            rec.witness = [H.name(w[0]), H.name(w[1])]
        if len(W) != H.size or not sub.ok or not rec.extra["r_trivial"] or not rec.extra["j_trivial"]:
            rec.observed = None
        report.records.append(rec)
    return report


def faces_suite() -> ClassificationReport:
    """Every arrangement has at least two chambers, so ``X(M)`` is predicted non-linear."""
    report = ClassificationReport("faces", LEFT)
    for name, d, normals, expected in FACE_SUITE:
        A = arrangement_from_normals(d, normals)
        faces = realizable_sign_vectors(A)
        M, signs = face_monoid(A, faces)
        w = xm_witness(M)
        gi = generator_incomparability(M)
        rec = InstanceRecord(name, False, w is None, size=M.size,
                             extra={"faces": len(faces), "expected_faces": expected,
                                    "chambers": sum("0" not in s for s in signs),
                                    "generator_witness": None if gi is None else [signs[g] for g in gi]})
        if w is not None:
            rec.witness = [signs[w[0]], signs[w[1]]]
        if len(faces) != expected:
            rec.observed = None
        report.records.append(rec)
    return report


SUITES = ("s33", "s34", "s35k1", "s35k2", "s36", "tetris", "hecke", "faces")


def run_suite(name, nmax=None, budget=DEFAULT_BUDGET, action=None) -> ClassificationReport:
    if name == "s33":
        return run_classification("all_regressive", nmax, action=action, budget=budget)
    if name == "s34":
        return run_classification("op_lattice", nmax, action=action, budget=budget)
    if name == "s35k1":
        return run_classification("k_lip", nmax, k=1, action=action, budget=budget)
    if name == "s35k2":
        return run_classification("k_lip", nmax, k=2, action=action, budget=budget)
    if name == "s36":
        return run_classification("constants", nmax, action=action, budget=budget)
    if name == "tetris":
        return tetris_report(6 if nmax is None else nmax, action or LEFT)
    if name == "hecke":
        return hecke_suite(budget)
    if name == "faces":
        return faces_suite()
    raise InputError(f"unknown suite {name!r}")


def cmd_verify(args) -> int:
    names = SUITES if args.suite == "all" else (args.suite,)
    action = None if args.action in (None, "auto") else args.action
    disagree = skipped = False
    with _output(args.out) as fh:
        for name in names:
            report = run_suite(name, args.nmax, args.budget, action)
            for line in report.json_lines():
                print(line, file=fh)
            disagree |= bool(report.disagreements)
            skipped |= bool(report.skipped)
    if disagree:
        return EXIT_DISAGREE
    return EXIT_BUDGET if skipped else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ramsey-monoids",
                                     description="Finite monoids, their left-coset orders and linearity checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats):
        p.add_argument("--format", choices=formats)
        p.add_argument("--out", help="write output to this file instead of stdout")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="maximum number of monoid elements")
        p.add_argument("--action", choices=("auto",) + ACTIONS,
                       help="composition convention (default: the 'action' field of SPEC, else per kind)")

    p = sub.add_parser("build", help="build a monoid and print its size and triviality flags")
    p.add_argument("spec")
    common(p, ("text", "json"))
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("xm", help="render the left-coset order X(M)")
    p.add_argument("spec")
    common(p, ("dot", "json", "table"))
    p.set_defaults(func=cmd_xm)

    p = sub.add_parser("check", help="decide whether X(M) is linear")
    p.add_argument("spec")
    common(p, ("text", "json"))
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", help="run a verification suite (JSON lines)")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--nmax", type=int)
    common(p, ("json",))
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, NotAssociative, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
