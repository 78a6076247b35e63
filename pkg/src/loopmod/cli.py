"""Batch front-end: parse spec files, dispatch, emit deterministic reports.

Exit codes: 0 success or witness; 1 criteria not satisfied or verification
mismatch; 2 malformed input or resource cap; 3 typed structure errors
(trivial module, missing axis period, support closure failure, block or type
violations, restricted-image mismatch).
"""

from __future__ import annotations

import argparse
import hashlib
import itertools
import json
import sys

from . import realizer
from .classify import classify, decide_iso, detect_blocks
from .errors import (
    CapExceededError,
    EngineError,
    ImageMismatchError,
    InputError,
    NoPeriodWithinBoundError,
    StructureViolationError,
    SupportNotSubgroupError,
    TrivialModuleError,
    UnsupportedError,
)
from .jsonio import (
    blocks_to_json,
    descriptor_to_json,
    iso_result_to_json,
    load_spec,
    support_to_json,
    twisted_descriptor_to_json,
)
from .psi import PsiSpec, support_lattice
from .twisted import (
    TwistedSpec,
    check_complete_reducibility,
    decide_twisted_iso,
    twisted_classify,
)

_EXIT_OK = 0
_EXIT_UNSATISFIED = 1
_EXIT_INPUT = 2
_EXIT_STRUCTURE = 3

_STRUCTURE_ERRORS = (
    TrivialModuleError,
    NoPeriodWithinBoundError,
    SupportNotSubgroupError,
    StructureViolationError,
    ImageMismatchError,
)


def _digest(paths) -> str:
    h = hashlib.sha256()
    for p in paths:
        with open(p, "rb") as fh:
            h.update(fh.read())
    return h.hexdigest()


def _base(spec) -> PsiSpec:
    return spec.base if isinstance(spec, TwistedSpec) else spec


def _need_twisted(spec, command: str) -> TwistedSpec:
    if not isinstance(spec, TwistedSpec):
        raise InputError(f"'{command}' needs a spec with an 'aut' block")
    return spec


def _emit(report: dict, output: str) -> None:
    if output == "json":
        sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
        return
    sys.stdout.write(f"command: {report['command']}\n")
    for diag in report.get("diagnostics", []):
        sys.stdout.write(f"error[{diag['type']}]: {diag['message']}\n")
    result = report.get("result")
    if result is not None:
        sys.stdout.write(json.dumps(result, sort_keys=True, indent=2) + "\n")


def _verify_report(spec: PsiSpec, box: int, cap: int) -> tuple[dict, bool]:
    descriptor = classify(spec)
    support = descriptor.support
    boxes = realizer.component_decomposition(spec, box, cap=cap)
    fin = boxes[0].fin
    order = spec.field_order

    degrees = sorted(
        itertools.product(*(range(-box, box + 1) for _ in range(spec.n)))
    )
    table = []
    sums_ok = True
    disjoint_ok = True
    for deg in degrees:
        combined = realizer.FieldEchelon(fin.total, order)
        rank_sum = 0
        for ci, b in enumerate(boxes):
            ech = b.fibers.get(deg)
            rank = ech.rank if ech else 0
            rank_sum += rank
            if rank:
                table.append({"component": ci, "degree": list(deg), "dim": rank})
            if ech:
                for row in ech.rows:
                    if combined.add(row) is None:
                        disjoint_ok = False
        if combined.rank != fin.total or rank_sum != combined.rank:
            sums_ok = False

    lat = support.lattice
    reps = support.coset_reps()

    def coset_key(deg):
        for rep in reps:
            if lat.contains([a - b for a, b in zip(deg, rep)]):
                return rep
        return None

    per_coset: dict = {}
    periodic_ok = True
    zero_box = boxes[0]
    for deg in degrees:
        dim = zero_box.fibers[deg].rank if deg in zero_box.fibers else 0
        key = coset_key(deg)
        if key in per_coset and per_coset[key] != dim:
            periodic_ok = False
        per_coset.setdefault(key, dim)

    top_weight = fin.basis_weights[fin.hw_index]
    top_ok = True
    for deg in degrees:
        char = dict(realizer.fiber_character(zero_box, deg, lambda w: w))
        mult = char.get(top_weight, 0)
        if mult != (1 if lat.contains(deg) else 0):
            top_ok = False

    checks = {
        "component_count": len(boxes) == descriptor.p,
        "fibers_disjoint": disjoint_ok,
        "degree_sums": sums_ok,
        "support_periodicity": periodic_ok,
        "top_weight_support": top_ok,
    }
    result = {
        "box": box,
        "module_dimension": fin.total,
        "expected_components": descriptor.p,
        "components": len(boxes),
        "support": support_to_json(support),
        "fiber_dims": table,
        "checks": checks,
        "ok": all(checks.values()),
    }
    return result, all(checks.values())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="loopmod",
        description="classify and compare graded loop-module evaluation data",
    )
    parser.add_argument("--output", choices=("json", "text"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, nargs=1, **kwargs):
        p = sub.add_parser(name, **kwargs)
        if nargs == 1:
            p.add_argument("spec", help="path to a spec JSON file")
        else:
            p.add_argument("left", help="path to the first spec JSON file")
            p.add_argument("right", help="path to the second spec JSON file")
        return p

    add("support", help="support lattice of the degree functional")
    add("classify", help="full untwisted classification")
    add("blocks", help="per-axis orbit block structure")
    iso = add("iso", nargs=2, help="untwisted isomorphism decision")
    iso.add_argument(
        "--refute-box",
        type=int,
        default=None,
        help="attach a graded-character comparison on this box when unsatisfied",
    )
    add("twisted-classify", help="twisted classification (needs an 'aut' block)")
    add("twisted-iso", nargs=2, help="twisted isomorphism decision")
    add("reducibility", help="complete-reducibility check of the restriction")
    verify = add("verify", help="realize components and audit the classification")
    verify.add_argument("--box", type=int, default=3, help="degree box radius")
    verify.add_argument("--cap", type=int, default=64, help="dimension cap")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    report: dict = {"schema": 1, "command": args.command, "diagnostics": []}
    exit_code = _EXIT_OK
    try:
        if args.command in ("support", "classify", "blocks", "twisted-classify",
                            "reducibility", "verify"):
            paths = [args.spec]
        else:
            paths = [args.left, args.right]
        report["input_digest"] = _digest(paths)
        spec = load_spec(paths[0])

        if args.command == "support":
            support = support_lattice(_base(spec))
            report["result"] = support_to_json(support)
        elif args.command == "classify":
            report["result"] = descriptor_to_json(classify(_base(spec)))
        elif args.command == "blocks":
            base = _base(spec)
            support = support_lattice(base)
            report["result"] = {
                "support": support_to_json(support),
                "blocks": blocks_to_json(detect_blocks(base, support)),
            }
        elif args.command == "iso":
            other = load_spec(paths[1])
            d1 = classify(_base(spec))
            d2 = classify(_base(other))
            res = decide_iso(d1, d2)
            payload = iso_result_to_json(res)
            if not res and args.refute_box is not None:
                payload["characters_differ"] = _characters_differ(
                    _base(spec), _base(other), args.refute_box
                )
            report["result"] = payload
            if not res:
                exit_code = _EXIT_UNSATISFIED
        elif args.command == "twisted-classify":
            tspec = _need_twisted(spec, args.command)
            report["result"] = twisted_descriptor_to_json(twisted_classify(tspec))
        elif args.command == "twisted-iso":
            other = load_spec(paths[1])
            t1 = _need_twisted(spec, args.command)
            t2 = _need_twisted(other, args.command)
            res = decide_twisted_iso(twisted_classify(t1), twisted_classify(t2))
            report["result"] = iso_result_to_json(res)
            if not res:
                exit_code = _EXIT_UNSATISFIED
        elif args.command == "reducibility":
            tspec = _need_twisted(spec, args.command)
            ok, reason = check_complete_reducibility(tspec)
            report["result"] = {"completely_reducible": ok, "reason": reason}
        elif args.command == "verify":
            result, ok = _verify_report(_base(spec), args.box, args.cap)
            report["result"] = result
            if not ok:
                exit_code = _EXIT_UNSATISFIED
    except (InputError, CapExceededError, UnsupportedError) as exc:
        report["diagnostics"].append(_diag(exc))
        exit_code = _EXIT_INPUT
    except _STRUCTURE_ERRORS as exc:
        report["diagnostics"].append(_diag(exc))
        exit_code = _EXIT_STRUCTURE
    except EngineError as exc:
        report["diagnostics"].append(_diag(exc))
        exit_code = _EXIT_INPUT

    _emit(report, args.output)
    return exit_code


def _diag(exc: EngineError) -> dict:
    data = {
        k: (list(v) if isinstance(v, (tuple, set)) else v)
        for k, v in sorted(exc.data.items())
    }
    for k, v in data.items():
        if isinstance(v, (list, tuple)):
            data[k] = [list(x) if isinstance(x, tuple) else x for x in v]
    return {"type": type(exc).__name__, "message": str(exc), "data": data}


def _characters_differ(a: PsiSpec, b: PsiSpec, box: int):
    try:
        ca = realizer.graded_character(a, box)
        cb = realizer.graded_character(b, box)
    except CapExceededError:
        return None
    if ca == cb:
        return False
    # Characters are a necessary invariant up to a degree shift.
    deltas = set()
    for da in ca:
        for db in cb:
            deltas.add(tuple(x - y for x, y in zip(db, da)))
    for delta in sorted(deltas):
        shifted = {
            tuple(x + y for x, y in zip(deg, delta)): val for deg, val in ca.items()
        }
        overlap = set(shifted) & set(cb)
        if overlap and all(shifted[d] == cb[d] for d in overlap):
            return False
    return True


if __name__ == "__main__":
    raise SystemExit(main())
