"""JSON schemas for specs and reports.

Input files carry 1-based table indices and 1-based automorphism node lists.
Scalars serialize as ``{"num", "den", "zeta_pow", "zeta_order"}``; integers
and ``"p/q"`` strings are accepted as rational shorthand.  On load, one
cyclotomic order is fixed for the whole instance — the lcm of every
``zeta_order`` in the file and of the twist order — and all scalars are
re-expressed in it.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import lcm

from .classify import IsoResult, ModuleDescriptor
from .cyclotomic import CycScalar
from .errors import InputError
from .lattice import Lattice
from .liealg import build_algebra, build_aut
from .psi import PsiSpec, SupportLattice
from .twisted import TwistedDescriptor, TwistedSpec, TwistedWitness


def _fraction_from(value) -> Fraction:
    if isinstance(value, bool):
        raise InputError("booleans are not numbers", value=value)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError("bad rational literal", value=value) from exc
    raise InputError("expected an integer or a 'p/q' string", value=value)


def _scalar_orders(raw) -> int:
    if isinstance(raw, dict):
        return int(raw.get("zeta_order", 1))
    return 1


def _scalar_from(raw, order: int) -> CycScalar:
    if isinstance(raw, (int, str)):
        q = _fraction_from(raw)
        return CycScalar(q, 0, order)
    if isinstance(raw, dict):
        num = raw.get("num")
        if num is None:
            raise InputError("scalar object needs 'num'", value=raw)
        den = raw.get("den", 1)
        q = Fraction(int(num), int(den))
        own = int(raw.get("zeta_order", 1))
        e = int(raw.get("zeta_pow", 0))
        if order % own:
            raise InputError("scalar order does not divide the global order")
        return CycScalar(q, e * (order // own), order)
    raise InputError("bad scalar literal", value=raw)


def scalar_to_json(a: CycScalar) -> dict:
    return {
        "num": a.q.numerator,
        "den": a.q.denominator,
        "zeta_pow": a.e,
        "zeta_order": a.order,
    }


def fraction_to_json(x: Fraction):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_spec(doc: dict) -> PsiSpec | TwistedSpec:
    """Parse a spec document; returns a twisted spec when 'aut' is present."""
    if not isinstance(doc, dict):
        raise InputError("spec document must be an object")
    try:
        alg_doc = doc["algebra"]
        algebra = build_algebra(str(alg_doc["series"]), int(alg_doc["rank"]))
        n = int(doc["n"])
        dims = tuple(int(x) for x in doc["dims"])
        raw_weights = doc["weights"]
        raw_evals = doc["evals"]
    except KeyError as exc:
        raise InputError(f"spec is missing required field {exc}") from exc

    aut_doc = doc.get("aut")
    order = 1
    for axis in raw_evals:
        for raw in axis:
            order = lcm(order, _scalar_orders(raw))
    if aut_doc is not None:
        order = lcm(order, int(aut_doc.get("order", 1)) or 1)

    weights = {}
    for entry in raw_weights:
        try:
            idx = tuple(int(x) for x in entry["index"])
            coords = tuple(int(x) for x in entry["coords"])
        except (KeyError, TypeError) as exc:
            raise InputError("weight entries need 'index' and 'coords'") from exc
        if idx in weights:
            raise InputError("duplicate weight table entry", index=idx)
        weights[idx] = coords
    evals = tuple(
        tuple(_scalar_from(raw, order) for raw in axis) for axis in raw_evals
    )
    rho_raw = doc.get("rho", [0] * n)
    rho = tuple(_fraction_from(x) for x in rho_raw)
    spec = PsiSpec(
        algebra=algebra, n=n, dims=dims, weights=weights, evals=evals, rho=rho
    )
    if aut_doc is None:
        return spec
    try:
        perm = tuple(int(x) - 1 for x in aut_doc["perm"])
    except KeyError as exc:
        raise InputError("aut needs a 'perm' node list") from exc
    aut = build_aut(algebra, perm)
    declared = aut_doc.get("order")
    if declared is not None and int(declared) != aut.order:
        raise InputError(
            "declared automorphism order is wrong", declared=declared, actual=aut.order
        )
    return TwistedSpec(base=spec, aut=aut)


def load_spec(path: str) -> PsiSpec | TwistedSpec:
    try:
        with open(path, "rb") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read spec file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"spec file is not valid JSON: {exc}") from exc
    return parse_spec(doc)


def lattice_to_json(lat: Lattice) -> dict:
    return {
        "n": lat.n,
        "basis": [list(r) for r in lat.rows],
        "ordering": [i + 1 for i in lat.ordering],
        "index": lat.index if lat.index is not None else "infinite",
        "rank": lat.rank,
    }


def support_to_json(s: SupportLattice) -> dict:
    return {
        "lattice": lattice_to_json(s.lattice),
        "periods": list(s.periods),
        "index": s.index,
    }


def blocks_to_json(blocks) -> list:
    out = []
    for ab in blocks.axes:
        out.append(
            {
                "axis": ab.axis + 1,
                "period": ab.period,
                "block_count": ab.block_count,
                "bases": [scalar_to_json(c) for c in ab.bases],
                "epsilon": scalar_to_json(ab.epsilon),
                "assignment": [
                    {"index": j + 1, "block": blk + 1, "phase": ph}
                    for j, (blk, ph) in enumerate(ab.assignment)
                ],
            }
        )
    return out


def descriptor_to_json(d: ModuleDescriptor) -> dict:
    return {
        "dims": list(d.spec.dims),
        "support": support_to_json(d.support),
        "index": d.p,
        "blocks": blocks_to_json(d.blocks),
        "classes": [{"weight": list(w), "size": s} for w, s in d.classes],
        "realization": [{"weight": list(w), "count": c} for w, c in d.realization],
        "statement": d.realization_statement,
    }


def twisted_descriptor_to_json(d: TwistedDescriptor) -> dict:
    return {
        "dims": list(d.spec.base.dims),
        "type": d.module_type,
        "gamma_mu": support_to_json(d.gamma_mu),
        "m_hat": d.m_hat_n,
        "marginal_index": d.marginal_index,
        "exponent": d.exponent,
        "classes": [{"weight": list(w), "size": s} for w, s in d.classes],
        "realization": [{"weight": list(w), "count": c} for w, c in d.realization],
        "statement": d.realization_statement,
    }


def iso_result_to_json(res: IsoResult) -> dict:
    out: dict = {"isomorphic": res.isomorphic}
    if res.witness is not None:
        w = res.witness
        witness = {
            "tau": [[j + 1 for j in tau] for tau in w.taus],
            "scalings": [scalar_to_json(s) for s in w.scalings],
            "shift": list(w.shift),
        }
        if isinstance(w, TwistedWitness):
            witness["epsilons"] = [scalar_to_json(e) for e in w.epsilons]
        out["witness"] = witness
    else:
        out["witness"] = None
        out["reason"] = res.reason
    return out
