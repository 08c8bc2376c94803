"""Command-line front end: JSON instance files in, one JSON report out.

Exit codes: 0 when the computation finished (an "absent" or "infeasible"
verdict included), 1 on usage or input errors, 2 when a search budget ran
out. Every witness is written in the instance-file format with a
``witness`` object, so ``splitkit check`` can re-validate it.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from dataclasses import dataclass, field
from json.decoder import scanstring

from . import closure, coloring, core, density, similarity, splitting
from .core import DEFAULT_BUDGET, Condition, EDCertificate, SearchStats, SetFamily
from .errors import (
    BadParameters,
    Infeasible,
    ListTooSmall,
    ParseError,
    RangeError,
    SearchBudgetExceeded,
    SplitkitError,
    UniverseTooLarge,
)
from .generators import KINDS, generate

FORMAT_VERSION = "splitkit-1"
TOP_LEVEL_FIELDS = ("version", "universe", "sets", "lists", "params", "witness", "meta")
PARAM_FIELDS = (
    "t", "mu", "kappa", "theta", "nu", "bound", "bound_kind", "max_block",
    "n", "k1", "k2", "set", "mode",
)


class UsageError(SplitkitError):
    pass


# -- instance files -------------------------------------------------------------


@dataclass
class InstanceFile:
    family: SetFamily
    version: str = FORMAT_VERSION
    lists: dict | None = None
    params: dict = field(default_factory=dict)
    witness: dict | None = None
    meta: dict | None = None

    @property
    def universe_size(self):
        return self.family.universe_size

    @property
    def sets(self):
        return self.family.sets


_WS = re.compile(r"[ \t\n\r]*")


def _position(text, i):
    line = text.count("\n", 0, i) + 1
    col = i - (text.rfind("\n", 0, i) + 1) + 1
    return line, col


def _skip(text, i):
    return _WS.match(text, i).end()


def _scan_object(text, i):
    """Fields of the JSON object starting at ``i``: key -> (value, key_pos, value_pos)."""
    decoder = json.JSONDecoder()
    fields = {}
    i = _skip(text, i) + 1
    i = _skip(text, i)
    if text[i:i + 1] == "}":
        return fields
    while True:
        i = _skip(text, i)
        key, j = scanstring(text, i + 1)
        key_pos = i
        j = _skip(text, j) + 1  # the colon
        j = _skip(text, j)
        value, end = decoder.raw_decode(text, j)
        if key in fields:
            raise ParseError(f"duplicate field {key!r}", *_position(text, key_pos))
        fields[key] = (value, key_pos, j)
        i = _skip(text, end)
        if text[i] == ",":
            i += 1
            continue
        return fields


def _scan_array(text, i):
    """Start positions of the elements of the JSON array starting at ``i``."""
    decoder = json.JSONDecoder()
    out = []
    i = _skip(text, i) + 1
    i = _skip(text, i)
    if text[i:i + 1] == "]":
        return out
    while True:
        i = _skip(text, i)
        _, end = decoder.raw_decode(text, i)
        out.append(i)
        i = _skip(text, end)
        if text[i] == ",":
            i += 1
            continue
        return out


def _is_int(x):
    return isinstance(x, int) and not isinstance(x, bool)


def parse_instance(data):
    """Strictly parse an instance file (bytes or str) into an InstanceFile.

    Raises ParseError (with line/column) for malformed JSON, unknown
    fields or wrong types, and RangeError for vertices outside the universe.
    """
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ParseError(f"input is not UTF-8: {e}") from None
    else:
        text = data
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("instance must be a JSON object", 1, 1)
    fields = _scan_object(text, _skip(text, 0))

    def fail(msg, pos, cls=ParseError):
        raise cls(msg, *_position(text, pos))

    for key, (_, key_pos, _) in fields.items():
        if key not in TOP_LEVEL_FIELDS:
            fail(f"unknown field {key!r}", key_pos)

    if "version" in fields:
        version, _, vpos = fields["version"]
        if version != FORMAT_VERSION:
            fail(f"unsupported version {version!r}, expected {FORMAT_VERSION!r}", vpos)
    else:
        version = FORMAT_VERSION

    if "universe" not in fields:
        raise ParseError("missing field 'universe'", 1, 1)
    n, _, upos = fields["universe"]
    if not _is_int(n) or n < 0:
        fail("'universe' must be a nonnegative integer", upos)

    if "sets" not in fields:
        raise ParseError("missing field 'sets'", 1, 1)
    raw_sets, _, spos = fields["sets"]
    if not isinstance(raw_sets, list):
        fail("'sets' must be a list of integer lists", spos)
    set_positions = _scan_array(text, spos)
    sets = []
    for idx, (s, pos) in enumerate(zip(raw_sets, set_positions)):
        if not isinstance(s, list):
            fail(f"set {idx} must be a list of integers", pos)
        elem_positions = _scan_array(text, pos)
        for v, vpos in zip(s, elem_positions):
            if not _is_int(v):
                fail(f"set {idx} has non-integer element {v!r}", vpos)
            if v < 0 or v >= n:
                fail(f"set {idx} has vertex {v} outside 0..{n - 1}", vpos, RangeError)
        if len(set(s)) != len(s):
            fail(f"set {idx} repeats a vertex", pos)
        sets.append(s)

    lists = None
    if "lists" in fields:
        raw, _, lpos = fields["lists"]
        if not isinstance(raw, list) or len(raw) != n:
            fail(f"'lists' must be a list of {n} color lists", lpos)
        for v, (colors, cpos) in enumerate(zip(raw, _scan_array(text, lpos))):
            if not isinstance(colors, list) or not all(_is_int(c) for c in colors):
                fail(f"color list of vertex {v} must be a list of integers", cpos)
        lists = {v: frozenset(colors) for v, colors in enumerate(raw)}

    params = {}
    if "params" in fields:
        raw, _, ppos = fields["params"]
        if not isinstance(raw, dict):
            fail("'params' must be an object", ppos)
        for key, (value, kpos, _) in _scan_object(text, ppos).items():
            if key not in PARAM_FIELDS:
                fail(f"unknown parameter {key!r}", kpos)
            params[key] = value

    witness = None
    if "witness" in fields:
        witness, _, wpos = fields["witness"]
        if not isinstance(witness, dict) or "kind" not in witness:
            fail("'witness' must be an object with a 'kind'", wpos)

    meta = fields["meta"][0] if "meta" in fields else None
    return InstanceFile(SetFamily(n, sets), version, lists, params, witness, meta)


def instance_document(fam, witness=None, params=None, lists=None, meta=None):
    doc = {"version": FORMAT_VERSION, "universe": fam.universe_size, "sets": fam.as_lists()}
    if lists is not None:
        doc["lists"] = [sorted(lists.get(v, ())) for v in range(fam.universe_size)]
    if params:
        doc["params"] = params
    if witness is not None:
        doc["witness"] = witness
    if meta is not None:
        doc["meta"] = meta
    return doc


def dumps(doc):
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# -- witness validation -----------------------------------------------------------


def _colors(pairs):
    return {int(v): c for v, c in pairs}


def witness_problems(inst):
    """Re-validate the witness embedded in an instance file; [] means valid."""
    w = inst.witness
    fam = inst.family
    kind = w.get("kind")
    try:
        if kind == "density":
            q = density.DensityQuery(fam.universe_size, w["k1"], w["k2"])
            dw = density.DensityWitness(fam.sets, density.DENSE)
            if len(dw) != w.get("value", len(dw)):
                return ["value does not match the number of members"]
            return [] if density.verify_witness(dw, q) else ["members are not dense"]
        if kind == "weak-covering":
            theta = w["theta"]
            dw = density.DensityWitness(fam.sets, density.WEAKLY_COVERING, theta)
            q = density.DensityQuery(fam.universe_size, theta, theta)
            return [] if density.verify_witness(dw, q) else ["members are not weakly covering"]
        if kind == "closure":
            spec = closure.ClosureSpec.from_family(fam, w["kappa"])
            got = closure.close(spec, w["set"])
            out = []
            if sorted(got) != sorted(w["closure"]):
                out.append(f"closure of {w['set']} is {sorted(got)}, not {w['closure']}")
            if not closure.is_closed_generic(spec, w["closure"]):
                out.append("claimed closure is not closed")
            return out
        if kind == "closed-sets":
            spec = closure.ClosureSpec.from_family(fam, w["kappa"])
            listed = [frozenset(s) for s in w["sets"]]
            out = [f"{sorted(s)} is not closed" for s in listed if not closure.is_closed_generic(spec, s)]
            count = sum(1 for u in range(1 << fam.universe_size)
                        if closure.is_closed_generic(spec, [v for v in range(fam.universe_size) if u >> v & 1]))
            if count != len(set(listed)):
                out.append(f"{len(set(listed))} sets listed, {count} closed sets exist")
            return out
        if kind == "decomposition":
            dec = splitting.Decomposition(w["blocks"], w["mu"])
            out = splitting.decomposition_problems(fam, dec)
            if "max_block" in w and any(len(b) > w["max_block"] for b in dec.blocks):
                out.append("a block exceeds max_block")
            return out
        if kind == "refinement":
            r = splitting.Refinement(w["order"], w["d"], w["t"], w["back_hits"])
            return splitting.refinement_problems(fam, r)
        if kind == "property-b":
            return [] if core.splits(fam, w["set"]) else ["set does not split the family"]
        if kind == "ed":
            cert = EDCertificate(tuple(w["removals"]), w["bound_kind"], w["bound"])
            return cert.problems(fam)
        if kind in ("coloring", "list-coloring"):
            c = _colors(w["colors"])
            out = []
            if set(c) != set(fam.universe()):
                out.append("coloring is not total on V(F)")
                return out
            if not coloring.is_conflict_free(fam, c):
                out.append("coloring is not conflict-free")
            if "k" in w and len(set(c.values())) > w["k"]:
                out.append(f"uses more than {w['k']} colors")
            if kind == "list-coloring":
                if inst.lists is None:
                    return out + ["list coloring without lists"]
                r = splitting.make_refinement(fam, w["order"], w["d"])
                out += splitting.refinement_problems(fam, r)
                out += coloring.list_cf_problems(fam, r, inst.lists, c)
            return out
        if kind == "similarity":
            other = SetFamily(w["other"]["universe"], w["other"]["sets"])
            f = w["bijection"]
            if sorted(f) != list(range(len(other))) or len(f) != len(fam):
                return ["bijection is not a permutation"]
            mf = similarity.intersection_matrix(fam)
            mg = similarity.intersection_matrix(other)
            return [
                f"|A_{i} & A_{j}| != |B_{f[i]} & B_{f[j]}|"
                for i in range(len(fam)) for j in range(len(fam)) if mf[i][j] != mg[f[i]][f[j]]
            ]
    except (KeyError, TypeError, ValueError) as e:
        return [f"malformed {kind} witness: {e!r}"]
    return [f"unknown witness kind {kind!r}"]


# -- commands -----------------------------------------------------------------


def _param(opts, inst, name, default=None, required=False):
    value = getattr(opts, name, None)
    if value is None and inst is not None:
        value = inst.params.get(name)
    if value is None:
        value = default
    if value is None and required:
        raise UsageError(f"missing parameter --{name.replace('_', '-')}")
    return value


def _set_list(s):
    return sorted(s)


def cmd_density(opts, inst, stats):
    n = _param(opts, inst, "n", required=True)
    k1 = _param(opts, inst, "k1", required=True)
    k2 = _param(opts, inst, "k2", required=True)
    q = density.DensityQuery(n, k1, k2)
    value, w = density.density_exact(q, opts.budget, stats, threads=opts.threads)
    greedy = density.density_greedy(q)
    fam = SetFamily(n, w.members)
    witness = instance_document(fam, {"kind": "density", "k1": k1, "k2": k2, "value": value})
    return {"verdict": "computed", "value": value, "greedy_size": len(greedy)}, witness


def cmd_revised_power(opts, inst, stats):
    n = _param(opts, inst, "n", required=True)
    theta = _param(opts, inst, "theta", required=True)
    value, w = density.revised_power_exact(n, theta, opts.budget, stats)
    fam = SetFamily(n, w.members)
    witness = instance_document(fam, {"kind": "weak-covering", "theta": theta, "value": value})
    return {"verdict": "computed", "value": value}, witness


def _closure_spec(opts, inst):
    kappa = _param(opts, inst, "kappa", required=True)
    limit = opts.limit if opts.limit is not None else closure.EXHAUSTIVE_LIMIT
    return closure.ClosureSpec.from_family(inst.family, kappa), limit


def cmd_closure(opts, inst, stats):
    spec, _ = _closure_spec(opts, inst)
    raw = _param(opts, inst, "set", required=True)
    a = _parse_points(raw) if isinstance(raw, str) else raw
    got = closure.close(spec, a)
    witness = instance_document(
        inst.family,
        {"kind": "closure", "kappa": spec.kappa, "set": sorted(a), "closure": _set_list(got)},
    )
    return {"verdict": "computed", "closure": _set_list(got),
            "already_closed": closure.is_closed(spec, a)}, witness


def cmd_closed_sets(opts, inst, stats):
    spec, limit = _closure_spec(opts, inst)
    sets = closure.closed_sets(spec, limit)
    laws = closure.closure_laws(spec, sets)
    listed = [_set_list(s) for s in sets]
    witness = instance_document(inst.family, {"kind": "closed-sets", "kappa": spec.kappa, "sets": listed})
    return {"verdict": "computed", "count": len(sets), "laws": laws.as_dict()}, witness


def cmd_kuratowski(opts, inst, stats):
    spec, limit = _closure_spec(opts, inst)
    report = closure.verify_kuratowski(spec, limit, samples=opts.samples, seed=opts.seed or 0)
    return {"verdict": "closure-operator" if report.is_closure_operator else "not-closure-operator",
            "axioms": report.as_dict()}, None


def cmd_decompose(opts, inst, stats):
    mu = _param(opts, inst, "mu", required=True)
    max_block = _param(opts, inst, "max_block")
    dec = splitting.build_decomposition(inst.family, mu, max_block, opts.budget, stats)
    if dec is None:
        return {"verdict": "absent"}, None
    w = {"kind": "decomposition", "mu": mu, "blocks": [list(b) for b in dec.blocks]}
    if max_block is not None:
        w["max_block"] = max_block
    return {"verdict": "found", "blocks": [list(b) for b in dec.blocks]}, instance_document(inst.family, w)


def _refine(opts, inst, stats):
    t = _param(opts, inst, "t", default=1)
    mu = _param(opts, inst, "mu", default=1)
    max_block = _param(opts, inst, "max_block")
    return splitting.disjoint_refinement(inst.family, t, mu, max_block, opts.budget, stats)


def _refinement_witness(r):
    return {
        "kind": "refinement",
        "order": list(r.order),
        "d": [_set_list(x) for x in r.d],
        "t": r.target_size,
        "back_hits": list(r.back_hits),
    }


def cmd_refine(opts, inst, stats):
    try:
        r = _refine(opts, inst, stats)
    except Infeasible as e:
        return {"verdict": "infeasible", "stage": e.stage, "reason": str(e), "detail": e.detail}, None
    w = _refinement_witness(r)
    body = {"verdict": "found", "max_back_hits": r.max_back_hits,
            "blocks": [list(b) for b in r.decomposition.blocks]}
    return body, instance_document(inst.family, w)


def cmd_property_b(opts, inst, stats):
    limit = opts.limit if opts.limit is not None else core.PROPERTY_B_LIMIT
    b = core.check_property_b(inst.family, limit, opts.budget, stats)
    if b is None:
        return {"verdict": "absent"}, None
    return {"verdict": "found", "set": _set_list(b)}, instance_document(
        inst.family, {"kind": "property-b", "set": _set_list(b)})


def cmd_ed(opts, inst, stats):
    mode = _param(opts, inst, "mode", default="exhaustive")
    bound_kind = _param(opts, inst, "bound_kind", default=core.STRICT_BELOW)
    bound = _param(opts, inst, "bound")
    try:
        if mode == "exhaustive":
            cert = core.check_essentially_disjoint(inst.family, bound_kind, bound, opts.budget, stats)
        elif mode in (splitting.CHAIN, splitting.MERGE):
            cert = splitting.ed_from_refinement(
                inst.family, mode, mu=_param(opts, inst, "mu", default=1),
                max_block=_param(opts, inst, "max_block"), block_bound=bound,
                budget=opts.budget, stats=stats)
        else:
            raise UsageError(f"unknown e.d. mode {mode!r}")
    except Infeasible as e:
        return {"verdict": "infeasible", "stage": e.stage, "reason": str(e)}, None
    if cert is None:
        return {"verdict": "absent"}, None
    w = {"kind": "ed", "removals": [_set_list(b) for b in cert.removals],
         "bound_kind": cert.bound_kind, "bound": cert.bound}
    return {"verdict": "found", "max_removal": cert.max_removal()}, instance_document(inst.family, w)


def _color_pairs(c):
    return [[v, c[v]] for v in sorted(c)]


def _greedy(opts, inst, stats, lists):
    try:
        r = _refine(opts, inst, stats)
    except Infeasible as e:
        return {"verdict": "infeasible", "stage": e.stage, "reason": str(e)}, None, None
    if lists is None:
        size = coloring.sufficient_list_size(inst.family, r)
        lists = {v: frozenset(range(1, size + 1)) for v in inst.family.universe()}
    try:
        c = coloring.greedy_list_cf(inst.family, r, lists)
    except ListTooSmall as e:
        return {"verdict": "list-too-small", "position": e.position, "index": e.index,
                "vertex": e.vertex}, None, None
    body = {"verdict": "found", "conflict_free": coloring.is_conflict_free(inst.family, c),
            "colors_used": len(set(c.values())), "max_back_hits": r.max_back_hits}
    return body, r, c


def cmd_color_cf(opts, inst, stats):
    body, r, c = _greedy(opts, inst, stats, None)
    if c is None:
        return body, None
    return body, instance_document(inst.family, {"kind": "coloring", "colors": _color_pairs(c)})


def cmd_color_list_cf(opts, inst, stats):
    if inst.lists is None:
        raise UsageError("color-list-cf needs an instance with 'lists'")
    body, r, c = _greedy(opts, inst, stats, inst.lists)
    if c is None:
        return body, None
    w = {"kind": "list-coloring", "colors": _color_pairs(c), "order": list(r.order),
         "d": [_set_list(x) for x in r.d]}
    return body, instance_document(inst.family, w, lists=inst.lists)


def cmd_chi_cf(opts, inst, stats):
    limit = opts.limit if opts.limit is not None else coloring.CHI_CF_LIMIT
    k, c = coloring.chi_cf_exact(inst.family, limit, opts.budget, stats)
    w = {"kind": "coloring", "colors": _color_pairs(c), "k": k}
    return {"verdict": "computed", "value": k}, instance_document(inst.family, w)


def _second(opts):
    if opts.other is None:
        raise UsageError(f"{opts.command} needs a second instance file")
    return load_instance(opts.other)


def cmd_similar(opts, inst, stats):
    other = _second(opts)
    f = similarity.find_similarity(inst.family, other.family, opts.budget, stats)
    if f is None:
        return {"verdict": "absent"}, None
    w = {"kind": "similarity", "bijection": list(f),
         "other": {"universe": other.universe_size, "sets": other.family.as_lists()}}
    return {"verdict": "found", "bijection": list(f)}, instance_document(inst.family, w)


def cmd_dominance_probe(opts, inst, stats):
    other = _second(opts)
    if len(inst.family) != len(other.family):
        raise UsageError("dominance-probe needs families of equal size")
    bound = _param(opts, inst, "bound")
    rep = similarity.dominance_ed_probe(inst.family, other.family, bound,
                                        opts.search_bijections, opts.budget, stats)
    return rep.as_dict(), None


def cmd_check(opts, inst, stats):
    if opts.condition:
        try:
            theta, nu = (int(x) for x in opts.condition.split(","))
        except ValueError:
            raise UsageError("--condition expects THETA,NU") from None
        cond = Condition(theta, nu)
        bad = core.condition_violation(inst.family, cond)
        return {"verdict": bad is None, "condition": [theta, nu],
                "violation": None if bad is None else list(bad)}, None
    if inst.witness is None:
        raise UsageError("check needs --condition or an instance with a witness")
    problems = witness_problems(inst)
    return {"verdict": "valid" if not problems else "invalid",
            "kind": inst.witness.get("kind"), "problems": problems}, None


HANDLERS = {
    "density": cmd_density,
    "revised-power": cmd_revised_power,
    "closure": cmd_closure,
    "closed-sets": cmd_closed_sets,
    "kuratowski": cmd_kuratowski,
    "decompose": cmd_decompose,
    "refine": cmd_refine,
    "property-b": cmd_property_b,
    "ed": cmd_ed,
    "color-cf": cmd_color_cf,
    "color-list-cf": cmd_color_list_cf,
    "chi-cf": cmd_chi_cf,
    "similar": cmd_similar,
    "dominance-probe": cmd_dominance_probe,
    "check": cmd_check,
}
FILELESS = {"density", "revised-power"}
DEFAULT_LIMITS = {
    "closure": closure.EXHAUSTIVE_LIMIT,
    "closed-sets": closure.EXHAUSTIVE_LIMIT,
    "kuratowski": closure.EXHAUSTIVE_LIMIT,
    "property-b": core.PROPERTY_B_LIMIT,
    "chi-cf": coloring.CHI_CF_LIMIT,
}


def load_instance(path):
    try:
        with open(path, "rb") as fh:
            return parse_instance(fh.read())
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _parse_points(text):
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"cannot parse point list {text!r}") from None


ECHO_SKIP = {"command", "threads", "no_timing", "out", "file", "other", "budget", "limit"}


def dispatch(command, inst, opts):
    """Run one command and return ``(exit_code, report, witness_document)``."""
    stats = SearchStats()
    args = {k: v for k, v in sorted(vars(opts).items()) if k not in ECHO_SKIP and v is not None}
    if getattr(opts, "file", None):
        args["instance"] = os.path.basename(opts.file)
    if getattr(opts, "other", None):
        args["other"] = os.path.basename(opts.other)
    report = {
        "command": command,
        "args": args,
        "budget": {"nodes": opts.budget,
                   "universe_limit": opts.limit if opts.limit is not None else DEFAULT_LIMITS.get(command)},
    }
    start = time.perf_counter()
    code = 0
    witness = None
    try:
        body, witness = HANDLERS[command](opts, inst, stats)
        report.update(body)
        report["budget_exceeded"] = False
    except SearchBudgetExceeded as e:
        code = 2
        report["verdict"] = "budget-exceeded"
        report["budget_exceeded"] = True
        report["reason"] = str(e)
    if witness is not None:
        problems = witness_problems(parse_instance(dumps(witness)))
        if problems:
            raise RuntimeError(f"internal error: emitted witness fails validation: {problems}")
        report["witness"] = witness
    report["stats"] = stats.as_dict()
    if not opts.no_timing:
        report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    return code, report, witness


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p):
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node budget")
    p.add_argument("--limit", type=int, help="override the exhaustive universe limit")
    p.add_argument("--threads", type=int, default=1, help="worker threads (results do not depend on it)")
    p.add_argument("--no-timing", action="store_true", help="omit the timing field")
    p.add_argument("--out", help="write the witness (instance format) to this file")


def build_parser():
    parser = _Parser(prog="splitkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, file=True, other=False):
        p = sub.add_parser(name)
        _common(p)
        if file:
            p.add_argument("file", nargs=None if name not in FILELESS else "?")
        if other:
            p.add_argument("other", nargs="?")
        return p

    p = add("density", file=True)
    p.add_argument("--n", type=int)
    p.add_argument("--k1", type=int)
    p.add_argument("--k2", type=int)
    p = add("revised-power")
    p.add_argument("--n", type=int)
    p.add_argument("--theta", type=int)
    p = add("closure")
    p.add_argument("--kappa", type=int)
    p.add_argument("--set")
    for name in ("closed-sets", "kuratowski"):
        p = add(name)
        p.add_argument("--kappa", type=int)
        if name == "kuratowski":
            p.add_argument("--samples", type=int)
            p.add_argument("--seed", type=int)
    p = add("decompose")
    p.add_argument("--mu", type=int)
    p.add_argument("--max-block", type=int)
    for name in ("refine", "color-cf", "color-list-cf"):
        p = add(name)
        p.add_argument("--t", type=int)
        p.add_argument("--mu", type=int)
        p.add_argument("--max-block", type=int)
    add("property-b")
    p = add("ed")
    p.add_argument("--mode", choices=["exhaustive", "chain", "merge"])
    p.add_argument("--bound-kind", choices=[core.STRICT_BELOW, core.EXACT])
    p.add_argument("--bound", type=int)
    p.add_argument("--mu", type=int)
    p.add_argument("--max-block", type=int)
    add("chi-cf")
    add("similar", other=True)
    p = add("dominance-probe", other=True)
    p.add_argument("--bound", type=int)
    p.add_argument("--search-bijections", action="store_true")
    p = add("check")
    p.add_argument("--condition", help="THETA,NU")

    g = sub.add_parser("gen")
    g.add_argument("--kind", choices=KINDS, required=True)
    g.add_argument("--seed", type=int, required=True)
    for name in ("n", "m", "size", "nu", "petals", "core", "petal-size", "min-size"):
        g.add_argument(f"--{name}", type=int)
    g.add_argument("--out")
    return parser


def run_gen(opts):
    params = {k: v for k, v in vars(opts).items()
              if k not in ("command", "kind", "seed", "out") and v is not None}
    fam = generate(opts.kind, opts.seed, **params)
    meta = {"generator": opts.kind, "seed": opts.seed, "params": params}
    return instance_document(fam, meta=meta)


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        opts = build_parser().parse_args(argv)
        if opts.command == "gen":
            doc = dumps(run_gen(opts))
            if opts.out:
                with open(opts.out, "w") as fh:
                    fh.write(doc)
            else:
                stdout.write(doc)
            return 0
        if opts.command == "density" and opts.file:
            # a file's params may stand in for the flags
            inst = load_instance(opts.file)
        elif opts.command in FILELESS:
            inst = None
        else:
            inst = load_instance(opts.file)
        if opts.threads < 1:
            raise UsageError("--threads must be at least 1")
        code, report, witness = dispatch(opts.command, inst, opts)
        if opts.out:
            if witness is None:
                stderr.write(f"splitkit: no witness to write for this result, {opts.out} left untouched\n")
            else:
                with open(opts.out, "w") as fh:
                    fh.write(dumps(witness))
        stdout.write(dumps(report))
        return code
    except (UsageError, ParseError, BadParameters, UniverseTooLarge) as e:
        stderr.write(f"splitkit: {e}\n")
        return 1


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
