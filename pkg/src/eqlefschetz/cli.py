"""Command line front end.  Exit codes: 0 ok, 1 theorem mismatch, 2 input error."""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import corpus
from .burnside import (BurnsideRing, BurnsideError, LinearSphereMap, equivariant_degree,
                       lefschetz_burnside_class)
from .fundamental import (Analysis, component_dynamics, Pi1Unsupported, ComponentNotPreserved,
                          MissingPathData)
from .gcw import (ComplexError, complex_from_json, map_from_json, validate, subdivide_self_map,
                  FixedSubcomplex)
from .groups import GroupError, group_from_json, trivial_group
from .lefschetz import (Context, FixedPointError, SingularFixedPoint, canonical_report,
                        lambda_local, verify_fixed_point_theorem, reidentify, relabel_problem)
from .splitting import split_components, type_block_report
from .twisted import TwistError

OK, MISMATCH, INPUT_ERROR = 0, 1, 2


class InputError(Exception):
    pass


def _read_json(path, what):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {what} file {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: malformed JSON in {what} file: {exc.msg}") from None


class Problem:
    def __init__(self, X, f=None, fixed=None, assertions=None, notes=None):
        self.X, self.f, self.fixed, self.assertions = X, f, fixed, assertions or []
        self.notes = notes or []


def load_problem(args, need_map=True):
    if args.example:
        try:
            ex = corpus.by_name(args.example)
        except KeyError:
            raise InputError(f"unknown example {args.example!r}; see 'eqlefschetz corpus'") from None
        fixed = ex.fixed_data
        if args.fixed:
            fixed = _read_json(args.fixed, "fixed point")
        return Problem(ex.X, ex.f, fixed, _assertions(args))
    if not args.complex:
        raise InputError("either --example or --complex is required")
    G = group_from_json(_read_json(args.group, "group")) if args.group else trivial_group()
    X = complex_from_json(_read_json(args.complex, "complex"), G)
    notes = []
    rep = validate(X)
    f = None
    if args.map:
        f = map_from_json(_read_json(args.map, "map"), X)
        f.validate()
    elif need_map:
        raise InputError("--map is required for this command")
    if rep["subdivided"]:
        notes.append(f"action not admissible at simplex {rep['witness']}; barycentric subdivision used")
        X = rep["complex"]
        if f is not None:
            f = subdivide_self_map(f)
        if args.fixed:
            raise InputError("fixed point data refers to the unsubdivided complex; supply an admissible complex")
    fixed = _read_json(args.fixed, "fixed point") if args.fixed else None
    if fixed is not None and not isinstance(fixed, list):
        raise InputError(f"{args.fixed}: fixed point file must hold a JSON list")
    return Problem(X, f, fixed, _assertions(args), notes)


def _assertions(args):
    if not args.pi1:
        return []
    data = _read_json(args.pi1, "pi1 assertion")
    if isinstance(data, dict):
        data = [data]
    for a in data:
        if "component" not in a or "rank" not in a:
            raise InputError(f"{args.pi1}: each pi1 assertion needs 'component' and 'rank'")
    return data


# -- commands ---------------------------------------------------------------------------


def cmd_analyze(args):
    P = load_problem(args, need_map=False)
    X, f = P.X, P.f
    A = Analysis(X, f)
    out = {"notes": P.notes, "group": {"name": X.group.name, "order": X.group.order},
           "complex": {"vertices": X.n_vertices, "counts": [len(s) for s in X.simplices]},
           "subgroup_classes": [], "fixed_subcomplexes": {}}
    for c in A.classes:
        out["subgroup_classes"].append({"label": c.label, "order": c.order, "size": len(c.members)})
        F = FixedSubcomplex(X, c.representative)
        out["fixed_subcomplexes"][c.label] = {
            "vertices": len(F.vertices), "simplices": len(F.simplices),
            "components": [int(x) for x in F.components], "singular": len(F.singular)}
    if f is not None:
        out["objects"] = [o.to_json() for o in A.objects()]
        dyn = []
        for e in component_dynamics(X, f, A):
            d = {k: v for k, v in e.items() if k in ("class", "component", "orbit", "status", "length",
                                                     "g_C", "height")}
            dyn.append(d)
        out["dynamics"] = dyn
    if X.n_vertices == 0:
        out["lambda"] = {}
        out["notes"].append("empty complex: lambda = 0 by normalization")
    return OK, out


def cmd_lambda(args):
    P = load_problem(args)
    rep = canonical_report(P.X, P.f, None, P.assertions, seed=args.seed, ring=args.ring)
    rep["notes"] = P.notes
    return OK, rep


def cmd_lambda_local(args):
    P = load_problem(args)
    if P.fixed is None:
        raise InputError("--fixed is required")
    canon = Context(P.X, P.f, P.assertions)
    if args.seed:
        X2, f2, data2, perm = relabel_problem(P.X, P.f, P.fixed, args.seed)
        run = Context(X2, f2, [dict(a, component=perm[a["component"]]) for a in P.assertions])
    else:
        X2, f2, data2, perm = P.X, P.f, P.fixed, list(range(P.X.n_vertices))
        run = canon
    rep = {}
    loc = lambda_local(X2, f2, data2, ctx=run, report=rep)
    loc = reidentify(loc, run, canon, perm)
    rep["lambda_loc"] = loc.to_json()
    rep["notes"] = P.notes
    return OK, rep


def cmd_verify(args):
    P = load_problem(args)
    if P.fixed is None:
        raise InputError("--fixed is required")
    rep = verify_fixed_point_theorem(P.X, P.f, P.fixed, P.assertions)
    rep["canonical"] = canonical_report(P.X, P.f, P.fixed, P.assertions, seed=args.seed, ring=args.ring)
    rep["notes"] = P.notes
    return (OK if rep["ok"] else MISMATCH), rep


def cmd_burnside(args):
    out = {}
    if args.complex or args.example:
        P = load_problem(args, need_map=False)
        G = P.X.group
    elif args.group:
        G = group_from_json(_read_json(args.group, "group"))
        P = None
    else:
        raise InputError("--group, --complex or --example is required")
    R = BurnsideRing.of(G)
    out["classes"] = R.labels
    out["marks"] = R.marks
    if P is not None and P.f is not None:
        out["lefschetz_class"] = lefschetz_burnside_class(P.X, P.f).to_json()
    if args.sphere:
        d = _read_json(args.sphere, "sphere map")
        try:
            K = group_from_json(d["group"]) if "group" in d else G
            mats = [d["rep_action"][n] for n in K.generator_names]
            psi = LinearSphereMap(K, d["dim"], mats, d["map"])
        except KeyError as exc:
            raise InputError(f"{args.sphere}: missing field {exc}") from None
        out["degree"] = equivariant_degree(psi).to_json()
    return OK, out


def cmd_split(args):
    P = load_problem(args)
    comps = []
    for c in split_components(P.X, P.f):
        comps.append({k: v for k, v in c.items() if k != "structure"})
    rep = type_block_report(P.X, P.f)
    return (OK if rep["ok"] else MISMATCH), {"components": comps, "type_blocks": rep, "notes": P.notes}


def cmd_corpus(args):
    names = [ex.name for ex in corpus.geometric_corpus()]
    if args.export:
        os.makedirs(args.export, exist_ok=True)
        for ex in corpus.geometric_corpus():
            base = os.path.join(args.export, ex.name)
            _write(base + ".group.json", ex.X.group.to_json())
            _write(base + ".complex.json", ex.X.to_json())
            _write(base + ".map.json", ex.f.to_json())
            if ex.fixed_data is not None:
                _write(base + ".fixed.json", ex.fixed_data)
    return OK, {"examples": names}


def _write(path, data):
    with open(path, "w") as fh:
        json.dump(data, fh, indent=1, sort_keys=True, default=str)
        fh.write("\n")


COMMANDS = {"analyze": cmd_analyze, "lambda": cmd_lambda, "lambda-loc": cmd_lambda_local,
            "verify": cmd_verify, "burnside": cmd_burnside, "split": cmd_split, "corpus": cmd_corpus}


def build_parser():
    p = argparse.ArgumentParser(prog="eqlefschetz",
                                description="Equivariant Lefschetz invariants of simplicial G-maps")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        if name == "corpus":
            s.add_argument("--export", metavar="DIR", help="write every example as JSON files")
            s.add_argument("--format", choices=["text", "json"], default="text")
            continue
        s.add_argument("--example", help="use a built-in example instead of files")
        s.add_argument("--group", help="group JSON: degree, generators, generator_names")
        s.add_argument("--complex", help="complex JSON: vertices, simplices, action")
        s.add_argument("--map", help="map JSON: vertex_images (+ source, positions)")
        s.add_argument("--fixed", help="fixed point data JSON list")
        s.add_argument("--pi1", help="pi_1 assertions JSON")
        s.add_argument("--ring", choices=["z", "q"], default="z")
        s.add_argument("--seed", type=int, default=0, help="vertex relabelling seed")
        s.add_argument("--format", choices=["text", "json"], default="text")
        if name == "burnside":
            s.add_argument("--sphere", help="linear sphere map JSON: dim, rep_action, map")
    return p


def render_text(data, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(data, dict):
        for k, v in data.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_short(v)}")
    elif isinstance(data, list):
        for v in data:
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append(f"{pad}-")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_short(v)}")
    else:
        lines.append(pad + _short(data))
    return "\n".join(x for x in lines if x)


def _flat(v):
    vals = v.values() if isinstance(v, dict) else v
    return all(not isinstance(x, (dict, list)) for x in vals)


def _short(v):
    return json.dumps(v, sort_keys=False, default=_default)


def _default(o):
    if isinstance(o, Fraction):
        return int(o) if o.denominator == 1 else str(o)
    if isinstance(o, (set, frozenset, tuple)):
        return sorted(o)
    return str(o)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        code, out = COMMANDS[args.command](args)
    except (InputError, ComplexError, GroupError, BurnsideError, FixedPointError, SingularFixedPoint,
            MissingPathData, Pi1Unsupported, ComponentNotPreserved, TwistError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return INPUT_ERROR
    if args.format == "json":
        print(json.dumps(out, indent=1, sort_keys=True, default=_default))
    else:
        print(render_text(json.loads(json.dumps(out, default=_default))))
    return code


if __name__ == "__main__":
    sys.exit(main())
