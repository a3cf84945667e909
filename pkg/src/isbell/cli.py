"""Command-line front end.

Exit codes: 0 success or a positive answer, 1 a negative answer or a failed
validation, 2 an input error, 3 a resource ceiling hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Callable, Sequence

from . import completion, conjugacy, envelope, metric, order
from .fincat import FinCat, ValidationReport, validate_category
from .io import InputError, kind_of, load, load_cost, parse, read_json
from .setfun import ResourceLimitExceeded, SetFunctor, validate_functor

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    paths: list[str]
    bound: int = 4
    ceiling: int | None = None
    fmt: str = "table"
    iterate: int | None = None
    corpus: str | None = None


class Negative(Exception):
    """A well-formed answer of "no"; carries the payload to print."""

    def __init__(self, payload: object):
        super().__init__()
        self.payload = payload


def _emit(payload: object, fmt: str, render: Callable[[object], str]) -> None:
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False))
    else:
        print(render(payload))


def _violation_line(v: dict) -> str:
    return f"  {v['law']}: {', '.join(v['witness'])} {v.get('message', '')}".rstrip()


def _require(report: ValidationReport, what: str) -> None:
    if not report.ok:
        raise Negative({"valid": False, "kind": what, "violations": report.to_json()["violations"]})


def _functor(path: str) -> SetFunctor:
    x = load(path)
    if not isinstance(x, SetFunctor):
        raise InputError(f"{path} is not a functor file")
    _require(validate_category(x.base), "category")
    _require(validate_functor(x), "functor")
    return x


def _category(path: str) -> FinCat:
    c = load(path)
    if not isinstance(c, FinCat):
        raise InputError(f"{path} is not a category file")
    _require(validate_category(c), "category")
    return c


def _poset(path: str) -> order.FinPoset:
    try:
        p = load(path)
    except order.PosetError as err:
        violation = {"law": "antisymmetry", "witness": [str(w) for w in err.witness or ()], "message": str(err)}
        raise Negative({"valid": False, "kind": "poset", "violations": [violation]}) from err
    if not isinstance(p, order.FinPoset):
        raise InputError(f"{path} is not a poset file")
    return p


def _sizes(x: SetFunctor) -> str:
    return ", ".join(f"{a}:{n}" for a, n in zip(x.base.objects, x.sizes))


def _table(rows: Sequence[Sequence[object]]) -> str:
    rows = [[str(v) for v in r] for r in rows]
    if not rows:
        return ""
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in rows)


def _functor_table(x: SetFunctor) -> str:
    lines = [f"{x.variance}variant functor; sizes {_sizes(x)}"]
    for a in x.base.objects:
        lines.append(f"  {a}: {{{', '.join(map(str, x.sets[a]))}}}")
    for m in x.base.morphisms:
        if m in x.base.identity_set:
            continue
        act = ", ".join(f"{e}->{v}" for e, v in x.actions[m].items())
        lines.append(f"  {m}: {act}")
    return "\n".join(lines)


# --------------------------------------------------------------------------
# commands

def cmd_validate(cfg: RunConfig) -> int:
    results, bad = [], False
    for path in cfg.paths:
        data, where = read_json(path)
        kind = kind_of(data)
        try:
            obj = parse(data, where)
        except order.PosetError as err:
            violation = {"law": "antisymmetry", "witness": [str(w) for w in err.witness or ()], "message": str(err)}
            results.append({"path": path, "kind": kind, "valid": False, "violations": [violation]})
            bad = True
            continue
        if kind == "category":
            rep = validate_category(obj)
        elif kind == "functor":
            rep = validate_category(obj.base)
            if rep.ok:
                rep = validate_functor(obj)
        elif kind == "poset":
            rep = ValidationReport(())
        elif kind == "metric":
            rep = metric.validate_metric(obj)
        elif kind == "envelope":
            rep = envelope.validate_envelope(obj)
        else:
            raise InputError(f"{path}: cost vectors are validated with 'metric' against a space")
        bad |= not rep.ok
        results.append({"path": path, "kind": kind, "valid": rep.ok, "violations": rep.to_json()["violations"]})

    def render(rs: list) -> str:
        lines = []
        for r in rs:
            lines.append(f"{r['path']}: {r['kind']} {'ok' if r['valid'] else 'INVALID'}")
            lines += [_violation_line(v) for v in r["violations"]]
        return "\n".join(lines)

    _emit(results, cfg.fmt, render)
    return EXIT_NEGATIVE if bad else EXIT_OK


def cmd_conj(cfg: RunConfig) -> int:
    x = _functor(cfg.paths[0])
    if cfg.iterate is not None:
        steps = conjugacy.iterate_conjugates(x, cfg.iterate, cfg.ceiling)
        payload = {"steps": [s.to_json() for s in steps]}

        def render(p: dict) -> str:
            rows = [["step", "variance", "sizes", "orbits", "isomorphic to"]]
            for s in p["steps"]:
                iso = "-" if s["isomorphic_to"] is None else s["isomorphic_to"]
                rows.append([s["step"], s["variance"], ", ".join(f"{a}:{n}" for a, n in s["sizes"].items()), s["orbits"], iso])
            return _table(rows)

        _emit(payload, cfg.fmt, render)
        return EXIT_OK
    r = conjugacy.conjugate(x, cfg.ceiling)
    payload = {
        "conjugate": r.output.to_json(),
        "witness": {a: {str(k): xi.to_json() for k, xi in enumerate(ws)} for a, ws in r.witness.items()},
    }
    _emit(payload, cfg.fmt, lambda _: _functor_table(r.output))
    return EXIT_OK


def cmd_reflexive(cfg: RunConfig) -> int:
    x = _functor(cfg.paths[0])
    cert = conjugacy.is_reflexive(x, cfg.ceiling)
    payload = cert.to_json()

    def render(p: dict) -> str:
        if p["reflexive"]:
            return f"reflexive: unit is bijective at every object ({_sizes(x)})"
        return f"not reflexive: {p['reason']} at {p['failing_object']}"

    _emit(payload, cfg.fmt, render)
    return EXIT_OK if cert.reflexive else EXIT_NEGATIVE


def cmd_complete(cfg: RunConfig) -> int:
    c = _category(cfg.paths[0])
    report = completion.enumerate_reflexive(c, cfg.bound, cfg.ceiling)
    payload = report.to_json()
    if report.representables_within_bound:
        cat = completion.reflexive_completion_category(report, cfg.ceiling)
        payload["category"] = cat.category.to_json()
        payload["embedding"] = dict(cat.embedding.object_map)

    def render(p: dict) -> str:
        rows = [["class", "sizes"]]
        for k in p["classes"]:
            rows.append([k["name"], ", ".join(f"{a}:{n}" for a, n in k["sizes"].items())])
        head = f"{len(p['classes'])} reflexive classes with every value of size at most {p['bound']}"
        if not p["representables_within_bound"]:
            head += " (some representable exceeds the bound)"
        return head + "\n" + _table(rows)

    _emit(payload, cfg.fmt, render)
    return EXIT_OK


def cmd_cauchy(cfg: RunConfig) -> int:
    c = _category(cfg.paths[0])
    res = completion.cauchy_completion(c)
    refl = completion.cauchy_objects_are_reflexive(c, cfg.ceiling)
    payload = {
        "objects": [{"object": a, "idempotent": e, "name": res.names[(a, e)]} for a, e in res.objects],
        "category": res.category.to_json(),
        "split_presheaves": [
            {"object": a, "idempotent": e, "sizes": list(s), "reflexive": r} for a, e, s, r in refl.entries
        ],
        "all_reflexive": refl.all_reflexive,
    }

    def render(p: dict) -> str:
        rows = [["object", "split presheaf sizes", "reflexive"]]
        for o, s in zip(p["objects"], p["split_presheaves"]):
            rows.append([o["name"], s["sizes"], s["reflexive"]])
        return f"{len(p['objects'])} objects, {len(res.category.morphisms)} morphisms\n" + _table(rows)

    _emit(payload, cfg.fmt, render)
    return EXIT_OK if refl.all_reflexive else EXIT_NEGATIVE


def cmd_dm(cfg: RunConfig) -> int:
    p = _poset(cfg.paths[0])
    dm = order.dm_completion(p)
    cross = order.crosscheck_with_categorical(p, cfg.ceiling)
    dens = order.density_certificate(p, dm)
    payload = dm.to_json()
    payload["dense"] = dens.ok
    payload["crosscheck"] = cross.ok

    def render(q: dict) -> str:
        lines = [f"{len(dm.cuts)} cuts:"]
        lines += ["  " + n for n in dm.lattice.elements]
        lines.append(f"dense: {dens.ok}; agrees with reflexive presheaves: {cross.ok}")
        return "\n".join(lines)

    _emit(payload, cfg.fmt, render)
    return EXIT_OK if cross.ok and dens.ok else EXIT_NEGATIVE


def cmd_metric(cfg: RunConfig, sub: str) -> int:
    if len(cfg.paths) < 2:
        raise InputError("metric commands take a metric file and at least one vector file")
    m = load(cfg.paths[0])
    if not isinstance(m, metric.GenMetric):
        raise InputError(f"{cfg.paths[0]} is not a metric file")
    _require(metric.validate_metric(m), "metric")
    vecs = [load_cost(p, m) for p in cfg.paths[1:]]
    for v in vecs:
        _require(metric.validate_cost(v), "cost vector")
    f = vecs[0]
    if sub == "conj":
        g = metric.conj_cost(f)
        payload = g.to_json()
        _emit(payload, cfg.fmt, lambda p: f"{p['variance']}: " + ", ".join(f"{a}={v}" for a, v in p["f"].items()))
        return EXIT_OK
    if sub == "isbell":
        if f.variance != metric.CONTRA:
            raise InputError("isbell membership takes a contravariant vector")
        dd = metric.double_conj_cost(f)
        ok = dd.f == f.f
        payload = {"isbell_point": ok, "double_conjugate": dd.to_json()["f"]}
        _emit(payload, cfg.fmt, lambda p: f"isbell point: {ok}; double conjugate " + ", ".join(f"{a}={v}" for a, v in p["double_conjugate"].items()))
        return EXIT_OK if ok else EXIT_NEGATIVE
    if sub == "tightspan":
        if not m.symmetric:
            raise InputError("tight span membership needs a metric marked symmetric")
        g = metric.conj_cost(f)
        ok = g.f == f.f
        payload = {"tight_span_point": ok, "conjugate": g.to_json()["f"]}
        _emit(payload, cfg.fmt, lambda p: f"tight span point: {ok}; conjugate " + ", ".join(f"{a}={v}" for a, v in p["conjugate"].items()))
        return EXIT_OK if ok else EXIT_NEGATIVE
    if sub == "dist":
        if len(vecs) != 2:
            raise InputError("dist takes exactly two vector files")
        d = metric.completion_distance(vecs[0], vecs[1])
        _emit({"distance": metric.fmt(d)}, cfg.fmt, lambda p: p["distance"])
        return EXIT_OK
    raise InputError(f"unknown metric subcommand {sub!r}")


def cmd_corpus(cfg: RunConfig) -> int:
    from .corpus import checks

    rows, results = [], []
    for chk in checks():
        if cfg.corpus and cfg.corpus not in chk.key:
            continue
        try:
            ok = bool(chk.run())
            status = "pass" if ok else "FAIL"
        except ResourceLimitExceeded:
            ok, status = False, "CEILING"
        results.append({"key": chk.key, "description": chk.description, "pass": ok})
        rows.append([chk.key, status, chk.description])
    _emit(results, cfg.fmt, lambda _: _table([["check", "result", "description"], *rows]))
    return EXIT_OK if all(r["pass"] for r in results) else EXIT_NEGATIVE


# --------------------------------------------------------------------------
# argument parsing

def _ceiling(text: str) -> int:
    v = int(text)
    if v < 10**4:
        raise argparse.ArgumentTypeError("ceiling must be at least 10000")
    return v


def _bound(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("bound must be non-negative")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["table", "json"], default="table", dest="fmt")
    common.add_argument("--ceiling", type=_ceiling, default=None, help="maximum partial assignments per search")

    parser = argparse.ArgumentParser(prog="isbell", description="Isbell conjugacy on finite categories.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check categories, functors, posets, metrics, envelopes")
    p.add_argument("paths", nargs="+")
    p = sub.add_parser("conj", parents=[common], help="conjugate of a functor")
    p.add_argument("paths", nargs=1, metavar="FUNCTOR")
    p.add_argument("--iterate", type=int, default=None, metavar="N", help="summarise the first N iterates instead")
    p = sub.add_parser("reflexive", parents=[common], help="reflexivity certificate")
    p.add_argument("paths", nargs=1, metavar="FUNCTOR")
    p = sub.add_parser("complete", parents=[common], help="reflexive presheaves with values of bounded size")
    p.add_argument("paths", nargs=1, metavar="CATEGORY")
    p.add_argument("--bound", type=_bound, default=4)
    p = sub.add_parser("cauchy", parents=[common], help="idempotent splitting and its reflexivity check")
    p.add_argument("paths", nargs=1, metavar="CATEGORY")
    p = sub.add_parser("dm", parents=[common], help="Dedekind–MacNeille completion of a poset")
    p.add_argument("paths", nargs=1, metavar="POSET")
    p = sub.add_parser("metric", parents=[common], help="conjugacy on a generalized metric space")
    p.add_argument("sub", choices=["conj", "isbell", "tightspan", "dist"])
    p.add_argument("paths", nargs="+", metavar="FILE", help="metric file, then one or two vector files")
    p = sub.add_parser("corpus", parents=[common], help="run the built-in example checks")
    p.add_argument("--corpus", default=None, metavar="KEY", help="only checks whose key contains KEY")
    p.set_defaults(paths=[])
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return EXIT_OK if err.code == 0 else EXIT_INPUT
    cfg = RunConfig(
        args.command,
        list(args.paths),
        getattr(args, "bound", 4),
        args.ceiling,
        args.fmt,
        getattr(args, "iterate", None),
        getattr(args, "corpus", None),
    )
    commands: dict[str, Callable[[RunConfig], int]] = {
        "validate": cmd_validate,
        "conj": cmd_conj,
        "reflexive": cmd_reflexive,
        "complete": cmd_complete,
        "cauchy": cmd_cauchy,
        "dm": cmd_dm,
        "corpus": cmd_corpus,
    }
    try:
        if cfg.command == "metric":
            return cmd_metric(cfg, args.sub)
        return commands[cfg.command](cfg)
    except Negative as neg:
        _emit(neg.payload, cfg.fmt, lambda p: "\n".join([f"invalid {p['kind']}"] + [_violation_line(v) for v in p["violations"]]))
        return EXIT_NEGATIVE
    except InputError as err:
        print(f"isbell: {err}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceLimitExceeded as err:
        print(f"isbell: {err}", file=sys.stderr)
        if err.profile:
            print(f"isbell: completed before the limit: {json.dumps(err.profile, sort_keys=True)}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
