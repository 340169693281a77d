"""Command line front end.

    sigmalattice eval FILE
    sigmalattice laws --law ID (--file FILE | --random --seed S --trials N)
    sigmalattice complements --of NAME --in NAME --file FILE
    sigmalattice catalog ID [--level N] [--emit]
    sigmalattice search --law ID --mode soundness|counterexample --seed S --budget N [--workers W]

``--format structured`` (before or after the subcommand) prints JSON instead
of text.

Exit codes:
    0  every query ran and every law held / catalog facts all pass
    1  a law conclusion was false, a search found a counterexample,
       a catalog fact failed or a query raised an error
    2  the input could not be parsed or validated, or bad arguments
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import complements, search
from .catalog import catalog, catalog_ids
from .errors import LevelTooLarge, NotSub, ParseError, SigmaError, UnknownExample, UnknownLaw, ValidationError
from .instance import (
    emit_instance,
    instance_from_entry,
    law_text,
    parse_instance,
    result_text,
    result_to_json,
    run_queries,
    value_to_json,
)
from .laws import LawInstance, law_registry, lookup
from .report import LawReport

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ValidationError(f"cannot read {path}: {e.strerror}") from None


# -- eval ---------------------------------------------------------------------


def _report_queries(inst, fmt: str, out) -> int:
    results = run_queries(inst)
    bad = any(r.error is not None or r.failed_law for r in results)
    if fmt == "structured":
        out.write(_dump({"results": [result_to_json(r) for r in results], "ok": not bad}))
    else:
        for r in results:
            out.write("\n".join(result_text(r)) + "\n")
    return EXIT_FAIL if bad else EXIT_OK


def cmd_eval(args, out) -> int:
    return _report_queries(parse_instance(_read(args.file)), args.format, out)


# -- laws ---------------------------------------------------------------------


def _bind(inst, desc):
    missing = [r.name for r in desc.roles if r.name not in inst.bindings]
    if missing:
        raise ValidationError(f"instance has no binding for role(s) {', '.join(missing)}")

    def res(ref):
        return inst.sigmas[ref] if isinstance(ref, str) else tuple(res(r) for r in ref)

    return LawInstance(desc.id, inst.space, tuple((r.name, res(inst.bindings[r.name])) for r in desc.roles))


def _law_out(rep: LawReport, fmt: str, out, extra=None) -> None:
    if fmt == "structured":
        d = {"report": rep.to_dict()}
        if extra:
            d.update(extra)
        out.write(_dump(d))
    else:
        out.write("\n".join(law_text(rep, indent="")) + "\n")


def cmd_laws(args, out) -> int:
    desc = lookup(args.law)
    if args.file is not None:
        inst = parse_instance(_read(args.file))
        rep = desc.run(_bind(inst, desc))
        _law_out(rep, args.format, out)
        return EXIT_OK if rep.conclusion else EXIT_FAIL
    if args.seed is None or args.trials is None:
        raise _Usage("--random needs --seed and --trials")
    params = search.GenParams(seed=args.seed)
    rows = []
    for t in range(args.trials):
        got = search.run_trial(desc.id, "soundness", params, t)
        if got is None:
            rows.append({"trial": t, "void": True})
            continue
        _, rep = got
        rows.append(
            {
                "trial": t,
                "hypotheses": rep.hypotheses_hold,
                "conclusion": rep.conclusion,
                "holds": rep.holds,
            }
        )
    violations = [r["trial"] for r in rows if not r.get("void") and not r["holds"]]
    if args.format == "structured":
        out.write(_dump({"law": desc.id, "seed": args.seed, "trials": rows, "violations": violations}))
    else:
        for r in rows:
            if r.get("void"):
                out.write(f"trial {r['trial']}: void\n")
            else:
                out.write(
                    f"trial {r['trial']}: hypotheses {str(r['hypotheses']).lower()}, "
                    f"conclusion {str(r['conclusion']).lower()}\n"
                )
        out.write(f"{desc.id}: {len(violations)} violation(s) in {args.trials} trials\n")
    return EXIT_FAIL if violations else EXIT_OK


# -- complements --------------------------------------------------------------


def cmd_complements(args, out) -> int:
    inst = parse_instance(_read(args.file))
    for name in (args.of, args.within):
        if name not in inst.sigmas:
            raise ValidationError(f"unknown sigma {name!r}")
    rep = complements.enumerate_complements(inst.sigmas[args.of], inst.sigmas[args.within])
    if args.format == "structured":
        out.write(_dump({"complements": rep.to_dict()}))
    else:
        d = rep.to_dict()
        out.write(f"{len(d['complements'])} complement(s) of {args.of} in {args.within} "
                  f"among {d['search_size']} coarsenings\n")
        for c in d["complements"]:
            out.write("[" + ", ".join("{" + ", ".join(b) + "}" for b in c) + "]\n")
    return EXIT_OK


# -- catalog ------------------------------------------------------------------


def cmd_catalog(args, out) -> int:
    entry = catalog(args.id, args.level)
    if args.emit:
        out.write(emit_instance(entry.space, entry.fields, entry.queries, entry.rvs))
        return EXIT_OK
    facts = entry.run_facts()
    results = run_queries(instance_from_entry(entry))
    ok = all(v for _, v in facts)
    if args.format == "structured":
        out.write(
            _dump(
                {
                    "id": entry.id,
                    "level": entry.level,
                    "facts": [{"name": n, "ok": v} for n, v in facts],
                    "results": [result_to_json(r) for r in results],
                    "ok": ok,
                }
            )
        )
    else:
        head = entry.id if entry.level is None else f"{entry.id} (level {entry.level})"
        out.write(f"{head}: {len(entry.space.outcomes)} outcomes\n")
        for name, f in entry.fields:
            out.write(f"  {name} = " + "[" + ", ".join("{" + ", ".join(map(str, b)) + "}" for b in f.blocks) + "]\n")
        for n, v in facts:
            out.write(f"  [{'ok' if v else 'FAIL'}] {n}\n")
        for r in results:
            out.write("\n".join(result_text(r)) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


# -- search -------------------------------------------------------------------


def cmd_search(args, out) -> int:
    params = search.GenParams(seed=args.seed)
    cex = search.falsify(args.law, args.mode, args.budget, params, workers=args.workers)
    if cex is None:
        if args.format == "structured":
            out.write(_dump({"law": args.law, "mode": args.mode, "seed": args.seed,
                             "budget": args.budget, "counterexample": None}))
        else:
            out.write(f"{args.law} ({args.mode}): no counterexample in {args.budget} trials\n")
        return EXIT_OK
    small = search.shrink(cex) if args.shrink else cex
    if args.format == "structured":
        d = {"law": args.law, "mode": args.mode, "seed": args.seed, "budget": args.budget,
             "counterexample": small.to_dict()}
        out.write(_dump(d))
    else:
        sp = small.instance.space
        out.write(f"{args.law} ({args.mode}): counterexample at trial {small.trial}\n")
        out.write("  outcomes: " + " ".join(f"{o}:{w}" for o, w in zip(sp.outcomes, sp.weights)) + "\n")
        for k, v in small.instance.bindings:
            out.write(f"  {k} = {json.dumps(value_to_json_binding(v))}\n")
        out.write("\n".join(law_text(small.report)) + "\n")
        for step in small.trace:
            out.write(f"  shrink: {step}\n")
    return EXIT_FAIL


def value_to_json_binding(v):
    if hasattr(v, "blocks"):
        return value_to_json(v)["sigma"]
    return [value_to_json_binding(x) for x in v]


# -- entry point --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    fmt = _Parser(add_help=False)
    fmt.add_argument("--format", choices=("text", "structured"), default=argparse.SUPPRESS)

    p = _Parser(prog="sigmalattice", parents=[fmt], description="Finite sigma-field lattice toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", parents=[fmt], help="run the queries of an instance file")
    e.add_argument("file")

    ids = sorted(law_registry())
    lw = sub.add_parser("laws", parents=[fmt], help="check one law on a file or on random instances")
    lw.add_argument("--law", required=True, choices=ids)
    src = lw.add_mutually_exclusive_group(required=True)
    src.add_argument("--file")
    src.add_argument("--random", action="store_true")
    lw.add_argument("--seed", type=int)
    lw.add_argument("--trials", type=int)

    c = sub.add_parser("complements", parents=[fmt], help="enumerate independent complements")
    c.add_argument("--of", required=True)
    c.add_argument("--in", dest="within", required=True)
    c.add_argument("--file", required=True)

    cat = sub.add_parser("catalog", parents=[fmt], help="run or emit a worked example")
    cat.add_argument("id", choices=catalog_ids())
    cat.add_argument("--level", type=int)
    cat.add_argument("--emit", action="store_true", help="print the example as an instance file")

    s = sub.add_parser("search", parents=[fmt], help="randomised falsification of a law")
    s.add_argument("--law", required=True, choices=ids)
    s.add_argument("--mode", required=True, choices=search.MODES)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--budget", type=int, default=1000)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--no-shrink", dest="shrink", action="store_false")
    return p


_COMMANDS = {
    "eval": cmd_eval,
    "laws": cmd_laws,
    "complements": cmd_complements,
    "catalog": cmd_catalog,
    "search": cmd_search,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if not hasattr(args, "format"):
            args.format = "text"
        return _COMMANDS[args.command](args, out)
    except _Usage as e:
        print(f"sigmalattice: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (ParseError, ValidationError, UnknownLaw, UnknownExample, LevelTooLarge, NotSub, ValueError) as e:
        print(f"sigmalattice: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INPUT
    except SigmaError as e:
        print(f"sigmalattice: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
