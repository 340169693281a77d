"""Instance files: parsing, query execution and emission.

An instance file is JSON::

    {
      "outcomes": ["o1", "o2", "o3", "o4"],
      "probs": ["1/4", "1/4", "1/4", "1/4"],
      "rvs": {"xi1": [1, 1, -1, -1]},
      "sigmas": {"X": {"rv": "xi1"}, "E": {"events": [["o1"]]}, "B": {"blocks": [["o1", "o2"], ["o3", "o4"]]}},
      "queries": [{"op": "meet", "args": ["X", "B"], "name": "M"}]
    }

Instead of ``outcomes``/``probs`` a file may give
``"product": [{"name": "a", "outcomes": [...], "probs": [...]}, ...]``; the
outcomes are then the comma-joined factor labels and sigmas may use
``{"lift": {"factor": "a", "blocks": [...]}}``. An optional ``bindings``
object maps law roles to sigma names for ``laws --file``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import jsonschema

from . import complements, condexp, lattice
from .core import (
    Product,
    ProbSpace,
    SigmaField,
    is_sub,
    sigma_from_blocks,
    sigma_from_events,
    sigma_from_rv,
    to_rational,
)
from .errors import ParseError, SigmaError, UnknownLaw, ValidationError
from .laws import lookup
from .report import LawReport

_LABELS = {"type": "array", "items": {"type": "string"}}
_BLOCKS = {"type": "array", "items": _LABELS}
_PROBS = {"type": "array", "items": {"type": "string", "pattern": r"^\s*-?\d+(\s*/\s*\d+)?\s*$"}}
_ARG = {"anyOf": [{"type": "string"}, {"type": "array", "items": {"$ref": "#/$defs/arg"}}]}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "outcomes": _LABELS,
        "probs": _PROBS,
        "product": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "properties": {"name": {"type": "string"}, "outcomes": _LABELS, "probs": _PROBS},
                "required": ["name", "outcomes", "probs"],
                "additionalProperties": False,
            },
        },
        "rvs": {
            "type": "object",
            "additionalProperties": {"type": "array", "items": {"type": ["string", "integer"]}},
        },
        "sigmas": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "oneOf": [
                    {"required": ["rv"]},
                    {"required": ["events"]},
                    {"required": ["blocks"]},
                    {"required": ["lift"]},
                ],
                "properties": {
                    "rv": {"type": "string"},
                    "events": _BLOCKS,
                    "blocks": _BLOCKS,
                    "lift": {
                        "type": "object",
                        "properties": {"factor": {"type": "string"}, "blocks": _BLOCKS},
                        "required": ["factor", "blocks"],
                        "additionalProperties": False,
                    },
                },
                "additionalProperties": False,
            },
        },
        "queries": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "op": {"type": "string"},
                    "args": {"anyOf": [{"type": "array", "items": {"$ref": "#/$defs/arg"}}, {"type": "object"}]},
                    "name": {"type": "string"},
                },
                "required": ["op", "args"],
                "additionalProperties": False,
            },
        },
        "bindings": {"type": "object", "additionalProperties": {"$ref": "#/$defs/arg"}},
    },
    "oneOf": [{"required": ["outcomes", "probs"]}, {"required": ["product"]}],
    "additionalProperties": False,
    "$defs": {"arg": _ARG},
}

SET_OPS = ("meet", "join", "plus")
OPS = SET_OPS + ("independent", "cond_independent", "is_sub", "complement_enum", "condexp", "cond_prob")


@dataclass
class Instance:
    space: ProbSpace
    sigmas: dict[str, SigmaField]
    rvs: dict[str, list] = field(default_factory=dict)
    queries: list[dict] = field(default_factory=list)
    bindings: dict[str, Any] = field(default_factory=dict)

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            self.space == other.space
            and list(self.sigmas.items()) == list(other.sigmas.items())
            and self.queries == other.queries
        )


def _decode(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from None


def _schema_check(doc) -> None:
    validator = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        where = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise ValidationError(f"schema violation at {where}: {e.message}")


def _space_from(doc) -> tuple[ProbSpace, Product | None, dict[str, int]]:
    try:
        if "product" in doc:
            factors, names = [], {}
            for i, fac in enumerate(doc["product"]):
                if fac["name"] in names:
                    raise ValidationError(f"duplicate factor name {fac['name']!r}")
                names[fac["name"]] = i
                factors.append(ProbSpace(fac["outcomes"], [to_rational(p) for p in fac["probs"]]))
            prod = Product(*factors)
            return prod.space, prod, names
        return ProbSpace(doc["outcomes"], [to_rational(p) for p in doc["probs"]]), None, {}
    except ValidationError:
        raise
    except (SigmaError, ValueError, ZeroDivisionError) as e:
        raise ValidationError(f"{type(e).__name__}: {e}") from None


def parse_instance(text: str) -> Instance:
    """Parse and validate an instance file; every name reference is resolved here."""
    doc = _decode(text)
    _schema_check(doc)
    space, prod, factor_names = _space_from(doc)
    rvs = {}
    for name, values in doc.get("rvs", {}).items():
        if len(values) != len(space.outcomes):
            raise ValidationError(f"rv {name!r} has {len(values)} values for {len(space.outcomes)} outcomes")
        rvs[name] = list(values)
    sigmas: dict[str, SigmaField] = {}
    for name, spec in doc.get("sigmas", {}).items():
        try:
            sigmas[name] = _build_sigma(space, prod, factor_names, rvs, spec)
        except ValidationError as e:
            raise ValidationError(f"sigma {name!r}: {e}") from None
        except (SigmaError, ValueError) as e:
            raise ValidationError(f"sigma {name!r}: {type(e).__name__}: {e}") from None
    queries = list(doc.get("queries", []))
    _check_queries(queries, set(sigmas), set(rvs), space)
    bindings = doc.get("bindings", {})
    for role, ref in bindings.items():
        _check_ref(ref, set(sigmas), f"binding {role!r}")
    return Instance(space, sigmas, rvs, queries, dict(bindings))


def _build_sigma(space, prod, factor_names, rvs, spec) -> SigmaField:
    if "rv" in spec:
        if spec["rv"] not in rvs:
            raise ValidationError(f"unknown rv {spec['rv']!r}")
        return sigma_from_rv(space, rvs[spec["rv"]])
    if "events" in spec:
        return sigma_from_events(space, spec["events"])
    if "blocks" in spec:
        return sigma_from_blocks(space, spec["blocks"])
    lift = spec["lift"]
    if prod is None:
        raise ValidationError("lift needs a product space")
    if lift["factor"] not in factor_names:
        raise ValidationError(f"unknown factor {lift['factor']!r}")
    i = factor_names[lift["factor"]]
    return prod.lift(i, sigma_from_blocks(prod.factors[i], lift["blocks"]))


def _check_ref(ref, known: set[str], where: str) -> None:
    if isinstance(ref, str):
        if ref not in known:
            raise ValidationError(f"{where}: unknown name {ref!r}")
    else:
        for r in ref:
            _check_ref(r, known, where)


def _check_queries(queries, sigma_names: set[str], rv_names: set[str], space: ProbSpace) -> None:
    known = set(sigma_names)
    for i, q in enumerate(queries):
        op, args = q["op"], q["args"]
        where = f"query {i + 1} ({op})"
        if op.startswith("law:"):
            try:
                desc = lookup(op[4:])
            except UnknownLaw as e:
                raise ValidationError(f"{where}: {e}") from None
            if isinstance(args, dict):
                missing = [r.name for r in desc.roles if r.name not in args]
                if missing:
                    raise ValidationError(f"{where}: missing role(s) {', '.join(missing)}")
                _check_ref(list(args.values()), known, where)
            else:
                if len(args) != len(desc.roles):
                    raise ValidationError(f"{where}: expected {len(desc.roles)} arguments")
                _check_ref(args, known, where)
        elif op not in OPS:
            raise ValidationError(f"{where}: unknown op")
        elif isinstance(args, dict):
            raise ValidationError(f"{where}: arguments must be a list")
        elif op == "condexp":
            if len(args) != 2 or args[1] not in rv_names:
                raise ValidationError(f"{where}: expected [sigma, rv]")
            _check_ref(args[0], known, where)
        elif op == "cond_prob":
            if len(args) != 2 or not isinstance(args[1], list):
                raise ValidationError(f"{where}: expected [sigma, [outcomes]]")
            _check_ref(args[0], known, where)
            for o in args[1]:
                if o not in space.outcomes:
                    raise ValidationError(f"{where}: unknown outcome {o!r}")
        else:
            need = {"cond_independent": 3, "is_sub": 2, "complement_enum": 2}.get(op)
            if need is not None and len(args) != need:
                raise ValidationError(f"{where}: expected {need} arguments")
            if op in SET_OPS + ("independent",) and len(args) < 1:
                raise ValidationError(f"{where}: expected at least one argument")
            _check_ref(args, known, where)
        if "name" in q:
            known.add(q["name"])


# -- execution ----------------------------------------------------------------


@dataclass(frozen=True)
class QueryResult:
    index: int
    op: str
    args: Any
    name: str | None
    value: Any = None
    error: str | None = None

    @property
    def failed_law(self) -> bool:
        return isinstance(self.value, LawReport) and not self.value.conclusion


def _resolve(ref, env):
    if isinstance(ref, str):
        return env[ref]
    return tuple(_resolve(r, env) for r in ref)


def _fold(fn, fields):
    out = fields[0]
    for f in fields[1:]:
        out = fn(out, f)
    return out


def _run_one(q: dict, inst: Instance, env: dict):
    op, args = q["op"], q["args"]
    if op.startswith("law:"):
        desc = lookup(op[4:])
        vals = [args[r.name] for r in desc.roles] if isinstance(args, dict) else args
        return desc.check(*(_resolve(v, env) for v in vals))
    if op == "meet":
        return _fold(lattice.meet, _resolve(args, env))
    if op == "join":
        return _fold(lattice.join, _resolve(args, env))
    if op == "plus":
        return lattice.plus_many(_resolve(args, env), inst.space)
    if op == "independent":
        return lattice.independent_family(_resolve(args, env))
    if op == "cond_independent":
        x, y, z = _resolve(args, env)
        return condexp.cond_independent(x, y, z)
    if op == "is_sub":
        x, y = _resolve(args, env)
        return is_sub(x, y)
    if op == "complement_enum":
        x, z = _resolve(args, env)
        return complements.enumerate_complements(x, z)
    if op == "condexp":
        x = _resolve(args[0], env)
        f = [to_rational(v) for v in inst.space.rv_on_support(inst.rvs[args[1]])]
        return condexp.condexp(inst.space, x, f)
    if op == "cond_prob":
        return condexp.cond_prob(inst.space, _resolve(args[0], env), args[1])
    raise ValidationError(f"unknown op {op!r}")


def run_queries(inst: Instance) -> list[QueryResult]:
    """Run the queries in order; an error is recorded inline and later queries still run."""
    env = dict(inst.sigmas)
    out = []
    for i, q in enumerate(inst.queries, 1):
        name = q.get("name")
        try:
            value = _run_one(q, inst, env)
        except (SigmaError, ValueError, TypeError, KeyError) as e:
            out.append(QueryResult(i, q["op"], q["args"], name, error=f"{type(e).__name__}: {e}"))
            continue
        if name is not None:
            env[name] = value
        out.append(QueryResult(i, q["op"], q["args"], name, value))
    return out


# -- rendering ----------------------------------------------------------------


def value_to_json(value):
    if isinstance(value, SigmaField):
        return {"sigma": [[str(o) for o in b] for b in value.blocks]}
    if isinstance(value, LawReport):
        return {"law": value.to_dict()}
    if isinstance(value, complements.ComplementReport):
        return {"complements": value.to_dict()}
    if isinstance(value, bool):
        return {"bool": value}
    if isinstance(value, tuple) and all(isinstance(v, Fraction) for v in value):
        return {"vector": [str(v) for v in value]}
    raise TypeError(f"cannot render {type(value).__name__}")


def result_to_json(r: QueryResult) -> dict:
    out = {"index": r.index, "op": r.op, "args": r.args}
    if r.name is not None:
        out["name"] = r.name
    if r.error is not None:
        out["error"] = r.error
    else:
        out["result"] = value_to_json(r.value)
    return out


def _blocks_text(blocks) -> str:
    return "[" + ", ".join("{" + ", ".join(b) + "}" for b in blocks) + "]"


def _args_text(args) -> str:
    if isinstance(args, dict):
        return " ".join(f"{k}={_args_text(v)}" for k, v in args.items())
    if isinstance(args, list):
        return "[" + " ".join(_args_text(a) for a in args) + "]"
    return str(args)


def law_text(rep: LawReport, indent: str = "  ") -> list[str]:
    verdict = "holds" if rep.holds else "VIOLATED"
    lines = [f"{indent}law {rep.law}: conclusion {str(rep.conclusion).lower()}, {verdict}"]
    for c in rep.claims:
        hyps = ", ".join(f"{k}={str(v).lower()}" for k, v in c.hypotheses) or "none"
        lines.append(f"{indent}  {c.name}: hypotheses [{hyps}] conclusion {str(c.conclusion).lower()}")
    for k, v in rep.facts:
        lines.append(f"{indent}  {k}: {_plain(v)}")
    if rep.witness is not None:
        for k, v in rep.witness:
            lines.append(f"{indent}  witness {k}: {_plain(v)}")
    return lines


def _plain(v) -> str:
    if isinstance(v, SigmaField):
        return _blocks_text([[str(o) for o in b] for b in v.blocks])
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_plain(x) for x in v) + "]"
    return str(v)


def result_text(r: QueryResult) -> list[str]:
    head = f"[{r.index}] {r.op} {_args_text(r.args)}" + (f" -> {r.name}" if r.name else "")
    if r.error is not None:
        return [head, f"  error: {r.error}"]
    v = r.value
    if isinstance(v, SigmaField):
        body = ["  " + _plain(v)]
    elif isinstance(v, LawReport):
        body = law_text(v)
    elif isinstance(v, complements.ComplementReport):
        d = v.to_dict()
        body = [f"  {len(d['complements'])} complement(s) among {d['search_size']} coarsenings"]
        body += ["  " + _blocks_text(c) for c in d["complements"]]
    elif isinstance(v, bool):
        body = ["  " + str(v).lower()]
    else:
        body = ["  (" + ", ".join(str(x) for x in v) + ")"]
    return [head] + body


# -- emission -----------------------------------------------------------------


def emit_instance(
    space: ProbSpace,
    sigmas,
    queries=(),
    rvs=(),
) -> str:
    """Instance-file text with every sigma written out as blocks."""
    doc = {
        "outcomes": [str(o) for o in space.outcomes],
        "probs": [str(w) for w in space.weights],
    }
    if rvs:
        doc["rvs"] = {k: list(v) for k, v in rvs}
    doc["sigmas"] = {k: {"blocks": [[str(o) for o in b] for b in f.blocks]} for k, f in sigmas}
    doc["queries"] = [dict(q) for q in queries]
    return json.dumps(doc, indent=2) + "\n"


def instance_from_entry(entry) -> Instance:
    return Instance(
        entry.space,
        dict(entry.fields),
        {k: list(v) for k, v in entry.rvs},
        [dict(q) for q in entry.queries],
    )
