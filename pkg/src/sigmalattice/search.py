"""Seeded random instances, law falsification and counterexample shrinking.

Each trial draws its own :class:`random.Random` from ``(seed, trial)``, so a
run is fully determined by the law id, mode, seed, budget and parameters,
and trials can be farmed out to worker processes without changing the
answer (the hit with the smallest trial index wins).

Instances mix three sources: free random spaces with random merge-chain
sigma-fields, uniform spaces, and two-factor products whose lifted factor
fields are independent by construction. The product instances are what
make theorem hypotheses true often enough for soundness sweeps to mean
something.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import kernels
from .complements import enumerate_complements
from .core import ProbSpace, SigmaField, discrete, is_sub, product, trivial
from .errors import CapExceeded, EmptyFamily, PreconditionFailed, ReplayMismatch, ValidationError
from .lattice import independent, join
from .laws import LawInstance, lookup
from .report import LawReport

MODES = ("soundness", "counterexample")


@dataclass(frozen=True)
class GenParams:
    seed: int = 0
    max_support: int = 6
    weight_bound: int = 8
    allow_null_outcomes: bool = False

    def __post_init__(self):
        if self.max_support < 2:
            raise ValidationError("max_support must be at least 2")
        if self.weight_bound < 1:
            raise ValidationError("weight_bound must be at least 1")


def trial_rng(seed: int, trial: int = 0) -> random.Random:
    return random.Random(f"sigmalattice:{seed}:{trial}")


def _weights(rng: random.Random, n: int, bound: int) -> list[Fraction]:
    if rng.random() < 0.4:
        return [Fraction(1, n)] * n
    raw = [rng.randint(1, bound) for _ in range(n)]
    total = sum(raw)
    return [Fraction(w, total) for w in raw]


def _space(rng: random.Random, params: GenParams, size: int | None = None) -> ProbSpace:
    n = size if size is not None else rng.randint(2, params.max_support)
    weights = _weights(rng, n, params.weight_bound)
    labels = [f"w{i}" for i in range(n)]
    if params.allow_null_outcomes and rng.random() < 0.3:
        pos = rng.randint(0, n)
        labels.insert(pos, "null")
        weights.insert(pos, Fraction(0))
    return ProbSpace(labels, weights)


def random_space(params: GenParams) -> ProbSpace:
    """A random space with support size in ``[2, max_support]``, determined by ``params.seed``."""
    return _space(trial_rng(params.seed), params)


def _merge_chain(rng: random.Random, labels: Sequence[int]) -> tuple[int, ...]:
    k = max(labels) + 1 if labels else 0
    blocks = list(range(k))
    for _ in range(rng.randint(0, max(k - 1, 0))):
        live = sorted(set(blocks))
        if len(live) < 2:
            break
        i, j = rng.sample(live, 2)
        blocks = [i if b == j else b for b in blocks]
    return kernels.canonical(blocks[v] for v in labels)


def random_sigma(seed, space: ProbSpace) -> SigmaField:
    """A random coarsening of the discrete field by a random merge chain.

    ``seed`` is an int or a :class:`random.Random`.
    """
    rng = seed if isinstance(seed, random.Random) else trial_rng(seed)
    return SigmaField(space, _merge_chain(rng, tuple(range(space.n))))


def coarsen(rng: random.Random, x: SigmaField) -> SigmaField:
    """A random coarsening of ``x``."""
    return SigmaField(x.space, _merge_chain(rng, x.labels))


class _Env:
    """Random material for one trial: a space plus ways to draw related fields."""

    def __init__(self, rng: random.Random, params: GenParams, pool: Sequence[ProbSpace] | None = None):
        self.rng = rng
        self.prod = None
        if pool:
            self.space = rng.choice(list(pool))
            return
        shapes = [s for s in ((2, 2), (2, 3), (3, 2)) if s[0] * s[1] <= params.max_support]
        if shapes and rng.random() < 0.5:
            a, b = rng.choice(shapes)
            f1 = _space(rng, GenParams(max_support=a, weight_bound=params.weight_bound), a)
            f2 = _space(rng, GenParams(max_support=b, weight_bound=params.weight_bound), b)
            self.prod = product(f1, f2)
            self.space = self.prod.space
        else:
            self.space = _space(rng, params)

    def field(self) -> SigmaField:
        r = self.rng.random()
        if self.prod is not None and r < 0.7:
            if r < 0.5:
                return self.factor(self.rng.randint(0, 1))
            return join(self.factor(0), self.factor(1))
        return random_sigma(self.rng, self.space)

    def factor(self, i: int) -> SigmaField:
        """A field lifted from factor ``i``; on non-product spaces just a random field."""
        if self.prod is None:
            return random_sigma(self.rng, self.space)
        f = self.prod.factors[i]
        return self.prod.lift(i, random_sigma(self.rng, f))

    def coarsen(self, x: SigmaField) -> SigmaField:
        return coarsen(self.rng, x)

    def chance(self, p: float) -> bool:
        return self.rng.random() < p


# -- per-law generators -------------------------------------------------------


def _gen_dist_i(env: _Env):
    rows, cols = env.rng.randint(1, 3), env.rng.randint(1, 2)
    structured = env.chance(0.8)
    fam = tuple(
        tuple(env.factor(b % 2) if structured else env.field() for b in range(cols)) for _ in range(rows)
    )
    return (("family", fam),)


def _gen_pairs(env: _Env):
    if env.chance(0.7):
        x2, y2 = env.factor(0), env.factor(1)
        x1 = env.coarsen(x2) if env.chance(0.4) else env.factor(0)
        y1 = env.factor(1)
    else:
        x1, x2, y1, y2 = (env.field() for _ in range(4))
    return (("x1", x1), ("x2", x2), ("y1", y1), ("y2", y2))


def _gen_chain(env: _Env):
    structured = env.chance(0.7)
    top = env.factor(0) if structured else env.field()
    chain = [top]
    for _ in range(env.rng.randint(0, 2)):
        chain.append(env.coarsen(chain[-1]))
    y = env.factor(1) if structured else env.field()
    return (("chain", tuple(chain)), ("y", y))


def _gen_dist_iii(env: _Env):
    if env.chance(0.75):
        fam = [env.factor(0), env.factor(1)]
        if env.chance(0.2):
            fam.append(trivial(env.space))
        r = env.rng.random()
        if r < 0.4:
            z = join(env.coarsen(fam[0]), env.coarsen(fam[1]))
        elif r < 0.7:
            z = env.coarsen(join(fam[0], fam[1]))
        else:
            z = env.field()
    else:
        fam = [env.field() for _ in range(env.rng.randint(1, 3))]
        z = env.field()
    return (("family", tuple(fam)), ("z", z))


def _gen_dist_iv(env: _Env):
    r = env.rng.random()
    if r < 0.4:
        z = env.factor(0)
        fam = [join(z, env.factor(1)), join(env.coarsen(z), env.coarsen(env.factor(0)))]
    elif r < 0.6:
        z = env.field()
        fam = [env.coarsen(z), env.field()]
    else:
        z = env.field()
        fam = [env.field() for _ in range(env.rng.randint(2, 3))]
    return (("family", tuple(fam)), ("z", z))


def _gen_dist_v(env: _Env):
    n = env.rng.randint(1, 3)
    if env.chance(0.7):
        base1, base2 = env.factor(0), env.factor(1)
        col1 = tuple(env.coarsen(base1) for _ in range(n))
        col2 = tuple(env.coarsen(base2) for _ in range(n))
    else:
        col1 = tuple(env.field() for _ in range(n))
        col2 = tuple(env.field() for _ in range(n))
    return (("col1", col1), ("col2", col2))


def _gen_remark_i(env: _Env):
    b, c = env.factor(0), env.factor(1)
    r = env.rng.random()
    if r < 0.4:
        a = env.coarsen(b)
    elif r < 0.8:
        a = env.coarsen(join(b, c))
    else:
        a, b, c = env.field(), env.field(), env.field()
    return (("a", a), ("b", b), ("c", c))


def _gen_remark_ii(env: _Env):
    if env.chance(0.7):
        a, c = env.factor(0), env.factor(1)
        b = env.coarsen(a)
    else:
        b, c = env.field(), env.field()
        a = env.coarsen(join(b, c))
    return (("a", a), ("b", b), ("c", c))


def _gen_commute(env: _Env):
    if env.chance(0.3):
        return (("x", env.factor(0)), ("y", env.factor(1)))
    return (("x", env.field()), ("y", env.field()))


def _gen_complements_ii(env: _Env):
    if env.chance(0.8):
        x, y = env.factor(0), env.factor(1)
        r = env.rng.random()
        if r < 0.4:
            z = join(env.coarsen(x), env.coarsen(y))
        elif r < 0.8:
            z = env.coarsen(join(x, y))
        else:
            z = env.field()
    else:
        x, y, z = env.field(), env.field(), env.field()
    return (("x", x), ("y", y), ("z", z))


def _pick(env: _Env, items):
    return env.rng.choice(items) if items else None


def _gen_two_sided(env: _Env):
    """Build ``a + b = a2 + b2`` with one-sided complements ``x``, ``y`` where possible."""
    a, b = env.factor(0), env.factor(1)
    if env.chance(0.2):
        a, b = env.field(), env.field()
    fallback = (("a", a), ("b", b), ("a2", env.field()), ("b2", env.field()), ("x", env.field()), ("y", env.field()))
    if not independent(a, b):
        return fallback
    s = join(a, b)
    # a <= a2 <= s: merge s-blocks lying inside one a-block
    a2 = _coarsen_within(env, s, a)
    x = _pick(env, enumerate_complements(a, a2).complements)
    b2 = _pick(env, [c for c in enumerate_complements(a2, s).complements if is_sub(c, b)])
    if x is None or b2 is None:
        return fallback
    y = _pick(env, enumerate_complements(b2, b).complements)
    if y is None:
        return fallback
    return (("a", a), ("b", b), ("a2", a2), ("b2", b2), ("x", x), ("y", y))


def _coarsen_within(env: _Env, fine: SigmaField, coarse: SigmaField) -> SigmaField:
    """Random field between ``coarse`` and ``fine`` (``coarse <= fine``)."""
    rep = {}
    for lf, lc in zip(fine.labels, coarse.labels):
        rep.setdefault(lf, lc)
    groups = list(range(fine.nblocks))
    for _ in range(env.rng.randint(0, fine.nblocks)):
        i, j = env.rng.randrange(fine.nblocks), env.rng.randrange(fine.nblocks)
        gi, gj = groups[i], groups[j]
        if gi != gj and rep[i] == rep[j]:
            groups = [gi if g == gj else g for g in groups]
    return SigmaField(fine.space, kernels.canonical(groups[v] for v in fine.labels))


def _gen_innovation(env: _Env):
    horizon = env.rng.randint(1, 3)
    f = [discrete(env.space) if env.chance(0.5) else env.field()]
    g = [trivial(env.space)]
    h = []
    for _ in range(horizon):
        nxt = env.coarsen(f[-1])
        hk = _pick(env, enumerate_complements(nxt, f[-1]).complements) if env.chance(0.9) else None
        if hk is None:
            hk = env.field()
        f.append(nxt)
        h.append(hk)
        g.append(join(g[-1], hk))
    if env.chance(0.1):
        h[env.rng.randrange(horizon)] = env.field()
    return (("f", tuple(f)), ("g", tuple(g)), ("h", tuple(h)))


GENERATORS: dict[str, Callable[[_Env], tuple]] = {
    "dist-i": _gen_dist_i,
    "dist-ii-pairs": _gen_pairs,
    "dist-ii-chain": _gen_chain,
    "dist-iii": _gen_dist_iii,
    "dist-iv": _gen_dist_iv,
    "dist-v": _gen_dist_v,
    "remark-i": _gen_remark_i,
    "remark-ii": _gen_remark_ii,
    "prop-indep-commute": _gen_commute,
    "complements-ii": _gen_complements_ii,
    "two-sided": _gen_two_sided,
    "innovation": _gen_innovation,
}


# -- falsification ------------------------------------------------------------


@dataclass(frozen=True)
class Counterexample:
    law: str
    mode: str
    instance: LawInstance
    report: LawReport
    seed: int
    trial: int
    trace: tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        sp = self.instance.space
        return {
            "law": self.law,
            "mode": self.mode,
            "seed": self.seed,
            "trial": self.trial,
            "outcomes": [str(o) for o in sp.outcomes],
            "probs": [str(w) for w in sp.weights],
            "bindings": {k: _blocks(v) for k, v in self.instance.bindings},
            "report": self.report.to_dict(),
            "trace": list(self.trace),
        }


def _blocks(v):
    if isinstance(v, SigmaField):
        return [[str(o) for o in b] for b in v.blocks]
    return [_blocks(x) for x in v]


def failing(report: LawReport, mode: str) -> bool:
    """Soundness: some claim has true hypotheses and a false conclusion. Counterexample: the law's conclusion is false."""
    if mode == "soundness":
        return not report.holds
    return not report.conclusion


_VOID = (PreconditionFailed, CapExceeded, EmptyFamily)


def run_trial(law_id: str, mode: str, params: GenParams, trial: int, pool=None):
    """``(instance, report)`` for one trial, or ``None`` when the trial is void."""
    desc = lookup(law_id)
    env = _Env(trial_rng(params.seed, trial), params, pool)
    inst = LawInstance(law_id, env.space, GENERATORS[law_id](env))
    try:
        report = desc.run(inst)
    except _VOID:
        return None
    return inst, report


def _scan(law_id, mode, params, start, stop, pool):
    for t in range(start, stop):
        out = run_trial(law_id, mode, params, t, pool)
        if out is not None and failing(out[1], mode):
            return t, out
    return None


def _check_mode(law_id: str, mode: str) -> None:
    lookup(law_id)
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")


def falsify(
    law_id: str,
    mode: str = "soundness",
    budget: int = 1000,
    params: GenParams | None = None,
    workers: int = 1,
    pool: Sequence[ProbSpace] | None = None,
) -> Counterexample | None:
    """Hunt for a failing instance within ``budget`` trials.

    ``pool`` restricts trials to the given spaces (fields stay random).
    With ``workers > 1`` trials run in processes; the result is still the
    failing trial with the smallest index.
    """
    _check_mode(law_id, mode)
    params = params or GenParams()
    if workers <= 1 or budget < 2 * workers:
        hit = _scan(law_id, mode, params, 0, budget, pool)
    else:
        step = -(-budget // workers)
        bounds = [(i, min(i + step, budget)) for i in range(0, budget, step)]
        with ProcessPoolExecutor(workers) as ex:
            futs = [ex.submit(_scan, law_id, mode, params, a, b, pool) for a, b in bounds]
            hits = [f.result() for f in futs]
        found = [h for h in hits if h is not None]
        hit = min(found, key=lambda h: h[0]) if found else None
    if hit is None:
        return None
    t, (inst, report) = hit
    return Counterexample(law_id, mode, inst, report, params.seed, t)


def falsify_stats(
    law_id: str,
    mode: str = "soundness",
    budget: int = 1000,
    params: GenParams | None = None,
    pool: Sequence[ProbSpace] | None = None,
) -> dict:
    """Counts over all trials: void, hypotheses true, conclusion false, failing."""
    _check_mode(law_id, mode)
    params = params or GenParams()
    stats = {"trials": budget, "void": 0, "hypotheses_true": 0, "conclusion_false": 0, "failing": 0, "first_failing": None}
    for t in range(budget):
        out = run_trial(law_id, mode, params, t, pool)
        if out is None:
            stats["void"] += 1
            continue
        rep = out[1]
        stats["hypotheses_true"] += rep.hypotheses_hold
        stats["conclusion_false"] += not rep.conclusion
        if failing(rep, mode):
            stats["failing"] += 1
            if stats["first_failing"] is None:
                stats["first_failing"] = t
    return stats


# -- shrinking ----------------------------------------------------------------


def _map_binding(v, fn):
    if isinstance(v, SigmaField):
        return fn(v)
    return tuple(_map_binding(x, fn) for x in v)


def _field_slots(bindings):
    """Paths to every SigmaField inside the bindings, in order."""
    out = []

    def walk(v, path):
        if isinstance(v, SigmaField):
            out.append((path, v))
        else:
            for i, x in enumerate(v):
                walk(x, path + (i,))

    for r, (_, v) in enumerate(bindings):
        walk(v, (r,))
    return out


def _replace_at(bindings, path, new):
    def rec(v, p):
        if not p:
            return new
        return tuple(rec(x, p[1:]) if i == p[0] else x for i, x in enumerate(v))

    r = path[0]
    name, v = bindings[r]
    return bindings[:r] + ((name, rec(v, path[1:])),) + bindings[r + 1 :]


def _dyadic(w: Fraction) -> bool:
    d = w.denominator
    return d & (d - 1) == 0


def measure(inst: LawInstance) -> tuple[int, int, int, int]:
    """Strictly decreasing under every accepted shrink step."""
    sp = inst.space
    blocks = sum(f.nblocks for f in inst.fields())
    return (
        len(sp.outcomes),
        blocks,
        sum(1 for w in sp.weights if not _dyadic(w)),
        sum(w.denominator for w in sp.weights),
    )


def _reweigh(inst: LawInstance, weights) -> LawInstance:
    sp = ProbSpace(inst.space.outcomes, weights)
    return LawInstance(inst.law, sp, _map_binding_all(inst.bindings, lambda f: SigmaField(sp, f.labels)))


def _map_binding_all(bindings, fn):
    return tuple((k, _map_binding(v, fn)) for k, v in bindings)


def _delete_outcome(inst: LawInstance, i: int) -> LawInstance | None:
    sp = inst.space
    rest = 1 - sp.weights[i]
    if rest == 0 or len(sp.outcomes) < 2:
        return None
    outs = sp.outcomes[:i] + sp.outcomes[i + 1 :]
    ws = [w / rest for w in sp.weights[:i] + sp.weights[i + 1 :]]
    new = ProbSpace(outs, ws)
    pos = sp.position(sp.outcomes[i])

    def restrict(f: SigmaField) -> SigmaField:
        labels = f.labels if pos is None else f.labels[:pos] + f.labels[pos + 1 :]
        return SigmaField(new, kernels.canonical(labels))

    return LawInstance(inst.law, new, _map_binding_all(inst.bindings, restrict))


def _dyadic_round(weights, m: int):
    """Largest-remainder rounding of the positive weights to multiples of ``1/2**m``, each at least one unit."""
    unit = 2**m
    pos = [i for i, w in enumerate(weights) if w > 0]
    if unit < len(pos):
        return None
    base = {i: max(1, int(weights[i] * unit)) for i in pos}
    spare = unit - sum(base.values())
    if spare < 0:
        return None
    order = sorted(pos, key=lambda i: (-(weights[i] * unit - int(weights[i] * unit)), i))
    for i in order[:spare]:
        base[i] += 1
    if sum(base.values()) != unit:
        return None
    return [Fraction(base[i], unit) if i in base else Fraction(0) for i in range(len(weights))]


def _reductions(inst: LawInstance):
    """Candidate reductions in a fixed order: deletions, merges, then simpler weights."""
    sp = inst.space
    for i in range(len(sp.outcomes)):
        cand = _delete_outcome(inst, i)
        if cand is not None:
            yield cand, f"delete outcome {sp.outcomes[i]}"
    for path, f in _field_slots(inst.bindings):
        for j in range(1, f.nblocks):
            for i in range(j):
                labels = kernels.canonical(i if v == j else v for v in f.labels)
                merged = SigmaField(sp, labels)
                role = inst.bindings[path[0]][0]
                where = role + "".join(f"[{p}]" for p in path[1:])
                yield (
                    LawInstance(inst.law, sp, _replace_at(inst.bindings, path, merged)),
                    f"merge blocks {i} and {j} of {where}",
                )
    npos = sp.n
    uniform = [Fraction(1, npos) if w > 0 else Fraction(0) for w in sp.weights]
    if list(sp.weights) != uniform:
        yield _reweigh(inst, uniform), "make weights uniform"
    for m in range(1, 7):
        ws = _dyadic_round(sp.weights, m)
        if ws is not None and ws != list(sp.weights):
            yield _reweigh(inst, ws), f"round weights to multiples of 1/{2**m}"


def _still_failing(inst: LawInstance, mode: str):
    try:
        rep = lookup(inst.law).run(inst)
    except (*_VOID, ValueError):
        return None
    return rep if failing(rep, mode) else None


def shrink(cex: Counterexample, max_steps: int = 1000) -> Counterexample:
    """Greedy local minimisation keeping the failure (same law, same mode).

    The first reduction that keeps the instance failing and lowers
    :func:`measure` is taken, then the scan restarts.
    """
    replay = lookup(cex.law).run(cex.instance)
    if replay != cex.report:
        raise ReplayMismatch("replaying the instance does not reproduce the recorded report")
    current, report = cex.instance, cex.report
    trace = list(cex.trace)
    for _ in range(max_steps):
        m = measure(current)
        for cand, step in _reductions(current):
            if measure(cand) >= m:
                continue
            rep = _still_failing(cand, cex.mode)
            if rep is not None:
                current, report = cand, rep
                trace.append(step)
                break
        else:
            break
    return Counterexample(cex.law, cex.mode, current, report, cex.seed, cex.trial, tuple(trace))
