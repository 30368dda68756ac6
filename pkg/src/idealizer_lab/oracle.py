"""Definition-level computation of the idealizer chain.

The oracle only uses the bracket: starting from ``{d1, ..., dn}`` each level is
the set of basis elements ``b`` (up to a weight cap) such that ``[b, h]`` is
zero or lands in the span of the previous level for every ``h`` there. In
pure mode nothing from :mod:`idealizer_lab.grading` is consulted.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .lie import (
    BasisElement,
    BracketResult,
    RingContext,
    RingElement,
    basis_enumerate,
    bracket,
    bracket_basis,
    derivation,
    in_span,
)

THREADS_ENV = "IDEALIZER_LAB_THREADS"
DEFAULT_SEED = 20240229


@dataclass(frozen=True)
class OracleConfig:
    weight_cap_margin: int = 0
    pure_mode: bool = True

    def __post_init__(self):
        if self.weight_cap_margin < 0:
            raise ValueError("weight_cap_margin must be >= 0")


@dataclass(frozen=True)
class ChainDiff:
    i: int
    missing: tuple[BasisElement, ...] = ()
    extra: tuple[BasisElement, ...] = ()

    @property
    def equal(self) -> bool:
        return not self.missing and not self.extra


def _sorted(elements: Iterable[BasisElement]) -> list[BasisElement]:
    return sorted(elements, key=BasisElement.sort_key)


def _accepts(ctx, candidate, h_list, h_set, bracket_fn) -> bool:
    for h in h_list:
        res = bracket_fn(ctx, candidate, h)
        if res is not None and res[1] not in h_set:
            return False
    return True


def _check_chunk(args) -> list[bool]:
    n, chunk, h_list = args
    ctx = RingContext(n)
    h_set = frozenset(h_list)
    return [_accepts(ctx, b, h_list, h_set, bracket_basis) for b in chunk]


def _workers() -> int:
    raw = os.environ.get(THREADS_ENV, "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def idealizer_step(
    ctx: RingContext,
    h: Iterable[BasisElement],
    weight_cap: int,
    candidates: Sequence[BasisElement] | None = None,
    bracket_fn: Callable[[RingContext, BasisElement, BasisElement], BracketResult] = bracket_basis,
) -> frozenset[BasisElement]:
    """Basis elements of weight <= ``weight_cap`` whose bracket with ``h`` stays in ``Z h``."""
    h_set = frozenset(h)
    # low-weight elements first: rejections are usually found against d1..dn
    h_list = sorted(h_set, key=lambda e: (e.partition.weight, e.sort_key()))
    if candidates is None:
        candidates = basis_enumerate(ctx, weight_cap)
    else:
        candidates = [b for b in candidates if b.partition.weight <= weight_cap]
    workers = _workers()
    if workers > 1 and bracket_fn is bracket_basis and len(candidates) > 2000:
        size = -(-len(candidates) // (workers * 4))
        chunks = [candidates[s:s + size] for s in range(0, len(candidates), size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            flags = [f for part in pool.map(_check_chunk, [(ctx.n, c, h_list) for c in chunks]) for f in part]
        return frozenset(b for b, ok in zip(candidates, flags) if ok)
    return frozenset(b for b in candidates if _accepts(ctx, b, h_list, h_set, bracket_fn))


def _pruned_candidates(ctx: RingContext, base: list[BasisElement], i: int) -> list[BasisElement]:
    from .grading import wd

    return [b for b in base if wd(ctx, b) <= ctx.n - 1 and b.partition.degree <= i + 1]


def oracle_chain(ctx: RingContext, i_max: int, cfg: OracleConfig = OracleConfig()) -> list[frozenset[BasisElement]]:
    """Levels ``-1..i_max``; entry ``j`` of the result is level ``j - 1``."""
    if i_max < -1:
        raise ValueError("i_max must be >= -1")
    n = ctx.n
    levels = [frozenset(derivation(k) for k in range(1, n + 1))]
    if i_max < 0:
        return levels
    base = basis_enumerate(ctx, n + i_max + cfg.weight_cap_margin)
    for i in range(0, i_max + 1):
        cap = n + i + cfg.weight_cap_margin
        cands = base if cfg.pure_mode else _pruned_candidates(ctx, base, i)
        nxt = idealizer_step(ctx, levels[-1], cap, candidates=cands)
        if not levels[-1] <= nxt:
            lost = _sorted(levels[-1] - nxt)
            raise RuntimeError(f"chain not ascending at level {i}: lost {lost[:5]}")
        levels.append(nxt)
    return levels


def compare_chain(ctx: RingContext, i_max: int, cfg: OracleConfig = OracleConfig()) -> list[ChainDiff]:
    """Level-by-level difference between the oracle chain and the analytic sets."""
    from .grading import enumerate_chain_set

    oracle = oracle_chain(ctx, i_max, cfg)
    diffs = []
    for offset, got in enumerate(oracle):
        i = offset - 1
        expected = enumerate_chain_set(ctx, i)
        diffs.append(ChainDiff(i=i, missing=tuple(_sorted(expected - got)), extra=tuple(_sorted(got - expected))))
    return diffs


@dataclass
class HomogeneityReport:
    trials: int
    accepted_pass: int = 0
    accepted_fail: int = 0
    rejected_pass: int = 0
    rejected_fail: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.accepted_fail == 0 and self.rejected_fail == 0

    def as_dict(self) -> dict:
        return {
            "trials": self.trials,
            "accepted_pass": self.accepted_pass,
            "accepted_fail": self.accepted_fail,
            "rejected_pass": self.rejected_pass,
            "rejected_fail": self.rejected_fail,
            "failures": list(self.failures),
        }


def _random_combination(rng: random.Random, pool: Sequence[BasisElement], max_terms: int = 4) -> RingElement:
    size = rng.randint(1, min(max_terms, len(pool)))
    picks = rng.sample(list(pool), size)
    return RingElement((e, rng.choice([c for c in range(-5, 6) if c])) for e in picks)


def verify_homogeneity(
    ctx: RingContext,
    h: Iterable[BasisElement],
    trials: int,
    seed: int = DEFAULT_SEED,
    weight_cap: int | None = None,
) -> HomogeneityReport:
    """Spot-check that the module idealizer of ``span(h)`` is spanned by basis elements.

    Random combinations of accepted basis elements must normalise ``span(h)``;
    adding any non-zero multiple of a rejected basis element must break that,
    witnessed by some ``h``.
    """
    h_set = frozenset(h)
    h_list = _sorted(h_set)
    if weight_cap is None:
        weight_cap = max((e.partition.weight for e in h_set), default=0) + ctx.n
    cands = basis_enumerate(ctx, weight_cap)
    accepted = _sorted(idealizer_step(ctx, h_set, weight_cap, candidates=cands))
    rejected = _sorted(set(cands) - set(accepted))
    rng = random.Random(seed)
    report = HomogeneityReport(trials=trials)

    def normalises(v: RingElement) -> BasisElement | None:
        for g in h_list:
            if not in_span(bracket(ctx, v, RingElement.of(g)), h_set):
                return g
        return None

    for _ in range(trials):
        v = _random_combination(rng, accepted) if accepted else RingElement()
        witness = normalises(v)
        if witness is None:
            report.accepted_pass += 1
        else:
            report.accepted_fail += 1
            report.failures.append(f"accepted combination {v} fails against {witness}")
        if not rejected:
            continue
        b = rng.choice(rejected)
        c = rng.choice([c for c in range(-5, 6) if c])
        v2 = v + RingElement.of(b, c)
        witness = normalises(v2)
        if witness is not None:
            report.rejected_pass += 1
        else:
            report.rejected_fail += 1
            report.failures.append(f"combination {v2} with rejected {b} normalises span(H)")
    return report


def commutator_containment(ctx: RingContext, i: int, j: int) -> bool:
    """Whether every bracket of a level-``i`` element with a level-``j`` element lies in ``Z N_{j-1}``."""
    from .grading import enumerate_chain_set

    if not -1 <= i < j:
        raise ValueError(f"need -1 <= i < j, got i={i}, j={j}")
    left = _sorted(enumerate_chain_set(ctx, i))
    right = _sorted(enumerate_chain_set(ctx, j))
    target = enumerate_chain_set(ctx, j - 1)
    for a in left:
        for b in right:
            res = bracket_basis(ctx, a, b)
            if res is not None and res[1] not in target:
                return False
    return True
