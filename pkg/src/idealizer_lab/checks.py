"""Invariant checks driven by ``idealizer-lab verify``.

Each check returns a :class:`CheckResult`; the first counterexample found is
kept as the witness. Checks that exercise the bracket take ``bracket_fn`` so a
tampered bracket can be injected.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Optional

from .grading import (
    decompose,
    entry_index,
    enumerate_chain_set,
    enumerate_layer,
    lev,
    period_map,
    predicted_sizes,
    threshold,
    wd,
)
from .lie import (
    BasisElement,
    BracketResult,
    RingContext,
    RingElement,
    basis,
    basis_enumerate,
    bracket,
    bracket_basis,
)
from .oracle import DEFAULT_SEED, OracleConfig, commutator_containment, oracle_chain, verify_homogeneity
from .partitions import partition_counts

BracketFn = Callable[[RingContext, BasisElement, BasisElement], BracketResult]

# rows b and c as printed in the published table of first values
TABLE_B_ROW = (1, 1, 3, 6, 11, 18, 29, 44, 66, 96, 138, 194, 271, 372, 507)
TABLE_C_ROW = (1, 1, 4, 10, 21, 39, 68, 112, 178, 274, 412, 606, 877, 1249, 1756)

NON_NILPOTENT_WITNESS = basis({2: 3}, 3)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    witness: Optional[str] = None

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail, "witness": self.witness}


@dataclass
class SuiteReport:
    n: int
    i_max: int
    seed: int
    trials: int
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "i_max": self.i_max,
            "seed": self.seed,
            "trials": self.trials,
            "passed": self.passed,
            "checks": [c.as_dict() for c in self.checks],
        }


def _result(name: str, witness: Optional[str], detail: str) -> CheckResult:
    return CheckResult(name=name, passed=witness is None, detail=detail, witness=witness)


def _as_element(res: BracketResult) -> RingElement:
    return RingElement() if res is None else RingElement.of(res[1], res[0])


# --- algebraic suite -----------------------------------------------------------


def check_antisymmetry(ctx: RingContext, max_weight: int = 8, bracket_fn: BracketFn = bracket_basis) -> CheckResult:
    elems = basis_enumerate(ctx, max_weight)
    pairs = 0
    for a, b in product(elems, repeat=2):
        pairs += 1
        ab = _as_element(bracket_fn(ctx, a, b))
        ba = _as_element(bracket_fn(ctx, b, a))
        if ab != -ba:
            return _result("antisymmetry", f"[{a}, {b}] = {ab} but [{b}, {a}] = {ba}", f"{pairs} pairs")
    return _result("antisymmetry", None, f"{pairs} basis pairs with weight <= {max_weight}")


def check_jacobi(
    ctx: RingContext,
    trials: int = 1000,
    max_weight: int = 12,
    seed: int = DEFAULT_SEED,
    bracket_fn: BracketFn = bracket_basis,
) -> CheckResult:
    elems = basis_enumerate(ctx, max_weight)
    rng = random.Random(seed)

    def br(x, y):
        return bracket(ctx, x, y, bracket_fn)

    for t in range(trials):
        a, b, c = (RingElement.of(rng.choice(elems)) for _ in range(3))
        total = br(a, br(b, c)) + br(b, br(c, a)) + br(c, br(a, b))
        if not total.is_zero():
            return _result("jacobi", f"a={a}, b={b}, c={c}: sum = {total}", f"failed at trial {t}")
    return _result("jacobi", None, f"{trials} random triples with weight <= {max_weight}")


def check_closure_and_coefficients(ctx: RingContext, max_weight: int = 8, bracket_fn: BracketFn = bracket_basis) -> CheckResult:
    elems = basis_enumerate(ctx, max_weight)
    for a, b in product(elems, repeat=2):
        res = bracket_fn(ctx, a, b)
        if res is None:
            continue
        coeff, e = res
        if e.partition.max_part > e.direction - 1:
            return _result("closure", f"[{a}, {b}] -> {e}", "result violates the part bound")
        k, j = a.direction, b.direction
        expected = a.partition.multiplicity(j) if j < k else -b.partition.multiplicity(k)
        if coeff != expected:
            return _result("closure", f"[{a}, {b}] coefficient {coeff}, expected {expected}", "coefficient law")
    return _result("closure", None, f"closure and coefficient law on weight <= {max_weight}")


# --- grading identities ----------------------------------------------------------


def check_wd_lower_bound(ctx: RingContext, max_weight: int = 10) -> CheckResult:
    for e in basis_enumerate(ctx, max_weight):
        w = wd(ctx, e)
        pure = e.partition.max_part <= 1
        if w < ctx.n - e.direction or (w == ctx.n - e.direction) != pure:
            return _result("wd_lower_bound", f"{e}: WD={w}", "WD >= n-k with equality iff all parts are 1")
    return _result("wd_lower_bound", None, f"weight <= {max_weight}")


def check_level_shift(ctx: RingContext, max_weight: int = 8, max_level: int = 40) -> CheckResult:
    hs = {i: decompose(ctx.n, i).h for i in range(-1, max_level + 1)}
    for e in basis_enumerate(ctx, max_weight):
        w = wd(ctx, e)
        levs = {i: lev(ctx, i, e) for i in hs}
        for i, j in product(hs, repeat=2):
            if levs[j] != levs[i] + (hs[j] - hs[i]) * w:
                return _result("level_shift", f"{e}: i={i}, j={j}", "lev_j = lev_i + (h_j - h_i) WD")
    return _result("level_shift", None, f"weight <= {max_weight}, -1 <= i, j <= {max_level}")


def check_bracket_grading(ctx: RingContext, max_weight: int = 10, bracket_fn: BracketFn = bracket_basis) -> CheckResult:
    n = ctx.n
    levels = range(-1, 3 * (n - 1) + 1)
    elems = basis_enumerate(ctx, max_weight)
    pairs = 0
    for a, b in product(elems, repeat=2):
        res = bracket_fn(ctx, a, b)
        if res is None:
            continue
        pairs += 1
        g = res[1]
        if wd(ctx, g) != wd(ctx, a) + wd(ctx, b) - (n - 1):
            return _result("bracket_grading", f"WD([{a}, {b}])", "WD additive minus n-1")
        for i in levels:
            h = decompose(n, i).h
            if lev(ctx, i, g) != lev(ctx, i, a) + lev(ctx, i, b) - h * (n - 1):
                return _result("bracket_grading", f"lev_{i}([{a}, {b}])", "lev additive minus h(n-1)")
    return _result("bracket_grading", None, f"{pairs} non-commuting pairs, weight <= {max_weight}")


def check_level_reduction(ctx: RingContext, max_weight: int = 10, max_level: int = 30) -> CheckResult:
    n = ctx.n
    for e in basis_enumerate(ctx, max_weight):
        exact = [j for j in range(-1, max_level + 1) if lev(ctx, j, e) == j]
        for i in range(-1, max_level + 1):
            li = lev(ctx, i, e)
            if li <= i and not any(j <= i for j in exact):
                return _result("level_reduction", f"{e} at i={i}", "lev_i <= i without an exact level below")
            if li <= i and lev(ctx, i + n - 1, e) > i + n - 1:
                return _result("level_reduction", f"{e} at i={i}", "membership not preserved by a step of n-1")
    return _result("level_reduction", None, f"weight <= {max_weight}, i <= {max_level}; step n-1 included")


def check_layer_structure(ctx: RingContext, i_max: int) -> CheckResult:
    """Layer bound WD < r_i, empty low directions, and the pure-x1 exponent."""
    n = ctx.n
    for i in range(0, i_max + 1):
        idx = decompose(n, i)
        layer = enumerate_layer(ctx, i)
        for k, elems in layer.by_direction.items():
            if k < n - idx.r + 1:
                return _result("layer_structure", f"L_{i} meets B_{k}", "directions below n-r_i+1 are empty")
            for e in elems:
                if wd(ctx, e) >= idx.r:
                    return _result("layer_structure", f"{e} in L_{i}", "WD < r_i")
                if e.partition.max_part <= 1:
                    t = e.partition.multiplicity(1)
                    if t != i - idx.h * (n - k) + 1:
                        return _result("layer_structure", f"{e} in L_{i}", "x1^t d_k has t = i - h_i(n-k) + 1")
    for u in range(2, n + 1):
        for h in range(1, 7):
            e = basis({1: h, u - 1: 1} if u > 2 else {1: h + 1}, u)
            if entry_index(ctx, e) != h * (n - 1):
                return _result("layer_structure", f"{e}", f"expected in L_{h * (n - 1)}")
    return _result("layer_structure", None, f"i <= {i_max}; x1^h x_(u-1) d_u elements for h <= 6")


def check_layer_consistency(ctx: RingContext, i_max: int) -> CheckResult:
    """The characterisation agrees with a scan of ``entry_index`` over a weight window."""
    n = ctx.n
    window = basis_enumerate(ctx, n + i_max)
    entries = {e: entry_index(ctx, e) for e in window}
    for i in range(0, i_max + 1):
        scanned = {e for e, j in entries.items() if j == i}
        enumerated = set(enumerate_layer(ctx, i).elements())
        heavy = [e for e in enumerated if e.partition.weight > n + i]
        if heavy:
            return _result("layer_consistency", f"level {i}: {heavy[0]}", "weight above n+i")
        if scanned != enumerated:
            diff = sorted(scanned ^ enumerated, key=BasisElement.sort_key)
            return _result("layer_consistency", f"level {i}: {', '.join(map(str, diff[:5]))}", "symmetric difference")
    return _result("layer_consistency", None, f"0 <= i <= {i_max}")


def check_predicted_sizes(ctx: RingContext, i_max: int) -> CheckResult:
    n = ctx.n
    checked = 0
    for i in range(max(0, threshold(n) + 1), i_max + 1):
        layer = enumerate_layer(ctx, i)
        by_k, total = predicted_sizes(n, i)
        checked += 1
        if layer.counts() != by_k or len(layer) != total:
            return _result("predicted_sizes", f"i={i}: got {layer.counts()}, predicted {by_k}", "size formula")
    return _result("predicted_sizes", None, f"{checked} levels above threshold {threshold(n)}")


def check_period_map(ctx: RingContext, i_max: int) -> CheckResult:
    n = ctx.n
    for i in range(0, i_max + 1):
        src = enumerate_layer(ctx, i).elements()
        dst = set(enumerate_layer(ctx, i + n - 1).elements())
        image = [period_map(ctx, e) for e in src]
        if len(set(image)) != len(image):
            return _result("period_map", f"level {i}", "not injective")
        stray = [e for e in image if e not in dst]
        if stray:
            return _result("period_map", f"level {i}: {stray[0]}", f"image not inside L_{i + n - 1}")
        if i > threshold(n) and len(image) != len(dst):
            return _result("period_map", f"level {i}", f"not onto L_{i + n - 1}")
    return _result("period_map", None, f"0 <= i <= {i_max}; bijective above {threshold(n)}")


# --- chain level -----------------------------------------------------------------


def check_commutator_containment(ctx: RingContext, j_max: int) -> CheckResult:
    for j in range(0, j_max + 1):
        for i in range(-1, j):
            if not commutator_containment(ctx, i, j):
                return _result("commutator_containment", f"i={i}, j={j}", "[N_i, N_j] in Z N_(j-1)")
    return _result("commutator_containment", None, f"-1 <= i < j <= {j_max}")


def check_oracle_equivalence(ctx: RingContext, i_max: int, margin: int = 0) -> CheckResult:
    oracle = oracle_chain(ctx, i_max, OracleConfig(weight_cap_margin=margin, pure_mode=True))
    for offset, got in enumerate(oracle):
        i = offset - 1
        expected = enumerate_chain_set(ctx, i)
        if got != expected:
            diff = sorted(got ^ expected, key=BasisElement.sort_key)
            return _result("oracle_equivalence", f"level {i}: {', '.join(map(str, diff[:5]))}", "oracle differs")
    return _result("oracle_equivalence", None, f"-1 <= i <= {i_max}, margin {margin}")


def check_cap_robustness(ctx: RingContext, i_max: int) -> CheckResult:
    base = oracle_chain(ctx, i_max, OracleConfig(weight_cap_margin=0))
    wide = oracle_chain(ctx, i_max, OracleConfig(weight_cap_margin=ctx.n))
    for offset, (a, b) in enumerate(zip(base, wide)):
        if a != b:
            return _result("cap_robustness", f"level {offset - 1}", "margin +n changed the level")
    return _result("cap_robustness", None, f"margin 0 vs {ctx.n}, i <= {i_max}")


def check_homogeneity(ctx: RingContext, i_max: int, trials: int, seed: int) -> CheckResult:
    levels = oracle_chain(ctx, min(i_max, 4))
    total = 0
    for offset, h in enumerate(levels):
        rep = verify_homogeneity(ctx, h, trials, seed + offset)
        total += rep.accepted_pass + rep.rejected_pass
        if not rep.ok:
            return _result("homogeneity", rep.failures[0], f"level {offset - 1}")
    return _result("homogeneity", None, f"{total} spot checks on {len(levels)} levels")


def check_non_membership(ctx: RingContext, i_max: int, analytic_max: int = 50) -> CheckResult:
    e = NON_NILPOTENT_WITNESS
    if e.direction > ctx.n:
        return _result("non_membership", None, "n too small for the witness")
    if entry_index(ctx, e) is not None or wd(ctx, e) < ctx.n:
        return _result("non_membership", str(e), "entry_index should be none via WD >= n")
    if e in enumerate_chain_set(ctx, analytic_max):
        return _result("non_membership", str(e), f"found in analytic N_{analytic_max}")
    for offset, level in enumerate(oracle_chain(ctx, i_max)):
        if e in level:
            return _result("non_membership", str(e), f"found in oracle level {offset - 1}")
    return _result("non_membership", None, f"{e} absent (WD = {wd(ctx, e)})")


def check_table_discrepancy() -> CheckResult:
    """Layer counts of the n = 5, r = 4 example fit the partial-sum definitions, not the printed rows."""
    ctx = RingContext(5)
    layer = enumerate_layer(ctx, 8)  # r_8 = 4
    counts = partition_counts(14)
    got = [len(layer.by_direction.get(k, ())) for k in (5, 4, 3, 2)]
    text = [counts.b[3], counts.b[2], counts.b[1], counts.b[0]]
    printed = [TABLE_B_ROW[3], TABLE_B_ROW[2], TABLE_B_ROW[1], TABLE_B_ROW[0]]
    if got != [7, 4, 2, 1] or got != text or len(layer) != counts.c[3]:
        return _result("table_discrepancy", f"counts {got}, total {len(layer)}", "partial-sum definitions")
    if got == printed or len(layer) == TABLE_C_ROW[3]:
        return _result("table_discrepancy", f"counts {got}", "printed rows unexpectedly agree")
    return _result("table_discrepancy", None, f"counts {got} = b_3..b_0, total {len(layer)} = c_3 (printed c_3 = {TABLE_C_ROW[3]})")


def run_suite(
    n: int,
    i_max: int,
    seed: int = DEFAULT_SEED,
    trials: int = 1000,
    bracket_fn: BracketFn = bracket_basis,
) -> SuiteReport:
    ctx = RingContext(n)
    report = SuiteReport(n=n, i_max=i_max, seed=seed, trials=trials)
    small = min(n, 5)  # algebraic checks stay at desk scale for large n
    alg_ctx = RingContext(small) if small >= 3 else ctx
    steps: list[Callable[[], CheckResult]] = [
        lambda: check_antisymmetry(alg_ctx, 8, bracket_fn),
        lambda: check_jacobi(alg_ctx, trials, 12, seed, bracket_fn),
        lambda: check_closure_and_coefficients(alg_ctx, 8, bracket_fn),
        lambda: check_wd_lower_bound(ctx),
        lambda: check_level_shift(ctx),
        lambda: check_bracket_grading(ctx, 8, bracket_fn),
        lambda: check_level_reduction(ctx),
        lambda: check_layer_structure(ctx, i_max),
        lambda: check_layer_consistency(ctx, i_max),
        lambda: check_predicted_sizes(ctx, i_max),
        lambda: check_period_map(ctx, i_max),
        lambda: check_commutator_containment(ctx, min(i_max, 8)),
        lambda: check_oracle_equivalence(ctx, i_max),
        lambda: check_cap_robustness(ctx, i_max),
        lambda: check_homogeneity(ctx, i_max, max(1, trials // 20), seed),
        lambda: check_non_membership(ctx, i_max),
        check_table_discrepancy,
    ]
    for step in steps:
        report.checks.append(step())
    return report

