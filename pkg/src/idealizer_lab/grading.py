"""Weight-degree and level functions, and the analytic description of the chain.

For a rank ``n`` every level index ``i >= -1`` is written uniquely as
``i = (h - 1)(n - 1) + r`` with ``1 <= r <= n - 1``. With

    WD(x^L d_k)      = wt(L) - deg(L) + n - k
    lev_i(x^L d_k)   = h_i * WD + deg(L) - 1

an element enters the chain at the least ``i`` with ``lev_i <= i``, and the
layer of level ``i >= 0`` is characterised by ``n - k <= WD < r_i`` together
with ``lev_i = i``. The second condition pins the multiplicity of part 1, so a
layer is enumerated by choosing the parts >= 2 and solving for ``lambda_1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .lie import BasisElement, RingContext, check_element, derivation
from .partitions import Partition, enumerate_partitions, partition_counts


@dataclass(frozen=True)
class LevelIndex:
    i: int
    h: int
    r: int


def decompose(n: int, i: int) -> LevelIndex:
    if n < 3:
        raise ValueError(f"rank n must be >= 3, got {n}")
    if i < -1:
        raise ValueError(f"level index must be >= -1, got {i}")
    h = (i - 1) // (n - 1) + 1  # floor division rounds toward -inf, as required for i <= 0
    r = i - (h - 1) * (n - 1)
    assert 1 <= r <= n - 1
    return LevelIndex(i=i, h=h, r=r)


def threshold(n: int) -> int:
    """Sizes follow the closed form for every level strictly above this value."""
    return (n - 4) * (n - 1)


def wd(ctx: RingContext, e: BasisElement) -> int:
    p = e.partition
    return p.weight - p.degree + ctx.n - e.direction


def lev(ctx: RingContext, i: int, e: BasisElement) -> int:
    return decompose(ctx.n, i).h * wd(ctx, e) + e.partition.degree - 1


class ScanCapReached(RuntimeError):
    """``entry_index`` hit the caller's scan bound before deciding."""

    def __init__(self, element: BasisElement, cap: int):
        super().__init__(f"no decision for {element} within cap {cap}")
        self.element = element
        self.cap = cap


def entry_bound(ctx: RingContext, e: BasisElement) -> Optional[int]:
    """Level by which an element with ``WD <= n - 2`` must have entered.

    Returns ``None`` for elements that never enter (``WD >= n - 1`` other than d1).
    At ``i = h(n - 1)`` one has ``i - lev_i = h(n - 1 - WD) - deg + 1``, which is
    non-negative once ``h >= (deg - 1) / (n - 1 - WD)``.
    """
    n = ctx.n
    w = wd(ctx, e)
    if w >= n - 1:
        return -1 if e == derivation(1) else None
    slack = n - 1 - w
    h = max(0, -(-(e.partition.degree - 1) // slack))
    return (n - 1) * (h + 2)


def entry_index(ctx: RingContext, e: BasisElement, cap: Optional[int] = None) -> Optional[int]:
    """Least ``i >= -1`` with ``lev_i(e) <= i``, or ``None`` if there is none.

    ``cap`` bounds the scan; if it runs out before the analytic bound,
    :class:`ScanCapReached` is raised.
    """
    check_element(ctx, e)
    bound = entry_bound(ctx, e)
    if bound is None:
        return None
    if bound == -1:
        return -1
    limit = bound if cap is None else min(bound, cap)
    n = ctx.n
    w = wd(ctx, e)
    deg = e.partition.degree
    for i in range(-1, limit + 1):
        h = (i - 1) // (n - 1) + 1
        if h * w + deg - 1 <= i:
            return i
    if cap is not None and cap < bound:
        raise ScanCapReached(e, cap)
    raise RuntimeError(f"entry_index: analytic bound {bound} exceeded for {e}")


@dataclass(frozen=True)
class LayerSet:
    i: int
    by_direction: dict[int, tuple[BasisElement, ...]]

    def elements(self) -> list[BasisElement]:
        return [e for k in sorted(self.by_direction) for e in self.by_direction[k]]

    def counts(self) -> dict[int, int]:
        return {k: len(v) for k, v in sorted(self.by_direction.items())}

    def __len__(self) -> int:
        return sum(len(v) for v in self.by_direction.values())


@lru_cache(maxsize=4096)
def _layer(n: int, i: int) -> LayerSet:
    idx = decompose(n, i)
    h, r = idx.h, idx.r
    by_direction: dict[int, tuple[BasisElement, ...]] = {}
    for k in range(max(2, n - r + 1), n + 1):
        budget = r + k - n - 1  # bound on wt(L) - deg(L)
        found = []
        # tails: theta_u = lambda_{u+1}; parts of theta are <= k - 2
        for tail in enumerate_partitions(k - 2, budget):
            assert tail.max_part <= k - 2
            w = tail.weight + n - k
            lam1 = i + 1 - h * w - tail.degree
            if lam1 < 0:
                continue
            mults = {u + 1: m for u, m in tail.items()}
            if lam1:
                mults[1] = lam1
            found.append(BasisElement(Partition(mults), k))
        if found:
            found.sort(key=BasisElement.sort_key)
            by_direction[k] = tuple(found)
    return LayerSet(i=i, by_direction=by_direction)


def enumerate_layer(ctx: RingContext, i: int) -> LayerSet:
    """Basis elements entering the chain exactly at level ``i >= 0``, grouped by direction."""
    if i < 0:
        raise ValueError(f"layers are indexed from 0, got {i}")
    return _layer(ctx.n, i)


def enumerate_chain_set(ctx: RingContext, i: int) -> frozenset[BasisElement]:
    if i < -1:
        raise ValueError(f"level index must be >= -1, got {i}")
    out = {derivation(k) for k in range(1, ctx.n + 1)}
    for j in range(0, i + 1):
        out.update(enumerate_layer(ctx, j).elements())
    return frozenset(out)


def period_map(ctx: RingContext, e: BasisElement) -> BasisElement:
    """Multiply by ``x1^(n - 1 - WD)``; defined for ``WD <= n - 1``."""
    w = wd(ctx, e)
    if w > ctx.n - 1:
        raise ValueError(f"period map undefined: WD({e}) = {w} > n-1 = {ctx.n - 1}")
    pad = ctx.n - 1 - w
    return BasisElement(e.partition.shifted({1: pad}) if pad else e.partition, e.direction)


def predicted_sizes(n: int, i: int) -> tuple[dict[int, int], int]:
    """Closed-form ``(|L_i cap B_k| by k, |L_i|)``, valid above the threshold."""
    if i <= threshold(n):
        raise ValueError(f"size formula needs i > (n-4)(n-1) = {threshold(n)}, got i={i}")
    r = decompose(n, i).r
    counts = partition_counts(n)
    by_k = {k: counts.b_at(r + k - n - 1) for k in range(1, n + 1)}
    return {k: v for k, v in by_k.items() if v}, counts.c_at(r - 1)
