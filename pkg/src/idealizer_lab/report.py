"""Rank tables of the chain and their JSON / CSV / text renderings."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Optional

from .grading import decompose, enumerate_layer, predicted_sizes, threshold
from .lie import BasisElement, RingContext
from .oracle import OracleConfig, oracle_chain

METHODS = ("analytic", "oracle", "both")


def _by_direction(elements) -> dict[int, list[BasisElement]]:
    out: dict[int, list[BasisElement]] = {}
    for e in sorted(elements, key=BasisElement.sort_key):
        out.setdefault(e.direction, []).append(e)
    return out


@dataclass
class LevelRecord:
    i: int
    h: int
    r: int
    by_k: dict[int, int]
    total: int
    predicted_by_k: Optional[dict[int, int]] = None
    predicted_total: Optional[int] = None
    oracle_total: Optional[int] = None
    match_oracle: Optional[bool] = None
    elements: Optional[dict[int, list[str]]] = None
    # per-direction oracle counts; CSV only, not part of the JSON schema
    oracle_by_k: Optional[dict[int, int]] = field(default=None, compare=False)

    @property
    def match_prediction(self) -> Optional[bool]:
        if self.predicted_by_k is None:
            return None
        return self.predicted_by_k == self.by_k and self.predicted_total == self.total

    def to_dict(self) -> dict:
        def keyed(d):
            return None if d is None else {str(k): v for k, v in sorted(d.items())}

        return {
            "i": self.i,
            "h": self.h,
            "r": self.r,
            "by_k": keyed(self.by_k),
            "total": self.total,
            "predicted_by_k": keyed(self.predicted_by_k),
            "predicted_total": self.predicted_total,
            "oracle_total": self.oracle_total,
            "match_oracle": self.match_oracle,
            "elements": keyed(self.elements),
        }

    @classmethod
    def from_dict(cls, d: dict) -> LevelRecord:
        def unkeyed(m):
            return None if m is None else {int(k): v for k, v in m.items()}

        return cls(
            i=d["i"],
            h=d["h"],
            r=d["r"],
            by_k=unkeyed(d["by_k"]),
            total=d["total"],
            predicted_by_k=unkeyed(d["predicted_by_k"]),
            predicted_total=d["predicted_total"],
            oracle_total=d["oracle_total"],
            match_oracle=d["match_oracle"],
            elements=unkeyed(d.get("elements")),
        )


@dataclass
class ChainReport:
    n: int
    levels: list[LevelRecord]

    @property
    def oracle_mismatch(self) -> bool:
        return any(rec.match_oracle is False for rec in self.levels)

    @property
    def prediction_mismatch(self) -> bool:
        return any(rec.match_prediction is False for rec in self.levels)

    def to_dict(self) -> dict:
        return {"n": self.n, "levels": [rec.to_dict() for rec in self.levels]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> ChainReport:
        d = json.loads(text)
        return cls(n=d["n"], levels=[LevelRecord.from_dict(x) for x in d["levels"]])

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "i", "h", "r", "k", "count", "predicted", "oracle", "match"])
        for rec in self.levels:
            ks = set(rec.by_k) | set(rec.predicted_by_k or {}) | set(rec.oracle_by_k or {})
            for k in sorted(ks):
                pred = "" if rec.predicted_by_k is None else rec.predicted_by_k.get(k, 0)
                orc = "" if rec.oracle_by_k is None else rec.oracle_by_k.get(k, 0)
                match = "" if rec.oracle_by_k is None else str(orc == rec.by_k.get(k, 0)).lower()
                w.writerow([self.n, rec.i, rec.h, rec.r, k, rec.by_k.get(k, 0), pred, orc, match])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"n = {self.n}", "   i   h   r  total  predicted  oracle  match  by_k"]
        for rec in self.levels:
            pred = "-" if rec.predicted_total is None else str(rec.predicted_total)
            orc = "-" if rec.oracle_total is None else str(rec.oracle_total)
            match = "-" if rec.match_oracle is None else ("yes" if rec.match_oracle else "NO")
            by_k = " ".join(f"{k}:{v}" for k, v in sorted(rec.by_k.items()))
            lines.append(f"{rec.i:4d} {rec.h:3d} {rec.r:3d} {rec.total:6d} {pred:>10} {orc:>7} {match:>6}  {by_k}")
            if rec.match_prediction is False:
                lines.append(f"      ! prediction mismatch: predicted {rec.predicted_by_k}")
            if rec.elements is not None:
                for k, elems in sorted(rec.elements.items()):
                    lines.append(f"      k={k}: {', '.join(elems)}")
        return "\n".join(lines) + "\n"


def build_chain_report(
    n: int,
    i_max: int,
    method: str = "analytic",
    margin: int = 0,
    elements: bool = False,
) -> ChainReport:
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")
    if i_max < 0:
        raise ValueError("i_max must be >= 0")
    ctx = RingContext(n)
    oracle_layers = None
    if method in ("oracle", "both"):
        chain = oracle_chain(ctx, i_max, OracleConfig(weight_cap_margin=margin))
        oracle_layers = [_by_direction(chain[i + 1] - chain[i]) for i in range(0, i_max + 1)]
    levels = []
    for i in range(0, i_max + 1):
        idx = decompose(n, i)
        if method == "oracle":
            layer = oracle_layers[i]
        else:
            layer = {k: list(v) for k, v in enumerate_layer(ctx, i).by_direction.items()}
        by_k = {k: len(v) for k, v in sorted(layer.items())}
        rec = LevelRecord(i=i, h=idx.h, r=idx.r, by_k=by_k, total=sum(by_k.values()))
        if i > threshold(n):
            rec.predicted_by_k, rec.predicted_total = predicted_sizes(n, i)
        if oracle_layers is not None:
            olayer = oracle_layers[i]
            rec.oracle_by_k = {k: len(v) for k, v in sorted(olayer.items())}
            rec.oracle_total = sum(rec.oracle_by_k.values())
            if method == "both":
                rec.match_oracle = olayer == layer
        if elements:
            rec.elements = {k: [str(e) for e in v] for k, v in sorted(layer.items())}
        levels.append(rec)
    return ChainReport(n=n, levels=levels)
