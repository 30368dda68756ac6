"""Integer partitions stored as sparse part -> multiplicity maps, plus counting.

A partition is immutable and hashable. The canonical order used everywhere in
the package is weight-major, then lexicographic on the multiplicity vector
``(lambda_1, lambda_2, ...)`` read from part 1 upward.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping


class Partition:
    """Finite multiset of positive parts.

    >>> p = Partition({1: 2, 3: 1})
    >>> p.weight, p.degree, p.max_part
    (5, 3, 3)
    """

    __slots__ = ("_items", "_hash", "weight", "degree")

    def __init__(self, multiplicities: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        pairs = multiplicities.items() if isinstance(multiplicities, Mapping) else multiplicities
        acc: dict[int, int] = {}
        for part, mult in pairs:
            if not isinstance(part, int) or not isinstance(mult, int):
                raise TypeError(f"parts and multiplicities must be int, got {part!r}:{mult!r}")
            if part < 1:
                raise ValueError(f"part must be positive, got {part}")
            if mult < 0:
                raise ValueError(f"multiplicity must be non-negative, got {mult}")
            if mult:
                acc[part] = acc.get(part, 0) + mult
        items = tuple(sorted(acc.items()))
        self._items = items
        self._hash = hash(items)
        self.weight = sum(p * m for p, m in items)
        self.degree = sum(m for _, m in items)

    @classmethod
    def from_parts(cls, parts: Iterable[int]) -> Partition:
        """Build from a list of parts with repetition, e.g. ``[3, 1, 1]``."""
        acc: dict[int, int] = {}
        for p in parts:
            acc[p] = acc.get(p, 0) + 1
        return cls(acc)

    @classmethod
    def from_vector(cls, vector: Iterable[int]) -> Partition:
        """Build from ``(lambda_1, lambda_2, ...)``."""
        return cls((j, m) for j, m in enumerate(vector, start=1) if m)

    @property
    def max_part(self) -> int:
        return self._items[-1][0] if self._items else 0

    def items(self) -> tuple[tuple[int, int], ...]:
        return self._items

    def multiplicity(self, part: int) -> int:
        for p, m in self._items:
            if p == part:
                return m
            if p > part:
                break
        return 0

    def vector(self, length: int | None = None) -> tuple[int, ...]:
        """Dense multiplicity vector, zero-padded to ``length`` (default: max part)."""
        size = self.max_part if length is None else length
        if size < self.max_part:
            raise ValueError(f"length {size} shorter than max part {self.max_part}")
        out = [0] * size
        for p, m in self._items:
            out[p - 1] = m
        return tuple(out)

    def shifted(self, delta: Mapping[int, int]) -> Partition:
        """Return the partition with ``delta[part]`` added to each multiplicity.

        Raises ValueError if a multiplicity would become negative.
        """
        acc = dict(self._items)
        for part, d in delta.items():
            m = acc.get(part, 0) + d
            if m < 0:
                raise ValueError(f"multiplicity of part {part} would become {m}")
            acc[part] = m
        return Partition(acc)

    def __add__(self, other: Partition) -> Partition:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.shifted(dict(other._items))

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (self.weight, self.vector())

    def __lt__(self, other: Partition) -> bool:
        return self.sort_key() < other.sort_key()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Partition) and self._items == other._items

    def __hash__(self) -> int:
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._items)

    def __repr__(self) -> str:
        return f"Partition({dict(self._items)!r})"


EMPTY = Partition()


def weight(p: Partition) -> int:
    return p.weight


def degree(p: Partition) -> int:
    return p.degree


def max_part(p: Partition) -> int:
    return p.max_part


def _vectors(max_part: int, max_weight: int):
    # all multiplicity vectors of length max_part with sum(j * v_j) <= max_weight
    if max_part == 0:
        yield ()
        return
    for rest in _vectors(max_part - 1, max_weight):
        used = sum((j + 1) * v for j, v in enumerate(rest))
        for m in range((max_weight - used) // max_part + 1):
            yield rest + (m,)


@lru_cache(maxsize=256)
def _enumerate(max_part: int, max_weight: int) -> tuple[Partition, ...]:
    parts = [Partition.from_vector(v) for v in _vectors(max_part, max_weight)]
    parts.sort(key=Partition.sort_key)
    return tuple(parts)


def enumerate_partitions(max_part: int, max_weight: int) -> list[Partition]:
    """All partitions with every part <= ``max_part`` and weight <= ``max_weight``.

    The empty partition is included; output is in canonical order.
    """
    if max_part < 0 or max_weight < 0:
        return [EMPTY] if max_weight >= 0 else []
    return list(_enumerate(max_part, max_weight))


def restricted_counts(max_part: int, max_n: int) -> list[int]:
    """Number of partitions of each ``w <= max_n`` into parts <= ``max_part`` (coin DP)."""
    table = [1] + [0] * max_n
    for part in range(1, max_part + 1):
        for w in range(part, max_n + 1):
            table[w] += table[w - part]
    return table


@dataclass(frozen=True)
class CountTriple:
    """Partition numbers ``a``, their partial sums ``b`` and second partial sums ``c``."""

    a: tuple[int, ...]
    b: tuple[int, ...]
    c: tuple[int, ...]

    def b_at(self, index: int) -> int:
        """``b[index]``, with negative indices counting as zero."""
        return 0 if index < 0 else self.b[index]

    def c_at(self, index: int) -> int:
        return 0 if index < 0 else self.c[index]


def _cumsum(seq: Iterable[int]) -> tuple[int, ...]:
    out, total = [], 0
    for v in seq:
        total += v
        out.append(total)
    return tuple(out)


@lru_cache(maxsize=32)
def partition_counts(max_n: int) -> CountTriple:
    if max_n < 0:
        raise ValueError("max_n must be non-negative")
    a = tuple(restricted_counts(max_n, max_n))
    b = _cumsum(a)
    return CountTriple(a=a, b=b, c=_cumsum(b))


class BFileError(ValueError):
    """Malformed OEIS b-file; ``lineno`` is 1-based."""

    def __init__(self, message: str, lineno: int):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def parse_bfile(text: str) -> dict[int, int]:
    seq: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise BFileError(f"expected 'index value', got {raw!r}", lineno)
        try:
            index, value = int(fields[0]), int(fields[1])
        except ValueError:
            raise BFileError(f"non-integer field in {raw!r}", lineno) from None
        if index in seq:
            raise BFileError(f"duplicate index {index}", lineno)
        seq[index] = value
    return seq


def load_bfile(path: str | Path) -> dict[int, int]:
    return parse_bfile(Path(path).read_text())


def bundled_bfile_path(name: str = "A000041") -> Path:
    return Path(str(resources.files("idealizer_lab") / "data" / f"{name}.bfile"))
