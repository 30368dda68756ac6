"""The integral Lie ring of partitions Lie(n).

Basis elements are ``x^L d_k`` with ``L`` a partition whose parts are all
``< k``. The bracket of two basis elements is zero or an integer multiple of a
single basis element:

    [x^L d_k, x^T d_j] =  L_j * x^(L - e_j + T) d_k    if j < k
                       = -T_k * x^(L + T - e_k) d_j    if j > k
                       =  0                            if j == k

where ``L_j`` is the multiplicity of part ``j`` in ``L``. This is the negative
of the textbook vector-field commutator; the sign convention is kept as is.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping, Optional

from .partitions import EMPTY, Partition, enumerate_partitions


class ContextError(ValueError):
    """Element used outside the ring context it belongs to."""


@dataclass(frozen=True)
class RingContext:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 3:
            raise ValueError(f"rank n must be an integer >= 3, got {self.n!r}")


@dataclass(frozen=True)
class BasisElement:
    partition: Partition
    direction: int

    def __post_init__(self):
        if self.direction < 1:
            raise ValueError(f"direction must be >= 1, got {self.direction}")
        if self.partition.max_part > self.direction - 1:
            raise ValueError(
                f"part {self.partition.max_part} exceeds direction bound k-1={self.direction - 1}"
            )

    @property
    def weight(self) -> int:
        return self.partition.weight

    @property
    def degree(self) -> int:
        return self.partition.degree

    def sort_key(self):
        return (self.direction, self.partition.weight, self.partition.vector())

    def __lt__(self, other: BasisElement) -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return _monomial_str(self)

    def __repr__(self) -> str:
        return f"BasisElement({_monomial_str(self)})"


def derivation(k: int) -> BasisElement:
    return BasisElement(EMPTY, k)


def basis(vector_or_map, k: int) -> BasisElement:
    """Shorthand: ``basis({1: 2, 2: 1}, 4)`` or ``basis((2, 1), 4)`` is x1^2*x2*d4."""
    if isinstance(vector_or_map, Partition):
        p = vector_or_map
    elif isinstance(vector_or_map, Mapping):
        p = Partition(vector_or_map)
    else:
        p = Partition.from_vector(vector_or_map)
    return BasisElement(p, k)


def check_element(ctx: RingContext, e: BasisElement) -> None:
    if e.direction > ctx.n:
        raise ContextError(f"{e} has direction {e.direction} > n={ctx.n}")


def basis_enumerate(ctx: RingContext, max_weight: int) -> list[BasisElement]:
    """Basis elements with weight <= max_weight, ordered by direction then partition."""
    out = []
    for k in range(1, ctx.n + 1):
        out.extend(BasisElement(p, k) for p in enumerate_partitions(k - 1, max_weight))
    return out


BracketResult = Optional[tuple[int, BasisElement]]


def bracket_basis(ctx: RingContext, left: BasisElement, right: BasisElement) -> BracketResult:
    """Bracket of two basis elements; ``None`` stands for zero."""
    check_element(ctx, left)
    check_element(ctx, right)
    k, j = left.direction, right.direction
    if j < k:
        coeff = left.partition.multiplicity(j)
        if not coeff:
            return None
        delta = dict(right.partition.items())
        delta[j] = delta.get(j, 0) - 1
        return coeff, BasisElement(left.partition.shifted(delta), k)
    if j > k:
        coeff = right.partition.multiplicity(k)
        if not coeff:
            return None
        delta = dict(left.partition.items())
        delta[k] = delta.get(k, 0) - 1
        return -coeff, BasisElement(right.partition.shifted(delta), j)
    return None


class RingElement:
    """Sparse integer combination of basis elements. Immutable; zero is the empty map."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[BasisElement, int] | Iterable[tuple[BasisElement, int]] = ()):
        pairs = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[BasisElement, int] = {}
        for e, c in pairs:
            acc[e] = acc.get(e, 0) + c
        self._terms = {e: c for e, c in acc.items() if c}

    @classmethod
    def of(cls, e: BasisElement, coeff: int = 1) -> RingElement:
        return cls({e: coeff})

    @property
    def terms(self) -> dict[BasisElement, int]:
        return dict(self._terms)

    def support(self) -> set[BasisElement]:
        return set(self._terms)

    def coefficient(self, e: BasisElement) -> int:
        return self._terms.get(e, 0)

    def sorted_terms(self) -> list[tuple[BasisElement, int]]:
        return sorted(self._terms.items(), key=lambda t: t[0].sort_key())

    def is_zero(self) -> bool:
        return not self._terms

    def __iter__(self) -> Iterator[tuple[BasisElement, int]]:
        return iter(self.sorted_terms())

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: RingElement) -> RingElement:
        if not isinstance(other, RingElement):
            return NotImplemented
        return RingElement(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> RingElement:
        return RingElement({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: RingElement) -> RingElement:
        return self + (-other)

    def __rmul__(self, scalar: int) -> RingElement:
        if not isinstance(scalar, int):
            return NotImplemented
        return RingElement({e: scalar * c for e, c in self._terms.items()})

    __mul__ = __rmul__

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RingElement) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        return f"RingElement({print_element(self)!r})"

    def __str__(self) -> str:
        return print_element(self)


ZERO = RingElement()


def bracket(
    ctx: RingContext,
    x: RingElement,
    y: RingElement,
    bracket_fn: Callable[[RingContext, BasisElement, BasisElement], BracketResult] = bracket_basis,
) -> RingElement:
    """Bilinear extension of the basis bracket."""
    acc: dict[BasisElement, int] = {}
    for a, ca in x._terms.items():
        check_element(ctx, a)
        for b, cb in y._terms.items():
            res = bracket_fn(ctx, a, b)
            if res is not None:
                coeff, e = res
                acc[e] = acc.get(e, 0) + ca * cb * coeff
    return RingElement(acc)


def in_span(x: RingElement, h: Iterable[BasisElement]) -> bool:
    allowed = h if isinstance(h, (set, frozenset)) else set(h)
    return all(e in allowed for e in x._terms)


# --- text format -------------------------------------------------------------


class ElementSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class ElementSemanticError(ValueError):
    pass


def _monomial_str(e: BasisElement) -> str:
    factors = [f"x{p}" if m == 1 else f"x{p}^{m}" for p, m in e.partition.items()]
    factors.append(f"d{e.direction}")
    return "*".join(factors)


def print_element(x: RingElement) -> str:
    terms = x.sorted_terms()
    if not terms:
        return "0"
    chunks = []
    for idx, (e, c) in enumerate(terms):
        mag = abs(c)
        body = _monomial_str(e) if mag == 1 else f"{mag}*{_monomial_str(e)}"
        if idx == 0:
            chunks.append(body if c > 0 else f"-{body}")
        else:
            chunks.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(chunks)


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str):
        if self.peek() != ch:
            found = repr(self.peek()) if self.peek() else "end of input"
            raise ElementSyntaxError(f"expected {ch!r}, found {found}", self.pos)
        self.pos += 1

    def uint(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            found = repr(self.text[start]) if start < len(self.text) else "end of input"
            raise ElementSyntaxError(f"expected unsigned integer, found {found}", start)
        return int(self.text[start:self.pos])


def _parse_term(ctx: RingContext, tok: _Tokens) -> tuple[int, BasisElement]:
    start = tok.pos
    coeff = 1
    if tok.peek().isdigit():
        coeff = tok.uint()
        tok.take("*")
    exps: dict[int, int] = {}
    while True:
        ch = tok.peek()
        if ch == "x":
            tok.pos += 1
            var = tok.uint()
            if not 1 <= var <= ctx.n:
                raise ElementSemanticError(f"variable index x{var} out of range 1..{ctx.n}")
            exp = 1
            if tok.peek() == "^":
                tok.pos += 1
                exp = tok.uint()
            exps[var] = exps.get(var, 0) + exp
            tok.take("*")
        elif ch == "d":
            tok.pos += 1
            k = tok.uint()
            if not 1 <= k <= ctx.n:
                raise ElementSemanticError(f"derivation index d{k} out of range 1..{ctx.n}")
            break
        else:
            found = repr(ch) if ch else "end of input"
            raise ElementSyntaxError(f"expected 'x' or 'd', found {found}", tok.pos)
    part = Partition(exps)
    if part.max_part > k - 1:
        text = tok.text[start:tok.pos].strip()
        raise ElementSemanticError(
            f"part exceeds direction bound in {text!r}: x{part.max_part} with d{k}"
        )
    return coeff, BasisElement(part, k)


def parse_element(ctx: RingContext, text: str) -> RingElement:
    """Parse e.g. ``"3*x1^2*x2*d4 - d1"``; a lone ``"0"`` is the zero element."""
    if text.strip() == "0":
        return ZERO
    tok = _Tokens(text)
    terms: list[tuple[BasisElement, int]] = []
    sign = 1
    if tok.peek() == "-":
        tok.pos += 1
        sign = -1
    while True:
        coeff, e = _parse_term(ctx, tok)
        terms.append((e, sign * coeff))
        ch = tok.peek()
        if ch == "":
            break
        if ch not in "+-":
            raise ElementSyntaxError(f"expected '+', '-' or end of input, found {ch!r}", tok.pos)
        sign = 1 if ch == "+" else -1
        tok.pos += 1
    return RingElement(terms)
