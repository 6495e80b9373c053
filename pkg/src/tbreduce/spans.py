"""Semiopen circular intervals (a, b] on the time axis Z_n."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

__all__ = [
    "Span",
    "interval_contains",
    "span_length",
    "span_includes",
    "span_shift",
    "span_of_word",
    "check_distinct_endpoints",
]


@dataclass(frozen=True, order=True)
class Span:
    """The interval (a, b] on Z_n.

    The closed interval [a, b] runs a, a+1, ..., b modulo n.  It is
    conventional when a <= b and circular otherwise.  A span of length n
    has b = a - 1 (mod n) and is flagged by ``is_full``.
    """

    a: int
    b: int
    n: int

    def __post_init__(self):
        if self.n <= 1:
            raise ValueError(f"axis length must be at least 2, got {self.n}")
        object.__setattr__(self, "a", self.a % self.n)
        object.__setattr__(self, "b", self.b % self.n)

    @property
    def conventional(self) -> bool:
        return self.a <= self.b

    @property
    def length(self) -> int:
        return (self.b - self.a) % self.n + 1

    @property
    def is_full(self) -> bool:
        return self.length == self.n

    def closed_members(self) -> list[int]:
        return [(self.a + t) % self.n for t in range(self.length)]

    @cached_property
    def _mask(self) -> int:
        m = 0
        for j in self.closed_members()[1:]:
            m |= 1 << j
        return m

    def mask(self) -> int:
        """Bitmask of the semiopen set (a, b]."""
        return self._mask

    def contains(self, j: int) -> bool:
        if not 0 <= j < self.n:
            raise ValueError(f"index {j} outside Z_{self.n}")
        return 0 < (j - self.a) % self.n < self.length

    def includes(self, inner: "Span") -> bool:
        """True iff inner is a proper subset of self."""
        if inner.n != self.n:
            raise ValueError("spans live on different axes")
        mi, mo = inner.mask(), self.mask()
        return mi & ~mo == 0 and mi != mo

    def shift(self, j: int, direction: str = "right") -> "Span":
        if direction not in ("left", "right"):
            raise ValueError("direction must be 'left' or 'right'")
        step = j if direction == "right" else -j
        return Span(self.a + step, self.b + step, self.n)

    def reversed(self) -> "Span":
        return Span(self.b, self.a, self.n)

    def __str__(self):
        return f"({self.a}, {self.b}]"


def interval_contains(s: Span, j: int) -> bool:
    return s.contains(j)


def span_length(s: Span) -> int:
    return s.length


def span_includes(outer: Span, inner: Span) -> bool:
    return outer.includes(inner)


def span_shift(s: Span, j: int, direction: str = "right") -> Span:
    return s.shift(j, direction)


def span_of_word(x: int, n: int) -> Span:
    """Conventional span (first one, last one] of a nonzero word."""
    if x == 0:
        raise ValueError("the zero word has no span")
    return Span((x & -x).bit_length() - 1, x.bit_length() - 1, n)


def check_distinct_endpoints(spans: Iterable[Span]) -> bool:
    spans = list(spans)
    return len({s.a for s in spans}) == len(spans) and len({s.b for s in spans}) == len(spans)
