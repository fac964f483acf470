"""Finite rational sets and the exact pair-space aggregation engine.

Sumsets, product sets, polynomial image sets, multiplicity histograms and
polynomial energies are computed by streaming the |A| x |B| pair space into
hash maps keyed by exact values, so energies cost O(|A|^2) pair work rather
than O(|A|^4) quadruple work. Nothing here touches floating point: equal
values always hash together and deduplicate exactly.
"""

from __future__ import annotations

import bisect
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .polynomials import BivariatePoly
from .rational import RationalParseError, format_rational, parse_rational

DEFAULT_MAX_PAIRS = 100_000_000


class CapExceeded(RuntimeError):
    """An enumeration would exceed the configured resource budget."""


def check_budget(count: int, cap: int, what: str) -> None:
    if count > cap:
        raise CapExceeded(f"{what} needs {count} steps, above the cap of {cap}")


@dataclass(frozen=True)
class RationalSet:
    """Strictly increasing tuple of distinct exact rationals."""

    elements: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.elements:
            raise ValueError("a set must contain at least one element")
        for a, b in zip(self.elements, self.elements[1:]):
            if not a < b:
                raise ValueError("elements must be strictly increasing and distinct")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.elements)

    def __contains__(self, value: object) -> bool:
        index = bisect.bisect_left(self.elements, value)
        return index < len(self.elements) and self.elements[index] == value

    def __str__(self) -> str:
        return "{" + ", ".join(format_rational(v) for v in self.elements) + "}"


def make_set(values: Iterable[Fraction | int]) -> RationalSet:
    """Sort and deduplicate exact values into a RationalSet."""
    out = set()
    for value in values:
        if isinstance(value, float):
            raise TypeError("floats are not exact; parse a decimal string instead")
        out.add(Fraction(value))
    if not out:
        raise ValueError("cannot build a set from no values")
    return RationalSet(tuple(sorted(out)))


def read_set_file(path: str | Path) -> RationalSet:
    """Read a set file: one element per line, '#' comments and blanks ignored."""
    values = []
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                values.append(parse_rational(line))
            except RationalParseError as exc:
                raise RationalParseError(f"{path}, line {lineno}: {exc}") from exc
    if not values:
        raise ValueError(f"{path}: no elements found")
    return make_set(values)


def sumset(a: RationalSet, b: RationalSet) -> RationalSet:
    """{x + y : x in a, y in b}, deduplicated."""
    return make_set(x + y for x in a for y in b)


def productset(a: RationalSet, b: RationalSet) -> RationalSet:
    """{x * y : x in a, y in b}, deduplicated."""
    return make_set(x * y for x in a for y in b)


def doubling_ratio(a: RationalSet) -> Fraction:
    """|AA| / |A|, exactly; small values witness multiplicative structure."""
    return Fraction(len(productset(a, a)), len(a))


def image_set(
    f: BivariatePoly,
    a: RationalSet,
    b: RationalSet | None = None,
    max_pairs: int = DEFAULT_MAX_PAIRS,
) -> RationalSet:
    """The set of distinct values f(x, y) over a x b (b defaults to a)."""
    b = a if b is None else b
    check_budget(len(a) * len(b), max_pairs, "image enumeration")
    values = set()
    for x in a:
        row = f.substitute_x(x)
        for y in b:
            values.add(row.evaluate(y))
    return RationalSet(tuple(sorted(values)))


@dataclass(frozen=True)
class MultiplicityHistogram:
    """Map from each image value to its number of representing pairs.

    Keys ascend and are exactly the image set; counts sum to |A| * |A| for
    the generating set.
    """

    counts: Mapping[Fraction, int]

    def total_pairs(self) -> int:
        return sum(self.counts.values())

    def image(self) -> RationalSet:
        return RationalSet(tuple(self.counts))

    def multiplicity(self, value: Fraction) -> int:
        return self.counts.get(value, 0)

    def energy(self) -> int:
        return sum(m * m for m in self.counts.values())


def multiplicity_histogram(
    f: BivariatePoly, a: RationalSet, max_pairs: int = DEFAULT_MAX_PAIRS
) -> MultiplicityHistogram:
    """Count, for every value v, the pairs (x, y) in a x a with f(x, y) = v."""
    check_budget(len(a) ** 2, max_pairs, "pair histogram")
    counts: dict[Fraction, int] = {}
    for x in a:
        row = f.substitute_x(x)
        for y in a:
            value = row.evaluate(y)
            counts[value] = counts.get(value, 0) + 1
    return MultiplicityHistogram(dict(sorted(counts.items())))


def energy(f: BivariatePoly, a: RationalSet, max_pairs: int = DEFAULT_MAX_PAIRS) -> int:
    """Number of quadruples (x, y, x', y') in a^4 with f(x, y) = f(x', y').

    Computed as the sum of squared multiplicities, never by walking a^4.
    """
    return multiplicity_histogram(f, a, max_pairs).energy()
