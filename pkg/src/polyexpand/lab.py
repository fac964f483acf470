"""Experiments on image growth |f(A,A)| over exact rational sets.

The centerpiece splits the solutions of f(x, y) = v into clean ones (no
proper subsum of f's terms vanishes at (x, y)) and dirty ones (some subsum
does), and audits two guaranteed bounds against brute force:

  * for every polynomial with at least two terms that is not of the form
    g(x^a y^b), at most degree + 1 values may collect more than
    degree^2 * 2^|support| dirty solutions;
  * on a distinct-products box G, monomial values at two non-parallel
    support exponents pin down (x, y) in G x G uniquely.

Around that sit the energy inequality check and growth sweeps that fit
log |f(A,A)| against log |A| over parameterized set families.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from math import comb, isqrt
from pathlib import Path

from .polynomials import (
    BivariatePoly,
    classify_monomial_composition,
    format_monomial,
    non_parallel_witnesses,
    zero_proper_subset_exists,
)
from .rational import format_rational, parse_rational
from .sets import (
    DEFAULT_MAX_PAIRS,
    RationalSet,
    check_budget,
    doubling_ratio,
    image_set,
    make_set,
    multiplicity_histogram,
    productset,
    read_set_file,
)
from .structure import (
    GGP,
    bound_log10,
    distinctness_check,
    ggp_enumerate,
    ggp_power,
    parse_ggp_spec,
    solve_exponent_system,
)


class ExceptionalPolynomialError(ValueError):
    """The polynomial has the g(x^a y^b) shape this operation refuses."""


class DistinctnessError(ValueError):
    """The box has colliding products, so exponent bookkeeping is ambiguous."""


@dataclass(frozen=True)
class SolutionSplit:
    """Clean/dirty counts for the solutions of f(x, y) = value in A x A."""

    value: Fraction
    clean: int
    dirty: int

    @property
    def multiplicity(self) -> int:
        return self.clean + self.dirty


@dataclass(frozen=True)
class AuditReport:
    """Per-value solution splits with the audited dirty-count bound.

    bad_values lists the values whose dirty count exceeds dirty_bound
    (= degree^2 * 2^support_size); consistent requires at most degree + 1
    of them. high_multiplicity lists values with more than threshold total
    solutions. theoretical_threshold_log10 is the log10 of the worst-case
    threshold amoroso_viada_bound(binom(degree+2, 2), floor(doubling)),
    far too large to be informative directly but reported for context.
    zero_value_full_sum_solutions counts clean solutions of f(x, y) = 0,
    where the full (improper) term sum vanishes: the one place where the
    proper-subsum convention and the any-subsum convention disagree.
    """

    degree: int
    support_size: int
    splits: tuple[SolutionSplit, ...]
    dirty_bound: int
    bad_values: tuple[Fraction, ...]
    max_bad_values: int
    consistent: bool
    threshold: int
    high_multiplicity: tuple[Fraction, ...]
    theoretical_threshold_log10: float
    zero_value_full_sum_solutions: int

    def total_pairs(self) -> int:
        return sum(split.multiplicity for split in self.splits)


@dataclass(frozen=True)
class EnergyCheck:
    """Exact energy versus its guaranteed lower bound |A|^4 / |f(A,A)|."""

    energy: int
    image_size: int
    lower_bound: Fraction
    holds: bool


@dataclass(frozen=True)
class SweepRow:
    N: int
    set_size: int
    productset_size: int
    doubling: Fraction
    image_size: int
    ratio: Fraction


@dataclass(frozen=True)
class ExpansionReport:
    """Per-size image statistics and the fitted log-log growth exponent."""

    family: str
    polynomial: str
    rows: tuple[SweepRow, ...]
    growth_exponent: float | None


def _require_nonzero(f: BivariatePoly) -> None:
    if f.is_zero:
        raise ValueError("the zero polynomial is not accepted here")


def _require_multiterm(f: BivariatePoly) -> None:
    _require_nonzero(f)
    if len(f.support) < 2:
        raise ExceptionalPolynomialError(
            f"f = {f} is a constant or single monomial, so every value is hit "
            "along whole exponent fibers; subsum splitting needs two or more terms"
        )


def _require_non_exceptional(f: BivariatePoly) -> tuple[tuple[int, int], tuple[int, int]]:
    """Refuse g(x^a y^b) shapes; return the first non-parallel witness pair."""
    _require_nonzero(f)
    decomposition = classify_monomial_composition(f)
    if decomposition is not None:
        raise ExceptionalPolynomialError(
            f"f = {f} equals g({format_monomial(decomposition.monomial)}) with "
            f"g(t) = {decomposition.g}; its image can grow linearly, so this "
            "operation refuses it"
        )
    witnesses = non_parallel_witnesses(f)
    assert witnesses is not None
    return witnesses


def _iter_pair_term_values(f: BivariatePoly, a: RationalSet):
    """Yield (x, y, term values at (x, y)) over A x A, reusing power tables."""
    support = f.support
    coefficients = [f.terms[pair] for pair in support]
    max_i = max(i for i, _ in support)
    max_j = max(j for _, j in support)
    y_pows = {}
    for y in a:
        pows = [Fraction(1)]
        for _ in range(max_j):
            pows.append(pows[-1] * y)
        y_pows[y] = pows
    for x in a:
        x_pows = [Fraction(1)]
        for _ in range(max_i):
            x_pows.append(x_pows[-1] * x)
        for y in a:
            yp = y_pows[y]
            yield x, y, [
                c * x_pows[i] * yp[j] for c, (i, j) in zip(coefficients, support)
            ]


def split_solutions(
    f: BivariatePoly,
    a: RationalSet,
    value: Fraction,
    max_pairs: int = DEFAULT_MAX_PAIRS,
) -> SolutionSplit:
    """Split the solutions of f(x, y) = value into clean and dirty pairs."""
    _require_multiterm(f)
    check_budget(len(a) ** 2, max_pairs, "solution split")
    clean = dirty = 0
    for _, _, values in _iter_pair_term_values(f, a):
        if sum(values) != value:
            continue
        if zero_proper_subset_exists(values):
            dirty += 1
        else:
            clean += 1
    return SolutionSplit(value=value, clean=clean, dirty=dirty)


def high_multiplicity_values(
    f: BivariatePoly,
    a: RationalSet,
    threshold: int,
    max_pairs: int = DEFAULT_MAX_PAIRS,
) -> tuple[Fraction, ...]:
    """Image values taken by more than threshold pairs, in increasing order."""
    _require_nonzero(f)
    histogram = multiplicity_histogram(f, a, max_pairs)
    return tuple(v for v, m in histogram.counts.items() if m > threshold)


def audit_vanishing_subsums(
    f: BivariatePoly,
    a: RationalSet,
    threshold: int | None = None,
    max_pairs: int = DEFAULT_MAX_PAIRS,
) -> AuditReport:
    """Tabulate clean/dirty splits for every image value and audit the bound.

    The audited claim: at most degree + 1 values may have a dirty count
    above degree^2 * 2^|support|. A report with consistent=False would
    falsify a guaranteed bound, i.e. expose a defect in this code.
    """
    _require_non_exceptional(f)
    check_budget(len(a) ** 2, max_pairs, "subsum audit")
    table: dict[Fraction, list[int]] = {}
    zero_full_sum = 0
    for _, _, values in _iter_pair_term_values(f, a):
        total = sum(values)
        entry = table.setdefault(total, [0, 0])
        if zero_proper_subset_exists(values):
            entry[1] += 1
        else:
            entry[0] += 1
            if total == 0:
                zero_full_sum += 1
    degree = f.degree
    support_size = len(f.support)
    dirty_bound = degree * degree * 2**support_size
    tau = dirty_bound if threshold is None else threshold
    splits = tuple(
        SolutionSplit(value=v, clean=c, dirty=d) for v, (c, d) in sorted(table.items())
    )
    bad = tuple(s.value for s in splits if s.dirty > dirty_bound)
    high = tuple(s.value for s in splits if s.multiplicity > tau)
    k_floor = max(1, math.floor(doubling_ratio(a)))
    return AuditReport(
        degree=degree,
        support_size=support_size,
        splits=splits,
        dirty_bound=dirty_bound,
        bad_values=bad,
        max_bad_values=degree + 1,
        consistent=len(bad) <= degree + 1,
        threshold=tau,
        high_multiplicity=high,
        theoretical_threshold_log10=bound_log10(comb(degree + 2, 2), k_floor),
        zero_value_full_sum_solutions=zero_full_sum,
    )


def audit_injectivity(
    f: BivariatePoly,
    g: GGP,
    t: int,
    max_pairs: int = DEFAULT_MAX_PAIRS,
) -> bool:
    """Check that two monomial values pin down (x, y) uniquely on G x G.

    Preconditions, each reported distinctly: f must not have the g(x^a y^b)
    shape (so two non-parallel support exponents exist), and the t-dilated
    box must have pairwise distinct products. The map
    (x, y) -> (x^i y^j, x^i' y^j') is then checked injective by brute-force
    comparison, and the exponent-system solver must reproduce every
    preimage from the value exponents alone.
    """
    (i, j), (i2, j2) = _require_non_exceptional(f)
    if not distinctness_check(g, t, max_pairs):
        raise DistinctnessError(
            f"products of {g.describe()} dilated by {t} collide; "
            "exponent vectors do not determine values"
        )
    members = ggp_enumerate(g, 1, max_pairs)
    check_budget(len(members) ** 2, max_pairs, "injectivity audit")
    seen: dict[tuple[Fraction, Fraction], tuple[tuple[int, ...], tuple[int, ...]]] = {}
    for mu, x in members:
        for nu, y in members:
            pair_of_values = (x**i * y**j, x**i2 * y**j2)
            previous = seen.get(pair_of_values)
            if previous is not None and previous != (mu, nu):
                return False
            seen[pair_of_values] = (mu, nu)
            t1 = tuple(i * mk + j * nk for mk, nk in zip(mu, nu))
            t2 = tuple(i2 * mk + j2 * nk for mk, nk in zip(mu, nu))
            if solve_exponent_system((i, j), (i2, j2), t1, t2) != (mu, nu):
                return False
    return True


def cauchy_schwarz_check(
    f: BivariatePoly, a: RationalSet, max_pairs: int = DEFAULT_MAX_PAIRS
) -> EnergyCheck:
    """Verify energy >= |A|^4 / |f(A,A)| exactly (true for every input)."""
    _require_nonzero(f)
    histogram = multiplicity_histogram(f, a, max_pairs)
    e = histogram.energy()
    image_size = len(histogram.counts)
    lower = Fraction(len(a) ** 4, image_size)
    return EnergyCheck(energy=e, image_size=image_size, lower_bound=lower, holds=e >= lower)


@dataclass(frozen=True)
class GeometricFamily:
    """Samples {q, q^2, ..., q^N} for a fixed rational ratio q."""

    ratio: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "ratio", Fraction(self.ratio))
        if self.ratio in (0, 1, -1):
            raise ValueError("geometric ratio must not be 0, 1, or -1")

    def describe(self) -> str:
        return f"geometric({format_rational(self.ratio)})"

    def sample(self, n: int, max_elements: int) -> RationalSet:
        check_budget(n, max_elements, "geometric family")
        powers = []
        value = Fraction(1)
        for _ in range(n):
            value *= self.ratio
            powers.append(value)
        return make_set(powers)


@dataclass(frozen=True)
class GGPFamily:
    """Samples the box with every dimension scaled by N."""

    base: GGP

    def describe(self) -> str:
        return f"ggp({self.base.describe()})"

    def sample(self, n: int, max_elements: int) -> RationalSet:
        scaled = GGP(self.base.generators, tuple(h * n for h in self.base.dims))
        return ggp_power(scaled, 1, max_elements)


@dataclass(frozen=True)
class FileFamily:
    """Fixed list of set files; sample N reads the N-th file (1-based)."""

    paths: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.paths:
            raise ValueError("a file family needs at least one path")

    def describe(self) -> str:
        return f"files({', '.join(Path(p).name for p in self.paths)})"

    def sample(self, n: int, max_elements: int) -> RationalSet:
        if not 1 <= n <= len(self.paths):
            raise ValueError(f"sample index {n} outside 1..{len(self.paths)}")
        a = read_set_file(self.paths[n - 1])
        check_budget(len(a), max_elements, "file family")
        return a


Family = GeometricFamily | GGPFamily | FileFamily


def parse_family(text: str) -> Family:
    """Parse "geometric:2", "ggp:2^[2]*3^[2]", or "files:a.txt,b.txt"."""
    kind, sep, rest = text.partition(":")
    if not sep:
        raise ValueError(f"family spec needs kind:detail, got {text!r}")
    if kind == "geometric":
        return GeometricFamily(parse_rational(rest))
    if kind == "ggp":
        return GGPFamily(parse_ggp_spec(rest))
    if kind == "files":
        paths = tuple(p.strip() for p in rest.split(",") if p.strip())
        return FileFamily(paths)
    raise ValueError(f"unknown family kind {kind!r}")


def _log_log_slope(points: Sequence[tuple[int, int]]) -> float | None:
    """Least-squares slope of log(size2) against log(size1)."""
    if len(points) < 2 or len({p[0] for p in points}) < 2:
        return None
    xs = [math.log(p[0]) for p in points]
    ys = [math.log(p[1]) for p in points]
    mean_x = sum(xs) / len(xs)
    mean_y = sum(ys) / len(ys)
    numerator = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    denominator = sum((x - mean_x) ** 2 for x in xs)
    return numerator / denominator


def expansion_sweep(
    f: BivariatePoly,
    family: Family,
    sizes: Sequence[int],
    allow_exceptional: bool = False,
    max_pairs: int = DEFAULT_MAX_PAIRS,
) -> ExpansionReport:
    """Exact per-size image statistics plus the fitted growth exponent.

    Polynomials of the g(x^a y^b) shape are refused by default because they
    are exactly the shapes whose images stay small; pass allow_exceptional
    (CLI --allow-exceptional) to measure them anyway.
    """
    _require_nonzero(f)
    if not sizes:
        raise ValueError("at least one sample size is required")
    if not allow_exceptional:
        decomposition = classify_monomial_composition(f)
        if decomposition is not None:
            raise ExceptionalPolynomialError(
                f"f = {f} equals g({format_monomial(decomposition.monomial)}) with "
                f"g(t) = {decomposition.g}, so its image growth is degenerate; "
                "pass allow_exceptional=True (--allow-exceptional) to sweep it anyway"
            )
    max_elements = max(1, isqrt(max_pairs))
    rows = []
    for n in sizes:
        if n < 1:
            raise ValueError(f"sample sizes must be positive, got {n}")
        a = family.sample(n, max_elements)
        image = image_set(f, a, max_pairs=max_pairs)
        rows.append(
            SweepRow(
                N=n,
                set_size=len(a),
                productset_size=len(productset(a, a)),
                doubling=doubling_ratio(a),
                image_size=len(image),
                ratio=Fraction(len(image), len(a) ** 2),
            )
        )
    exponent = _log_log_slope([(row.set_size, row.image_size) for row in rows])
    return ExpansionReport(
        family=family.describe(),
        polynomial=str(f),
        rows=tuple(rows),
        growth_exponent=exponent,
    )
