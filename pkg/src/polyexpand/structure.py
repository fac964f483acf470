"""Multiplicative structure of rational sets.

Nonzero rationals factor into sign times a prime-exponent vector, so a set
of them spans an integer lattice whose rank measures how few independent
generators suffice multiplicatively. This module computes that rank by
integer row reduction, models geometric-progression boxes
g1^[H1] * ... * gr^[Hr] with their dilated boxes, solves the 2x2 exponent
systems that make monomial values determine their arguments, and evaluates
the explicit unit-equation bound of Amoroso and Viada.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .rational import format_rational, parse_rational
from .sets import RationalSet, check_budget, make_set

DEFAULT_TRIAL_BOUND = 1_000_000
DEFAULT_MAX_ELEMENTS = 1_000_000

# Witness set making Miller-Rabin deterministic below 3.317e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for base in _MR_BASES:
        x = pow(base, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _int_nth_root(n: int, k: int) -> int:
    """Largest r with r^k <= n."""
    if k == 1:
        return n
    hi = 1 << ((n.bit_length() + k - 1) // k + 1)
    lo = 0
    while lo < hi - 1:
        mid = (lo + hi) // 2
        if mid**k <= n:
            lo = mid
        else:
            hi = mid
    return lo


def _split_cofactor(n: int) -> dict[int, int]:
    """Handle a cofactor whose factors all exceed the trial bound.

    Primes pass through, perfect powers are reduced to their base, and any
    remaining composite is kept whole as an ad-hoc generator.
    """
    if _is_probable_prime(n):
        return {n: 1}
    for k in range(2, n.bit_length() + 1):
        root = _int_nth_root(n, k)
        if root > 1 and root**k == n:
            return {base: exp * k for base, exp in _split_cofactor(root).items()}
    return {n: 1}


def _factor_positive_int(n: int, trial_bound: int) -> dict[int, int]:
    """Base -> exponent map for n >= 1 via trial division plus cofactor care."""
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 5
    while d <= trial_bound and d * d <= n:
        for p in (d, d + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        d += 6
    if n > 1:
        for base, exp in _split_cofactor(n).items():
            out[base] = out.get(base, 0) + exp
    return out


@dataclass(frozen=True)
class FactoredElement:
    """Sign and base -> exponent vector whose product recovers the rational.

    Bases are primes, except for composite cofactors beyond the trial bound
    that are not perfect powers; those are kept whole as ad-hoc generators.
    Two such cofactors sharing a hidden prime factor would be treated as
    independent, so ranks computed from them are only as good as the trial
    bound.
    """

    sign: int
    exponents: tuple[tuple[int, int], ...]

    def as_dict(self) -> dict[int, int]:
        return dict(self.exponents)


def factorize(q: Fraction, trial_bound: int = DEFAULT_TRIAL_BOUND) -> FactoredElement:
    """Exact factorization of a nonzero rational into sign * prod(base^exp)."""
    if q == 0:
        raise ValueError("0 has no multiplicative factorization")
    exponents = _factor_positive_int(abs(q.numerator), trial_bound)
    for base, exp in _factor_positive_int(q.denominator, trial_bound).items():
        exponents[base] = exponents.get(base, 0) - exp
    cleaned = tuple(sorted((b, e) for b, e in exponents.items() if e != 0))
    return FactoredElement(sign=1 if q > 0 else -1, exponents=cleaned)


def reconstruct(element: FactoredElement) -> Fraction:
    """Inverse of factorize."""
    value = Fraction(element.sign)
    for base, exp in element.exponents:
        value *= Fraction(base) ** exp
    return value


def _integer_rank(matrix: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix via Euclidean row reduction to echelon form."""
    rows = [list(row) for row in matrix if any(row)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        while True:
            live = [i for i in range(rank, len(rows)) if rows[i][col] != 0]
            if not live:
                break
            smallest = min(live, key=lambda i: abs(rows[i][col]))
            rows[rank], rows[smallest] = rows[smallest], rows[rank]
            pivot = rows[rank][col]
            finished = True
            for i in range(rank + 1, len(rows)):
                if rows[i][col] != 0:
                    quotient = rows[i][col] // pivot
                    rows[i] = [a - quotient * b for a, b in zip(rows[i], rows[rank])]
                    if rows[i][col] != 0:
                        finished = False
            if finished:
                rank += 1
                break
    return rank


def multiplicative_rank(a: RationalSet, trial_bound: int = DEFAULT_TRIAL_BOUND) -> int:
    """Rank of the exponent lattice spanned by a's elements (signs ignored).

    {q, q^2, ...} has rank 1, multiplicatively independent elements add
    rank, and {1} (or {-1, 1}) has rank 0. The set must not contain 0.
    """
    if Fraction(0) in a:
        raise ValueError("0 is not in any multiplicative group; drop it first")
    factored = [factorize(v, trial_bound) for v in a]
    bases = sorted({base for el in factored for base, _ in el.exponents})
    index = {base: k for k, base in enumerate(bases)}
    rows = []
    for el in factored:
        row = [0] * len(bases)
        for base, exp in el.exponents:
            row[index[base]] = exp
        rows.append(row)
    return _integer_rank(rows)


@dataclass(frozen=True)
class GGP:
    """Geometric-progression box g1^[H1] * ... * gr^[Hr].

    Holds the exponent boxes {0, ..., Hi - 1} per generator; dilating by t
    scales each box to {0, ..., t*Hi - 1}. Generators must be positive
    rationals other than 1. r = 0 gives the singleton {1}.
    """

    generators: tuple[Fraction, ...]
    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "generators", tuple(Fraction(g) for g in self.generators))
        object.__setattr__(self, "dims", tuple(int(h) for h in self.dims))
        if len(self.generators) != len(self.dims):
            raise ValueError("one box dimension is needed per generator")
        for g in self.generators:
            if g <= 0 or g == 1:
                raise ValueError(f"generators must be positive and not 1, got {g}")
        for h in self.dims:
            if h < 1:
                raise ValueError(f"box dimensions must be positive, got {h}")

    @property
    def rank(self) -> int:
        return len(self.generators)

    def box_size(self, t: int = 1) -> int:
        size = 1
        for h in self.dims:
            size *= t * h
        return size

    def describe(self) -> str:
        if not self.generators:
            return "1"
        return " * ".join(
            f"{format_rational(g)}^[{h}]" for g, h in zip(self.generators, self.dims)
        )


def parse_ggp_spec(text: str) -> GGP:
    """Parse a box spec: '*'-separated g^[H] chunks, e.g. "2^[4] * 3/2^[4]"."""
    generators = []
    dims = []
    for chunk in text.split("*"):
        part = chunk.strip()
        if not part:
            raise ValueError(f"empty generator chunk in {text!r}")
        head, caret, tail = part.partition("^")
        if caret != "^" or not (tail.startswith("[") and tail.endswith("]")):
            raise ValueError(f"expected generator^[dimension], got {part!r}")
        generators.append(parse_rational(head))
        dim_text = tail[1:-1].strip()
        if not dim_text.isdigit():
            raise ValueError(f"box dimension must be an unsigned integer, got {tail!r}")
        dims.append(int(dim_text))
    return GGP(tuple(generators), tuple(dims))


def ggp_enumerate(
    g: GGP, t: int = 1, max_elements: int = DEFAULT_MAX_ELEMENTS
) -> list[tuple[tuple[int, ...], Fraction]]:
    """All (exponent vector, product value) pairs of the t-dilated box.

    Exponent vectors run in lexicographic order, values may repeat; the
    list has exactly prod(t * Hi) entries.
    """
    if t < 1:
        raise ValueError("dilation factor must be a positive integer")
    check_budget(g.box_size(t), max_elements, "box enumeration")
    members: list[tuple[tuple[int, ...], Fraction]] = [((), Fraction(1))]
    for generator, h in zip(g.generators, g.dims):
        width = t * h
        powers = [Fraction(1)]
        for _ in range(width - 1):
            powers.append(powers[-1] * generator)
        members = [
            (exponents + (e,), value * powers[e])
            for exponents, value in members
            for e in range(width)
        ]
    return members


def ggp_power(g: GGP, t: int, max_elements: int = DEFAULT_MAX_ELEMENTS) -> RationalSet:
    """The set of products of the t-dilated box, deduplicated."""
    return make_set(value for _, value in ggp_enumerate(g, t, max_elements))


def distinctness_check(g: GGP, t: int, max_elements: int = DEFAULT_MAX_ELEMENTS) -> bool:
    """True when all prod(t * Hi) products of the t-dilated box are distinct."""
    return len(ggp_power(g, t, max_elements)) == g.box_size(t)


class ParallelVectorsError(ValueError):
    """The two exponent vectors are rational multiples of each other."""


def solve_exponent_system(
    v1: tuple[int, int],
    v2: tuple[int, int],
    t1: Sequence[int],
    t2: Sequence[int],
) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Solve i*x_k + j*y_k = t1_k, i'*x_k + j'*y_k = t2_k per coordinate.

    Non-parallel (v1, v2) make the rational solution unique; it is returned
    only when every coordinate is an integer, else None. Parallel vectors
    are a precondition violation, reported distinctly from "no integer
    solution".
    """
    (i, j), (i2, j2) = v1, v2
    determinant = i * j2 - j * i2
    if determinant == 0:
        raise ParallelVectorsError(f"exponent vectors {v1} and {v2} are parallel")
    if len(t1) != len(t2):
        raise ValueError("target vectors must have the same length")
    xs = []
    ys = []
    for a, b in zip(t1, t2):
        x_num = a * j2 - b * j
        y_num = i * b - i2 * a
        if x_num % determinant or y_num % determinant:
            return None
        xs.append(x_num // determinant)
        ys.append(y_num // determinant)
    return tuple(xs), tuple(ys)


@dataclass(frozen=True)
class BoundValue:
    """Exact value of (8n)^(4 n^4 (n + n r + 1)) with a float log10."""

    n: int
    r: int
    value: int = field(repr=False)
    log10: float


def amoroso_viada_bound(n: int, r: int) -> BoundValue:
    """Amoroso-Viada bound on nondegenerate unit-equation solutions.

    Bounds the solutions of a_1 z_1 + ... + a_n z_n = 1 with the z_i in a
    multiplicative group of rank r and no vanishing subsum on the left.
    The log10 approximation is good to float precision (far beyond six
    significant digits).
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    if r < 0:
        raise ValueError("r must be a non-negative integer")
    exponent = 4 * n**4 * (n + n * r + 1)
    return BoundValue(n=n, r=r, value=(8 * n) ** exponent, log10=bound_log10(n, r))


def bound_log10(n: int, r: int) -> float:
    """log10 of the bound without materializing the (possibly huge) integer."""
    return 4 * n**4 * (n + n * r + 1) * math.log10(8 * n)
