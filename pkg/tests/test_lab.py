import math
import random
from fractions import Fraction

import pytest

from genutil import random_nonexceptional_poly, random_set
from polyexpand import (
    GGP,
    CapExceeded,
    DistinctnessError,
    ExceptionalPolynomialError,
    FileFamily,
    GeometricFamily,
    GGPFamily,
    audit_injectivity,
    audit_vanishing_subsums,
    cauchy_schwarz_check,
    expansion_sweep,
    high_multiplicity_values,
    make_set,
    multiplicity_histogram,
    parse_family,
    parse_poly,
    split_solutions,
)


def dyadic(n):
    return make_set([Fraction(2) ** k for k in range(1, n + 1)])


def test_split_solutions_clean_only():
    split = split_solutions(parse_poly("x^2 - y^2"), make_set([1, 2, 3]), Fraction(3))
    assert (split.clean, split.dirty) == (1, 0)


def test_split_solutions_diagonal_value_zero():
    # x^2 - y^2 = 0 on the diagonal: the proper subsums x^2 and -y^2 are
    # nonzero there, so all three solutions are clean
    split = split_solutions(parse_poly("x^2 - y^2"), make_set([1, 2, 3]), Fraction(0))
    assert (split.clean, split.dirty) == (3, 0)


def test_split_solutions_positive_terms():
    split = split_solutions(parse_poly("x + y"), make_set([1, 2]), Fraction(3))
    assert (split.clean, split.dirty) == (2, 0)


def test_split_solutions_detects_dirty_pairs():
    # at (1, -1) the subsum x^2 + x*y vanishes, so that solution is dirty
    f = parse_poly("x^2 + x*y - y^2")
    value = f.evaluate(Fraction(1), Fraction(-1))
    split = split_solutions(f, make_set([-1, 1]), value)
    assert split.dirty >= 1


def test_split_solutions_refuses_single_monomial():
    with pytest.raises(ExceptionalPolynomialError):
        split_solutions(parse_poly("x^2*y^3"), make_set([1, 2]), Fraction(32))


def test_split_solutions_allows_composed_shapes_with_two_terms():
    # only constants and single monomials are refused; g(x*y) shapes with
    # two terms still have meaningful subsums. f(1,2) = f(2,1) = 6, clean.
    split = split_solutions(parse_poly("x*y + x^2*y^2"), make_set([1, 2]), Fraction(6))
    assert (split.clean, split.dirty) == (2, 0)


def test_split_matches_histogram():
    rng = random.Random(555)
    for _ in range(10):
        f = random_nonexceptional_poly(rng, max_degree=3, max_terms=4)
        a = random_set(rng, max_size=6, nonzero=True)
        hist = multiplicity_histogram(f, a)
        for value, count in hist.counts.items():
            split = split_solutions(f, a, value)
            assert split.multiplicity == count


def test_high_multiplicity_values():
    f = parse_poly("x*y")
    a = make_set([2, 4, 8])
    assert high_multiplicity_values(f, a, 2) == (Fraction(16),)
    assert high_multiplicity_values(f, a, 3) == ()
    assert high_multiplicity_values(f, a, len(a) ** 2) == ()


def test_audit_consistent_on_random_set():
    rng = random.Random(909)
    a = random_set(rng, max_size=20, nonzero=True)
    report = audit_vanishing_subsums(parse_poly("x^2 - y^2"), a)
    assert report.consistent
    assert report.total_pairs() == len(a) ** 2
    assert report.dirty_bound == 4 * 2**2
    assert report.max_bad_values == 3


def test_audit_dyadic_has_no_dirty_solutions():
    report = audit_vanishing_subsums(parse_poly("x*y + x^2*y^3"), dyadic(8))
    assert report.consistent
    assert all(split.dirty == 0 for split in report.splits)


def test_audit_positive_linear():
    report = audit_vanishing_subsums(parse_poly("x + y"), make_set([1, 2]))
    assert report.consistent
    assert all(split.dirty == 0 for split in report.splits)
    assert report.total_pairs() == 4


def test_audit_refuses_composed_shapes():
    with pytest.raises(ExceptionalPolynomialError):
        audit_vanishing_subsums(parse_poly("x*y + x^2*y^2"), make_set([1, 2]))


def test_audit_counts_split_by_value():
    rng = random.Random(4242)
    f = random_nonexceptional_poly(rng, max_degree=3, max_terms=4)
    a = random_set(rng, max_size=8, nonzero=True)
    report = audit_vanishing_subsums(f, a)
    hist = multiplicity_histogram(f, a)
    assert {s.value: s.multiplicity for s in report.splits} == dict(hist.counts)
    assert [s.value for s in report.splits] == sorted(hist.counts)


def test_audit_threshold_override():
    report = audit_vanishing_subsums(parse_poly("x*y + x^2"), make_set([2, 4, 8]), threshold=1)
    hist = multiplicity_histogram(parse_poly("x*y + x^2"), make_set([2, 4, 8]))
    expected = tuple(v for v, m in hist.counts.items() if m > 1)
    assert report.threshold == 1
    assert report.high_multiplicity == expected


def test_audit_reports_full_sum_convention_gap():
    # f = 0 has eight clean solutions on {-2,-1,1,2}; under an
    # any-nonempty-subsum convention they would all count dirty
    a = make_set([-2, -1, 1, 2])
    report = audit_vanishing_subsums(parse_poly("x^2 - y^2"), a)
    zero_split = [s for s in report.splits if s.value == 0]
    assert zero_split and zero_split[0].clean == 8
    assert report.zero_value_full_sum_solutions == 8


def test_audit_theoretical_threshold_scale():
    report = audit_vanishing_subsums(parse_poly("x + y"), make_set([1, 2]))
    # degree 1, doubling 3/2 -> floor K = 1, so the context bound is the
    # unit-equation constant at (3, 1)
    assert report.theoretical_threshold_log10 == pytest.approx(
        4 * 3**4 * (3 + 3 + 1) * math.log10(24)
    )


def test_audit_is_deterministic():
    f = parse_poly("x^2 - y^2 + x*y")
    a = make_set([-3, -1, 2, 5, 7])
    assert audit_vanishing_subsums(f, a) == audit_vanishing_subsums(f, a)


def test_audit_pair_cap():
    with pytest.raises(CapExceeded):
        audit_vanishing_subsums(parse_poly("x + y"), make_set([1, 2, 3]), max_pairs=4)


def test_injectivity_single_generator():
    assert audit_injectivity(parse_poly("x*y + x^2*y^3"), GGP((Fraction(2),), (3,)), 5)


def test_injectivity_two_generators():
    g = GGP((Fraction(2), Fraction(3)), (2, 2))
    assert audit_injectivity(parse_poly("x*y + x^2*y^3"), g, 5)


def test_injectivity_refuses_composed_shapes():
    with pytest.raises(ExceptionalPolynomialError):
        audit_injectivity(parse_poly("x*y + x^2*y^2"), GGP((Fraction(2),), (3,)), 5)


def test_injectivity_requires_distinct_products():
    with pytest.raises(DistinctnessError):
        audit_injectivity(
            parse_poly("x + y"), GGP((Fraction(2), Fraction(4)), (3, 3)), 1
        )


def test_cauchy_schwarz_examples():
    check = cauchy_schwarz_check(parse_poly("x*y"), make_set([2, 4, 8]))
    assert (check.energy, check.image_size) == (19, 5)
    assert check.lower_bound == Fraction(81, 5)
    assert check.holds

    check = cauchy_schwarz_check(parse_poly("x*y"), make_set([1, 2]))
    assert check.energy == 6
    assert check.lower_bound == Fraction(16, 3)
    assert check.holds

    check = cauchy_schwarz_check(parse_poly("x^3 - y"), make_set([9]))
    assert check.energy == 1
    assert check.lower_bound == 1
    assert check.holds


def test_sweep_additive_row():
    report = expansion_sweep(parse_poly("x + y"), GeometricFamily(Fraction(2)), [10])
    row = report.rows[0]
    assert (row.set_size, row.productset_size, row.image_size) == (10, 19, 55)
    assert row.doubling == Fraction(19, 10)
    assert row.ratio == Fraction(55, 100)
    assert report.growth_exponent is None


def test_sweep_additive_growth_exponent():
    report = expansion_sweep(
        parse_poly("x + y"), GeometricFamily(Fraction(2)), [8, 16, 32, 64]
    )
    assert report.growth_exponent == pytest.approx(2.0, abs=0.1)
    for row in report.rows:
        assert row.ratio == Fraction(row.N * (row.N + 1), 2 * row.N**2)
        assert 0 < row.ratio <= 1


def test_sweep_refuses_composed_shapes_by_default():
    with pytest.raises(ExceptionalPolynomialError, match="allow_exceptional"):
        expansion_sweep(parse_poly("x*y + x^2*y^2"), GeometricFamily(Fraction(2)), [8])


def test_sweep_override_composed_shape():
    report = expansion_sweep(
        parse_poly("x*y + x^2*y^2"),
        GeometricFamily(Fraction(2)),
        [8, 16, 32, 64],
        allow_exceptional=True,
    )
    assert [row.image_size for row in report.rows] == [15, 31, 63, 127]
    assert report.growth_exponent == pytest.approx(1.0, abs=0.1)


def test_sweep_override_single_monomial():
    # image exponents 2i + 3j on 1..10 miss 6 and 49 out of [5, 50]
    report = expansion_sweep(
        parse_poly("x^2*y^3"), GeometricFamily(Fraction(2)), [10], allow_exceptional=True
    )
    assert report.rows[0].image_size == 44


def test_geometric_family_rejects_degenerate_ratio():
    with pytest.raises(ValueError):
        GeometricFamily(Fraction(1))
    with pytest.raises(ValueError):
        GeometricFamily(Fraction(0))


def test_ggp_family_scales_dims():
    family = GGPFamily(GGP((Fraction(2), Fraction(3)), (1, 1)))
    assert family.sample(2, 10_000) == make_set([1, 2, 3, 6])
    report = expansion_sweep(parse_poly("x + y"), family, [1, 2, 3])
    assert [row.set_size for row in report.rows] == [1, 4, 9]


def test_file_family(tmp_path):
    paths = []
    for index, size in enumerate((2, 3)):
        path = tmp_path / f"set{index}.txt"
        path.write_text("\n".join(str(2**k) for k in range(1, size + 1)), encoding="utf-8")
        paths.append(str(path))
    family = FileFamily(tuple(paths))
    report = expansion_sweep(parse_poly("x + y"), family, [1, 2])
    assert [row.set_size for row in report.rows] == [2, 3]
    with pytest.raises(ValueError):
        family.sample(3, 100)


def test_parse_family():
    assert parse_family("geometric:2") == GeometricFamily(Fraction(2))
    assert parse_family("ggp:2^[2] * 3^[2]") == GGPFamily(
        GGP((Fraction(2), Fraction(3)), (2, 2))
    )
    assert parse_family("files:a.txt, b.txt") == FileFamily(("a.txt", "b.txt"))
    with pytest.raises(ValueError):
        parse_family("geometric")
    with pytest.raises(ValueError):
        parse_family("arithmetic:2")


def test_sweep_rejects_zero_polynomial():
    with pytest.raises(ValueError):
        expansion_sweep(parse_poly("0"), GeometricFamily(Fraction(2)), [4])


def test_sweep_determinism():
    family = GeometricFamily(Fraction(3, 2))
    first = expansion_sweep(parse_poly("x + y^2"), family, [4, 8])
    second = expansion_sweep(parse_poly("x + y^2"), family, [4, 8])
    assert first == second
