import random
from fractions import Fraction

import pytest

from genutil import random_poly, random_set
from polyexpand import (
    CapExceeded,
    RationalParseError,
    RationalSet,
    doubling_ratio,
    energy,
    image_set,
    make_set,
    multiplicity_histogram,
    parse_poly,
    productset,
    read_set_file,
    sumset,
)


def dyadic(n):
    return make_set([Fraction(2) ** k for k in range(1, n + 1)])


# Independent oracles: plain double/quadruple loops over evaluated pairs.


def naive_pair_values(f, a):
    return [f.evaluate(x, y) for x in a for y in a]


def naive_energy(f, a):
    values = naive_pair_values(f, a)
    return sum(1 for v in values for w in values if v == w)


def test_make_set_dedups():
    assert make_set([2, 2, 4]).elements == (Fraction(2), Fraction(4))


def test_make_set_sorts():
    assert make_set([8, 2, 4]).elements == (Fraction(2), Fraction(4), Fraction(8))


def test_make_set_singleton():
    assert make_set([Fraction(1, 2)]).elements == (Fraction(1, 2),)


def test_make_set_rejects_empty():
    with pytest.raises(ValueError):
        make_set([])


def test_make_set_rejects_floats():
    with pytest.raises(TypeError):
        make_set([0.5])


def test_rational_set_enforces_order():
    with pytest.raises(ValueError):
        RationalSet((Fraction(2), Fraction(1)))
    with pytest.raises(ValueError):
        RationalSet((Fraction(1), Fraction(1)))
    with pytest.raises(ValueError):
        RationalSet(())


def test_membership():
    a = make_set([1, 3, 5])
    assert Fraction(3) in a
    assert Fraction(2) not in a
    assert 5 in a


def test_sumset_small():
    a = make_set([1, 2])
    assert sumset(a, a) == make_set([2, 3, 4])


def test_sumset_dyadic():
    # 2^i + 2^j for i <= j have distinct bit patterns, so all N(N+1)/2
    # sums differ.
    a = dyadic(10)
    assert len(sumset(a, a)) == 55


def test_sumset_identity():
    assert sumset(make_set([0]), make_set([5])) == make_set([5])


def test_productset_small():
    a = make_set([2, 4, 8])
    assert productset(a, a) == make_set([4, 8, 16, 32, 64])


def test_productset_dyadic():
    assert len(productset(dyadic(10), dyadic(10))) == 19


def test_productset_singleton():
    one = make_set([1])
    assert productset(one, one) == one


def test_doubling_ratio():
    assert doubling_ratio(make_set([2, 4, 8])) == Fraction(5, 3)
    assert doubling_ratio(dyadic(10)) == Fraction(19, 10)
    assert doubling_ratio(make_set([1])) == 1


def test_set_ops_match_naive_loops():
    rng = random.Random(20240)
    for _ in range(20):
        a = random_set(rng, max_size=12)
        b = random_set(rng, max_size=12)
        assert sumset(a, b).elements == tuple(sorted({x + y for x in a for y in b}))
        assert productset(a, b).elements == tuple(sorted({x * y for x in a for y in b}))


def test_set_ops_match_naive_loops_at_50():
    rng = random.Random(20241)
    a = make_set([Fraction(rng.randint(-500, 500), rng.randint(1, 9)) for _ in range(80)][:50])
    b = make_set([Fraction(rng.randint(-500, 500), rng.randint(1, 9)) for _ in range(80)][:50])
    assert sumset(a, b).elements == tuple(sorted({x + y for x in a for y in b}))
    assert productset(a, b).elements == tuple(sorted({x * y for x in a for y in b}))


def test_image_single_monomial_dyadic():
    # The image exponents {2i + 3j : 1 <= i,j <= 10} cover [5, 50] except
    # 6 and 49, so 44 of the 46 integers in the range occur.
    f = parse_poly("x^2*y^3")
    assert len(image_set(f, dyadic(10))) == 44
    assert len(image_set(f, dyadic(3))) == 9


def test_image_composed_shape_dyadic():
    f = parse_poly("x*y + x^2*y^2")
    assert len(image_set(f, dyadic(10))) == 19


def test_image_asymmetric():
    f = parse_poly("x*y")
    assert image_set(f, make_set([1, 2]), make_set([3])) == make_set([3, 6])


def test_image_matches_histogram_keys():
    rng = random.Random(4097)
    for _ in range(10):
        a = random_set(rng, max_size=8)
        f = random_poly(rng, max_degree=3)
        assert image_set(f, a) == multiplicity_histogram(f, a).image()


def test_histogram_product_example():
    hist = multiplicity_histogram(parse_poly("x*y"), make_set([2, 4, 8]))
    assert dict(hist.counts) == {
        Fraction(4): 1,
        Fraction(8): 2,
        Fraction(16): 3,
        Fraction(32): 2,
        Fraction(64): 1,
    }


def test_histogram_two_elements():
    hist = multiplicity_histogram(parse_poly("x*y"), make_set([1, 2]))
    assert dict(hist.counts) == {Fraction(1): 1, Fraction(2): 2, Fraction(4): 1}


def test_histogram_projection():
    hist = multiplicity_histogram(parse_poly("x"), make_set([5]))
    assert dict(hist.counts) == {Fraction(5): 1}


def test_histogram_counts_sum_to_square():
    rng = random.Random(777)
    for _ in range(15):
        a = random_set(rng, max_size=10)
        f = random_poly(rng, max_degree=4)
        assert multiplicity_histogram(f, a).total_pairs() == len(a) ** 2


def test_energy_examples():
    assert energy(parse_poly("x*y"), make_set([2, 4, 8])) == 19
    assert energy(parse_poly("x*y"), make_set([1, 2])) == 6


def test_energy_singleton_is_one():
    rng = random.Random(5)
    for _ in range(5):
        f = random_poly(rng, max_degree=4)
        assert energy(f, make_set([Fraction(3, 7)])) == 1


def test_energy_matches_quadruple_oracle():
    rng = random.Random(90125)
    for _ in range(15):
        a = random_set(rng, max_size=12)
        f = random_poly(rng, max_degree=3)
        assert energy(f, a) == naive_energy(f, a)


def test_energy_lower_bounds():
    rng = random.Random(31337)
    for _ in range(15):
        a = random_set(rng, max_size=10)
        f = random_poly(rng, max_degree=4)
        e = energy(f, a)
        image = image_set(f, a)
        assert e >= Fraction(len(a) ** 4, len(image))
        assert e >= len(a) ** 2


def test_pair_cap_is_enforced():
    a = make_set([1, 2, 3])
    f = parse_poly("x*y")
    with pytest.raises(CapExceeded):
        image_set(f, a, max_pairs=8)
    with pytest.raises(CapExceeded):
        multiplicity_histogram(f, a, max_pairs=8)
    with pytest.raises(CapExceeded):
        energy(f, a, max_pairs=8)


def test_results_are_reproducible():
    a = dyadic(8)
    f = parse_poly("x*y + x^2*y^3")
    first = multiplicity_histogram(f, a)
    second = multiplicity_histogram(f, a)
    assert first == second
    assert list(first.counts) == list(second.counts)


def test_read_set_file(tmp_path):
    path = tmp_path / "a.txt"
    path.write_text("# a sample set\n2\n\n4/2\n-0.5\n8\n", encoding="utf-8")
    assert read_set_file(path) == make_set([2, Fraction(-1, 2), 8])


def test_read_set_file_reports_line(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("1\n2\nnot-a-number\n", encoding="utf-8")
    with pytest.raises(RationalParseError, match="line 3"):
        read_set_file(path)


def test_read_set_file_rejects_empty(tmp_path):
    path = tmp_path / "empty.txt"
    path.write_text("# nothing here\n\n", encoding="utf-8")
    with pytest.raises(ValueError):
        read_set_file(path)


def test_read_set_file_missing():
    with pytest.raises(FileNotFoundError):
        read_set_file("/nonexistent/set.txt")
