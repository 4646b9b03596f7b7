"""Bundle calculus: Whitney sums, doubled bundles, the oracle ring, and the
splitting-principle cross-checks."""

import random
from itertools import combinations

import pytest

from charclass.bundlecalc import (
    ExtPoly,
    FormalBundle,
    cartan_restrict,
    chern_mod2,
    evaluate_class,
    ext_mul,
    fiber_bundle,
    pontrjagin_mod2,
    roots_bundle,
    sw,
    trivial_bundle,
    underlying_of_complexification,
    universal_bundle,
    whitney_sum,
)
from charclass.errors import CapsTooSmallError, NamespaceMismatchError
from charclass.verify import random_mod2
from charclass.wring import (
    ROOT,
    MPoly2,
    RingContext,
    constant_term,
    mul,
    reduce_poly,
    square,
    w,
)


def elementary_symmetric(k: int, m: int) -> MPoly2:
    """Brute-force e_k(r_1..r_m), the independent splitting-principle value."""
    if k == 0:
        return MPoly2.one(ROOT)
    keys = frozenset(
        tuple((i, 1) for i in combo) for combo in combinations(range(1, m + 1), k)
    )
    return MPoly2(keys, ROOT)


def test_universal_bundle_examples():
    assert str(universal_bundle(RingContext(rank_cap=2)).total) == "1 + w1 + w2"
    assert str(universal_bundle(RingContext(rank_cap=1)).total) == "1 + w1"
    assert str(universal_bundle(RingContext(degree_cap=0)).total) == "1"
    with pytest.raises(CapsTooSmallError):
        universal_bundle(RingContext())


def test_trivial_bundle():
    eps = trivial_bundle()
    assert str(eps.total) == "1"
    assert sw(eps, 1).is_zero()
    ctx = RingContext(degree_cap=6)
    b = universal_bundle(ctx)
    assert whitney_sum(eps, b, ctx) == FormalBundle(b.total, b.rank_bound)
    c = random_mod2(random.Random(3), 6)
    value = evaluate_class(c, eps)
    assert value == (MPoly2.one() if constant_term(c) else MPoly2.zero())


def test_fiber_bundle_examples():
    ctx = RingContext(degree_cap=2)
    f = fiber_bundle(ctx)
    assert str(f.total) == "1 + v1 + v2"
    big = RingContext(degree_cap=14)
    doubled = underlying_of_complexification(fiber_bundle(big), big)
    assert doubled.total == ExtPoly.one()
    assert fiber_bundle(big).total.w_part() == MPoly2.one()
    with pytest.raises(CapsTooSmallError):
        fiber_bundle(RingContext())


def test_whitney_sum_commutative_associative_unit():
    ctx = RingContext(degree_cap=8)
    a = universal_bundle(ctx)
    b = roots_bundle(3, ctx)
    with pytest.raises(NamespaceMismatchError):
        whitney_sum(a, b, ctx)  # roots and sw generators are different worlds
    f = fiber_bundle(ctx)
    assert whitney_sum(a, f, ctx).total == whitney_sum(f, a, ctx).total
    aa = whitney_sum(a, a, ctx)
    assert sw(aa, 1).is_zero()  # 2 w1 = 0
    left = whitney_sum(whitney_sum(f, a, ctx), a, ctx)
    right = whitney_sum(f, whitney_sum(a, a, ctx), ctx)
    assert left.total == right.total


def test_doubled_bundle_squares():
    ctx = RingContext(degree_cap=24, rank_cap=12)
    u = universal_bundle(ctx)
    uu = underlying_of_complexification(u, ctx)
    for n in range(1, 13):
        assert sw(uu, 2 * n) == square(sw(u, n), ctx)
        assert sw(uu, 2 * n + 1).is_zero()
    assert uu.rank_bound == 24


def test_chern_and_pontrjagin_mod2():
    ctx = RingContext(degree_cap=20)
    u = universal_bundle(ctx)
    assert chern_mod2(u, 1, ctx) == square(w(1))
    assert chern_mod2(u, 2, ctx) == square(w(2))
    assert pontrjagin_mod2(u, 1, ctx) == square(w(2))
    assert pontrjagin_mod2(u, 2, ctx) == square(w(4))
    eps = trivial_bundle()
    for k in (1, 2, 3):
        assert chern_mod2(eps, k, ctx).is_zero()
        assert pontrjagin_mod2(eps, k, ctx).is_zero()


def test_evaluate_class_examples():
    ctx = RingContext(degree_cap=8)
    u = universal_bundle(ctx)
    assert evaluate_class(square(w(2)), u, ctx) == square(w(2))
    f = fiber_bundle(ctx)
    assert evaluate_class(w(1), f, ctx) == ExtPoly.nu(1)
    with pytest.raises(NamespaceMismatchError):
        evaluate_class(MPoly2.gen(1, ROOT), u, ctx)


def test_cartan_restrict_examples():
    assert cartan_restrict(square(w(1))).is_zero()
    assert cartan_restrict(w(1) * w(2)) == ext_mul(ExtPoly.nu(1), ExtPoly.nu(2))
    assert cartan_restrict(square(w(1)) * w(3) + w(2)) == ExtPoly.nu(2)


def test_cartan_restrict_is_ring_hom():
    rng = random.Random(31)
    for _ in range(50):
        a = random_mod2(rng, 10)
        b = random_mod2(rng, 10)
        assert cartan_restrict(a + b) == cartan_restrict(a) + cartan_restrict(b)
        assert cartan_restrict(a * b) == ext_mul(cartan_restrict(a), cartan_restrict(b))


def test_cartan_kernel_characterization():
    rng = random.Random(32)
    for _ in range(50):
        a = random_mod2(rng, 12)
        in_kernel = cartan_restrict(a).is_zero()
        every_monomial_squared = all(
            any(e >= 2 for _, e in key) for key in a.monomials if key
        ) and constant_term(a) == 0
        assert in_kernel == every_monomial_squared


def test_exterior_generators_square_to_zero():
    v1 = ExtPoly.nu(1)
    assert ext_mul(v1, v1).is_zero()
    prod = ext_mul(ExtPoly.nu(2), ExtPoly.nu(3))
    assert not prod.is_zero()
    assert ext_mul(prod, ExtPoly.nu(2)).is_zero()


def test_roots_bundle_examples():
    b = roots_bundle(2)
    e1 = elementary_symmetric(1, 2)
    e2 = elementary_symmetric(2, 2)
    assert b.total == MPoly2.one(ROOT) + e1 + e2
    doubled = underlying_of_complexification(b)
    assert sw(doubled, 2) == square(e1)
    assert sw(roots_bundle(1), 2).is_zero()


def test_roots_classes_are_elementary_symmetric():
    for m in (2, 3, 5):
        b = roots_bundle(m)
        for k in range(m + 2):
            assert sw(b, k) == elementary_symmetric(k, m) if k <= m else sw(b, k).is_zero()


def test_root_oracle_agreement():
    rng = random.Random(33)
    for m in (2, 3, 4, 6):
        b = roots_bundle(m)
        for _ in range(8):
            c = random_mod2(rng, 8)
            truncated = reduce_poly(c, RingContext(rank_cap=m))
            assert evaluate_class(c, b) == evaluate_class(truncated, b)


def test_whitney_square_on_roots_matches_universal():
    # the same identity w_{2k}(xi + xi) = w_k(xi)^2, checked through the
    # independent root expansion prod(1 + r_i^2)
    m = 5
    b = roots_bundle(m)
    doubled = underlying_of_complexification(b)
    expected_total = MPoly2.one(ROOT)
    for i in range(1, m + 1):
        expected_total = mul(
            expected_total,
            MPoly2.one(ROOT) + square(MPoly2.gen(i, ROOT)),
        )
    assert doubled.total == expected_total
    for k in range(1, m + 1):
        assert sw(doubled, 2 * k) == square(elementary_symmetric(k, m))
        assert sw(doubled, 2 * k - 1).is_zero()


def test_formal_bundle_validation():
    with pytest.raises(ValueError):
        FormalBundle(w(1))  # constant term 0
    with pytest.raises(TypeError):
        FormalBundle("1 + w1")


def test_rank_bound_reads_zero_above():
    b = FormalBundle(MPoly2.one() + w(1) + w(2), rank_bound=2)
    assert sw(b, 3).is_zero()
    assert whitney_sum(b, b).rank_bound == 4
    assert underlying_of_complexification(b).rank_bound == 4


def test_ext_poly_printing():
    ctx = RingContext(degree_cap=3)
    fg = whitney_sum(fiber_bundle(ctx), universal_bundle(ctx), ctx)
    assert str(sw(fg, 2)) == "w2 + v1*w1 + v2"
