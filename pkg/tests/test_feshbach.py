"""Feshbach presentation: index sets, the formal integral ring, rho, and the
six relation families."""

import random

import pytest

from charclass.errors import CapsTooSmallError, InvalidIndexSetError
from charclass.feshbach import (
    HALF,
    IndexSet,
    IntClass,
    int_add,
    int_mul,
    relation,
    rho,
    torsion_equal,
    verify_relations,
)
from charclass.steenrod import sq1
from charclass.wring import MPoly2, RingContext, mono_degree, mul, square, w


def test_doubled_encoding():
    assert IndexSet.of("1/2").doubled == (1,)
    assert IndexSet.of(HALF).doubled == (1,)
    assert IndexSet.of(1).doubled == (2,)
    assert IndexSet.of(3, "1/2", 1).doubled == (1, 2, 6)
    with pytest.raises(InvalidIndexSetError):
        IndexSet.of()
    with pytest.raises(InvalidIndexSetError):
        IndexSet([3])  # doubled 3 encodes 3/2, not a legal index
    with pytest.raises(InvalidIndexSetError):
        IndexSet.of(0)


def test_index_set_degree():
    assert IndexSet.of("1/2").degree() == 2
    assert IndexSet.of(2).degree() == 5
    assert IndexSet.of("1/2", 1, 2).degree() == 8  # 1 + (1 + 2 + 4)


def test_validity_at_rank():
    assert IndexSet.of(1).valid_at(2)
    assert not IndexSet.of(2).valid_at(2)  # k=2 needs 0 < k < 3/2
    assert IndexSet.of(2).valid_at(4)
    assert not IndexSet.of("1/2", 2).valid_at(4)  # both 1/2 and n/2
    assert IndexSet.of("1/2", 2).valid_at(5)
    assert IndexSet.of("1/2", 2).valid_at(None)
    assert IndexSet.of("1/2").valid_at(1)


def test_two_torsion_built_in():
    v = IntClass.V(["1/2"])
    assert int_add(v, v).is_zero()
    p1 = IntClass.p(1)
    assert str(int_add(p1, p1)) == "2*p1"
    assert int_add(int_add(p1, v), v) == p1


def test_formal_products():
    p1v = int_mul(IntClass.p(1), IntClass.V([1]))
    assert str(p1v) == "p1*V{1}"
    doubled = int_mul(IntClass.integer(2), IntClass.V([1]))
    assert doubled.is_zero()
    sq = int_mul(IntClass.V([1]), IntClass.V([1]))
    assert str(sq) == "V{1}^2"


def test_int_mul_validates_rank():
    with pytest.raises(InvalidIndexSetError):
        int_mul(IntClass.V([2]), IntClass.p(1), n=2)


def test_rho_on_generators():
    assert rho(IntClass.V(["1/2"])) == square(w(1))
    assert rho(IntClass.V([1])) == w(1) * w(2) + w(3)
    assert rho(IntClass.p(1)) == square(w(2))
    assert rho(IntClass.p(2)) == square(w(4))
    assert rho(IntClass.integer(3)) == MPoly2.one()
    assert rho(IntClass.integer(2)).is_zero()


def test_rho_matches_sq1_of_even_class_product():
    for doubled in [(1,), (2,), (1, 4), (2, 4, 6)]:
        iset = IndexSet(doubled)
        base = MPoly2(frozenset({tuple((d, 1) for d in doubled)}))
        assert rho(IntClass.V(iset)) == sq1(base)


def test_rho_is_ring_hom():
    rng = random.Random(41)
    samples = [_random_intclass(rng) for _ in range(30)]
    ctx = RingContext(degree_cap=40)
    for a, b in zip(samples, samples[1:]):
        assert rho(int_add(a, b), ctx) == rho(a, ctx) + rho(b, ctx)
        assert rho(int_mul(a, b, ctx=ctx), ctx) == mul(rho(a, ctx), rho(b, ctx), ctx)


def _random_intclass(rng) -> IntClass:
    out = IntClass.zero()
    for _ in range(rng.randint(1, 3)):
        term = IntClass.integer(rng.randint(-2, 3))
        for _ in range(rng.randint(0, 2)):
            if rng.random() < 0.5:
                term = int_mul(term, IntClass.p(rng.randint(1, 3)))
            else:
                pool = [1, 2, 4]
                size = rng.randint(1, 2)
                term = int_mul(term, IntClass.V(IndexSet(rng.sample(pool, size))))
        out = int_add(out, term)
    return out


def test_rho_homogeneity():
    for doubled in [(1,), (2,), (4,), (1, 2), (2, 6), (1, 4, 6)]:
        iset = IndexSet(doubled)
        image = rho(IntClass.V(iset))
        assert not image.is_zero()
        assert {mono_degree(k) for k in image.monomials} == {iset.degree()}


def test_rho_structure_without_half():
    # for I free of the half index, Leibniz gives one w_{2i} -> w_{2i+1}
    # shift per element, plus the monomial w1 * prod w_{2i} once per element
    # (so it survives exactly when |I| is odd)
    for doubled in [(2,), (2, 6), (2, 4, 8)]:
        image = rho(IntClass.V(IndexSet(doubled)))
        base = {d: 1 for d in doubled}
        expected = set()
        if len(doubled) % 2:
            expected.add(tuple(sorted({1: 1, **base}.items())))
        for d in doubled:
            shifted = dict(base)
            del shifted[d]
            shifted[d + 1] = shifted.get(d + 1, 0) + 1
            expected.add(tuple(sorted(shifted.items())))
        assert image.monomials == frozenset(expected)


def test_torsion_equal_relation6_instance():
    a = int_mul(IntClass.V(["1/2"]), IntClass.p(1))
    b = int_mul(IntClass.V([1]), IntClass.V([1]))
    assert torsion_equal(a, b, RingContext(degree_cap=12, rank_cap=2))
    assert not torsion_equal(a, b, RingContext(degree_cap=12))  # stably distinct


def test_torsion_equal_basics():
    assert not torsion_equal(IntClass.V([1]), IntClass.V([2]), RingContext(20))
    x = int_add(IntClass.p(2), IntClass.V([1]))
    assert torsion_equal(x, x, RingContext(20))
    assert not torsion_equal(IntClass.p(1), IntClass.p(2), RingContext(20))


def test_torsion_equal_refuses_small_caps():
    with pytest.raises(CapsTooSmallError):
        torsion_equal(IntClass.V([3]), IntClass.V([3]), RingContext(degree_cap=4))


def test_torsion_equal_validates_rank():
    with pytest.raises(InvalidIndexSetError):
        torsion_equal(
            IntClass.V([3]), IntClass.V([3]), RingContext(degree_cap=20, rank_cap=2)
        )


def test_torsion_equal_is_an_equivalence():
    rng = random.Random(43)
    ctx = RingContext(degree_cap=40, rank_cap=8)
    samples = [_random_intclass(rng) for _ in range(12)]
    for x in samples:
        assert torsion_equal(x, x, ctx)
    for x in samples:
        for y in samples:
            assert torsion_equal(x, y, ctx) == torsion_equal(y, x, ctx)
    for x in samples:
        for y in samples:
            for z in samples:
                if torsion_equal(x, y, ctx) and torsion_equal(y, z, ctx):
                    assert torsion_equal(x, z, ctx)


def test_torsion_equal_invariant_under_relations():
    rng = random.Random(42)
    ctx = RingContext(degree_cap=40, rank_cap=8)
    lhss = [
        relation(2, IndexSet.of("1/2", 1), IndexSet.of("1/2", 2), n=8),
        relation(5, IndexSet.of("1/2", 1, 2), n=8),
        relation(6, n=8),
    ]
    for _ in range(10):
        x = _random_intclass(rng)
        for lhs in lhss:
            assert torsion_equal(x, int_add(x, lhs), ctx)


def test_int_ring_axioms_random():
    rng = random.Random(44)
    samples = [_random_intclass(rng) for _ in range(12)]
    zero = IntClass.zero()
    one = IntClass.integer(1)
    for a in samples:
        assert int_add(a, zero) == a
        assert int_mul(a, one) == a
        assert int_add(a, a.negate()).torsion == frozenset()
        assert not int_add(a, a.negate()).free
    for a, b in zip(samples, samples[1:]):
        assert int_add(a, b) == int_add(b, a)
        assert int_mul(a, b) == int_mul(b, a)
    for a, b, c in zip(samples, samples[1:], samples[2:]):
        assert int_mul(int_mul(a, b), c) == int_mul(a, int_mul(b, c))
        assert int_mul(a, int_add(b, c)) == int_add(int_mul(a, b), int_mul(a, c))


def test_relation_side_conditions():
    with pytest.raises(ValueError):
        relation(2, IndexSet.of(1), IndexSet.of(1, 2), n=8)  # |I| must exceed 1
    with pytest.raises(ValueError):
        relation(3, IndexSet.of(1, 2), IndexSet.of(1, 2), n=8)  # not proper
    with pytest.raises(ValueError):
        relation(4, IndexSet.of(1, 2), IndexSet.of(2, 3), n=8)  # not disjoint
    with pytest.raises(ValueError):
        relation(4, IndexSet.of(2, 3), IndexSet.of("1/2", 1), n=8)  # tie rule
    with pytest.raises(ValueError):
        relation(6, n=5)  # odd rank
    with pytest.raises(ValueError):
        relation(7, IndexSet.of(1, 2))


def test_relation_trivial_cases():
    assert relation(1, IndexSet.of(2, 3)).is_zero()
    assert relation(5, IndexSet.of(1, 2), n=8).is_zero()  # V_a V_b + V_b V_a


def test_relation6_example():
    lhs = relation(6, n=2)
    assert str(lhs) == "V{1}^2 + p1*V{1/2}"
    assert rho(lhs, RingContext(12, 2)).is_zero()
    assert rho(lhs, RingContext(12)) == square(w(3))


def test_verify_relations_small_ranks():
    assert verify_relations(2, 12).ok()
    assert verify_relations(3, 16).ok()
    tiny = verify_relations(2, 4)  # cap below every relation degree
    assert not tiny.cases


def test_verify_relations_sweep():
    for n in range(2, 9):
        report = verify_relations(n, 24)
        assert report.ok(), str(report)


def test_relation_convention_splits_half_with_midrank():
    # relation 4 at rank 6 produces the set {1/2, 2, 3}, which must split as
    # V_{{3}} * V_{{2}}
    lhs = relation(4, IndexSet.of("1/2", 1), IndexSet.of(2, 3), n=6)
    assert rho(lhs, RingContext(degree_cap=40, rank_cap=6)).is_zero()
    for _, v_key in lhs.torsion:
        for ds, _ in v_key:
            assert IndexSet(ds).valid_at(6)
