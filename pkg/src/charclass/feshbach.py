"""The integral cohomology ring of the real classifying space, presented by
Pontrjagin generators p_i (degree 4i, free part) and 2-torsion generators
V_I indexed by finite nonempty sets of half-integers, with the reduction

    rho(p_i) = w_{2i}^2        rho(V_I) = Sq1(prod_{i in I} w_{2i})

into the mod-2 ring (w_{2*1/2} = w_1).  Index sets are encoded by doubled
indices: 1 stands for the half index, 2k for the integer k, so deg V_I =
1 + sum(doubled).

Equality of torsion classes is decided through rho, which is injective on
the torsion: torsion monomials are kept formal (no rewriting), and the six
relation families of the presentation become a verification suite checked
by rho instead of a rewrite system.

Rank-n validity: every integer index k needs 0 < k < (n+1)/2, and for
finite n > 1 a set may not contain both the half index and n/2.  The rank-n
conventions (p_{1/2} means V_{{1/2}}; a produced V-set containing both the
half index and n/2 splits as V_{{n/2}} times the remainder) are applied
when relation left-hand sides are constructed.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .errors import InvalidIndexSetError
from .report import FAIL, PASS, Report
from .steenrod import sq1
from .wring import (
    SW,
    UNBOUNDED,
    MPoly2,
    RingContext,
    add,
    mono_mul,
    mul,
    power,
    reduce_poly,
    require_degree_cap_at_least,
)

HALF = Fraction(1, 2)


def _to_doubled(index) -> int:
    if isinstance(index, str):
        if index.strip() == "1/2":
            return 1
        index = int(index)
    if isinstance(index, Fraction):
        d = 2 * index
        if d.denominator != 1 or d < 1:
            raise InvalidIndexSetError(f"index {index} is not 1/2 or a positive integer")
        d = int(d)
        if d != 1 and d % 2 == 1:
            raise InvalidIndexSetError(f"index {index} is not 1/2 or a positive integer")
        return d
    if isinstance(index, int):
        if index < 1:
            raise InvalidIndexSetError("integer indices must be positive")
        return 2 * index
    raise InvalidIndexSetError(f"cannot read index {index!r}")


def _index_str(d: int) -> str:
    return "1/2" if d == 1 else str(d // 2)


class IndexSet:
    """Finite nonempty set of V-indices, stored as ascending doubled ints."""

    __slots__ = ("doubled",)

    def __init__(self, doubled: Iterable[int]):
        ds = tuple(sorted(set(doubled)))
        if not ds:
            raise InvalidIndexSetError("index sets must be nonempty")
        for d in ds:
            if d < 1 or (d != 1 and d % 2 == 1):
                raise InvalidIndexSetError(
                    f"doubled index {d} does not encode 1/2 or a positive integer"
                )
        self.doubled = ds

    @classmethod
    def of(cls, *indices) -> "IndexSet":
        """Build from human-readable indices: ints, Fraction(1,2), or '1/2'."""
        return cls(_to_doubled(i) for i in indices)

    def degree(self) -> int:
        return 1 + sum(self.doubled)

    def valid_at(self, n: int | None) -> bool:
        if n is None:
            return True
        if any(d != 1 and d > n for d in self.doubled):
            return False
        if n > 1 and 1 in self.doubled and n in self.doubled:
            return False  # may not contain both 1/2 and n/2
        return True

    def require_valid_at(self, n: int | None) -> None:
        if not self.valid_at(n):
            raise InvalidIndexSetError(f"index set {self} is not valid at rank {n}")

    def __eq__(self, other):
        return isinstance(other, IndexSet) and self.doubled == other.doubled

    def __hash__(self):
        return hash(self.doubled)

    def __str__(self):
        return "{" + ",".join(_index_str(d) for d in self.doubled) + "}"

    def __repr__(self):
        return f"IndexSet.of({', '.join(_index_str(d) for d in self.doubled)})"


# free part: dict p_key -> nonzero int, frozen to a sorted tuple
# torsion part: frozenset of (p_key, v_key); v_key is a sorted tuple of
#   (doubled_tuple, exponent) with every exponent >= 1 and v_key nonempty
PKey = tuple
VKey = tuple


def _p_degree(p_key: PKey) -> int:
    return sum(4 * i * e for i, e in p_key)


def _v_degree(v_key: VKey) -> int:
    return sum((1 + sum(ds)) * e for ds, e in v_key)


def _torsion_degree(key) -> int:
    p_key, v_key = key
    return _p_degree(p_key) + _v_degree(v_key)


def _freeze_free(d: dict) -> tuple:
    items = [(k, c) for k, c in d.items() if c]
    items.sort(key=lambda kc: (_p_degree(kc[0]), kc[0]))
    return tuple(items)


def _merge_keys(k1, k2):
    return mono_mul(k1, k2)  # same sorted-pair-merge as ring monomials


class IntClass:
    """Element of the integral class ring: an integer polynomial in the p_i
    plus a formal 2-torsion polynomial in p_i and V_I over the field with
    two elements (2*V_I = 0 is built into the representation)."""

    __slots__ = ("free", "torsion")

    def __init__(self, free: tuple = (), torsion: frozenset = frozenset()):
        self.free = free
        self.torsion = torsion

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "IntClass":
        return cls()

    @classmethod
    def integer(cls, n: int) -> "IntClass":
        return cls(((() , n),) if n else ())

    @classmethod
    def p(cls, i: int) -> "IntClass":
        if i < 1:
            raise ValueError("Pontrjagin index must be positive")
        return cls(((((i, 1),), 1),))

    @classmethod
    def V(cls, indices) -> "IntClass":
        iset = indices if isinstance(indices, IndexSet) else IndexSet.of(*indices)
        return cls((), frozenset({((), ((iset.doubled, 1),))}))

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.free and not self.torsion

    def __bool__(self):
        return not self.is_zero()

    def free_part(self) -> "IntClass":
        return IntClass(self.free)

    def torsion_part(self) -> "IntClass":
        return IntClass((), self.torsion)

    def degree(self) -> int:
        degs = [_p_degree(k) for k, _ in self.free]
        degs += [_torsion_degree(k) for k in self.torsion]
        return max(degs, default=0)

    def index_sets(self) -> set:
        return {
            ds for _, v_key in self.torsion for ds, _ in v_key
        }

    def __eq__(self, other):
        return (
            isinstance(other, IntClass)
            and self.free == other.free
            and self.torsion == other.torsion
        )

    def __hash__(self):
        return hash((self.free, self.torsion))

    def __add__(self, other):
        return int_add(self, other)

    def __sub__(self, other):
        return int_add(self, other.negate())

    def __mul__(self, other):
        return int_mul(self, other)

    def negate(self) -> "IntClass":
        """Negation: flips free coefficients, fixes torsion (2-torsion)."""
        return IntClass(tuple((k, -c) for k, c in self.free), self.torsion)

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for p_key, coeff in self.free:
            factors = [f"p{i}^{e}" if e > 1 else f"p{i}" for i, e in p_key]
            mag = abs(coeff)
            if mag != 1 or not factors:
                factors.insert(0, str(mag))
            parts.append(("-" if coeff < 0 else "+", "*".join(factors)))
        for p_key, v_key in sorted(
            self.torsion, key=lambda k: (_torsion_degree(k), k)
        ):
            factors = [f"p{i}^{e}" if e > 1 else f"p{i}" for i, e in p_key]
            for ds, e in v_key:
                v = "V{" + ",".join(_index_str(d) for d in ds) + "}"
                factors.append(f"{v}^{e}" if e > 1 else v)
            parts.append(("+", "*".join(factors)))
        sign, first = parts[0]
        text = ("-" if sign == "-" else "") + first
        for sign, chunk in parts[1:]:
            text += f" {sign} {chunk}"
        return text

    def __repr__(self):
        return f"IntClass({self})"


def int_add(a: IntClass, b: IntClass) -> IntClass:
    free = dict(a.free)
    for k, c in b.free:
        free[k] = free.get(k, 0) + c
    return IntClass(_freeze_free(free), a.torsion ^ b.torsion)


def _validate_rank(a: IntClass, n: int | None) -> None:
    if n is None:
        return
    for ds in a.index_sets():
        IndexSet(ds).require_valid_at(n)


def int_mul(
    a: IntClass, b: IntClass, n: int | None = None, ctx: RingContext | None = None
) -> IntClass:
    """Formal product.  V-index sets must be valid at rank n; products of
    V symbols stay formal monomials (equality is decided through rho).
    A finite ctx degree cap drops monomials above it (a graded quotient)."""
    _validate_rank(a, n)
    _validate_rank(b, n)
    cap = ctx.degree_cap if ctx is not None else None

    free: dict = {}
    for k1, c1 in a.free:
        for k2, c2 in b.free:
            if cap is not None and _p_degree(k1) + _p_degree(k2) > cap:
                continue
            k = _merge_keys(k1, k2)
            free[k] = free.get(k, 0) + c1 * c2

    torsion: set = set()

    def toggle(p_key, v_key):
        key = (p_key, v_key)
        if cap is not None and _torsion_degree(key) > cap:
            return
        if key in torsion:
            torsion.remove(key)
        else:
            torsion.add(key)

    def merge_v(v1: VKey, v2: VKey) -> VKey:
        merged = dict(v1)
        for ds, e in v2:
            merged[ds] = merged.get(ds, 0) + e
        return tuple(sorted(merged.items()))

    for k1, c1 in a.free:
        if c1 % 2 == 0:
            continue
        for p2, v2 in b.torsion:
            toggle(_merge_keys(k1, p2), v2)
    for k2, c2 in b.free:
        if c2 % 2 == 0:
            continue
        for p1, v1 in a.torsion:
            toggle(_merge_keys(p1, k2), v1)
    for p1, v1 in a.torsion:
        for p2, v2 in b.torsion:
            toggle(_merge_keys(p1, p2), merge_v(v1, v2))

    return IntClass(_freeze_free(free), frozenset(torsion))


def rho(a: IntClass, ctx: RingContext = UNBOUNDED) -> MPoly2:
    """Mod-2 reduction: coefficients mod 2, p_i to w_{2i}^2, V_I to
    Sq1 of the product of the w_{2i}, context-reduced."""
    sq1_cache: dict = {}

    def v_image(ds: tuple) -> MPoly2:
        got = sq1_cache.get(ds)
        if got is None:
            base = MPoly2(frozenset({tuple((d, 1) for d in ds)}), SW)
            got = sq1(base, ctx)
            sq1_cache[ds] = got
        return got

    total = MPoly2.zero(SW)
    for p_key, coeff in a.free:
        if coeff % 2 == 0:
            continue
        mono = tuple((2 * i, 2 * e) for i, e in p_key)
        total = add(total, reduce_poly(MPoly2(frozenset({mono}), SW), ctx), ctx)
    for p_key, v_key in a.torsion:
        mono = tuple((2 * i, 2 * e) for i, e in p_key)
        term = reduce_poly(MPoly2(frozenset({mono}), SW), ctx)
        for ds, e in v_key:
            if term.is_zero():
                break
            term = mul(term, power(v_image(ds), e, ctx), ctx)
        total = add(total, term, ctx)
    return total


def torsion_equal(a: IntClass, b: IntClass, ctx: RingContext = UNBOUNDED) -> bool:
    """Equality in the integral ring: exact free parts, rho-equal torsion.

    Refuses (rather than risk a wrong answer) when the degree cap truncates
    below the classes compared; a finite rank cap is the rank of the ring
    in which the comparison happens, and index sets must be valid there.
    """
    needed = max(a.degree(), b.degree())
    require_degree_cap_at_least(ctx, needed, "torsion_equal")
    _validate_rank(a, ctx.rank_cap)
    _validate_rank(b, ctx.rank_cap)
    if a.free != b.free:
        return False
    return rho(a.torsion_part(), ctx) == rho(b.torsion_part(), ctx)


# -- relation construction -------------------------------------------------


def _make_V(ds: frozenset, n: int | None) -> IntClass:
    """V for a computed index set, applying the rank-n convention: a set
    containing both the half index and n/2 splits off V_{{n/2}}."""
    if n is not None and n > 1 and 1 in ds and n in ds:
        rest = frozenset(ds) - {1, n}
        if not rest:
            raise InvalidIndexSetError(
                f"V{IndexSet(ds)} at rank {n} has no convention expansion"
            )
        return int_mul(IntClass.V(IndexSet({n})), _make_V(rest, n), n)
    iset = IndexSet(ds)
    iset.require_valid_at(n)
    return IntClass.V(iset)


def _p_factor(d: int) -> IntClass:
    """p for a doubled index: p_{1/2} means V_{{1/2}} by convention."""
    if d == 1:
        return IntClass.V(IndexSet({1}))
    return IntClass.p(d // 2)


def _p_product(ds: Iterable[int], n: int | None) -> IntClass:
    out = IntClass.integer(1)
    for d in sorted(ds):
        out = int_mul(out, _p_factor(d), n)
    return out


def relation(
    k: int,
    I: IndexSet | None = None,
    J: IndexSet | None = None,
    n: int | None = None,
) -> IntClass:
    """Left-hand side of relation family k (1..6) of the presentation.

    Side conditions (violations raise ValueError):
      1: any I.                     2: |I|>1, |I|<=|J|, I&J nonempty, I not<=J.
      3: |I|>1, I proper subset J.  4: |I|>1, |I|<=|J|, I,J disjoint; equal
         sizes need min(I) < min(J).
      5: |I|>1.                     6: even finite n; no index sets.
    """
    if k == 1:
        if I is None:
            raise ValueError("relation 1 needs I")
        I.require_valid_at(n)
        return int_add(IntClass.V(I), IntClass.V(I))  # 2*V_I = 0

    if k == 6:
        if n is None or n % 2 != 0 or n < 2:
            raise ValueError("relation 6 needs a finite even rank")
        half = IntClass.V(IndexSet({1}))
        vn = IntClass.V(IndexSet({n}))
        return int_add(int_mul(half, IntClass.p(n // 2), n), int_mul(vn, vn, n))

    if I is None:
        raise ValueError(f"relation {k} needs I")
    I.require_valid_at(n)
    si = set(I.doubled)
    if len(si) <= 1:
        raise ValueError("the cardinality of I must exceed one")

    if k == 5:
        lhs = IntClass.zero()
        for d in I.doubled:
            term = int_mul(IntClass.V(IndexSet({d})), _make_V(si - {d}, n), n)
            lhs = int_add(lhs, term)
        return lhs

    if J is None:
        raise ValueError(f"relation {k} needs J")
    J.require_valid_at(n)
    sj = set(J.doubled)
    if len(si) > len(sj):
        raise ValueError("the cardinality of I must not exceed that of J")
    vi, vj = IntClass.V(I), IntClass.V(J)

    if k == 2:
        if not (si & sj):
            raise ValueError("relation 2 needs intersecting I and J")
        if si <= sj:
            raise ValueError("relation 2 needs I not contained in J")
        lhs = int_mul(vi, vj, n)
        lhs = int_add(lhs, int_mul(_make_V(si | sj, n), _make_V(si & sj, n), n))
        cross = int_mul(_make_V(si - sj, n), _make_V(sj - si, n), n)
        return int_add(lhs, int_mul(cross, _p_product(si & sj, n), n))

    if k == 3:
        if not (si < sj):
            raise ValueError("relation 3 needs I a proper subset of J")
        lhs = int_mul(vi, vj, n)
        for d in I.doubled:
            term = int_mul(
                IntClass.V(IndexSet({d})), _make_V((sj - si) | {d}, n), n
            )
            term = int_mul(term, _p_product(si - {d}, n), n)
            lhs = int_add(lhs, term)
        return lhs

    if k == 4:
        if si & sj:
            raise ValueError("relation 4 needs disjoint I and J")
        if len(si) == len(sj) and min(si) >= min(sj):
            raise ValueError(
                "relation 4 with equal cardinalities needs min(I) < min(J)"
            )
        lhs = int_mul(vi, vj, n)
        for d in I.doubled:
            term = int_mul(IntClass.V(IndexSet({d})), _make_V((si | sj) - {d}, n), n)
            lhs = int_add(lhs, term)
        return lhs

    raise ValueError(f"unknown relation family {k}")


def _valid_index_sets(n: int, degree_cap: int) -> list:
    """All rank-n valid index sets of degree <= degree_cap, canonically
    ordered by (degree, doubled tuple)."""
    pool = [1] + [d for d in range(2, n + 1, 2)]
    out = []
    for size in range(1, len(pool) + 1):
        for combo in combinations(pool, size):
            iset = IndexSet(combo)
            if iset.degree() <= degree_cap and iset.valid_at(n):
                out.append(iset)
    out.sort(key=lambda s: (s.degree(), s.doubled))
    return out


def verify_relations(n: int, degree_cap: int) -> Report:
    """Check rho(LHS) = 0 in the rank-n ring for every valid instantiation
    of relation families 2..6 with degree <= degree_cap."""
    ctx = RingContext(degree_cap, n)
    report = Report(f"relations[n={n},degree<={degree_cap}]")
    sets = _valid_index_sets(n, degree_cap)

    def check(case_id: str, params: dict, lhs: IntClass):
        image = rho(lhs, ctx)
        if lhs.free:
            report.add(case_id, params, FAIL, "free part is nonzero")
        elif image.is_zero():
            report.add(case_id, params, PASS)
        else:
            report.add(case_id, params, FAIL, f"rho = {image}")

    for I in sets:
        si = set(I.doubled)
        if len(si) <= 1:
            continue
        for J in sets:
            sj = set(J.doubled)
            if len(si) > len(sj):
                continue
            pair_deg = I.degree() + J.degree()
            if pair_deg > degree_cap:
                continue
            params = {"n": n, "I": str(I), "J": str(J)}
            # family 2: intersecting, incomparable (symmetric: dedup equal sizes)
            if (
                (si & sj)
                and not (si <= sj)
                and not (len(si) == len(sj) and I.doubled > J.doubled)
            ):
                check(f"rel2[n={n},I={I},J={J}]", {"relation": 2, **params},
                      relation(2, I, J, n=n))
            if si < sj:
                check(f"rel3[n={n},I={I},J={J}]", {"relation": 3, **params},
                      relation(3, I, J, n=n))
            if not (si & sj) and (
                len(si) < len(sj) or min(si) < min(sj)
            ):
                check(f"rel4[n={n},I={I},J={J}]", {"relation": 4, **params},
                      relation(4, I, J, n=n))
        if I.degree() + 1 <= degree_cap:
            check(f"rel5[n={n},I={I}]", {"relation": 5, "n": n, "I": str(I)},
                  relation(5, I, n=n))
    if n % 2 == 0 and 2 + 2 * n <= degree_cap:
        check(f"rel6[n={n}]", {"relation": 6, "n": n}, relation(6, n=n))
    return report
