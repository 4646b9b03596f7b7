"""Sparse graded polynomial arithmetic over the two-element field.

This is the workhorse ring of the package: Z2[w1, w2, ...] with deg(w_i) = i,
the universal target of all mod-2 characteristic class computations.  A
second namespace of degree-1 "root" variables r_i backs the splitting
principle oracle.

Representation.  A monomial is a tuple of (index, exponent) pairs held in
strictly increasing index order with every exponent >= 1; the empty tuple is
the constant monomial.  A polynomial is a frozenset of such monomials (the
coefficient field has two elements, so presence is the coefficient and
addition is symmetric difference).  Values are immutable and hashable.

Truncation.  A RingContext carries an optional degree cap and an optional
rank cap (w_i = 0 for i above the rank cap).  Both drops are graded ring
quotients, so reducing before or after an operation gives the same result;
operations here reduce their inputs first and prune during multiplication.
"""

from __future__ import annotations

from bisect import bisect_right
from typing import Callable, Iterable, Mapping

import numpy as np

from .errors import CapsTooSmallError, MissingImageError, NamespaceMismatchError

SW = "sw"
ROOT = "root"

_LETTER = {SW: "w", ROOT: "r"}

MonomialKey = tuple  # tuple[tuple[int, int], ...]


def mono_degree(key: MonomialKey, namespace: str = SW) -> int:
    """Weighted degree of a monomial: sum(i*e) for sw, sum(e) for root."""
    if namespace == SW:
        return sum(i * e for i, e in key)
    return sum(e for _, e in key)


def mono_mul(k1: MonomialKey, k2: MonomialKey) -> MonomialKey:
    """Merge two sorted exponent tuples, adding exponents."""
    if not k1:
        return k2
    if not k2:
        return k1
    out = []
    a, b = 0, 0
    n1, n2 = len(k1), len(k2)
    while a < n1 and b < n2:
        i1, e1 = k1[a]
        i2, e2 = k2[b]
        if i1 == i2:
            out.append((i1, e1 + e2))
            a += 1
            b += 1
        elif i1 < i2:
            out.append((i1, e1))
            a += 1
        else:
            out.append((i2, e2))
            b += 1
    out.extend(k1[a:])
    out.extend(k2[b:])
    return tuple(out)


def _mono_str(key: MonomialKey, letter: str) -> str:
    if not key:
        return "1"
    return "*".join(
        f"{letter}{i}^{e}" if e > 1 else f"{letter}{i}" for i, e in key
    )


class RingContext:
    """Optional degree cap and rank cap; None means unbounded.

    The rank cap models working over BO_n: any monomial containing a
    bundle-side variable of index above the cap is dropped.
    """

    __slots__ = ("degree_cap", "rank_cap")

    def __init__(self, degree_cap: int | None = None, rank_cap: int | None = None):
        for name, cap in (("degree_cap", degree_cap), ("rank_cap", rank_cap)):
            if cap is not None and (not isinstance(cap, int) or cap < 0):
                raise ValueError(f"{name} must be a nonnegative integer or None")
        self.degree_cap = degree_cap
        self.rank_cap = rank_cap

    def admits(self, key: MonomialKey, namespace: str) -> bool:
        if self.rank_cap is not None and key and key[-1][0] > self.rank_cap:
            return False
        if self.degree_cap is not None and mono_degree(key, namespace) > self.degree_cap:
            return False
        return True

    def is_unbounded(self) -> bool:
        return self.degree_cap is None and self.rank_cap is None

    def __eq__(self, other):
        return (
            isinstance(other, RingContext)
            and self.degree_cap == other.degree_cap
            and self.rank_cap == other.rank_cap
        )

    def __hash__(self):
        return hash((self.degree_cap, self.rank_cap))

    def __repr__(self):
        return f"RingContext(degree_cap={self.degree_cap}, rank_cap={self.rank_cap})"


UNBOUNDED = RingContext()


class MPoly2:
    """Polynomial over the two-element field in graded generators.

    Do not mutate; all operations return fresh values.  Equality and
    hashing are structural (namespace + monomial set).
    """

    __slots__ = ("namespace", "monomials")

    def __init__(self, monomials: frozenset = frozenset(), namespace: str = SW):
        if namespace not in _LETTER:
            raise ValueError(f"unknown namespace {namespace!r}")
        self.namespace = namespace
        self.monomials = monomials

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, namespace: str = SW) -> "MPoly2":
        return cls(frozenset(), namespace)

    @classmethod
    def one(cls, namespace: str = SW) -> "MPoly2":
        return cls(frozenset({()}), namespace)

    @classmethod
    def gen(cls, index: int, namespace: str = SW) -> "MPoly2":
        if index < 1:
            raise ValueError("generator index must be positive")
        return cls(frozenset({((index, 1),)}), namespace)

    @classmethod
    def from_keys(cls, keys: Iterable, namespace: str = SW) -> "MPoly2":
        """Build from raw (index, exponent) iterables; canonicalizes and
        cancels duplicate monomials mod 2."""
        acc: set = set()
        for raw in keys:
            merged: dict = {}
            for i, e in raw:
                if i < 1:
                    raise ValueError("variable index must be positive")
                merged[i] = merged.get(i, 0) + e
            key = tuple(sorted((i, e) for i, e in merged.items() if e))
            if any(e < 0 for _, e in key):
                raise ValueError("negative exponent")
            acc.symmetric_difference_update({key})
        return cls(frozenset(acc), namespace)

    # -- queries -----------------------------------------------------------

    def degree(self) -> int:
        """Largest monomial degree; 0 for the zero polynomial."""
        if not self.monomials:
            return 0
        return max(mono_degree(k, self.namespace) for k in self.monomials)

    def variables(self) -> set:
        return {i for key in self.monomials for i, _ in key}

    def is_zero(self) -> bool:
        return not self.monomials

    def __bool__(self):
        return bool(self.monomials)

    def __eq__(self, other):
        return (
            isinstance(other, MPoly2)
            and self.namespace == other.namespace
            and self.monomials == other.monomials
        )

    def __hash__(self):
        return hash((self.namespace, self.monomials))

    # -- operator sugar (unbounded context) --------------------------------

    def __add__(self, other):
        return add(self, other, UNBOUNDED)

    def __mul__(self, other):
        return mul(self, other, UNBOUNDED)

    def __pow__(self, e: int):
        return power(self, e, UNBOUNDED)

    def __str__(self):
        return poly_str(self)

    def __repr__(self):
        return f"MPoly2({self})"


def poly_str(a: MPoly2, letter: str | None = None) -> str:
    """Canonical text: monomials in graded-lex order, `letter` overriding
    the namespace letter (used for the u / rc symbol families)."""
    if not a.monomials:
        return "0"
    letter = letter or _LETTER[a.namespace]
    keys = sorted(a.monomials, key=lambda k: (mono_degree(k, a.namespace), k))
    return " + ".join(_mono_str(k, letter) for k in keys)


def w(index: int) -> MPoly2:
    """The Stiefel-Whitney generator w_index (degree = index)."""
    return MPoly2.gen(index, SW)


def r(index: int) -> MPoly2:
    """The splitting-principle root generator r_index (degree 1)."""
    return MPoly2.gen(index, ROOT)


def _check_namespaces(a: MPoly2, b: MPoly2) -> str:
    if a.namespace != b.namespace:
        raise NamespaceMismatchError(
            f"cannot combine {a.namespace!r} and {b.namespace!r} polynomials"
        )
    return a.namespace


def reduce_poly(a: MPoly2, ctx: RingContext) -> MPoly2:
    """Drop monomials the context does not admit."""
    if ctx.is_unbounded():
        return a
    kept = frozenset(k for k in a.monomials if ctx.admits(k, a.namespace))
    if len(kept) == len(a.monomials):
        return a
    return MPoly2(kept, a.namespace)


def add(a: MPoly2, b: MPoly2, ctx: RingContext = UNBOUNDED) -> MPoly2:
    """Sum = symmetric difference of monomial sets, context-reduced."""
    ns = _check_namespaces(a, b)
    out = MPoly2(a.monomials ^ b.monomials, ns)
    return reduce_poly(out, ctx)


# Pairwise products up to this count use the plain dict loop; larger
# products go through a packed-exponent kernel.
_PACK_THRESHOLD = 4096


def mul(a: MPoly2, b: MPoly2, ctx: RingContext = UNBOUNDED) -> MPoly2:
    """Product, distributing and cancelling mod 2, context-reduced."""
    ns = _check_namespaces(a, b)
    a = reduce_poly(a, ctx)
    b = reduce_poly(b, ctx)
    ka, kb = a.monomials, b.monomials
    if not ka or not kb:
        return MPoly2.zero(ns)
    if ka == {()}:
        return b
    if kb == {()}:
        return a
    cap = ctx.degree_cap
    if len(ka) * len(kb) <= _PACK_THRESHOLD:
        out = _mul_dict(ka, kb, ns, cap)
    else:
        out = _mul_packed(ka, kb, ns, cap)
    return MPoly2(frozenset(out), ns)


def _mul_dict(ka, kb, ns, cap):
    items_a = [(k, mono_degree(k, ns)) for k in ka]
    items_b = [(k, mono_degree(k, ns)) for k in kb]
    out: dict = {}
    for k1, d1 in items_a:
        for k2, d2 in items_b:
            if cap is not None and d1 + d2 > cap:
                continue
            k = mono_mul(k1, k2)
            if k in out:
                del out[k]
            else:
                out[k] = None
    return out.keys()


def _pack_stats(keys):
    max_index = 0
    max_exp = 0
    for key in keys:
        if key:
            if key[-1][0] > max_index:
                max_index = key[-1][0]
            m = max(e for _, e in key)
            if m > max_exp:
                max_exp = m
    return max_index, max_exp


def _mul_packed(ka, kb, ns, cap):
    """Pack exponent vectors into integers so exponent addition is a single
    integer add; route through numpy when everything fits in 64 bits."""
    if not ka or not kb:
        return set()
    mi_a, me_a = _pack_stats(ka)
    mi_b, me_b = _pack_stats(kb)
    max_index = max(mi_a, mi_b)
    bits = (me_a + me_b).bit_length()
    if max_index * bits <= 64:
        return _mul_numpy(ka, kb, ns, cap, bits)
    return _mul_pyint(ka, kb, ns, cap, max(bits, 16))


def _pack(key, bits) -> int:
    v = 0
    for i, e in key:
        v |= e << (bits * (i - 1))
    return v


def _unpack(v: int, bits: int) -> MonomialKey:
    mask = (1 << bits) - 1
    out = []
    i = 1
    while v:
        e = v & mask
        if e:
            out.append((i, int(e)))
        v >>= bits
        i += 1
    return tuple(out)


def _mul_numpy(ka, kb, ns, cap, bits):
    pa = np.fromiter((_pack(k, bits) for k in ka), dtype=np.uint64, count=len(ka))
    pb = np.fromiter((_pack(k, bits) for k in kb), dtype=np.uint64, count=len(kb))
    parts = []
    if cap is not None:
        da = np.fromiter((mono_degree(k, ns) for k in ka), dtype=np.int64, count=len(ka))
        db = np.fromiter((mono_degree(k, ns) for k in kb), dtype=np.int64, count=len(kb))
    chunk = max(1, 4_000_000 // len(kb))
    for lo in range(0, len(ka), chunk):
        sums = pa[lo : lo + chunk, None] + pb[None, :]
        if cap is not None:
            keep = (da[lo : lo + chunk, None] + db[None, :]) <= cap
            parts.append(sums[keep])
        else:
            parts.append(sums.ravel())
    vals, counts = np.unique(np.concatenate(parts), return_counts=True)
    odd = vals[counts & 1 == 1]
    return {_unpack(int(v), bits) for v in odd}


def _mul_pyint(ka, kb, ns, cap, bits):
    pa = [(_pack(k, bits), mono_degree(k, ns)) for k in ka]
    pb = sorted((mono_degree(k, ns), _pack(k, bits)) for k in kb)
    deg_b = [d for d, _ in pb]
    packed_b = [p for _, p in pb]
    out: set = set()
    toggle = out.symmetric_difference_update
    for va, da in pa:
        if cap is not None:
            hi = bisect_right(deg_b, cap - da)
            if not hi:
                continue
            row = packed_b[:hi]
        else:
            row = packed_b
        # products within one row are distinct, so set-toggling is sound
        toggle([va + vb for vb in row])
    return {_unpack(v, bits) for v in out}


def square(a: MPoly2, ctx: RingContext = UNBOUNDED) -> MPoly2:
    """Frobenius: squaring doubles every exponent, cross terms cancel."""
    keys = set()
    for key in a.monomials:
        doubled = tuple((i, 2 * e) for i, e in key)
        if ctx.admits(doubled, a.namespace):
            keys.add(doubled)
    return MPoly2(frozenset(keys), a.namespace)


def power(a: MPoly2, e: int, ctx: RingContext = UNBOUNDED) -> MPoly2:
    """a**e by binary exponentiation (squaring is cheap here)."""
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    result = MPoly2.one(a.namespace)
    base = reduce_poly(a, ctx)
    while e:
        if e & 1:
            result = mul(result, base, ctx)
        e >>= 1
        if e:
            base = square(base, ctx)
    return reduce_poly(result, ctx)


def grade_component(a: MPoly2, k: int) -> MPoly2:
    """The homogeneous piece of degree exactly k."""
    kept = frozenset(
        key for key in a.monomials if mono_degree(key, a.namespace) == k
    )
    return MPoly2(kept, a.namespace)


def constant_term(a: MPoly2) -> int:
    """Coefficient of the empty monomial: 1 or 0."""
    return 1 if () in a.monomials else 0


class RingOps:
    """Bound ring operations used by the generic evaluator.

    `zero`/`one` are values; `add`/`mul`/`square` are binary/unary callables
    with the truncation context already applied.
    """

    __slots__ = ("zero", "one", "add", "mul", "square")

    def __init__(self, zero, one, add_, mul_, square_):
        self.zero = zero
        self.one = one
        self.add = add_
        self.mul = mul_
        self.square = square_


def ops_for(namespace: str, ctx: RingContext) -> RingOps:
    return RingOps(
        MPoly2.zero(namespace),
        MPoly2.one(namespace),
        lambda x, y: add(x, y, ctx),
        lambda x, y: mul(x, y, ctx),
        lambda x: square(x, ctx),
    )


def generic_power(x, e: int, ops: RingOps):
    result = None
    base = x
    while e:
        if e & 1:
            result = base if result is None else ops.mul(result, base)
        e >>= 1
        if e:
            base = ops.square(base)
    return ops.one if result is None else result


def evaluate_monomials(
    monomials: Iterable[MonomialKey], images: Callable[[int], object], ops: RingOps
):
    """Sum over monomials of the product of images, a ring homomorphism.

    `images(i)` must return the value substituted for variable i.
    Powers of images are memoized across monomials.
    """
    pow_cache: dict = {}
    total = ops.zero
    for key in monomials:
        term = ops.one
        for i, e in key:
            cached = pow_cache.get((i, e))
            if cached is None:
                cached = generic_power(images(i), e, ops)
                pow_cache[(i, e)] = cached
            term = ops.mul(term, cached)
        total = ops.add(total, term)
    return total


def substitute(
    a: MPoly2, images: Mapping[int, MPoly2], ctx: RingContext = UNBOUNDED
) -> MPoly2:
    """Ring-homomorphism extension of a variable assignment.

    Every variable occurring in `a` needs an image; images must share a
    namespace (which becomes the result namespace).
    """
    occurring = a.variables()
    missing = occurring - set(images)
    if missing:
        raise MissingImageError(f"no image for variable index {min(missing)}")
    namespaces = {images[i].namespace for i in occurring}
    if len(namespaces) > 1:
        raise NamespaceMismatchError("substitution images mix namespaces")
    ns = namespaces.pop() if namespaces else a.namespace
    ops = ops_for(ns, ctx)
    return evaluate_monomials(a.monomials, lambda i: images[i], ops)


def require_degree_cap_at_least(ctx: RingContext, needed: int, what: str) -> None:
    """Refuse to answer when the context truncates below `needed`."""
    if ctx.degree_cap is not None and ctx.degree_cap < needed:
        raise CapsTooSmallError(
            f"{what} needs degree_cap >= {needed}, got {ctx.degree_cap}"
        )


def require_rank_cap_at_least(ctx: RingContext, needed: int, what: str) -> None:
    if ctx.rank_cap is not None and ctx.rank_cap < needed:
        raise CapsTooSmallError(
            f"{what} needs rank_cap >= {needed}, got {ctx.rank_cap}"
        )
