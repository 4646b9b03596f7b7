"""Formal bundle calculus over total Stiefel-Whitney classes.

A bundle is its total class (constant term 1) plus a rank bound; no base
space is modeled, since every identity this package verifies is an identity
of characteristic-class polynomials and those are determined on the
universal bundle by naturality.

Alongside the plain class ring this module provides the oracle ring
Lambda(v1, v2, ...) (x) Z2[w1, w2, ...]: the mod-2 cohomology of the product
of the infinite Cartan fiber with the real classifying space.  Its exterior
generators v_i square to zero.  The canonical test pair for complexifiable
classes lives here: the fiber bundle (total class 1 + v1 + v2 + ..., whose
complexification is trivial) against the universal bundle.
"""

from __future__ import annotations

from .errors import CapsTooSmallError, NamespaceMismatchError
from .wring import (
    ROOT,
    SW,
    UNBOUNDED,
    MPoly2,
    RingContext,
    RingOps,
    add,
    constant_term,
    evaluate_monomials,
    grade_component,
    mono_degree,
    mono_mul,
    mul,
    ops_for,
    reduce_poly,
    square,
)

# An exterior-ring monomial is (nu_bits, w_key): bit i of nu_bits marks the
# presence of v_i, and w_key is an sw-namespace monomial.
ExtMonomialKey = tuple


def _nu_degree(bits: int) -> int:
    d = 0
    i = 1
    bits >>= 1
    while bits:
        if bits & 1:
            d += i
        bits >>= 1
        i += 1
    return d


def _nu_indices(bits: int) -> list:
    out = []
    i = 1
    bits >>= 1
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return out


def ext_mono_degree(key: ExtMonomialKey) -> int:
    nu_bits, w_key = key
    return _nu_degree(nu_bits) + mono_degree(w_key, SW)


class ExtPoly:
    """Element of the oracle ring: exterior generators times sw monomials."""

    __slots__ = ("monomials",)

    def __init__(self, monomials: frozenset = frozenset()):
        self.monomials = monomials

    @classmethod
    def zero(cls) -> "ExtPoly":
        return cls(frozenset())

    @classmethod
    def one(cls) -> "ExtPoly":
        return cls(frozenset({(0, ())}))

    @classmethod
    def nu(cls, index: int) -> "ExtPoly":
        if index < 1:
            raise ValueError("exterior generator index must be positive")
        return cls(frozenset({(1 << index, ())}))

    @classmethod
    def from_mpoly(cls, a: MPoly2) -> "ExtPoly":
        if a.namespace != SW:
            raise NamespaceMismatchError(
                "only sw polynomials embed into the oracle ring"
            )
        return cls(frozenset((0, key) for key in a.monomials))

    def w_part(self) -> MPoly2:
        """The image under setting every exterior generator to zero."""
        return MPoly2(
            frozenset(wk for nb, wk in self.monomials if nb == 0), SW
        )

    def degree(self) -> int:
        if not self.monomials:
            return 0
        return max(ext_mono_degree(k) for k in self.monomials)

    def is_zero(self) -> bool:
        return not self.monomials

    def __bool__(self):
        return bool(self.monomials)

    def __eq__(self, other):
        return isinstance(other, ExtPoly) and self.monomials == other.monomials

    def __hash__(self):
        return hash(self.monomials)

    def __add__(self, other):
        return ext_add(self, other, UNBOUNDED)

    def __mul__(self, other):
        return ext_mul(self, other, UNBOUNDED)

    def __str__(self):
        if not self.monomials:
            return "0"
        keys = sorted(
            self.monomials, key=lambda k: (ext_mono_degree(k), k[0], k[1])
        )
        parts = []
        for nu_bits, w_key in keys:
            factors = [f"v{i}" for i in _nu_indices(nu_bits)]
            factors += [
                f"w{i}^{e}" if e > 1 else f"w{i}" for i, e in w_key
            ]
            parts.append("*".join(factors) if factors else "1")
        return " + ".join(parts)

    def __repr__(self):
        return f"ExtPoly({self})"


def _ext_admits(key: ExtMonomialKey, ctx: RingContext) -> bool:
    nu_bits, w_key = key
    # rank truncation hits the bundle-side variables only
    if ctx.rank_cap is not None and w_key and w_key[-1][0] > ctx.rank_cap:
        return False
    if ctx.degree_cap is not None and ext_mono_degree(key) > ctx.degree_cap:
        return False
    return True


def ext_reduce(a: ExtPoly, ctx: RingContext) -> ExtPoly:
    if ctx.is_unbounded():
        return a
    kept = frozenset(k for k in a.monomials if _ext_admits(k, ctx))
    return a if len(kept) == len(a.monomials) else ExtPoly(kept)


def ext_add(a: ExtPoly, b: ExtPoly, ctx: RingContext = UNBOUNDED) -> ExtPoly:
    return ext_reduce(ExtPoly(a.monomials ^ b.monomials), ctx)


def ext_mul(a: ExtPoly, b: ExtPoly, ctx: RingContext = UNBOUNDED) -> ExtPoly:
    a = ext_reduce(a, ctx)
    b = ext_reduce(b, ctx)
    if not a.monomials or not b.monomials:
        return ExtPoly.zero()
    cap = ctx.degree_cap
    items_a = [(nb, wk, ext_mono_degree((nb, wk))) for nb, wk in a.monomials]
    items_b = [(nb, wk, ext_mono_degree((nb, wk))) for nb, wk in b.monomials]
    out: set = set()
    for na, wa, da in items_a:
        for nb, wb, db in items_b:
            if na & nb:  # repeated exterior generator squares to zero
                continue
            if cap is not None and da + db > cap:
                continue
            key = (na | nb, mono_mul(wa, wb))
            if key in out:
                out.remove(key)
            else:
                out.add(key)
    return ExtPoly(frozenset(out))


def ext_square(a: ExtPoly, ctx: RingContext = UNBOUNDED) -> ExtPoly:
    """Frobenius: only monomials free of exterior generators survive."""
    out = set()
    for nu_bits, w_key in a.monomials:
        if nu_bits:
            continue
        key = (0, tuple((i, 2 * e) for i, e in w_key))
        if _ext_admits(key, ctx):
            out.add(key)
    return ExtPoly(frozenset(out))


def ext_grade_component(a: ExtPoly, k: int) -> ExtPoly:
    return ExtPoly(
        frozenset(key for key in a.monomials if ext_mono_degree(key) == k)
    )


def ext_ops_for(ctx: RingContext) -> RingOps:
    return RingOps(
        ExtPoly.zero(),
        ExtPoly.one(),
        lambda x, y: ext_add(x, y, ctx),
        lambda x, y: ext_mul(x, y, ctx),
        lambda x: ext_square(x, ctx),
    )


class FormalBundle:
    """A bundle given by its total class (constant term 1) and a rank bound.

    rank_bound None means unbounded (a stable bundle).
    """

    __slots__ = ("total", "rank_bound")

    def __init__(self, total, rank_bound: int | None = None):
        if isinstance(total, MPoly2):
            ct = constant_term(total)
        elif isinstance(total, ExtPoly):
            ct = 1 if (0, ()) in total.monomials else 0
        else:
            raise TypeError("total class must be MPoly2 or ExtPoly")
        if ct != 1:
            raise ValueError("a total class must have constant term 1")
        if rank_bound is not None and rank_bound < 0:
            raise ValueError("rank bound must be nonnegative")
        self.total = total
        self.rank_bound = rank_bound

    def __eq__(self, other):
        return (
            isinstance(other, FormalBundle)
            and self.total == other.total
            and self.rank_bound == other.rank_bound
        )

    def __hash__(self):
        return hash((self.total, self.rank_bound))

    def __repr__(self):
        return f"FormalBundle({self.total}, rank_bound={self.rank_bound})"


def universal_bundle(ctx: RingContext) -> FormalBundle:
    """Total class 1 + w1 + w2 + ... up to the context caps."""
    bound = ctx.rank_cap
    if ctx.degree_cap is not None:
        bound = ctx.degree_cap if bound is None else min(bound, ctx.degree_cap)
    if bound is None:
        raise CapsTooSmallError(
            "the universal bundle needs a finite degree or rank cap"
        )
    keys = {()} | {((i, 1),) for i in range(1, bound + 1)}
    return FormalBundle(MPoly2(frozenset(keys), SW), ctx.rank_cap)


def trivial_bundle() -> FormalBundle:
    return FormalBundle(MPoly2.one(SW), 0)


def fiber_bundle(ctx: RingContext) -> FormalBundle:
    """Total class 1 + v1 + v2 + ... : the pullback of the universal bundle
    to the Cartan fiber, which complexifies trivially."""
    if ctx.degree_cap is None:
        raise CapsTooSmallError("the fiber bundle needs a finite degree cap")
    keys = {(0, ())} | {(1 << i, ()) for i in range(1, ctx.degree_cap + 1)}
    return FormalBundle(ExtPoly(frozenset(keys)), None)


def roots_bundle(m: int, ctx: RingContext = UNBOUNDED) -> FormalBundle:
    """Splitting-principle bundle with total class prod_{i<=m} (1 + r_i)."""
    if m < 1:
        raise ValueError("roots bundle needs at least one root")
    total = MPoly2.one(ROOT)
    for i in range(1, m + 1):
        factor = add(MPoly2.one(ROOT), MPoly2.gen(i, ROOT))
        total = mul(total, factor, ctx)
    return FormalBundle(total, m)


def _promote_pair(a: FormalBundle, b: FormalBundle):
    ta, tb = a.total, b.total
    if isinstance(ta, MPoly2) and isinstance(tb, MPoly2):
        if ta.namespace != tb.namespace:
            raise NamespaceMismatchError(
                "cannot combine bundles over different variable namespaces"
            )
        return ta, tb, "poly"
    if isinstance(ta, ExtPoly) and isinstance(tb, ExtPoly):
        return ta, tb, "ext"
    if isinstance(ta, ExtPoly):
        return ta, ExtPoly.from_mpoly(tb), "ext"
    return ExtPoly.from_mpoly(ta), tb, "ext"


def whitney_sum(
    a: FormalBundle, b: FormalBundle, ctx: RingContext = UNBOUNDED
) -> FormalBundle:
    """Total class of a sum is the product of total classes; ranks add."""
    ta, tb, kind = _promote_pair(a, b)
    total = mul(ta, tb, ctx) if kind == "poly" else ext_mul(ta, tb, ctx)
    if a.rank_bound is None or b.rank_bound is None:
        bound = None
    else:
        bound = a.rank_bound + b.rank_bound
    return FormalBundle(total, bound)


def underlying_of_complexification(
    a: FormalBundle, ctx: RingContext = UNBOUNDED
) -> FormalBundle:
    """The real bundle underlying the complexification: total class squared,
    rank doubled."""
    if isinstance(a.total, ExtPoly):
        total = ext_square(a.total, ctx)
    else:
        total = square(a.total, ctx)
    bound = None if a.rank_bound is None else 2 * a.rank_bound
    return FormalBundle(total, bound)


def _ambient_zero(bundle: FormalBundle):
    if isinstance(bundle.total, ExtPoly):
        return ExtPoly.zero()
    return MPoly2.zero(bundle.total.namespace)


def sw(a: FormalBundle, k: int):
    """The degree-k class of the bundle; zero above the rank bound."""
    if k < 0:
        raise ValueError("class index must be nonnegative")
    if a.rank_bound is not None and k > a.rank_bound:
        return _ambient_zero(a)
    if isinstance(a.total, ExtPoly):
        return ext_grade_component(a.total, k)
    return grade_component(a.total, k)


def chern_mod2(a: FormalBundle, k: int, ctx: RingContext = UNBOUNDED):
    """Mod-2 reduction of the k-th Chern class of the complexification:
    the degree-2k class of the underlying doubled bundle."""
    if k < 1:
        raise ValueError("Chern index must be positive")
    return sw(underlying_of_complexification(a, ctx), 2 * k)


def pontrjagin_mod2(a: FormalBundle, i: int, ctx: RingContext = UNBOUNDED):
    """Mod-2 reduction of the i-th Pontrjagin class: chern_mod2 at 2i."""
    if i < 1:
        raise ValueError("Pontrjagin index must be positive")
    return chern_mod2(a, 2 * i, ctx)


def evaluate_class(c: MPoly2, a: FormalBundle, ctx: RingContext = UNBOUNDED):
    """Evaluate a universal class (an sw polynomial in the w_i) on a bundle
    by substituting the bundle's classes.  Result lives in the bundle's
    ambient ring."""
    if c.namespace != SW:
        raise NamespaceMismatchError("classes are polynomials in sw variables")
    if isinstance(a.total, ExtPoly):
        ops = ext_ops_for(ctx)
    else:
        ops = ops_for(a.total.namespace, ctx)
    cache: dict = {}

    def images(i: int):
        got = cache.get(i)
        if got is None:
            got = sw(a, i)
            cache[i] = got
        return got

    return evaluate_monomials(reduce_poly(c, ctx).monomials, images, ops)


def cartan_restrict(c: MPoly2) -> ExtPoly:
    """Restriction along the Cartan fiber inclusion: w_i maps to v_i, so any
    monomial containing a squared variable dies."""
    if c.namespace != SW:
        raise NamespaceMismatchError("cartan_restrict expects an sw polynomial")
    out = set()
    for key in c.monomials:
        if any(e >= 2 for _, e in key):
            continue
        bits = 0
        for i, _ in key:
            bits |= 1 << i
        ext_key = (bits, ())
        if ext_key in out:
            out.remove(ext_key)
        else:
            out.add(ext_key)
    return ExtPoly(frozenset(out))
