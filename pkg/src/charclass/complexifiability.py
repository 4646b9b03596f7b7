"""Decision procedures for complexifiable characteristic classes.

A mod-2 class is complexifiable exactly when it lies in the sub-ring
generated by the squares of the generators; the executable converse is the
invariance oracle, which evaluates the class on the canonical test pair
(fiber bundle + universal bundle vs. universal bundle) in the exterior
oracle ring.  Integral classes reduce to the mod-2 criterion through rho on
their torsion part, and complexifiable integral classes are rewritten in
Chern symbols of the complexification.
"""

from __future__ import annotations

from .bundlecalc import (
    ExtPoly,
    FormalBundle,
    cartan_restrict,  # noqa: F401  (re-exported: kernel test for the ideal)
    evaluate_class,
    fiber_bundle,
    underlying_of_complexification,
    universal_bundle,
    whitney_sum,
)
from .errors import (
    NamespaceMismatchError,
    NotComplexifiableError,
    NotInIdealError,
)
from .feshbach import IndexSet, IntClass, rho
from .steenrod import sq1
from .wring import (
    SW,
    UNBOUNDED,
    MPoly2,
    RingContext,
    add,
    mono_degree,
    mul,
    poly_str,
    require_degree_cap_at_least,
    require_rank_cap_at_least,
    square,
)


class SquaresPoly:
    """A class rewritten in the auxiliary symbols u_i = w_i^2."""

    __slots__ = ("poly_in_u",)

    def __init__(self, poly_in_u: MPoly2):
        self.poly_in_u = poly_in_u

    def expand(self, ctx: RingContext = UNBOUNDED) -> MPoly2:
        """Substitute u_i = w_i^2 back (doubles every exponent)."""
        return square(self.poly_in_u, ctx)

    def __eq__(self, other):
        return isinstance(other, SquaresPoly) and self.poly_in_u == other.poly_in_u

    def __hash__(self):
        return hash(self.poly_in_u)

    def __str__(self):
        return poly_str(self.poly_in_u, "u")

    def __repr__(self):
        return f"SquaresPoly({self})"


def is_complexifiable_mod2(c: MPoly2) -> bool:
    """Membership in the squares sub-ring: every exponent even."""
    if c.namespace != SW:
        raise NamespaceMismatchError("complexifiability is a question about sw classes")
    return all(e % 2 == 0 for key in c.monomials for _, e in key)


def subring_decomposition(c: MPoly2) -> SquaresPoly:
    """Write a member of the squares sub-ring as a polynomial in u_i = w_i^2
    (exponent halving; expand() recovers the input exactly)."""
    if not is_complexifiable_mod2(c):
        raise NotComplexifiableError(
            "class has a monomial with an odd exponent; not in the squares sub-ring"
        )
    halved = frozenset(
        tuple((i, e // 2) for i, e in key) for key in c.monomials
    )
    return SquaresPoly(MPoly2(halved, SW))


def ideal_decomposition(c: MPoly2) -> list:
    """Write c minus its constant term as sum of w_i^2 * r_i, extracting per
    monomial the square of the smallest squared variable.

    Returns [(i, r_i)] sorted by i; raises NotInIdealError with the first
    square-free monomial (in graded-lex order) as witness otherwise.
    """
    if c.namespace != SW:
        raise NamespaceMismatchError("ideal decomposition expects an sw class")
    buckets: dict = {}
    bad = []
    for key in c.monomials:
        if not key:
            continue  # constant term is split off
        target = next((i for i, e in key if e >= 2), None)
        if target is None:
            bad.append(key)
            continue
        cofactor = []
        for i, e in key:
            if i == target:
                e -= 2
            if e:
                cofactor.append((i, e))
        buckets.setdefault(target, set()).add(tuple(cofactor))
    if bad:
        witness = min(bad, key=lambda k: (mono_degree(k, SW), k))
        witness_str = poly_str(MPoly2(frozenset({witness}), SW))
        raise NotInIdealError(
            f"monomial {witness_str} is square-free; class is not in the ideal "
            "of squared generators",
            witness=witness_str,
        )
    return [
        (i, MPoly2(frozenset(cofs), SW)) for i, cofs in sorted(buckets.items())
    ]


def invariance_oracle(c: MPoly2, ctx: RingContext) -> bool:
    """Test the defining identity on the canonical pair: the class takes the
    same value on fiber+universal as on the universal bundle alone.

    Demands caps at least deg(c); truncation below that could hide a
    failure, so the call refuses instead.
    """
    if c.namespace != SW:
        raise NamespaceMismatchError("the oracle expects an sw class")
    d = c.degree()
    require_degree_cap_at_least(ctx, d, "invariance oracle")
    require_rank_cap_at_least(ctx, d, "invariance oracle")
    # all action happens in degrees <= d, so compute in that truncation
    work = RingContext(degree_cap=d)
    fg = whitney_sum(fiber_bundle(work), universal_bundle(work), work)
    g = universal_bundle(work)
    lhs = evaluate_class(c, fg, work)
    rhs = evaluate_class(c, g, work)
    return lhs == ExtPoly.from_mpoly(rhs)


def _doubled_w_monomial(dset) -> MPoly2:
    """The single monomial prod w_{2i} over an index set, doubled encoding
    (the half index contributes w_1)."""
    return MPoly2(frozenset({tuple((d, 1) for d in dset)}), SW)


def lemma3_lhs(I: IndexSet, b: FormalBundle, ctx: RingContext = UNBOUNDED):
    """rho of the squared torsion generator on a bundle: the square of Sq1
    of prod w_{2i}, evaluated on the bundle."""
    formal = square(sq1(_doubled_w_monomial(I.doubled), ctx), ctx)
    return evaluate_class(formal, b, ctx)


def lemma3_rhs(
    I: IndexSet,
    b: FormalBundle,
    ctx: RingContext = UNBOUNDED,
    mode: str = "derived",
):
    """The closed-form expansion of lemma3_lhs, evaluated at the doubled
    bundle.

    mode "verbatim" uses w_1^2 as the half-index factor, which dies on any
    doubled bundle; mode "derived" (default) uses w_2^2, the form the Sq1
    expansion actually produces.  The two differ exactly when the half
    index is present.
    """
    if mode not in ("derived", "verbatim"):
        raise ValueError("mode must be 'derived' or 'verbatim'")
    formal = MPoly2.zero(SW)
    ds = I.doubled
    for d in ds:
        rest = _doubled_w_monomial(tuple(2 * d2 for d2 in ds if d2 != d))
        if d == 1:
            factor = square(MPoly2.gen(1 if mode == "verbatim" else 2, SW))
        else:
            factor = add(
                MPoly2.gen(2 * d + 2, SW),
                mul(MPoly2.gen(2, SW), MPoly2.gen(2 * d, SW)),
            )
        formal = add(formal, mul(factor, rest, ctx), ctx)
    doubled = underlying_of_complexification(b, ctx)
    return evaluate_class(formal, doubled, ctx)


def is_complexifiable_integral(C: IntClass, ctx: RingContext) -> bool:
    """Integral criterion: the free Pontrjagin part is always fine, so the
    class is complexifiable iff rho of its torsion part lands in the squares
    sub-ring."""
    d = C.degree()
    require_degree_cap_at_least(ctx, d, "integral criterion")
    require_rank_cap_at_least(ctx, d, "integral criterion")
    return is_complexifiable_mod2(rho(C.torsion_part(), ctx))


def _c_degree(c_key) -> int:
    return sum(2 * k * e for k, e in c_key)


class ChernExpr:
    """A complexifiable integral class written in terms of Chern classes of
    the complexification.

    `free` maps Pontrjagin monomials through p_i = (-1)^i c_{2i}; `torsion`
    is a polynomial in symbols rc_j standing for rho(c_j), and denotes the
    unique torsion preimage of that mod-2 class when `lift_marker` is set.
    """

    __slots__ = ("free", "torsion", "lift_marker")

    def __init__(self, free: tuple, torsion: MPoly2, lift_marker: bool):
        self.free = tuple(sorted(free, key=lambda kc: (_c_degree(kc[0]), kc[0])))
        self.torsion = torsion
        self.lift_marker = lift_marker

    def expand_free(self) -> IntClass:
        """Substitute c_{2i} = (-1)^i p_i back into the free part."""
        free = {}
        for c_key, coeff in self.free:
            p_key = tuple((k // 2, e) for k, e in c_key)
            sign = -1 if sum((k // 2) * e for k, e in c_key) % 2 else 1
            free[p_key] = free.get(p_key, 0) + sign * coeff
        out = IntClass.zero()
        for p_key, coeff in free.items():
            if coeff:
                out = out + IntClass(((p_key, coeff),))
        return out

    def expand_torsion_rho(self, ctx: RingContext = UNBOUNDED) -> MPoly2:
        """Substitute rc_j = w_j^2 back: the rho-image the torsion denotes."""
        return square(self.torsion, ctx)

    def __eq__(self, other):
        return (
            isinstance(other, ChernExpr)
            and self.free == other.free
            and self.torsion == other.torsion
            and self.lift_marker == other.lift_marker
        )

    def __hash__(self):
        return hash((self.free, self.torsion, self.lift_marker))

    def __str__(self):
        parts = []
        for c_key, coeff in self.free:
            factors = [f"c{k}^{e}" if e > 1 else f"c{k}" for k, e in c_key]
            mag = abs(coeff)
            if mag != 1 or not factors:
                factors.insert(0, str(mag))
            parts.append(("-" if coeff < 0 else "+", "*".join(factors)))
        if self.lift_marker:
            parts.append(("+", f"rho^-1({poly_str(self.torsion, 'rc')})"))
        if not parts:
            return "0"
        sign, first = parts[0]
        text = ("-" if sign == "-" else "") + first
        for sign, chunk in parts[1:]:
            text += f" {sign} {chunk}"
        return text

    def __repr__(self):
        return f"ChernExpr({self})"


def express_via_chern(C: IntClass, ctx: RingContext) -> ChernExpr:
    """Rewrite a complexifiable integral class through Chern classes of the
    complexification: the free part via p_i = (-1)^i c_{2i}, the torsion via
    the halved exponents of its rho-image."""
    if not is_complexifiable_integral(C, ctx):
        raise NotComplexifiableError(
            "rho of the torsion part has an odd exponent; cannot express "
            "through Chern classes"
        )
    free = []
    for p_key, coeff in C.free:
        c_key = tuple((2 * i, e) for i, e in p_key)
        sign = -1 if sum(i * e for i, e in p_key) % 2 else 1
        free.append((c_key, sign * coeff))
    image = rho(C.torsion_part(), ctx)
    halved = MPoly2(
        frozenset(tuple((j, e // 2) for j, e in key) for key in image.monomials),
        SW,
    )
    return ChernExpr(tuple(free), halved, not halved.is_zero())
