#!/usr/bin/env python3
# Formal bundles: total classes, Whitney sums, complexification, and the
# exterior oracle ring where complexifiability is tested.

from charclass import (
    RingContext,
    cartan_restrict,
    chern_mod2,
    evaluate_class,
    fiber_bundle,
    pontrjagin_mod2,
    roots_bundle,
    square,
    sw,
    trivial_bundle,
    underlying_of_complexification,
    universal_bundle,
    w,
    whitney_sum,
)

ctx = RingContext(degree_cap=8)

# The universal bundle carries one generator per degree; the trivial bundle
# has total class 1.
G = universal_bundle(ctx)
eps = trivial_bundle()
print("universal total:", G.total)
print("trivial total:  ", eps.total)

# Whitney sum multiplies total classes.  Doubling a bundle (the real bundle
# underlying its complexification) squares the total class, so odd classes
# vanish and even ones become squares:
GG = underlying_of_complexification(G, ctx)
print("doubled total:  ", GG.total)
print("w4(G+G) =", sw(GG, 4), "= w2(G)^2 =", square(sw(G, 2)))
print("w3(G+G) =", sw(GG, 3))

# Chern and Pontrjagin classes of the complexification, reduced mod 2:
print("chern_mod2(G, 2)      =", chern_mod2(G, 2, ctx))
print("pontrjagin_mod2(G, 1) =", pontrjagin_mod2(G, 1, ctx))

# The fiber bundle lives in the exterior oracle ring (generators v_i square
# to zero) and complexifies trivially:
F = fiber_bundle(ctx)
print("fiber total:   ", F.total)
print("fiber doubled: ", underlying_of_complexification(F, ctx).total)

# Evaluating a class on the pair (F+G, G) is THE test for complexifiability.
FG = whitney_sum(F, G, ctx)
print("w2 on F+G:", evaluate_class(w(2), FG, ctx), " (differs from w2)")
print("w2^2 on F+G:", evaluate_class(square(w(2)), FG, ctx), " (equals w2^2)")

# Restriction to the fiber kills exactly the monomials containing a square:
print("cartan(w1^2*w3 + w2) =", cartan_restrict(square(w(1)) * w(3) + w(2)))

# The splitting-principle bundle expresses classes through degree-1 roots:
R = roots_bundle(3)
print("roots total:", R.total)
print("w2 on roots:", evaluate_class(w(2), R))
