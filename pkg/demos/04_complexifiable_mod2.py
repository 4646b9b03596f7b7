#!/usr/bin/env python3
# Which mod-2 classes are determined by the complexification?  Exactly the
# polynomials in the squares w_i^2.  Both directions run here: the syntactic
# criterion and the semantic invariance oracle, plus the two decompositions.

import random

from charclass import (
    RingContext,
    ideal_decomposition,
    invariance_oracle,
    is_complexifiable_mod2,
    subring_decomposition,
    square,
    w,
)
from charclass.errors import NotInIdealError
from charclass.verify import random_mod2, random_squares_member

ctx = RingContext(degree_cap=16)

candidates = [
    square(w(1)) * square(w(3)),
    w(2),
    square(w(1)) + w(2),
    square(w(1) * w(2) + w(4)),
]
for c in candidates:
    print(f"{str(c):34} member={is_complexifiable_mod2(c)!s:5} "
          f"oracle={invariance_oracle(c, ctx)}")

# Members rewrite in the auxiliary symbols u_i = w_i^2 and expand back:
c = square(w(2)) * square(w(2)) + square(w(1)) * square(w(3))
d = subring_decomposition(c)
print("decomposition:", d, "| expands back:", d.expand() == c)

# Classes in the IDEAL generated by the squares (a strictly bigger set)
# split as sums w_i^2 * cofactor; square-free monomials are the obstruction.
e = square(w(1)) * w(2) + square(w(2)) * w(1)
print("ideal form:", " + ".join(f"w{i}^2*({r})" for i, r in ideal_decomposition(e)))
try:
    ideal_decomposition(w(1) * w(2))
except NotInIdealError as err:
    print("not in the ideal, witness:", err.witness)

# The two routes agree on random samples of both kinds:
rng = random.Random(0)
agreements = 0
for k in range(60):
    c = random_squares_member(rng, 16) if k % 2 else random_mod2(rng, 16)
    agreements += invariance_oracle(c, ctx) == is_complexifiable_mod2(c)
print(f"oracle vs criterion: {agreements}/60 agree")
