#!/usr/bin/env python3
# The degree-raising square Sq1: a derivation on the mod-2 class ring.

from charclass import RingContext, sq1, square, w
from charclass.bundlecalc import evaluate_class, roots_bundle
from charclass.wring import MPoly2, ROOT, mono_mul

# On a generator: Sq1(w_j) = w1*w_j + w_{j+1} for even j, w1*w_j for odd j.
for j in range(1, 5):
    print(f"Sq1(w{j}) =", sq1(w(j)))

# On products it follows the Leibniz rule; here the two w1*w2*w4 terms cancel:
print("Sq1(w2*w4) =", sq1(w(2) * w(4)))

# Sq1 is a differential (applying it twice gives zero) and kills squares.
x = w(1) * w(2) + w(3)
print("Sq1(Sq1(x)) =", sq1(sq1(x)))
print("Sq1(x^2)    =", sq1(square(x)))

# Rank truncation removes the shifted generator when it falls off the ring:
print("Sq1(w2) at rank 2 =", sq1(w(2), RingContext(rank_cap=2)))

# Independent cross-check through the splitting principle: on the bundle
# with total class prod(1 + r_i), the class w_k becomes the k-th elementary
# symmetric polynomial, and Sq1 becomes the derivation r_i -> r_i^2.
def root_derivation(p):
    out = MPoly2.zero(ROOT)
    for key in p.monomials:
        for i, e in key:
            if e % 2:
                out = out + MPoly2(frozenset({mono_mul(key, ((i, 1),))}), ROOT)
    return out

roots = roots_bundle(3)
c = w(2)
print("Sq1 then evaluate:  ", evaluate_class(sq1(c), roots))
print("evaluate then derive:", root_derivation(evaluate_class(c, roots)))
bigger = w(2) * w(3) + w(5)
agree = evaluate_class(sq1(bigger), roots_bundle(6)) == root_derivation(
    evaluate_class(bigger, roots_bundle(6))
)
print("agreement on w2*w3 + w5 over six roots:", agree)
