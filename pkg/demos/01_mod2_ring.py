#!/usr/bin/env python3
# The mod-2 class ring: sparse polynomials in w1, w2, ... over the field
# with two elements, with optional degree and rank truncation.

from charclass import MPoly2, RingContext, add, grade_component, mul, power, square, w
from charclass.serialize import dumps

# Generators have degree equal to their index; coefficients live in {0,1},
# so x + x = 0 and squaring distributes over sums.
x = w(1) + w(2)
print("x          =", x)
print("x + x      =", x + x)
print("x^2        =", x * x)                 # Frobenius: cross terms cancel
print("(1+w1)^2   =", square(MPoly2.one() + w(1)))

# Total degree mixes the weights: w1^2 * w3 has degree 2*1 + 3 = 5.
m = square(w(1)) * w(3)
print("deg(w1^2*w3) =", m.degree())

# grade_component picks out one homogeneous piece.
total = MPoly2.one() + w(1) + square(w(1)) + w(2)
print("degree-2 part of", total, "is", grade_component(total, 2))

# A RingContext truncates: a degree cap drops high monomials, a rank cap
# kills every generator above it (the ring of a rank-n bundle).  Dropping
# is a ring quotient, so it commutes with the arithmetic.
ctx = RingContext(degree_cap=4, rank_cap=2)
y = power(w(1), 3) + w(2) + w(3)
print("y reduced at degree<=4, rank<=2:", add(y, MPoly2.zero(), ctx))
print("w2 * w3 at rank 2:", mul(w(2), w(3), ctx))

# Big products route through a packed-exponent kernel; the canonical JSON
# form is byte-stable.
p = power(w(1) + w(2) + w(3), 6)
print("a 6th power has", len(p.monomials), "monomials")
print("JSON of x^2:", dumps(x * x))
