"""Building blocks: exact scalars, gradings, and a presentation from scratch.

Builds the 3-dimensional commutative associative pair over the super grading
(e1 even; e2, e3 odd) whose twist sends e1 to sqrt(2) e1, then multiplies a
few vectors and applies the twist.
"""

from homcolor import ScalarContext, super_z2
from homcolor.core import AlgebraPresentation, BilinearProduct, GradedSpace, LinearMap, vec_to_names

# Scalars live in a declared context: parameters and square roots.
ctx = ScalarContext(params=["lambda1"], roots={"sqrt2": 2})
print("sqrt(2) * sqrt(2)   =", ctx.parse("sqrt(2) * sqrt(2)"))
print("(lambda1+1)(lambda1-1) =", ctx.parse("(lambda1 + 1) * (lambda1 - 1)"))
print("exact zero test     :", ctx.parse("sqrt2*sqrt2 - 2").is_zero())
print()

# A grading: Z_2 with the super sign (-1)^(i*j).
group, eps = super_z2()
print("super sign eps(1,1) =", eps.sign((1,), (1,)))
print()

# Structure constants: e1.e2 = e2.e1 = -2 e3, everything else zero.
space = GradedSpace(group, ["e1", "e2", "e3"], [[0], [1], [1]])
dot = BilinearProduct(space, ctx, {(0, 1): {2: ctx.scalar(-2)}, (1, 0): {2: ctx.scalar(-2)}})

# The twist is an even map; entries are exact scalars (row-major matrix).
alpha = LinearMap.from_rows(
    space, space, ctx,
    [[ctx.root("sqrt2"), ctx.zero, ctx.zero],
     [ctx.zero, ctx.scalar(-1), ctx.zero],
     [ctx.zero, ctx.one, ctx.one]],
)
A = AlgebraPresentation(space, eps, ctx, {"dot": dot}, alpha)

print("e1 . e2        =", dict(vec_to_names(space, A.mul("dot", {"e1": 1}, {"e2": 1}))))
print("(e1+e2) . e2   =", dict(vec_to_names(space, A.mul("dot", {"e1": 1, "e2": 1}, {"e2": 1}))))
print("alpha(e1)      =", dict(vec_to_names(space, A.alpha_image(0))))
print("alpha^2(e1)    =", dict(vec_to_names(space, A.alpha.power(2).image(0))))
print("eps(e2, e3)    =", A.eps(1, 2))
