"""Twists and derived presentations.

A verified algebra endomorphism m twists every product to x o' y = m(x o y)
and composes onto the twist map; iterating the twist gives the derived
presentations of type 1 (powers n) and type 2 (powers 2^n - 1).  When the
hypothesis fails, the kernel refuses unless forced, and forcing shows the
closure theorem earning its keep: the forced output fails its suite.
"""

import pathlib

from homcolor import PreconditionError, StructureKind, derived_algebra, run_suite, yau_twist
from homcolor.core import LinearMap, vec_to_names
from homcolor.serialize import load_presentation_file

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"

# Twist the truncated polynomial pair by the morphism diag(1, 3, 9).
P, _ = load_presentation_file(FIXTURES / "poly_deriv_3dim.json")
m = LinearMap.from_rows(P.space, P.space, P.context,
                        [[P.context.one, P.context.zero, P.context.zero],
                         [P.context.zero, P.context.scalar(3), P.context.zero],
                         [P.context.zero, P.context.zero, P.context.scalar(9)]])
twisted = yau_twist(P, m)
print("twisted t . t  =", dict(vec_to_names(P.space, twisted.mul_basis("dot", 1, 1))))
print("twisted suite  :", run_suite(twisted, StructureKind.HNP).status)
print()

# Derived tables of the multiplicative variant: the (e2, e2) dot cell scales
# by 2^(2n) while the odd-degree cells stay fixed.
S, _ = load_presentation_file(FIXTURES / "hnp_admissible_mult_synth_4dim.json")
for n in (1, 2, 3):
    derived = derived_algebra(S, 1, n)
    cell = dict(vec_to_names(S.space, derived.mul_basis("dot", 1, 1)))
    print(f"type 1, n={n}: e2 . e2 = {cell}", "suite:",
          run_suite(derived, StructureKind.ADMISSIBLE_HNP).status)
print("type 2 at n=2 equals type 1 at n=3:",
      derived_algebra(S, 2, 2) == derived_algebra(S, 1, 3))
print()

# A twist that is not a morphism is refused, and forcing it demonstrates the
# hypothesis is necessary.
N, _ = load_presentation_file(FIXTURES / "novikov_3dim.json")
try:
    yau_twist(N, N.alpha)
except PreconditionError as exc:
    print("twist refused:", exc)
forced = yau_twist(N, N.alpha, force=True)
print("forced twist suite:", run_suite(forced, StructureKind.HOM_NOVIKOV).status)
