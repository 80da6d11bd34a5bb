"""Commutator brackets, the admissibility criterion, and the GI identities.

The commutator [x, y] = x o y - eps(x, y) y o x turns a Novikov product into
a Lie bracket and a Novikov-Poisson pair into a transposed-Leibniz pair.
Whether the pair also satisfies the ordinary Leibniz rule is equivalent to
the vanishing of the mixed left associator; both sides of that equivalence
are computed here, on a passing fixture and on a failing one.
"""

import pathlib

from homcolor import (
    StructureKind,
    check_gi_identities,
    check_identity,
    commutator_bracket,
    run_suite,
)
from homcolor.core import vec_to_names
from homcolor.serialize import load_presentation_file

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"

# Novikov product -> Lie bracket
N, _ = load_presentation_file(FIXTURES / "novikov_3dim.json")
lie = commutator_bracket(N, "dot")
print("[e1, e2] =", dict(vec_to_names(lie.space, lie.mul_basis("bracket", 0, 1))))
print("lie suite:", run_suite(lie, StructureKind.HOM_LIE).status)
print()

# Admissibility criterion, positive direction
for name in ("hnp_transposed_4dim.json", "poly_deriv_3dim.json"):
    A, _ = load_presentation_file(FIXTURES / name)
    associator = check_identity(A, "LEFT_ASSOCIATOR")
    pair = commutator_bracket(A, "diamond")
    leibniz = run_suite(pair, StructureKind.HOM_POISSON)
    print(f"{name}:")
    print("  left associator:", associator.status,
          f"witness={associator.witness}" if associator.witness else "")
    print("  commutator pair Leibniz suite:", leibniz.status)
    print("  equivalence holds:", associator.passed == leibniz.passed)
    print()

# The four bracket/product interchange identities need a twist that is
# multiplicative for both products; they pass on this synthesized variant.
S, _ = load_presentation_file(FIXTURES / "hnp_admissible_mult_synth_4dim.json")
pair = commutator_bracket(S, "diamond")
print("GI suite:", check_gi_identities(pair).describe())
