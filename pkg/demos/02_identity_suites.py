"""Identity suites: exact pass/fail verdicts with minimal witnesses.

Runs the structure suites on bundled fixtures, including a parametric one
(verdicts hold identically in the parameters), then breaks a structure
constant to show the deterministic witness machinery.
"""

import pathlib

from homcolor import StructureKind, run_suite
from homcolor.core import BilinearProduct
from homcolor.serialize import load_presentation_file

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"

# A parametric Novikov-Poisson pair: the suite passes for every value of
# lambda1, lambda2, mu2, mu3, mu4 at once, because defects are polynomials.
A, _ = load_presentation_file(FIXTURES / "hnp_4dim.json")
print(run_suite(A, StructureKind.HNP).describe())
print()

# The Gelfand-Dorfman fixture over Z_2 x Z_2.
G, _ = load_presentation_file(FIXTURES / "gd_4dim.json")
print(run_suite(G, StructureKind.HOM_GD).describe())
print()

# Negate one structure constant: the checker reports the smallest failing
# basis tuple and the nonzero defect vector, in the scalar grammar.
entries = {key: dict(cell) for key, cell in A.product("dot").table.items()}
entries[(3, 1)] = {2: -s for _, s in A.product("dot").table[(3, 1)]}
broken = A.with_products({**A.products, "dot": BilinearProduct(A.space, A.context, entries)})
print(run_suite(broken, StructureKind.HNP).describe())
