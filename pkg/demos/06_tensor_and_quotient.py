"""Tensor products of admissible pairs and quotients by basis-aligned ideals."""

import pathlib
import time

from homcolor import StructureKind, is_ideal, quotient, run_suite, tensor_product
from homcolor.serialize import load_presentation_file

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"

A, _ = load_presentation_file(FIXTURES / "hnp_admissible_4dim.json")
started = time.perf_counter()
T = tensor_product(A, A)
suite = run_suite(T, StructureKind.ADMISSIBLE_HNP)
print(f"tensor square: dim {T.dim}, suite {suite.status} "
      f"({time.perf_counter() - started:.2f}s, exact polynomial arithmetic)")
print("degrees add:", T.space.degree(1 * A.dim + 3),
      "= deg(e2) + deg(e4) =",
      T.space.group.add(A.space.degree(1), A.space.degree(3)))
print()

G, _ = load_presentation_file(FIXTURES / "gd_4dim.json")
print("span{e4} is an ideal:", is_ideal(G, ["e4"]).status)
Q = quotient(G, ["e4"])
print("quotient basis:", Q.names)
print("quotient suite:", run_suite(Q, StructureKind.HOM_GD).status)
print()
report = is_ideal(G, ["e2"])
print("span{e2} is an ideal:", report.status, "-", report.detail,
      "witness", report.witness)
