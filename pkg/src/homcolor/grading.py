"""Abelian grading groups and sign-valued commutation factors.

A grading group is presented by torsion moduli and a count of free factors;
an element is an integer vector with torsion coordinates reduced modulo
their modulus.  A commutation factor (skew-symmetric bicharacter) is stored
as its generator matrix with entries in {+1, -1} and extended to all
elements by bimultiplicativity; the sign-only restriction covers every
bundled fixture and keeps evaluation a parity count.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .reports import CheckReport, FAIL, PASS

__all__ = [
    "GroupElement",
    "AbelianGroup",
    "Bicharacter",
    "validate_commutation_factor",
    "super_z2",
    "z2_pow",
    "z2xz2_sympl",
    "zxz_total",
    "trivial_grading",
]

GroupElement = tuple[int, ...]


@dataclass(frozen=True)
class AbelianGroup:
    """Direct sum of cyclic groups Z_m (moduli >= 2) and ``free`` copies of Z."""

    torsion: tuple[int, ...] = ()
    free: int = 0

    def __post_init__(self):
        if any(not isinstance(m, int) or m < 2 for m in self.torsion):
            raise ValueError(f"torsion moduli must be integers >= 2, got {self.torsion}")
        if not isinstance(self.free, int) or self.free < 0:
            raise ValueError(f"free rank must be a non-negative integer, got {self.free}")

    @property
    def rank(self) -> int:
        return len(self.torsion) + self.free

    @property
    def zero(self) -> GroupElement:
        return (0,) * self.rank

    def element(self, coords: Iterable[int]) -> GroupElement:
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.rank:
            raise ValueError(f"element needs {self.rank} coordinates, got {len(coords)}")
        return tuple(
            c % m if i < len(self.torsion) else c
            for i, (c, m) in enumerate(zip(coords, (*self.torsion, *(0,) * self.free)))
        )

    def add(self, a: GroupElement, b: GroupElement) -> GroupElement:
        return self.element(x + y for x, y in zip(a, b, strict=True))

    def neg(self, a: GroupElement) -> GroupElement:
        return self.element(-x for x in a)


class Bicharacter:
    """Sign-valued commutation factor given by its generator matrix.

    ``matrix[i][j]`` is the value on the (i, j) generator pair; the value on
    arbitrary elements is the parity-extended product, which makes axioms (2)
    and (3) (bimultiplicativity) hold by construction.  Axiom (1) and torsion
    consistency are checked by :func:`validate_commutation_factor`.
    """

    __slots__ = ("group", "matrix", "_neg_pairs")

    def __init__(self, group: AbelianGroup, matrix: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(v) for v in row) for row in matrix)
        n = group.rank
        if len(rows) != n or any(len(row) != n for row in rows):
            raise ValueError(f"generator matrix must be {n}x{n}")
        for row in rows:
            for v in row:
                if v not in (1, -1):
                    raise ValueError(f"generator matrix entries must be +1 or -1, got {v}")
        self.group = group
        self.matrix = rows
        self._neg_pairs = tuple(
            (i, j) for i in range(n) for j in range(n) if rows[i][j] == -1
        )

    def sign(self, a: GroupElement, b: GroupElement) -> int:
        """Value of the factor on degrees ``a`` and ``b`` as an int, +1 or -1."""
        n = self.group.rank
        if len(a) != n or len(b) != n:
            raise ValueError(f"degree vectors must have {n} coordinates")
        parity = 0
        for i, j in self._neg_pairs:
            parity += a[i] * b[j]
        return -1 if parity % 2 else 1

    def scalar(self, context, a: GroupElement, b: GroupElement):
        """The same value as an exact scalar of ``context``."""
        return context.scalar(self.sign(a, b))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Bicharacter)
            and self.group == other.group
            and self.matrix == other.matrix
        )

    def __hash__(self) -> int:
        return hash((self.group, self.matrix))

    def __repr__(self) -> str:
        return f"Bicharacter({self.group!r}, {self.matrix!r})"


def validate_commutation_factor(bichar: Bicharacter) -> CheckReport:
    """Check the commutation-factor axioms on generator pairs.

    Bimultiplicativity holds by construction, so it suffices to check
    eps(gi, gj) * eps(gj, gi) = 1 on generators, plus consistency with the
    torsion: a generator of odd modulus m forces eps(gi, gj)^m = 1, hence
    value +1 for sign-valued factors.
    """
    group = bichar.group
    n = group.rank
    for i in range(n):
        for j in range(n):
            if bichar.matrix[i][j] * bichar.matrix[j][i] != 1:
                return CheckReport(
                    check="commutation_factor",
                    status=FAIL,
                    witness=(f"g{i}", f"g{j}"),
                    detail=f"eps(g{i},g{j})*eps(g{j},g{i}) = "
                    f"{bichar.matrix[i][j] * bichar.matrix[j][i]}",
                )
    for j, m in enumerate(group.torsion):
        if m % 2 == 0:
            continue
        for i in range(n):
            if bichar.matrix[i][j] != 1 or bichar.matrix[j][i] != 1:
                return CheckReport(
                    check="commutation_factor",
                    status=FAIL,
                    witness=(f"g{i}", f"g{j}"),
                    detail=f"generator g{j} has odd modulus {m}, forcing value +1",
                )
    return CheckReport(check="commutation_factor", status=PASS)


# -- stock gradings used by the fixtures and tests ---------------------------


def super_z2() -> tuple[AbelianGroup, Bicharacter]:
    """Z_2 with the super sign (-1)^(i*j)."""
    group = AbelianGroup(torsion=(2,))
    return group, Bicharacter(group, [[-1]])


def z2_pow(n: int) -> tuple[AbelianGroup, Bicharacter]:
    """Z_2^n with sign (-1)^(a1*b1 + ... + an*bn)."""
    group = AbelianGroup(torsion=(2,) * n)
    matrix = [[-1 if i == j else 1 for j in range(n)] for i in range(n)]
    return group, Bicharacter(group, matrix)


def z2xz2_sympl() -> tuple[AbelianGroup, Bicharacter]:
    """Z_2 x Z_2 with sign (-1)^(i1*j2 - i2*j1)."""
    group = AbelianGroup(torsion=(2, 2))
    return group, Bicharacter(group, [[1, -1], [-1, 1]])


def zxz_total() -> tuple[AbelianGroup, Bicharacter]:
    """Z x Z with sign (-1)^((i1+i2)*(j1+j2))."""
    group = AbelianGroup(free=2)
    return group, Bicharacter(group, [[-1, -1], [-1, -1]])


def trivial_grading() -> tuple[AbelianGroup, Bicharacter]:
    """The one-element group; every sign is +1."""
    group = AbelianGroup()
    return group, Bicharacter(group, [])
