"""Shared test helpers: fixture perturbation and structural comparison."""

from homcolor.core import AlgebraPresentation, BilinearProduct


def perturb(A: AlgebraPresentation, role: str, i: int, j: int, k: int, delta) -> AlgebraPresentation:
    """Add ``delta`` to the structure constant c[i][j][k] of ``role``.

    The target component must respect the grading, otherwise the rebuilt
    product raises (the perturbation would not be representable).
    """
    entries = {key: dict(cell) for key, cell in A.product(role).table.items()}
    cell = entries.setdefault((i, j), {})
    cell[k] = cell.get(k, A.context.zero) + A.context.scalar(delta)
    products = dict(A.products)
    products[role] = BilinearProduct(A.space, A.context, entries)
    return A.with_products(products)


def graded_targets(A: AlgebraPresentation, i: int, j: int) -> list[int]:
    """Basis indices a product of e_i and e_j may legally land on."""
    want = A.space.group.add(A.space.degree(i), A.space.degree(j))
    return [k for k in range(A.dim) if A.space.degree(k) == want]
