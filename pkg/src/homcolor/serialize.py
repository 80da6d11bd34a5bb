"""JSON input format: presentations, action bundles, matched pairs, reports.

The document layout (all matrices row-major, scalars in the textual scalar
grammar)::

    {"format": 1,
     "group": {"torsion": [2], "free": 0},
     "bichar": [[-1]],
     "basis": [{"name": "e1", "deg": [0]}, ...],
     "products": {"dot": [["e1", "e2", [["e3", "-2"]]], ...], ...},
     "alpha": [["sqrt2", "0", ...], ...],
     "params": ["lambda1", ...],
     "roots": {"sqrt2": 2},
     "module": {"basis": [...], "beta": [[...]],
                "actions": {"l": {"e1": [[...]], ...}, ...}}}

``alpha`` defaults to the identity and ``module`` is optional.  Dumping a
presentation produced by any construction re-parses to an equal value, and
dumps are deterministic (fixed key order, entries sorted), so identical
inputs give byte-identical files.
"""

from __future__ import annotations

import json
from typing import Any, Mapping

from .constructions import MatchedPairData
from .core import (
    AlgebraPresentation,
    BilinearProduct,
    GradedSpace,
    LinearMap,
    role_sort_key,
)
from .grading import AbelianGroup, Bicharacter
from .representations import ActionBundle
from .scalars import Scalar, ScalarContext, ScalarError

__all__ = [
    "LoadError",
    "FORMAT_VERSION",
    "load_presentation",
    "load_presentation_file",
    "load_bundle",
    "load_matched_pair_file",
    "load_linear_map",
    "dump_presentation",
    "dump_presentation_file",
    "substitute_presentation",
]

FORMAT_VERSION = 1


class LoadError(ValueError):
    """Input document rejected; the message names the offending field."""


def _get(doc: Mapping, field: str, where: str):
    if field not in doc:
        raise LoadError(f"missing field {where}{field}")
    return doc[field]


def _context_from(doc: Mapping, where: str = "") -> ScalarContext:
    params = doc.get("params", [])
    roots = doc.get("roots", {})
    try:
        return ScalarContext(params, roots)
    except ScalarError as exc:
        raise LoadError(f"{where}params/roots: {exc}") from exc


def _scalar(ctx: ScalarContext, value: Any, where: str) -> Scalar:
    try:
        return ctx.scalar(value if isinstance(value, str) else int(value))
    except (ScalarError, TypeError, ValueError) as exc:
        raise LoadError(f"{where}: {exc}") from exc


def _matrix(
    ctx: ScalarContext,
    source: GradedSpace,
    target: GradedSpace,
    rows: Any,
    where: str,
    degree=None,
) -> LinearMap:
    if not isinstance(rows, list):
        raise LoadError(f"{where}: expected a row-major matrix")
    try:
        scalars = [
            [_scalar(ctx, entry, f"{where}[{r}][{c}]") for c, entry in enumerate(row)]
            for r, row in enumerate(rows)
        ]
        return LinearMap.from_rows(source, target, ctx, scalars, degree)
    except ValueError as exc:
        if isinstance(exc, LoadError):
            raise
        raise LoadError(f"{where}: {exc}") from exc


def _space_from(group: AbelianGroup, basis: Any, where: str) -> GradedSpace:
    if not isinstance(basis, list) or not basis:
        raise LoadError(f"{where}basis: expected a non-empty list")
    names, degrees = [], []
    for k, item in enumerate(basis):
        if not isinstance(item, dict):
            raise LoadError(f"{where}basis[{k}]: expected an object")
        names.append(_get(item, "name", f"{where}basis[{k}]."))
        degrees.append(_get(item, "deg", f"{where}basis[{k}]."))
    try:
        return GradedSpace(group, names, degrees)
    except ValueError as exc:
        raise LoadError(f"{where}basis: {exc}") from exc


def load_presentation(doc: Mapping, where: str = "") -> AlgebraPresentation:
    """Build a presentation from a parsed JSON document."""
    if doc.get("format", FORMAT_VERSION) != FORMAT_VERSION:
        raise LoadError(f"{where}format: unsupported version {doc.get('format')!r}")
    group_doc = _get(doc, "group", where)
    try:
        group = AbelianGroup(
            torsion=tuple(group_doc.get("torsion", ())), free=group_doc.get("free", 0)
        )
    except (TypeError, ValueError, AttributeError) as exc:
        raise LoadError(f"{where}group: {exc}") from exc
    try:
        bichar = Bicharacter(group, _get(doc, "bichar", where))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, LoadError):
            raise
        raise LoadError(f"{where}bichar: {exc}") from exc
    ctx = _context_from(doc, where)
    space = _space_from(group, _get(doc, "basis", where), where)

    products = {}
    for role, rules in sorted(_get(doc, "products", where).items(), key=lambda kv: role_sort_key(kv[0])):
        entries: dict[tuple[int, int], dict[int, Scalar]] = {}
        if not isinstance(rules, list):
            raise LoadError(f"{where}products.{role}: expected a list of rules")
        for k, rule in enumerate(rules):
            spot = f"{where}products.{role}[{k}]"
            if not (isinstance(rule, list) and len(rule) == 3):
                raise LoadError(f"{spot}: expected [left, right, [[name, scalar], ...]]")
            left, right, cell = rule
            try:
                i, j = space.index(left), space.index(right)
            except KeyError as exc:
                raise LoadError(f"{spot}: {exc.args[0]}") from exc
            vec = entries.setdefault((i, j), {})
            for m, component in enumerate(cell):
                if not (isinstance(component, list) and len(component) == 2):
                    raise LoadError(f"{spot} component {m}: expected [name, scalar]")
                name, value = component
                try:
                    target = space.index(name)
                except KeyError as exc:
                    raise LoadError(f"{spot} component {m}: {exc.args[0]}") from exc
                s = _scalar(ctx, value, f"{spot} component {m}")
                vec[target] = vec.get(target, ctx.zero) + s
        try:
            products[role] = BilinearProduct(space, ctx, entries)
        except ValueError as exc:
            raise LoadError(f"{where}products.{role}: {exc}") from exc

    alpha = None
    if "alpha" in doc:
        alpha = _matrix(ctx, space, space, doc["alpha"], f"{where}alpha")
    try:
        return AlgebraPresentation(space, bichar, ctx, products, alpha)
    except ValueError as exc:
        raise LoadError(f"{where}: {exc}") from exc


def load_bundle(doc: Mapping, presentation: AlgebraPresentation, where: str = "module.") -> ActionBundle:
    """Build the optional ``module`` block against a loaded presentation."""
    ctx = presentation.context
    module = _space_from(presentation.space.group, _get(doc, "basis", where), where)
    beta = _matrix(ctx, module, module, _get(doc, "beta", where), f"{where}beta")
    actions: dict[str, list[LinearMap]] = {}
    for name, per_basis in sorted(_get(doc, "actions", where).items()):
        if name not in ("s", "l", "r", "rho"):
            raise LoadError(f"{where}actions.{name}: unknown action role")
        family = []
        for i, basis_name in enumerate(presentation.names):
            rows = per_basis.get(basis_name)
            if rows is None:
                family.append(
                    LinearMap.zero(module, module, ctx, presentation.space.degree(i))
                )
                continue
            spot = f"{where}actions.{name}.{basis_name}"
            family.append(
                _matrix(ctx, module, module, rows, spot, presentation.space.degree(i))
            )
        actions[name] = family
    try:
        return ActionBundle(presentation.space, module, beta, ctx, actions)
    except ValueError as exc:
        raise LoadError(f"{where}: {exc}") from exc


def load_presentation_file(path) -> tuple[AlgebraPresentation, ActionBundle | None]:
    with open(path) as handle:
        try:
            doc = json.load(handle)
        except json.JSONDecodeError as exc:
            raise LoadError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    presentation = load_presentation(doc)
    bundle = load_bundle(doc["module"], presentation) if "module" in doc else None
    return presentation, bundle


def load_matched_pair_file(path) -> MatchedPairData:
    """Read ``{"a": ..., "b": ..., "actions_a_on_b": ..., "actions_b_on_a": ...}``."""
    with open(path) as handle:
        try:
            doc = json.load(handle)
        except json.JSONDecodeError as exc:
            raise LoadError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    a = load_presentation(_get(doc, "a", ""), "a.")
    b = load_presentation(_get(doc, "b", ""), "b.")
    ab_doc = {
        "basis": [{"name": n, "deg": list(d)} for n, d in zip(b.names, b.space.degrees)],
        "beta": [[str(s) for s in row] for row in b.alpha.rows()],
        "actions": _get(doc, "actions_a_on_b", ""),
    }
    ba_doc = {
        "basis": [{"name": n, "deg": list(d)} for n, d in zip(a.names, a.space.degrees)],
        "beta": [[str(s) for s in row] for row in a.alpha.rows()],
        "actions": _get(doc, "actions_b_on_a", ""),
    }
    ab = load_bundle(ab_doc, a, "actions_a_on_b.")
    ba = load_bundle(ba_doc, b, "actions_b_on_a.")
    try:
        return MatchedPairData(a, b, ab, ba)
    except ValueError as exc:
        raise LoadError(str(exc)) from exc


def load_linear_map(path, presentation: AlgebraPresentation) -> LinearMap:
    """Read ``{"map": [[...]]}`` as an even endomorphism of the presentation."""
    with open(path) as handle:
        try:
            doc = json.load(handle)
        except json.JSONDecodeError as exc:
            raise LoadError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return _matrix(
        presentation.context,
        presentation.space,
        presentation.space,
        _get(doc, "map", ""),
        "map",
    )


def dump_presentation(presentation: AlgebraPresentation) -> dict:
    group = presentation.space.group
    doc: dict = {
        "format": FORMAT_VERSION,
        "group": {"torsion": list(group.torsion), "free": group.free},
        "bichar": [list(row) for row in presentation.bichar.matrix],
        "basis": [
            {"name": name, "deg": list(deg)}
            for name, deg in zip(presentation.names, presentation.space.degrees)
        ],
        "products": {
            role: [
                [
                    presentation.names[i],
                    presentation.names[j],
                    [[presentation.names[k], str(s)] for k, s in cell],
                ]
                for (i, j), cell in sorted(product.table.items())
            ]
            for role, product in presentation.products.items()
        },
        "alpha": [[str(s) for s in row] for row in presentation.alpha.rows()],
    }
    if presentation.context.params:
        doc["params"] = list(presentation.context.params)
    if presentation.context.roots:
        doc["roots"] = {name: str(q) for name, q in presentation.context.roots.items()}
    return doc


def dump_presentation_file(presentation: AlgebraPresentation, path) -> None:
    with open(path, "w") as handle:
        json.dump(dump_presentation(presentation), handle, indent=2)
        handle.write("\n")


def substitute_presentation(
    presentation: AlgebraPresentation, assignment: Mapping[str, str | int]
) -> AlgebraPresentation:
    """Numeric spot-check helper: substitute parameters in every entry."""
    ctx = presentation.context
    values = {name: ctx.scalar(v) for name, v in assignment.items()}
    products = {}
    for role, product in presentation.products.items():
        entries = {
            key: {k: s.substitute(values) for k, s in cell}
            for key, cell in product.table.items()
        }
        products[role] = BilinearProduct(presentation.space, ctx, entries)
    columns = [
        {k: s.substitute(values) for k, s in presentation.alpha.image(i).items()}
        for i in range(presentation.dim)
    ]
    alpha = LinearMap(presentation.space, presentation.space, ctx, columns)
    return AlgebraPresentation(presentation.space, presentation.bichar, ctx, products, alpha)
