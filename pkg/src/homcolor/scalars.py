"""Exact scalar tower: multivariate polynomials over Q with adjoined square roots.

Every check in this package reduces to an exact zero test on these scalars:
no floats, no tolerances.  A scalar lives in a :class:`ScalarContext` that
declares its polynomial parameters (names such as ``lambda1``) and its root
symbols (``sqrt2`` with radicand 2, reduced by ``sqrt2*sqrt2 = 2``).

Canonical form is a sorted tuple of (monomial, coefficient) pairs with
nonzero ``Fraction`` coefficients; root symbols carry exponent at most one
after reduction, and zero is the empty sum, so equal values are structurally
equal.  Uniqueness of the form assumes the declared radicands are
multiplicatively independent modulo squares (a single root, as the bundled
fixtures use, is always fine).

Division is deliberately absent: identity checking never divides.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping

__all__ = [
    "ScalarError",
    "ContextMismatchError",
    "ScalarParseError",
    "ScalarContext",
    "Scalar",
    "sqrt_mod",
]

_NAME_RE = re.compile(r"[a-z][a-z0-9_]*\Z")
_TOKEN_RE = re.compile(r"(\d+)|([a-z][a-z0-9_]*)|([+\-*/()])")

# Monomial: ((symbol, exponent), ...) sorted by context symbol rank, exponents >= 1.
Monomial = tuple[tuple[str, int], ...]


class ScalarError(ValueError):
    """Base error for scalar construction, parsing, and arithmetic."""


class ContextMismatchError(ScalarError):
    """Arithmetic attempted between scalars of different contexts."""


class ScalarParseError(ScalarError):
    """Input text does not conform to the scalar grammar."""


def _as_fraction(value: int | str | Fraction) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ScalarError(f"not an exact rational: {value!r}") from exc
    raise ScalarError(f"not an exact rational: {value!r}")


class ScalarContext:
    """Declared symbol universe for a family of scalars.

    ``params`` are polynomial indeterminates; ``roots`` maps a symbol name to
    its positive rational radicand q, with the reduction rule r*r = q.  Root
    symbols sort before parameters in the monomial order (lexicographic on
    names inside each class), which fixes a deterministic term order.
    """

    __slots__ = ("params", "roots", "_rank", "_key", "_zero", "_one")

    def __init__(
        self,
        params: Iterable[str] = (),
        roots: Mapping[str, int | str | Fraction] | None = None,
    ):
        params = tuple(sorted(set(params)))
        root_items = {name: _as_fraction(q) for name, q in (roots or {}).items()}
        for name in (*params, *root_items):
            if not _NAME_RE.match(name):
                raise ScalarError(f"invalid symbol name: {name!r}")
            if name == "sqrt":
                raise ScalarError("the name 'sqrt' is reserved for radicand syntax")
        overlap = set(params) & set(root_items)
        if overlap:
            raise ScalarError(f"names declared both as param and root: {sorted(overlap)}")
        for name, q in root_items.items():
            if q <= 0:
                raise ScalarError(f"radicand of {name!r} must be positive, got {q}")
        radicands = list(root_items.values())
        if len(set(radicands)) != len(radicands):
            raise ScalarError("duplicate radicands make sqrt(q) syntax ambiguous")

        self.params = params
        self.roots = dict(sorted(root_items.items()))
        # Roots rank before params; ties broken by name.
        ordered = list(self.roots) + list(self.params)
        self._rank = {name: i for i, name in enumerate(ordered)}
        self._key = (self.params, tuple(self.roots.items()))
        self._zero = Scalar(self, ())
        self._one = Scalar(self, (((), Fraction(1)),))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ScalarContext) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"ScalarContext(params={list(self.params)!r}, roots={ {k: str(v) for k, v in self.roots.items()} !r})"

    @property
    def zero(self) -> Scalar:
        return self._zero

    @property
    def one(self) -> Scalar:
        return self._one

    def scalar(self, value: int | str | Fraction | Scalar) -> Scalar:
        """Coerce ``value`` into this context.

        Strings are parsed with the scalar grammar; numbers become constants;
        scalars from an equal context pass through, others are rebased.
        """
        if isinstance(value, Scalar):
            if value.context == self:
                return value
            return value.rebase(self)
        if isinstance(value, str):
            return self.parse(value)
        coeff = _as_fraction(value)
        if coeff == 0:
            return self._zero
        return Scalar(self, (((), coeff),))

    def param(self, name: str) -> Scalar:
        if name not in self.params:
            raise ScalarError(f"undeclared parameter: {name!r}")
        return Scalar(self, ((((name, 1),), Fraction(1)),))

    def root(self, name: str) -> Scalar:
        if name not in self.roots:
            raise ScalarError(f"undeclared root symbol: {name!r}")
        return Scalar(self, ((((name, 1),), Fraction(1)),))

    def union(self, other: ScalarContext) -> ScalarContext:
        """Smallest context containing both symbol sets; radicands must agree."""
        roots = dict(self.roots)
        for name, q in other.roots.items():
            if name in roots and roots[name] != q:
                raise ScalarError(f"root {name!r} declared with conflicting radicands")
            roots[name] = q
        return ScalarContext(set(self.params) | set(other.params), roots)

    # -- canonicalization ---------------------------------------------------

    def _mono_key(self, mono: Monomial) -> tuple:
        return tuple((self._rank[s], e) for s, e in mono)

    def _from_mapping(self, terms: dict[Monomial, Fraction]) -> Scalar:
        kept = [(m, c) for m, c in terms.items() if c != 0]
        kept.sort(key=lambda item: self._mono_key(item[0]))
        return Scalar(self, tuple(kept))

    def _mul_monomials(self, a: Monomial, b: Monomial) -> tuple[Monomial, Fraction]:
        """Merge exponents and reduce roots by r*r = q; returns (monomial, factor)."""
        exps: dict[str, int] = {}
        for sym, e in a:
            exps[sym] = exps.get(sym, 0) + e
        for sym, e in b:
            exps[sym] = exps.get(sym, 0) + e
        factor = Fraction(1)
        out = []
        for sym in sorted(exps, key=self._rank.__getitem__):
            e = exps[sym]
            q = self.roots.get(sym)
            if q is not None and e >= 2:
                factor *= q ** (e // 2)
                e %= 2
            if e:
                out.append((sym, e))
        return tuple(out), factor

    # -- parsing ------------------------------------------------------------

    def parse(self, text: str) -> Scalar:
        """Parse the scalar grammar: integers, fractions p/q, declared names,
        sqrt(q) for declared radicands, ``+ - *`` and parentheses."""
        return _Parser(self, text).parse()


class Scalar:
    """Immutable canonical-form element of the scalar tower.

    Supports ``+ - *`` and non-negative integer powers; no division.  Mixed
    arithmetic with ``int`` and ``Fraction`` coerces the number into the
    scalar's context.
    """

    __slots__ = ("context", "terms")

    def __init__(self, context: ScalarContext, terms: tuple[tuple[Monomial, Fraction], ...]):
        self.context = context
        self.terms = terms

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == (((), Fraction(1)),)

    def is_rational(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0] == ())

    def as_fraction(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_rational():
            raise ScalarError(f"not a rational constant: {self}")
        return self.terms[0][1]

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other: object) -> "Scalar | None":
        if isinstance(other, Scalar):
            if other.context != self.context:
                raise ContextMismatchError(
                    "scalars come from different contexts: "
                    f"{self.context!r} vs {other.context!r}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.context.scalar(other)
        return None

    def __add__(self, other: object) -> "Scalar":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        if not self.terms:
            return rhs
        if not rhs.terms:
            return self
        acc = dict(self.terms)
        for mono, coeff in rhs.terms:
            acc[mono] = acc.get(mono, Fraction(0)) + coeff
        return self.context._from_mapping(acc)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar(self.context, tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other: object) -> "Scalar":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> "Scalar":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return rhs + (-self)

    def __mul__(self, other: object) -> "Scalar":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        if not self.terms or not rhs.terms:
            return self.context.zero
        ctx = self.context
        acc: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms:
            for m2, c2 in rhs.terms:
                mono, factor = ctx._mul_monomials(m1, m2)
                acc[mono] = acc.get(mono, Fraction(0)) + c1 * c2 * factor
        return ctx._from_mapping(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Scalar":
        if not isinstance(n, int) or n < 0:
            raise ScalarError(f"only non-negative integer powers are defined, got {n!r}")
        out = self.context.one
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.context.scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.context == other.context and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.context._key, self.terms))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- substitution and evaluation -----------------------------------------

    def substitute(self, assignment: Mapping[str, int | str | Fraction | "Scalar"]) -> "Scalar":
        """Replace parameters by values (scalars in the same context allowed).

        Root symbols cannot be substituted: they have no exact rational value.
        """
        for name in assignment:
            if name in self.context.roots:
                raise ScalarError(f"cannot substitute root symbol {name!r}")
            if name not in self.context.params:
                raise ScalarError(f"undeclared parameter: {name!r}")
        values = {name: self.context.scalar(v) for name, v in assignment.items()}
        total = self.context.zero
        for mono, coeff in self.terms:
            piece = self.context.scalar(coeff)
            for sym, e in mono:
                if sym in values:
                    piece = piece * values[sym] ** e
                else:
                    piece = piece * Scalar(self.context, ((((sym, 1),), Fraction(1)),)) ** e
            total = total + piece
        return total

    def eval_float(self, assignment: Mapping[str, float] | None = None) -> float:
        """Float evaluation for the optional sanity oracle; never used by checks."""
        assignment = assignment or {}
        total = 0.0
        for mono, coeff in self.terms:
            value = float(coeff)
            for sym, e in mono:
                if sym in self.context.roots:
                    value *= math.sqrt(float(self.context.roots[sym])) ** e
                elif sym in assignment:
                    value *= float(assignment[sym]) ** e
                else:
                    raise ScalarError(f"no value supplied for parameter {sym!r}")
            total += value
        return total

    def eval_mod(
        self,
        prime: int,
        assignment: Mapping[str, int] | None = None,
        root_residues: Mapping[str, int] | None = None,
    ) -> int:
        """Evaluate in GF(prime), roots replaced by residues with r*r = q.

        Residues are found by search when not supplied; a radicand that is not
        a square mod ``prime`` raises.
        """
        assignment = assignment or {}
        residues = dict(root_residues or {})
        for sym, q in self.context.roots.items():
            if sym not in residues:
                residues[sym] = sqrt_mod(q, prime)
        total = 0
        for mono, coeff in self.terms:
            value = coeff.numerator * pow(coeff.denominator, -1, prime) % prime
            for sym, e in mono:
                if sym in residues:
                    value = value * pow(residues[sym], e, prime) % prime
                elif sym in assignment:
                    value = value * pow(assignment[sym] % prime, e, prime) % prime
                else:
                    raise ScalarError(f"no value supplied for parameter {sym!r}")
            total = (total + value) % prime
        return total

    def rebase(self, context: ScalarContext) -> "Scalar":
        """Reinterpret in a larger context declaring the same symbols."""
        for mono, _ in self.terms:
            for sym, _e in mono:
                if sym in self.context.roots:
                    if context.roots.get(sym) != self.context.roots[sym]:
                        raise ScalarError(f"target context lacks root {sym!r}")
                elif sym not in context.params:
                    raise ScalarError(f"target context lacks parameter {sym!r}")
        acc: dict[Monomial, Fraction] = {}
        for mono, coeff in self.terms:
            acc[mono] = acc.get(mono, Fraction(0)) + coeff
        return context._from_mapping(acc)

    # -- formatting -----------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for i, (mono, coeff) in enumerate(self.terms):
            body = "*".join("*".join([sym] * e) for sym, e in mono)
            mag = abs(coeff)
            if not body:
                piece = str(mag)
            elif mag == 1:
                piece = body
            else:
                piece = f"{mag}*{body}"
            if i == 0:
                parts.append(piece if coeff > 0 else f"-{piece}")
            else:
                parts.append(f" + {piece}" if coeff > 0 else f" - {piece}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Scalar({self})"


def sqrt_mod(q: Fraction | int, prime: int) -> int:
    """Smallest residue r with r*r = q in GF(prime), by direct search."""
    q = _as_fraction(q)
    target = q.numerator * pow(q.denominator, -1, prime) % prime
    for r in range(prime):
        if r * r % prime == target:
            return r
    raise ScalarError(f"{q} is not a square modulo {prime}")


class _Parser:
    """Recursive-descent parser for the textual scalar grammar."""

    def __init__(self, context: ScalarContext, text: str):
        self.context = context
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        for match in _TOKEN_RE.finditer(text):
            between = text[pos : match.start()]
            if between.strip():
                raise ScalarParseError(f"unexpected character {between.strip()[0]!r} in {text!r}")
            pos = match.end()
            if match.group(1):
                self.tokens.append(("int", match.group(1), match.start()))
            elif match.group(2):
                self.tokens.append(("name", match.group(2), match.start()))
            else:
                self.tokens.append(("op", match.group(3), match.start()))
        if text[pos:].strip():
            raise ScalarParseError(f"unexpected character {text[pos:].strip()[0]!r} in {text!r}")
        self.i = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise ScalarParseError(f"unexpected end of input in {self.text!r}")
        self.i += 1
        return tok

    def expect_op(self, op: str) -> None:
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            raise ScalarParseError(f"expected {op!r} at position {tok[2]} in {self.text!r}")

    def parse(self) -> Scalar:
        value = self.expr()
        tok = self.peek()
        if tok is not None:
            raise ScalarParseError(f"trailing input at position {tok[2]} in {self.text!r}")
        return value

    def expr(self) -> Scalar:
        value = self.term()
        while True:
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] in "+-":
                self.take()
                rhs = self.term()
                value = value + rhs if tok[1] == "+" else value - rhs
            else:
                return value

    def term(self) -> Scalar:
        value = self.unary()
        while True:
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] == "*":
                self.take()
                value = value * self.unary()
            else:
                return value

    def unary(self) -> Scalar:
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "-":
            self.take()
            return -self.unary()
        return self.atom()

    def atom(self) -> Scalar:
        tok = self.take()
        kind, text, pos = tok
        if kind == "int":
            return self.context.scalar(self.number_tail(int(text)))
        if kind == "name":
            if text == "sqrt":
                self.expect_op("(")
                inner = self.take()
                if inner[0] != "int":
                    raise ScalarParseError(
                        f"sqrt() takes a rational literal, got {inner[1]!r} at position {inner[2]}"
                    )
                radicand = self.number_tail(int(inner[1]))
                self.expect_op(")")
                for name, q in self.context.roots.items():
                    if q == radicand:
                        return self.context.root(name)
                raise ScalarParseError(f"no declared root with radicand {radicand}")
            if text in self.context.params:
                return self.context.param(text)
            if text in self.context.roots:
                return self.context.root(text)
            raise ScalarParseError(f"undeclared name {text!r} at position {pos}")
        if kind == "op" and text == "(":
            value = self.expr()
            self.expect_op(")")
            return value
        raise ScalarParseError(f"unexpected token {text!r} at position {pos}")

    def number_tail(self, numerator: int) -> Fraction:
        """Consume an optional '/ INT' after an integer literal."""
        tok = self.peek()
        after = self.tokens[self.i + 1] if self.i + 1 < len(self.tokens) else None
        if tok and tok[0] == "op" and tok[1] == "/" and after and after[0] == "int":
            self.take()
            den = int(self.take()[1])
            if den == 0:
                raise ScalarParseError("zero denominator")
            return Fraction(numerator, den)
        return Fraction(numerator)
