"""Sparse polynomials with exact rational coefficients in indexed variables.

A variable x_{j,i} is addressed by a nonzero multi-index j (dimension d1) and
a 1-based component i <= d2. Polynomials are kept in a canonical form: no zero
coefficients, no zero exponents, terms and factors sorted in graded-lex order
on j and then by component. Two equal polynomials therefore compare equal
field by field.
"""

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Union

from src.exceptions import ContractError, DimensionError, MissingVariableError
from src.models.multiindex import MultiIndex

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class VarId:
    """The variable x_{j, comp}."""

    j: MultiIndex
    comp: int = 1

    def __post_init__(self):
        if self.j.is_zero():
            raise ContractError("Variables are indexed by nonzero multi-indices", "j != 0")
        if self.comp < 1:
            raise ContractError(f"Component must be >= 1, got {self.comp}", "comp >= 1")

    def sort_key(self) -> tuple:
        return (self.j.graded_key(), self.comp)

    def render_key(self) -> tuple:
        # larger |j| first, graded-lex inside a grade
        return (-abs(self.j), self.j.graded_key()[1], self.comp)

    def render(self, d2: int) -> str:
        body = "x[" + ",".join(str(e) for e in self.j) + "]"
        return body if d2 == 1 else f"{body}_{self.comp}"

    def render_compact(self, d2: int) -> str:
        if self.j.dim == 1 and d2 == 1:
            return f"x{self.j[0]}"
        return self.render(d2)

    def __str__(self) -> str:
        return f"x[{','.join(str(e) for e in self.j)}]_{self.comp}"


@dataclass(frozen=True)
class Monomial:
    """A product of variables with positive exponents, in canonical order."""

    powers: tuple[tuple[VarId, int], ...] = ()

    def __post_init__(self):
        merged: dict[VarId, int] = defaultdict(int)
        for var, exp in self.powers:
            if exp < 0:
                raise ContractError(f"Negative exponent for {var}", "exponent >= 0")
            merged[var] += exp
        canonical = tuple(
            sorted(((v, e) for v, e in merged.items() if e > 0), key=lambda p: p[0].sort_key())
        )
        object.__setattr__(self, "powers", canonical)

    @classmethod
    def one(cls) -> "Monomial":
        return cls(())

    @classmethod
    def of(cls, var: VarId, exp: int = 1) -> "Monomial":
        return cls(((var, exp),))

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.powers)

    def exponent(self, var: VarId) -> int:
        for v, e in self.powers:
            if v == var:
                return e
        return 0

    def variables(self) -> list[VarId]:
        return [v for v, _ in self.powers]

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.powers + other.powers)

    def sort_key(self) -> tuple:
        return tuple((v.sort_key(), e) for v, e in self.powers)

    def weight(self, d1: int) -> MultiIndex:
        """Sum of j * exponent over the factors."""
        total = MultiIndex.zero(d1)
        for v, e in self.powers:
            total = total + v.j.scale(e)
        return total

    def component_counts(self, d2: int) -> MultiIndex:
        """Total exponent per component, as a multi-index in N^d2."""
        counts = [0] * d2
        for v, e in self.powers:
            counts[v.comp - 1] += e
        return MultiIndex(tuple(counts))

    def render(self, d2: int, compact: bool = False) -> str:
        if compact:
            factors = self.powers
        else:
            factors = tuple(sorted(self.powers, key=lambda p: p[0].render_key()))
        parts = []
        for v, e in factors:
            name = v.render_compact(d2) if compact else v.render(d2)
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)


def _format_term(coeff: Fraction, body: str, first: bool) -> str:
    magnitude = abs(coeff)
    if not body:
        text = str(magnitude)
    elif magnitude == 1:
        text = body
    else:
        text = f"{magnitude}*{body}"
    if first:
        return f"-{text}" if coeff < 0 else text
    return f" - {text}" if coeff < 0 else f" + {text}"


@dataclass(frozen=True)
class SparsePoly:
    """Canonical sparse polynomial over Q in the variables x_{j,i}."""

    d1: int
    d2: int
    terms: tuple[tuple[Monomial, Fraction], ...] = ()

    def __post_init__(self):
        merged: dict[Monomial, Fraction] = defaultdict(Fraction)
        for mono, coeff in self.terms:
            for var in mono.variables():
                if var.j.dim != self.d1 or var.comp > self.d2:
                    raise DimensionError(
                        f"Variable {var} does not fit polynomial dimensions ({self.d1}, {self.d2})"
                    )
            merged[mono] += Fraction(coeff)
        canonical = tuple(
            sorted(((m, c) for m, c in merged.items() if c != 0), key=lambda t: t[0].sort_key())
        )
        object.__setattr__(self, "terms", canonical)

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls, d1: int, d2: int) -> "SparsePoly":
        return cls(d1, d2, ())

    @classmethod
    def constant(cls, value: Scalar, d1: int, d2: int) -> "SparsePoly":
        return cls(d1, d2, ((Monomial.one(), Fraction(value)),))

    @classmethod
    def one(cls, d1: int, d2: int) -> "SparsePoly":
        return cls.constant(1, d1, d2)

    @classmethod
    def variable(cls, var: VarId, d1: int, d2: int) -> "SparsePoly":
        return cls(d1, d2, ((Monomial.of(var), Fraction(1)),))

    @classmethod
    def from_mapping(cls, terms: Mapping[Monomial, Scalar], d1: int, d2: int) -> "SparsePoly":
        return cls(d1, d2, tuple(terms.items()))

    # -- queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def as_dict(self) -> dict[Monomial, Fraction]:
        return dict(self.terms)

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.as_dict().get(mono, Fraction(0))

    def variables(self) -> list[VarId]:
        found = {v for mono, _ in self.terms for v in mono.variables()}
        return sorted(found, key=VarId.sort_key)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for _, c in self.terms)

    # -- arithmetic needed by construction and substitution --------------

    def _check_dims(self, other: "SparsePoly") -> None:
        if (self.d1, self.d2) != (other.d1, other.d2):
            raise DimensionError(
                f"Polynomial dimensions differ: ({self.d1}, {self.d2}) vs ({other.d1}, {other.d2})"
            )

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        self._check_dims(other)
        return SparsePoly(self.d1, self.d2, self.terms + other.terms)

    def scale(self, c: Scalar) -> "SparsePoly":
        c = Fraction(c)
        return SparsePoly(self.d1, self.d2, tuple((m, coeff * c) for m, coeff in self.terms))

    def __mul__(self, other: "SparsePoly") -> "SparsePoly":
        self._check_dims(other)
        products = tuple(
            (m1 * m2, c1 * c2) for m1, c1 in self.terms for m2, c2 in other.terms
        )
        return SparsePoly(self.d1, self.d2, products)

    def derive(self, e: MultiIndex) -> "SparsePoly":
        """Formal derivation D_e: x_{j,i} -> x_{j+e,i}, extended by the product rule."""
        if e.dim != self.d1:
            raise DimensionError(f"Shift {e} does not match d1={self.d1}")
        pieces = []
        for mono, coeff in self.terms:
            for var, exp in mono.powers:
                rest = tuple((v, x - 1 if v == var else x) for v, x in mono.powers)
                shifted = VarId(var.j + e, var.comp)
                pieces.append((Monomial(rest + ((shifted, 1),)), coeff * exp))
        return SparsePoly(self.d1, self.d2, tuple(pieces))

    def substitute_scaled(self, factor: Callable[[VarId], Scalar]) -> "SparsePoly":
        """Substitute every x_{j,i} by factor(x_{j,i}) * x_{j,i}."""
        scaled = []
        for mono, coeff in self.terms:
            for var, exp in mono.powers:
                coeff *= Fraction(factor(var)) ** exp
            scaled.append((mono, coeff))
        return SparsePoly(self.d1, self.d2, tuple(scaled))

    def rename(self, mapping: Callable[[VarId], VarId], d1: int, d2: int) -> "SparsePoly":
        """Rename variables; the result lives in dimensions (d1, d2)."""
        renamed = tuple(
            (Monomial(tuple((mapping(v), e) for v, e in mono.powers)), coeff)
            for mono, coeff in self.terms
        )
        return SparsePoly(d1, d2, renamed)

    def evaluate(self, assignment: Mapping[VarId, Scalar]) -> Fraction:
        """Exact evaluation; every variable of the polynomial needs a value."""
        total = Fraction(0)
        for mono, coeff in self.terms:
            value = coeff
            for var, exp in mono.powers:
                if var not in assignment:
                    raise MissingVariableError(var)
                value *= Fraction(assignment[var]) ** exp
            total += value
        return total

    # -- rendering --------------------------------------------------------

    def render(self) -> str:
        """Plain-text form, e.g. "4*x[3]*x[1] + 3*x[2]^2"."""
        ordered = sorted(
            self.terms,
            key=lambda t: (
                t[0].degree,
                [(v.render_key(), -e) for v, e in sorted(t[0].powers, key=lambda p: p[0].render_key())],
            ),
        )
        return self._join(ordered, compact=False)

    def render_compact(self) -> str:
        """Table style with ascending subscripts, e.g. "4*x1*x3 + 3*x2^2"."""
        ordered = sorted(
            self.terms,
            key=lambda t: (t[0].degree, [(v.sort_key(), -e) for v, e in t[0].powers]),
        )
        return self._join(ordered, compact=True)

    def _join(self, ordered: Iterable[tuple[Monomial, Fraction]], compact: bool) -> str:
        pieces = [
            _format_term(coeff, mono.render(self.d2, compact), first=(i == 0))
            for i, (mono, coeff) in enumerate(ordered)
        ]
        return "".join(pieces) if pieces else "0"

    def to_json(self) -> list[dict]:
        return [
            {
                "coeff": str(coeff),
                "monomial": [[v.j.to_json(), v.comp, e] for v, e in mono.powers],
            }
            for mono, coeff in self.terms
        ]

    def __str__(self) -> str:
        return self.render()
