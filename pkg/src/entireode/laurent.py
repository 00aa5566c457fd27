"""Exact sparse multivariate Laurent polynomials over the Gaussian rationals.

A polynomial in n variables is a finite map from integer exponent vectors
(tuples of length n, negative entries allowed) to nonzero Gaussian-rational
coefficients; the zero polynomial is the empty map.  These are the right-hand
sides p_i of the ODE systems ``dz_i/dt = z_i * p_i(z)`` the package analyses,
and all arithmetic on them is exact.

Text parsing/printing follows the line grammar owned by the cli module:
terms are separated by + and -, a term is an optional coefficient followed by
'*'-joined factors ``z<idx>[^<signed int>]``, and coefficients are rationals
``a/b`` or parenthesised complex rationals ``(a/b+c/di)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from . import lattice
from .rationals import GaussianRational, as_gaussian

ExponentVector = tuple  # tuple[int, ...]


class ParseError(ValueError):
    """Syntax error with a character position (0-based) into the parsed text."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.message = message
        self.position = position


class ZeroAtNegativeExponentError(ArithmeticError):
    """Evaluation point has a zero coordinate where the polynomial has a pole."""


class LaurentPoly:
    """Immutable sparse Laurent polynomial with exact coefficients.

    ``terms`` maps exponent tuples of length ``nvars`` to nonzero
    GaussianRational coefficients.  Construction canonicalises: zero
    coefficients are dropped and int/Fraction coefficients are coerced.
    """

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Mapping | Iterable = ()):
        if nvars < 1:
            raise ValueError("nvars must be positive")
        self.nvars = nvars
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict = {}
        for exp, coeff in items:
            exp = tuple(exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} has length {len(exp)}, expected {nvars}")
            if not all(isinstance(e, int) for e in exp):
                raise ValueError(f"exponent {exp} has non-integer entries")
            coeff = as_gaussian(coeff)
            if coeff:
                acc = clean.get(exp)
                if acc is not None:
                    coeff = acc + coeff
                    if coeff:
                        clean[exp] = coeff
                    else:
                        del clean[exp]
                else:
                    clean[exp] = coeff
        self._terms = clean

    # -- construction helpers ------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, value) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: as_gaussian(value)})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "LaurentPoly":
        """The polynomial z_index (1-based index, matching the z1..zn names)."""
        return cls.monomial(nvars, tuple(1 if j == index - 1 else 0 for j in range(nvars)))

    @classmethod
    def monomial(cls, nvars: int, exponent: Sequence[int], coeff=1) -> "LaurentPoly":
        return cls(nvars, {tuple(exponent): as_gaussian(coeff)})

    # -- inspection ----------------------------------------------------------

    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(exp) for exp in self._terms)

    def constant_coefficient(self) -> GaussianRational:
        return self._terms.get((0,) * self.nvars, GaussianRational.ZERO)

    def coefficient(self, exponent: Sequence[int]) -> GaussianRational:
        return self._terms.get(tuple(exponent), GaussianRational.ZERO)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"LaurentPoly({self.nvars}, {format_laurent(self)!r})"

    def __str__(self) -> str:
        return format_laurent(self)

    # -- ring operations -----------------------------------------------------

    def _check_compatible(self, other: "LaurentPoly"):
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other):
        if isinstance(other, LaurentPoly):
            self._check_compatible(other)
            out = dict(self._terms)
            for exp, c in other._terms.items():
                s = out.get(exp, GaussianRational.ZERO) + c
                if s:
                    out[exp] = s
                else:
                    out.pop(exp, None)
            result = LaurentPoly.__new__(LaurentPoly)
            result.nvars = self.nvars
            result._terms = out
            return result
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, LaurentPoly):
            return self + (-other)
        return NotImplemented

    def __neg__(self):
        result = LaurentPoly.__new__(LaurentPoly)
        result.nvars = self.nvars
        result._terms = {exp: -c for exp, c in self._terms.items()}
        return result

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            self._check_compatible(other)
            out: dict = {}
            for e1, c1 in self._terms.items():
                for e2, c2 in other._terms.items():
                    exp = tuple(a + b for a, b in zip(e1, e2))
                    s = out.get(exp, GaussianRational.ZERO) + c1 * c2
                    if s:
                        out[exp] = s
                    else:
                        out.pop(exp, None)
            result = LaurentPoly.__new__(LaurentPoly)
            result.nvars = self.nvars
            result._terms = out
            return result
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scalar_mul(other)
        return NotImplemented

    __rmul__ = __mul__

    def scalar_mul(self, scalar) -> "LaurentPoly":
        scalar = as_gaussian(scalar)
        if not scalar:
            return LaurentPoly.zero(self.nvars)
        result = LaurentPoly.__new__(LaurentPoly)
        result.nvars = self.nvars
        result._terms = {exp: c * scalar for exp, c in self._terms.items()}
        return result

    # -- calculus ------------------------------------------------------------

    def partial(self, var: int) -> "LaurentPoly":
        """Exact partial derivative with respect to z_var (1-based index)."""
        if not 1 <= var <= self.nvars:
            raise ValueError(f"variable index {var} out of range 1..{self.nvars}")
        j = var - 1
        out: dict = {}
        for exp, c in self._terms.items():
            e = exp[j]
            if e == 0:
                continue
            new = exp[:j] + (e - 1,) + exp[j + 1:]
            s = out.get(new, GaussianRational.ZERO) + c * e
            if s:
                out[new] = s
            else:
                out.pop(new, None)
        return LaurentPoly(self.nvars, out)

    # -- evaluation ----------------------------------------------------------

    def evaluate(self, point: Sequence[complex]) -> complex:
        """Evaluate at a complex point, converting coefficients exactly-then-rounding.

        Raises ZeroAtNegativeExponentError when a coordinate is 0 but some
        term has a negative exponent in that variable.
        """
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.nvars}")
        for j in range(self.nvars):
            if point[j] == 0 and any(exp[j] < 0 for exp in self._terms):
                raise ZeroAtNegativeExponentError(
                    f"coordinate {j + 1} is zero but appears with a negative exponent"
                )
        total = 0j
        for exp, c in self._terms.items():
            v = complex(c)
            for z, e in zip(point, exp):
                if e:
                    v *= z ** e
            total += v
        return total


@dataclass(frozen=True)
class OdeSystem:
    """The system dz_i/dt = z_i * p_i(z), i = 1..n, on the complex torus."""

    n: int
    p: tuple

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("system must have at least one variable")
        if len(self.p) != self.n:
            raise ValueError(f"expected {self.n} components, got {len(self.p)}")
        for i, poly in enumerate(self.p):
            if not isinstance(poly, LaurentPoly):
                raise TypeError(f"component {i + 1} is not a LaurentPoly")
            if poly.nvars != self.n:
                raise ValueError(
                    f"component {i + 1} has {poly.nvars} variables, expected {self.n}"
                )


def support(sys: OdeSystem) -> set:
    """Exponent vectors appearing with nonzero coefficient in any component."""
    out: set = set()
    for poly in sys.p:
        out.update(poly.terms.keys())
    return out


def log_divergence(sys: OdeSystem) -> LaurentPoly:
    """The divergence sum z_i * d p_i / d z_i of the logarithmic vector field.

    Vanishing identically is necessary for the system to preserve the torus
    volume form, hence for all solutions to be entire.
    """
    total = LaurentPoly.zero(sys.n)
    for i in range(1, sys.n + 1):
        zi = LaurentPoly.variable(sys.n, i)
        total = total + zi * sys.p[i - 1].partial(i)
    return total


def substitute_monomials(g: LaurentPoly, mat: "lattice.IntMatrix") -> LaurentPoly:
    """Replace variable j of g by the monomial Z^(row j of mat) and expand."""
    if g.nvars != mat.nrows:
        raise ValueError(f"polynomial has {g.nvars} variables but matrix has {mat.nrows} rows")
    out: dict = {}
    for exp, c in g._terms.items():
        new = tuple(
            sum(exp[j] * mat.entries[j][i] for j in range(mat.nrows))
            for i in range(mat.ncols)
        )
        s = out.get(new, GaussianRational.ZERO) + c
        if s:
            out[new] = s
        else:
            out.pop(new, None)
    return LaurentPoly(mat.ncols, out)


def rewrite_in_basis(f: LaurentPoly, mat: "lattice.IntMatrix") -> LaurentPoly:
    """Express f in the monomials M_j = Z^(row j of mat).

    Every exponent of f must have integer coordinates in the lattice spanned
    by the rows of mat; otherwise lattice.NotInLatticeError is raised.  The
    result is exactly inverted by substitute_monomials with the same matrix.
    """
    if f.nvars != mat.ncols:
        raise ValueError(f"polynomial has {f.nvars} variables but matrix has {mat.ncols} columns")
    if mat.nrows == 0:
        raise ValueError("cannot rewrite into an empty basis")
    solve = lattice.integer_solver(mat)
    return LaurentPoly(mat.nrows, {solve(exp): c for exp, c in f._terms.items()})


# -- text format -------------------------------------------------------------

_TOKEN_RE = re.compile(r"(?P<num>\d+)|(?P<var>z\d+)|(?P<op>[-+*/^()i])|(?P<bad>\S)")


def _tokenize(text: str):
    tokens = []
    for m in _TOKEN_RE.finditer(text):
        if m.lastgroup == "bad":
            raise ParseError(f"unexpected character {m.group()!r}", m.start())
        tokens.append((m.lastgroup, m.group(), m.start()))
    return tokens


class _ExprParser:
    """Recursive-descent parser for the term grammar (see module docstring)."""

    def __init__(self, text: str, nvars: int):
        self.text = text
        self.nvars = nvars
        self.tokens = _tokenize(text)
        self.pos = 0

    def _peek(self):
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return (None, "", len(self.text))

    def _next(self):
        tok = self._peek()
        self.pos += 1
        return tok

    def _expect_op(self, op: str):
        kind, value, at = self._next()
        if kind != "op" or value != op:
            raise ParseError(f"expected {op!r}", at)

    def parse(self) -> LaurentPoly:
        poly = self._expr()
        kind, value, at = self._peek()
        if kind is not None:
            raise ParseError(f"unexpected trailing input {value!r}", at)
        return poly

    def _expr(self) -> LaurentPoly:
        sign = 1
        kind, value, _ = self._peek()
        if kind == "op" and value in "+-":
            self.pos += 1
            sign = -1 if value == "-" else 1
        total = self._term().scalar_mul(sign)
        while True:
            kind, value, _ = self._peek()
            if kind == "op" and value in "+-":
                self.pos += 1
                term = self._term()
                total = total + (term if value == "+" else -term)
            else:
                return total

    def _term(self) -> LaurentPoly:
        kind, value, at = self._peek()
        exps = [0] * self.nvars
        if kind == "num" or (kind == "op" and value == "("):
            coeff = self._coeff()
        elif kind == "var":
            coeff = GaussianRational.ONE
            self._factor(exps)
        else:
            raise ParseError("expected a coefficient or a variable factor", at)
        while True:
            kind, value, _ = self._peek()
            if kind == "op" and value == "*":
                self.pos += 1
                self._factor(exps)
            else:
                break
        return LaurentPoly.monomial(self.nvars, tuple(exps), coeff)

    def _factor(self, exps: list):
        kind, value, at = self._next()
        if kind != "var":
            raise ParseError("expected a variable factor like z1", at)
        idx = int(value[1:])
        if not 1 <= idx <= self.nvars:
            raise ParseError(f"variable index {idx} out of range 1..{self.nvars}", at)
        exponent = 1
        kind, value, _ = self._peek()
        if kind == "op" and value == "^":
            self.pos += 1
            exponent = self._signed_int()
        exps[idx - 1] += exponent

    def _signed_int(self) -> int:
        sign = 1
        kind, value, at = self._next()
        if kind == "op" and value in "+-":
            sign = -1 if value == "-" else 1
            kind, value, at = self._next()
        if kind != "num":
            raise ParseError("expected an integer", at)
        return sign * int(value)

    def _rational(self, signed: bool) -> Fraction:
        sign = 1
        if signed:
            kind, value, _ = self._peek()
            if kind == "op" and value in "+-":
                self.pos += 1
                sign = -1 if value == "-" else 1
        kind, value, at = self._next()
        if kind != "num":
            raise ParseError("expected a number", at)
        num = int(value)
        kind, value, _ = self._peek()
        if kind == "op" and value == "/":
            self.pos += 1
            kind, value, at = self._next()
            if kind != "num":
                raise ParseError("expected a denominator", at)
            den = int(value)
            if den == 0:
                raise ParseError("zero denominator", at)
            return Fraction(sign * num, den)
        return Fraction(sign * num)

    def _coeff(self) -> GaussianRational:
        kind, value, at = self._peek()
        if kind == "num":
            return GaussianRational(self._rational(signed=False))
        # parenthesised complex coefficient: ( re [± im i] )
        self._expect_op("(")
        re_part = self._rational(signed=True)
        kind, value, at = self._peek()
        if kind == "op" and value == ")":
            self.pos += 1
            return GaussianRational(re_part)
        if kind != "op" or value not in "+-":
            raise ParseError("expected ')' or an imaginary part", at)
        self.pos += 1
        im_sign = -1 if value == "-" else 1
        im_part = self._rational(signed=False)
        kind, value, at = self._next()
        if kind != "op" or value != "i":
            raise ParseError("expected 'i' after imaginary part", at)
        self._expect_op(")")
        return GaussianRational(re_part, im_sign * im_part)


def parse_laurent(text: str, nvars: int) -> LaurentPoly:
    """Parse one polynomial expression; '#' starts a comment to end of text."""
    body = text.split("#", 1)[0]
    if not body.strip():
        raise ParseError("empty expression", 0)
    return _ExprParser(body, nvars).parse()


def _format_exponents(exp) -> str:
    parts = []
    for j, e in enumerate(exp):
        if e == 0:
            continue
        parts.append(f"z{j + 1}" if e == 1 else f"z{j + 1}^{e}")
    return "*".join(parts)


def _render_term(exp, coeff: GaussianRational):
    """Return (negative, body) so callers can place +/- separators."""
    factors = _format_exponents(exp)
    if coeff.im == 0:
        negative = coeff.re < 0
        mag = abs(coeff.re)
        if not factors:
            return negative, str(mag)
        if mag == 1:
            return negative, factors
        return negative, f"{mag}*{factors}"
    body = f"({coeff.re}{'+' if coeff.im > 0 else '-'}{abs(coeff.im)}i)"
    if factors:
        body = f"{body}*{factors}"
    return False, body


def format_laurent(f: LaurentPoly) -> str:
    """Deterministic text form: terms in ascending lexicographic exponent order."""
    if f.is_zero():
        return "0"
    pieces = []
    for exp in sorted(f._terms):
        negative, body = _render_term(exp, f._terms[exp])
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces)
