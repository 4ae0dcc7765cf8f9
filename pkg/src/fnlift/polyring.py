"""Sparse multivariate polynomials with exact rational coefficients.

Variables are ordered ``(x1, ..., xn, y1, ..., yn)``; a polynomial in ``2n``
variables stores a map from exponent tuples to nonzero :class:`Fraction`
coefficients.  Every coefficient tensor in the package holds these objects.
"""

from __future__ import annotations

import ast
from fractions import Fraction
from math import lcm
from operator import add
from numbers import Rational
from typing import Iterable, Mapping, Sequence

__all__ = [
    "Poly",
    "arith",
    "diff",
    "evaluate",
    "is_zero",
    "parse_poly",
    "variable_names",
]


def variable_names(nvars: int) -> list[str]:
    """Names of the coordinate variables, ``x, y`` when there are only two."""
    if nvars % 2:
        return [f"z{i + 1}" for i in range(nvars)]
    n = nvars // 2
    if n == 1:
        return ["x", "y"]
    return [f"x{i + 1}" for i in range(n)] + [f"y{i + 1}" for i in range(n)]


def _integer_terms(terms: Mapping[tuple, Fraction]) -> tuple[int, list[tuple[tuple, int]]]:
    """A common denominator ``d`` and the terms with coefficients scaled by ``d``."""
    d = lcm(*(c.denominator for c in terms.values()))
    return d, [(e, c.numerator * (d // c.denominator)) for e, c in terms.items()]


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"cannot use {type(c).__name__} as an exact coefficient")


class Poly:
    """Immutable polynomial over the rationals in ``nvars`` variables."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple, Fraction] | None = None, *, _trusted=False):
        self.nvars = nvars
        if terms is None:
            self.terms = {}
        elif _trusted:
            self.terms = terms
        else:
            clean = {}
            for exps, c in terms.items():
                exps = tuple(int(e) for e in exps)
                if len(exps) != nvars or any(e < 0 for e in exps):
                    raise ValueError(f"bad exponent vector {exps} for {nvars} variables")
                c = _as_fraction(c)
                if c:
                    clean[exps] = clean.get(exps, 0) + c
            self.terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars, {}, _trusted=True)

    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        c = _as_fraction(c)
        if not c:
            return cls.zero(nvars)
        return cls(nvars, {(0,) * nvars: c}, _trusted=True)

    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        exps = [0] * nvars
        exps[i] = 1
        return cls(nvars, {tuple(exps): Fraction(1)}, _trusted=True)

    @classmethod
    def monomial(cls, nvars: int, exps: Sequence[int], c=1) -> "Poly":
        return cls(nvars, {tuple(exps): c})

    # -- coercion -----------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError(f"variable-count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return Poly.const(self.nvars, other)
        return NotImplemented

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s += c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Poly(self.nvars, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                return Poly.zero(self.nvars)
            if other == 1:
                return self
            return Poly(self.nvars, {e: c * other for e, c in self.terms.items()}, _trusted=True)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return Poly.zero(self.nvars)
        # Clear denominators so the double loop runs on Python ints.
        d1, t1 = _integer_terms(self.terms)
        d2, t2 = _integer_terms(other.terms)
        out: dict = {}
        for e1, c1 in t1:
            for e2, c2 in t2:
                e = tuple(map(add, e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        den = d1 * d2
        return Poly(self.nvars, {e: Fraction(c, den) for e, c in out.items() if c}, _trusted=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # only division by a nonzero rational constant is closed in the ring
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = Poly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison -------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == Poly.const(self.nvars, other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- calculus and evaluation ---------------------------------------------------

    def diff(self, var: int) -> "Poly":
        if not 0 <= var < self.nvars:
            raise IndexError(f"variable index {var} out of range for {self.nvars} variables")
        out = {}
        for e, c in self.terms.items():
            k = e[var]
            if k:
                e2 = e[:var] + (k - 1,) + e[var + 1:]
                out[e2] = c * k
        return Poly(self.nvars, out, _trusted=True)

    def __call__(self, point: Sequence) -> Fraction:
        return self.eval(point)

    def eval(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError(f"point has length {len(point)}, expected {self.nvars}")
        pt = [_as_fraction(p) for p in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for p, k in zip(pt, e):
                if k:
                    term *= p ** k
            total += term
        return total

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, indices: Iterable[int]) -> set[int]:
        """Set of partial degrees in the given variables over all terms."""
        idx = list(indices)
        return {sum(e[i] for i in idx) for e in self.terms}

    def substitute_linear(self, matrix: Sequence[Sequence[Fraction]]) -> "Poly":
        """Compose with the linear map ``z_i -> sum_j matrix[i][j] w_j``."""
        images = []
        for row in matrix:
            p = Poly.zero(self.nvars)
            for j, a in enumerate(row):
                if a:
                    p = p + Poly.var(self.nvars, j) * _as_fraction(a)
            images.append(p)
        out = Poly.zero(self.nvars)
        for e, c in self.terms.items():
            term = Poly.const(self.nvars, c)
            for img, k in zip(images, e):
                if k:
                    term = term * img ** k
            out = out + term
        return out

    # -- exact division -------------------------------------------------------------

    def leading(self):
        e = max(self.terms)
        return e, self.terms[e]

    def divexact(self, other: "Poly") -> "Poly | None":
        """Quotient if ``other`` divides ``self`` exactly, else ``None``."""
        other = self._coerce(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        le, lc = other.leading()
        rem = self
        quot = Poly.zero(self.nvars)
        while rem.terms:
            e, c = rem.leading()
            shift = tuple(a - b for a, b in zip(e, le))
            if any(s < 0 for s in shift):
                return None
            q = Poly(self.nvars, {shift: c / lc}, _trusted=True)
            quot = quot + q
            rem = rem - q * other
        return quot

    # -- serialization ------------------------------------------------------------------

    def to_records(self) -> list[dict]:
        return [
            {"coeffs": str(c), "exps": list(e)}
            for e, c in sorted(self.terms.items(), reverse=True)
        ]

    @classmethod
    def from_records(cls, nvars: int, records: Iterable[Mapping]) -> "Poly":
        terms: dict = {}
        for rec in records:
            exps = tuple(rec["exps"])
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {list(exps)} does not have {nvars} entries")
            terms[exps] = terms.get(exps, 0) + Fraction(str(rec["coeffs"]))
        return cls(nvars, terms)

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = names or variable_names(self.nvars)
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append((sign, body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Poly({self.to_str()!r}, nvars={self.nvars})"


def arith(a: Poly, b: Poly, kind: str) -> Poly:
    """Add, subtract or multiply two polynomials over the same variables."""
    if a.nvars != b.nvars:
        raise ValueError(f"variable-count mismatch: {a.nvars} vs {b.nvars}")
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown operation {kind!r}")


def diff(p: Poly, var: int) -> Poly:
    return p.diff(var)


def evaluate(p: Poly, point: Sequence) -> Fraction:
    return p.eval(point)


def is_zero(p: Poly) -> bool:
    return p.is_zero()


_BINOPS = {ast.Add: "__add__", ast.Sub: "__sub__", ast.Mult: "__mul__"}


def parse_poly(text: str, nvars: int, names: Sequence[str] | None = None) -> Poly:
    """Parse an expression such as ``"x*y^2 - 1/2*y"`` into a :class:`Poly`.

    Accepts ``+ - * / ^ **``, parentheses, integer literals and the variable
    names from :func:`variable_names` (``x1``/``y1`` are also accepted when
    ``n == 1``).  Division is allowed only by nonzero constants.
    """
    text = text.strip()
    if not text:
        return Poly.zero(nvars)
    names = list(names or variable_names(nvars))
    lookup = {name: i for i, name in enumerate(names)}
    if nvars == 2 and "x" in lookup:
        lookup.setdefault("x1", 0)
        lookup.setdefault("y1", 1)
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse polynomial {text!r}: {exc.msg}") from None

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Poly.const(nvars, node.value)
        if isinstance(node, ast.Name):
            if node.id not in lookup:
                raise ValueError(f"unknown variable {node.id!r} in {text!r}")
            return Poly.var(nvars, lookup[node.id])
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            val = walk(node.operand)
            return -val if isinstance(node.op, ast.USub) else val
        if isinstance(node, ast.BinOp):
            left, right = walk(node.left), walk(node.right)
            if type(node.op) in _BINOPS:
                return getattr(left, _BINOPS[type(node.op)])(right)
            if isinstance(node.op, ast.Div):
                if not right.is_constant() or right.is_zero():
                    raise ValueError(f"division by a non-constant in {text!r}")
                return left / right.constant_value()
            if isinstance(node.op, ast.Pow):
                if not right.is_constant() or right.constant_value().denominator != 1:
                    raise ValueError(f"non-integer exponent in {text!r}")
                return left ** int(right.constant_value())
        raise ValueError(f"unsupported syntax in polynomial {text!r}")

    return walk(tree)
