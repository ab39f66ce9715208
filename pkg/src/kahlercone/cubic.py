"""Homogeneous cubic forms: parsing, calculus, and index-cone membership.

A form is stored as a map from exponent vectors (summing to 3) to exact
rational coefficients, together with the constant symmetric tensor of third
partial derivatives derived at construction. Only homogeneous cubics are
accepted: the norm-function identity and the cone structure both rest on
Euler's relation, which fails for inhomogeneous input.

Text grammar (whitespace insignificant)::

    expr   := ["+"|"-"] term (("+"|"-") term)*
    term   := coeff ("*" factor)* | factor ("*" factor)*
    factor := var ("^" digit)?
    var    := "y" index            # 1-based, y1 ... yn
    coeff  := integer ("/" positive-integer)?
"""

from __future__ import annotations

import enum
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import (DimensionMismatch, NotHomogeneousCubic, NotInCone,
                     ParseError, SamplingExhausted)
from .linalg import Sym3Tensor, SymMatrix, inertia
from .poly import Poly
from .scalars import Complex

__all__ = [
    "CubicForm",
    "ConePoint",
    "Membership",
    "NormIdentityResult",
    "parse_text",
    "cone_contains",
    "cone_sample",
    "norm_identity_check",
]

DEGREE = 3


class Membership(enum.Enum):
    INTERIOR = "Interior"
    BOUNDARY = "Boundary"
    OUTSIDE = "Outside"


@dataclass(frozen=True)
class ConePoint:
    """A real point of the index cone, optionally complexified as x + iy."""
    y: tuple
    x: Optional[tuple] = None

    def complexified(self):
        x = self.x if self.x is not None else (Fraction(0),) * len(self.y)
        return tuple(Complex(a, b) for a, b in zip(x, self.y))


class CubicForm:
    """A homogeneous cubic f in n variables with exact rational coefficients."""

    __slots__ = ("n", "monomials", "_f3")

    def __init__(self, n, monomials):
        if n < 1:
            raise DimensionMismatch("need at least one variable")
        self.n = n
        clean = {}
        for exp, coeff in monomials.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != n or any(e < 0 for e in exp):
                raise DimensionMismatch(f"bad exponent vector {exp}")
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            if sum(exp) != DEGREE:
                raise NotHomogeneousCubic(
                    f"monomial {exp} has degree {sum(exp)}, expected {DEGREE}")
            clean[exp] = clean.get(exp, Fraction(0)) + coeff
        self.monomials = {e: c for e, c in sorted(clean.items(), reverse=True)
                          if c != 0}
        self._f3 = None

    @property
    def third_tensor(self) -> Sym3Tensor:
        """Constant tensor of third partials; f = (1/6) sum f3[i,j,k] yi yj yk."""
        if self._f3 is None:
            p = self.as_poly()
            self._f3 = Sym3Tensor.build(
                self.n,
                lambda i, j, k: _constant_term(p.diff(i).diff(j).diff(k)))
        return self._f3

    def as_poly(self) -> Poly:
        return Poly(self.n, dict(self.monomials))

    def evaluate(self, y):
        self._check_len(y)
        total = 0
        for exp, coeff in self.monomials.items():
            term = coeff
            for v, e in zip(y, exp):
                for _ in range(e):
                    term = term * v
            total = total + term
        return total

    def gradient(self, y):
        self._check_len(y)
        f3 = self.third_tensor
        n = self.n
        half = Fraction(1, 2)
        return [half * sum(f3[i, j, k] * y[j] * y[k]
                           for j in range(n) for k in range(n))
                for i in range(n)]

    def hessian(self, y) -> SymMatrix:
        self._check_len(y)
        f3 = self.third_tensor
        n = self.n
        return SymMatrix.build(
            n, lambda i, j: sum(f3[i, j, k] * y[k] for k in range(n)))

    def pullback(self, a_rows) -> "CubicForm":
        """The form y -> f(A y) for a square rational matrix A (given as rows)."""
        n = self.n
        if len(a_rows) != n or any(len(r) != n for r in a_rows):
            raise DimensionMismatch("matrix shape does not match the form")
        images = [Poly(n, {tuple(int(c == j) for c in range(n)): Fraction(a_rows[i][j])
                           for j in range(n) if a_rows[i][j] != 0})
                  for i in range(n)]
        composed = self.as_poly().compose(images)
        return CubicForm(n, composed.terms)

    def _check_len(self, y):
        if len(y) != self.n:
            raise DimensionMismatch(
                f"point has {len(y)} coordinates, form has {self.n}")

    def to_text(self) -> str:
        if not self.monomials:
            return "0"
        parts = []
        for idx, (exp, coeff) in enumerate(self.monomials.items()):
            factors = []
            for i, e in enumerate(exp):
                if e == 1:
                    factors.append(f"y{i + 1}")
                elif e > 1:
                    factors.append(f"y{i + 1}^{e}")
            mag = abs(coeff)
            body = "*".join(factors)
            if mag != 1:
                body = f"{mag}*{body}"
            if idx == 0:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(f"{'+' if coeff > 0 else '-'} {body}")
        return " ".join(parts)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "monomials": [{"exp": list(e), "coeff": str(c)}
                          for e, c in self.monomials.items()],
        }

    @classmethod
    def from_json_dict(cls, doc) -> "CubicForm":
        monos = {tuple(m["exp"]): Fraction(m["coeff"]) for m in doc["monomials"]}
        return cls(int(doc["n"]), monos)

    def __eq__(self, other):
        return (isinstance(other, CubicForm) and self.n == other.n
                and self.monomials == other.monomials)

    def __repr__(self):
        return f"CubicForm({self.n}, {self.to_text()!r})"


def _constant_term(p: Poly):
    if p.is_zero():
        return Fraction(0)
    return p.terms[(0,) * p.nvars]


# ----------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<var>y\d+)|(?P<op>[+\-*/^]))")


def _tokenize(src):
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            rest = src[pos:]
            if rest.strip() == "":
                break
            bad = pos + len(rest) - len(rest.lstrip())
            raise ParseError(f"unexpected character {src[bad]!r}", bad)
        if m.group("int"):
            tokens.append(("int", int(m.group("int")), m.start("int")))
        elif m.group("var"):
            tokens.append(("var", int(m.group("var")[1:]), m.start("var")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", None, len(src)))
    return tokens


class _Parser:
    def __init__(self, tokens, n):
        self.tokens = tokens
        self.n = n
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expr(self):
        monomials = {}
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        self._term(monomials, sign)
        while True:
            kind, val, pos = self.peek()
            if kind == "end":
                break
            if kind == "op" and val in "+-":
                self.take()
                self._term(monomials, -1 if val == "-" else 1)
            else:
                raise ParseError(f"expected '+' or '-', got {val!r}", pos)
        return monomials

    def _term(self, monomials, sign):
        coeff = Fraction(sign)
        exp = [0] * self.n
        kind, val, pos = self.peek()
        if kind == "int":
            self.take()
            coeff *= val
            nk, nv, npos = self.peek()
            if nk == "op" and nv == "/":
                self.take()
                dk, dv, dpos = self.take()
                if dk != "int" or dv == 0:
                    raise ParseError("expected a positive integer denominator",
                                     dpos)
                coeff /= dv
        elif kind == "var":
            self._factor(exp)
        else:
            raise ParseError(f"expected a coefficient or variable, got {val!r}",
                             pos)
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "*":
                self.take()
                self._factor(exp)
            else:
                break
        key = tuple(exp)
        monomials[key] = monomials.get(key, Fraction(0)) + coeff

    def _factor(self, exp):
        kind, val, pos = self.take()
        if kind != "var":
            raise ParseError(f"expected a variable, got {val!r}", pos)
        if not (1 <= val <= self.n):
            raise ParseError(f"variable y{val} out of range 1..{self.n}", pos)
        power = 1
        kind, op, _ = self.peek()
        if kind == "op" and op == "^":
            self.take()
            pk, pv, ppos = self.take()
            if pk != "int":
                raise ParseError("expected an integer exponent", ppos)
            power = pv
        exp[val - 1] += power


def parse_text(src: str, n: int) -> CubicForm:
    """Parse polynomial source text into an exact CubicForm.

    Raises ParseError for malformed input and NotHomogeneousCubic when a
    surviving monomial has degree other than 3.
    """
    parser = _Parser(_tokenize(src), n)
    monomials = parser.expr()
    return CubicForm(n, monomials)


# ----------------------------------------------------------------------------
# index-cone membership and sampling

def cone_contains(form: CubicForm, y) -> Membership:
    """Exact index-cone membership of a rational point.

    Interior: f(y) > 0 and the Hessian has exactly one positive and n-1
    negative eigenvalues. Boundary: f(y) = 0 or the Hessian is singular,
    while nothing already contradicts the interior sign pattern. Outside:
    everything else. Floats are never accepted here; membership is a
    boundary-sensitive decision and is only made exactly.
    """
    if any(isinstance(v, float) for v in y):
        raise TypeError("cone membership needs exact rational coordinates; "
                        "pass Fractions, ints, or 'p/q' strings")
    y = tuple(Fraction(v) for v in y)
    form._check_len(y)
    fval = form.evaluate(y)
    plus, minus, zero = inertia(form.hessian(y))
    n = form.n
    if fval > 0 and (plus, minus, zero) == (1, n - 1, 0):
        return Membership.INTERIOR
    degenerate = fval == 0 or zero > 0
    compatible = fval >= 0 and plus <= 1 and minus <= n - 1
    if degenerate and compatible:
        return Membership.BOUNDARY
    return Membership.OUTSIDE


def cone_sample(form: CubicForm, count: int, seed: int,
                hint=None, bound: int = 16, max_denominator: int = 8,
                budget: int = 100_000):
    """Sample `count` distinct exact interior points, deterministically.

    Strategy: random rational grid points with numerators in [-bound, bound]
    and denominators up to max_denominator, filtered through cone_contains;
    when a hint is given, also jittered positive scalings of it (rays from an
    interior point stay interior, the jitter is re-checked like any other
    candidate). Raises SamplingExhausted after `budget` attempts.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if hint is not None:
        hint = tuple(Fraction(v) for v in hint)
        if cone_contains(form, hint) is not Membership.INTERIOR:
            raise NotInCone("hint point is not interior")
    rng = random.Random(seed)
    n = form.n
    found = []
    seen = set()
    for attempt in range(budget):
        if hint is not None and attempt % 2 == 1:
            c = Fraction(rng.randint(1, bound), rng.randint(1, max_denominator))
            cand = tuple(c * h * (1 + Fraction(rng.randint(-1, 1),
                                               rng.randint(4, 8)))
                         for h in hint)
        else:
            cand = tuple(Fraction(rng.randint(-bound, bound),
                                  rng.randint(1, max_denominator))
                         for _ in range(n))
        if all(v == 0 for v in cand) or cand in seen:
            continue
        seen.add(cand)
        if cone_contains(form, cand) is Membership.INTERIOR:
            found.append(cand)
            if len(found) == count:
                return found
    raise SamplingExhausted(
        f"found {len(found)}/{count} interior points in {budget} attempts; "
        "the index cone may be empty or thin - supply an interior hint")


# ----------------------------------------------------------------------------
# norm-function identity

@dataclass(frozen=True)
class NormIdentityResult:
    holds: bool
    counterexample: Optional[tuple] = None  # (exponents, got, expected)


def norm_identity_check(form: CubicForm) -> NormIdentityResult:
    """Verify symbolically that the tube-domain norm function equals 8 f(Im t).

    With t = x + iy the norm function is
        N(t) = i * ( sum_j (t_j - conj t_j) (d_j f(t) + conj d_j f(t))
                     + 2 conj f(t) - 2 f(t) ).
    Both sides are expanded as exact polynomials in the 2n real variables
    (x, y) and compared coefficient by coefficient.
    """
    n = form.n
    nv = 2 * n  # variables: x_0..x_{n-1}, y_0..y_{n-1}
    ii = Complex(Fraction(0), Fraction(1))
    t = [Poly.variable(nv, j) + ii * Poly.variable(nv, n + j) for j in range(n)]
    fp = form.as_poly()
    f_at_t = fp.compose(t)
    acc = 2 * f_at_t.conj() - 2 * f_at_t
    for j in range(n):
        dj_at_t = fp.diff(j).compose(t)
        acc = acc + (t[j] - t[j].conj()) * (dj_at_t + dj_at_t.conj())
    lhs = ii * acc
    y_vars = [Poly.variable(nv, n + j) for j in range(n)]
    rhs = 8 * fp.compose(y_vars)
    diff = lhs - rhs
    if diff.is_zero():
        return NormIdentityResult(True)
    exp = sorted(diff.terms)[0]
    got = lhs.terms.get(exp, Fraction(0))
    want = rhs.terms.get(exp, Fraction(0))
    return NormIdentityResult(False, (exp, got, want))
