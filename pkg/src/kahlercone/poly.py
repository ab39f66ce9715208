"""Sparse multivariate polynomials with exact coefficients.

Terms map exponent tuples to coefficients, which may be Fractions or exact
`Complex` values; zero coefficients are pruned so equality of term maps is
equality of polynomials. Just enough ring operations for expanding the
norm-function identity and pulling forms back along linear maps.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DimensionMismatch
from .scalars import Complex

__all__ = ["Poly"]


def _is_zero(c):
    if isinstance(c, Complex):
        return c.is_zero()
    return c == 0


class Poly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for exp, c in terms.items():
                if len(exp) != nvars:
                    raise DimensionMismatch("exponent length != nvars")
                if not _is_zero(c):
                    self.terms[tuple(exp)] = c

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def const(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars, i):
        exp = [0] * nvars
        exp[i] = 1
        return cls(nvars, {tuple(exp): Fraction(1)})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            acc = out.get(exp, 0) + c
            if _is_zero(acc):
                out.pop(exp, None)
            else:
                out[exp] = acc
        return Poly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Complex)):
            return Poly(self.nvars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                acc = out.get(exp, 0) + c1 * c2
                if _is_zero(acc):
                    out.pop(exp, None)
                else:
                    out[exp] = acc
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise DimensionMismatch("variable counts differ")
            return other
        return Poly.const(self.nvars, other)

    def diff(self, i):
        out = {}
        for exp, c in self.terms.items():
            if exp[i] == 0:
                continue
            new = list(exp)
            new[i] -= 1
            out[tuple(new)] = c * exp[i]
        return Poly(self.nvars, out)

    def conj(self):
        """Conjugate the coefficients (variables are treated as real)."""
        return Poly(self.nvars, {
            e: c.conj() if isinstance(c, Complex) else c
            for e, c in self.terms.items()
        })

    def evaluate(self, values):
        if len(values) != self.nvars:
            raise DimensionMismatch("value vector length != nvars")
        total = 0
        for exp, c in self.terms.items():
            term = c
            for v, e in zip(values, exp):
                for _ in range(e):
                    term = term * v
            total = total + term
        return total

    def compose(self, replacements):
        """Substitute replacements[i] (a Poly) for variable i."""
        if len(replacements) != self.nvars:
            raise DimensionMismatch("need one replacement per variable")
        nv = replacements[0].nvars
        total = Poly.zero(nv)
        for exp, c in self.terms.items():
            term = Poly.const(nv, c)
            for r, e in zip(replacements, exp):
                for _ in range(e):
                    term = term * r
            total = total + term
        return total

    def degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.nvars == other.nvars
                and self.terms == other.terms)

    def __repr__(self):
        items = ", ".join(f"{e}: {c}" for e, c in sorted(self.terms.items()))
        return f"Poly({self.nvars}, {{{items}}})"
