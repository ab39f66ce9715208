"""Scalar backends: exact rationals, 64-bit floats, and complex numbers over either.

Exact arithmetic is carried by `fractions.Fraction`; the float backend is the
native binary64 `float`. `Complex` is a thin pair type that stays exact when
its components are Fractions (a Gaussian rational), which is what the
complexified-cone computations need. All geometric code is generic over the
backend by duck typing: whatever scalar type flows in flows out.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = [
    "Complex",
    "as_exact_vector",
    "as_float_vector",
    "format_scalar",
    "is_exact_scalar",
    "parse_rational",
]


def is_exact_scalar(x) -> bool:
    return isinstance(x, (int, Fraction))


def parse_rational(text: str) -> Fraction:
    """Parse "p" or "p/q" into an exact rational."""
    return Fraction(text.strip())


def as_exact_vector(values) -> tuple:
    return tuple(Fraction(v) for v in values)


def as_float_vector(values) -> tuple:
    return tuple(float(v) for v in values)


def format_scalar(x) -> str | float:
    """Serialize a scalar for reports: rational string "p/q" or a float.

    Fractions keep exactness as decimal-free strings; floats pass through
    (json emits the shortest round-trip decimal).
    """
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int):
        return str(Fraction(x))
    if isinstance(x, Complex):
        return format_complex(x)
    return float(x)


def format_complex(z: "Complex") -> str:
    re, im = format_scalar(z.re), format_scalar(z.im)
    return f"{re}{'+' if not str(im).startswith('-') else ''}{im}i"


class Complex:
    """Complex number with components of a real backend scalar type.

    The builtin `complex` is float-only; this type keeps Gaussian rationals
    exact. Arithmetic mixes freely with ints and Fractions.
    """

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = re
        self.im = im

    @staticmethod
    def of(value) -> "Complex":
        if isinstance(value, Complex):
            return value
        if isinstance(value, complex):
            return Complex(value.real, value.imag)
        if isinstance(value, (int, float, Fraction)):
            return Complex(value)
        raise TypeError(f"cannot build Complex from {type(value).__name__}")

    @staticmethod
    def _lift(value):
        try:
            return Complex.of(value)
        except TypeError:
            return None

    def conj(self) -> "Complex":
        return Complex(self.re, -self.im)

    def abs2(self):
        """Squared modulus, exact for exact components."""
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __add__(self, other):
        o = Complex._lift(other)
        if o is None:
            return NotImplemented
        return Complex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = Complex._lift(other)
        if o is None:
            return NotImplemented
        return Complex(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = Complex._lift(other)
        if o is None:
            return NotImplemented
        return Complex(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = Complex._lift(other)
        if o is None:
            return NotImplemented
        return Complex(self.re * o.re - self.im * o.im,
                       self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Complex.of(other)
        d = o.abs2()
        if d == 0:
            raise ZeroDivisionError("complex division by zero")
        return Complex((self.re * o.re + self.im * o.im) / d,
                       (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other):
        return Complex.of(other) / self

    def __neg__(self):
        return Complex(-self.re, -self.im)

    def __eq__(self, other):
        if isinstance(other, (Complex, complex)):
            o = Complex.of(other)
            return self.re == o.re and self.im == o.im
        if isinstance(other, (int, Fraction, float)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"Complex({self.re!r}, {self.im!r})"
