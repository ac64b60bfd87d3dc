"""Complex scalars in two backends.

``EXACT`` works on :class:`RationalComplex` values (pairs of
:class:`fractions.Fraction`), so every field operation is rounding free.
:class:`FloatBackend` works on mpmath ``mpc`` values bound to a private
context, which keeps the working precision local to one backend instance.

Both value types support ``+ - * /`` with each other's kind of integers, so
the recurrence code is written once and runs on either.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from mpmath.ctx_mp import MPContext

from .errors import InexactError

DEFAULT_PRECISION = 128
MIN_PRECISION = 64


class RationalComplex:
    """Complex number with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def coerce(cls, x) -> RationalComplex:
        if isinstance(x, RationalComplex):
            return x
        if isinstance(x, (int, Rational)):
            return cls(Fraction(x))
        if isinstance(x, float):
            return cls(Fraction(x))
        if isinstance(x, complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        if isinstance(x, str):
            return cls(Fraction(x))
        if hasattr(x, "_mpf_") or hasattr(x, "_mpc_"):
            re, im = mp_to_fractions(x)
            return cls(re, im)
        raise TypeError(f"cannot convert {x!r} to RationalComplex")

    def __add__(self, other):
        if isinstance(other, RationalComplex):
            return RationalComplex(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return RationalComplex(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, RationalComplex):
            return RationalComplex(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return RationalComplex(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalComplex(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, RationalComplex):
            if not self.im and not other.im:
                return RationalComplex(self.re * other.re)
            return RationalComplex(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, (int, Fraction)):
            return RationalComplex(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("RationalComplex division by zero")
            return RationalComplex(self.re / other, self.im / other)
        if isinstance(other, RationalComplex):
            if not other.im:
                if not other.re:
                    raise ZeroDivisionError("RationalComplex division by zero")
                return RationalComplex(self.re / other.re, self.im / other.re)
            d = other.re * other.re + other.im * other.im
            return RationalComplex(
                (self.re * other.re + self.im * other.im) / d,
                (self.im * other.re - self.re * other.im) / d,
            )
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalComplex(other) / self
        return NotImplemented

    def __neg__(self):
        return RationalComplex(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return RationalComplex(1) / (self ** -k)
        result = RationalComplex(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, RationalComplex):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"RationalComplex({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        sign = "-" if self.im < 0 else "+"
        return f"{self.re} {sign} {abs(self.im)}i"

    def conjugate(self):
        return RationalComplex(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    @property
    def is_real(self):
        return not self.im


def mp_to_fractions(x) -> tuple[Fraction, Fraction]:
    """Exact rational value of an mpmath number's binary components."""
    if hasattr(x, "_mpc_"):
        return _mpf_tuple_to_fraction(x._mpc_[0]), _mpf_tuple_to_fraction(x._mpc_[1])
    return _mpf_tuple_to_fraction(x._mpf_), Fraction(0)


def _mpf_tuple_to_fraction(t) -> Fraction:
    sign, man, exp, _bc = t
    if not man:
        if exp:
            raise InexactError("infinite or nan value has no rational form")
        return Fraction(0)
    man = int(man)
    if sign:
        man = -man
    if exp >= 0:
        return Fraction(man << exp)
    return Fraction(man, 1 << -exp)


def is_square(q: Fraction) -> bool:
    if q < 0:
        return False
    return _isqrt_exact(q.numerator) is not None and _isqrt_exact(q.denominator) is not None


def _isqrt_exact(k: int):
    r = math.isqrt(k)
    return r if r * r == k else None


def rational_sqrt(q: Fraction) -> Fraction:
    """Square root of a non-negative rational; raises InexactError if irrational."""
    if q < 0:
        raise ValueError("negative radicand")
    p = _isqrt_exact(q.numerator)
    r = _isqrt_exact(q.denominator)
    if p is None or r is None:
        raise InexactError(f"sqrt({q}) is irrational")
    return Fraction(p, r)


def sqrt_upper(q: Fraction, bits: int = 256) -> Fraction:
    """Rational upper bound of sqrt(q) with absolute error below 2**-bits; exact when possible."""
    try:
        return rational_sqrt(q)
    except InexactError:
        pass
    # integer sqrt of q * 4**bits, rounded up
    scale = 1 << bits
    num = q.numerator * scale * scale
    r = math.isqrt(num // q.denominator) + 1
    return Fraction(r, scale)


class _Infinity:
    """The point at infinity of the extended complex plane."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()


def is_infinite(v) -> bool:
    return v is INFINITY


@dataclass(frozen=True)
class ExactBackend:
    """Gaussian-rational arithmetic, no rounding anywhere."""

    name: str = field(default="exact", init=False)
    exact: bool = field(default=True, init=False)

    def convert(self, x) -> RationalComplex:
        return RationalComplex.coerce(x)

    def from_fraction(self, re: Fraction, im: Fraction = Fraction(0)) -> RationalComplex:
        return RationalComplex(re, im)

    def zero(self):
        return RationalComplex(0)

    def one(self):
        return RationalComplex(1)

    def sqrt(self, v: RationalComplex) -> RationalComplex:
        """Principal square root, only when it is itself Gaussian-rational."""
        if not v.im:
            if v.re >= 0:
                return RationalComplex(rational_sqrt(v.re))
            return RationalComplex(0, rational_sqrt(-v.re))
        modulus = rational_sqrt(v.abs2())
        re = rational_sqrt((modulus + v.re) / 2)
        im = rational_sqrt((modulus - v.re) / 2)
        return RationalComplex(re, im if v.im > 0 else -im)

    def abs(self, v: RationalComplex) -> RationalComplex:
        if not v.im:
            return RationalComplex(abs(v.re))
        return RationalComplex(rational_sqrt(v.abs2()))

    def to_fractions(self, v) -> tuple[Fraction, Fraction]:
        return v.re, v.im


@dataclass(frozen=True)
class FloatBackend:
    """Complex big-float arithmetic at a fixed binary precision."""

    precision: int = DEFAULT_PRECISION
    name: str = field(default="float", init=False)
    exact: bool = field(default=False, init=False)
    ctx: MPContext = field(init=False, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self.precision < MIN_PRECISION:
            raise ValueError(f"precision must be at least {MIN_PRECISION} bits")
        ctx = MPContext()
        ctx.prec = self.precision
        object.__setattr__(self, "ctx", ctx)

    def convert(self, x):
        ctx = self.ctx
        if isinstance(x, RationalComplex):
            return self.from_fraction(x.re, x.im)
        if isinstance(x, Fraction):
            return self.from_fraction(x)
        if hasattr(x, "_mpc_") or hasattr(x, "_mpf_"):
            return ctx.mpc(x)
        if isinstance(x, str):
            return ctx.mpc(ctx.mpf(x))
        return ctx.mpc(x)

    def from_fraction(self, re: Fraction, im: Fraction = Fraction(0)):
        ctx = self.ctx
        if re.denominator == 1:
            r = ctx.mpf(re.numerator)
        else:
            r = ctx.mpf(re.numerator) / re.denominator
        if not im:
            return ctx.mpc(r)
        if im.denominator == 1:
            i = ctx.mpf(im.numerator)
        else:
            i = ctx.mpf(im.numerator) / im.denominator
        return ctx.mpc(r, i)

    def zero(self):
        return self.ctx.mpc(0)

    def one(self):
        return self.ctx.mpc(1)

    def sqrt(self, v):
        return self.ctx.mpc(self.ctx.sqrt(v))

    def abs(self, v):
        return self.ctx.mpc(abs(v))

    def to_fractions(self, v) -> tuple[Fraction, Fraction]:
        return mp_to_fractions(v)


EXACT = ExactBackend()


def get_backend(name: str, precision: int = DEFAULT_PRECISION):
    if name == "exact":
        return EXACT
    if name == "float":
        return FloatBackend(precision)
    raise ValueError(f"unknown backend {name!r}")


@lru_cache(maxsize=None)
def mp_context(precision: int) -> MPContext:
    """Shared read-only context at ``precision`` bits; never mutate the result."""
    ctx = MPContext()
    ctx.prec = precision
    return ctx


def magnitude(v, precision: int = DEFAULT_PRECISION):
    """|v| as an mpmath real at ``precision`` bits (inf for INFINITY)."""
    ctx = mp_context(precision)
    if v is INFINITY:
        return ctx.inf
    if isinstance(v, RationalComplex):
        if not v.im:
            return abs(ctx.mpf(v.re.numerator) / v.re.denominator)
        q = v.abs2()
        return ctx.sqrt(ctx.mpf(q.numerator) / q.denominator)
    if isinstance(v, Fraction):
        return abs(ctx.mpf(v.numerator) / v.denominator)
    return ctx.mpf(abs(v))


def to_complex(v) -> complex:
    """Nearest Python complex, for plotting and quick comparisons only."""
    if v is INFINITY:
        return complex(math.inf, 0)
    if isinstance(v, RationalComplex):
        return complex(float(v.re), float(v.im))
    return complex(v)


def format_real(x, digits: int) -> str:
    """Fixed decimal rendering used in reports, stable across runs."""
    from mpmath import libmp

    ctx = mp_context(max(64, int(digits * 3.33) + 16))
    if isinstance(x, Fraction):
        x = ctx.mpf(x.numerator) / x.denominator
    elif not hasattr(x, "_mpf_"):
        x = ctx.mpf(x)
    if ctx.isinf(x):
        return "inf" if x > 0 else "-inf"
    return libmp.to_str(x._mpf_, digits, strip_zeros=False, min_fixed=-6, max_fixed=12)


def format_scalar(v, digits: int) -> dict | str:
    if v is INFINITY:
        return "inf"
    if isinstance(v, RationalComplex):
        return {"re": format_real(v.re, digits), "im": format_real(v.im, digits)}
    return {"re": format_real(v.real, digits), "im": format_real(v.imag, digits)}


def digits_for(precision: int) -> int:
    return max(1, int(precision * math.log10(2)))
