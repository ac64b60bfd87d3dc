"""Element sequences (a_n, b_n, b_0) of a continued fraction.

A :class:`SequenceSpec` is a bundle of rules. Each rule takes an index and a
backend and returns a value native to that backend, so the same spec can be
evaluated exactly or in big-float without rewriting it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Sequence

from .errors import IndexOutOfRange, InexactError, ZeroPartialNumerator
from .scalars import DEFAULT_PRECISION, EXACT, FloatBackend, RationalComplex

Rule = Callable[[int, object], object]

KINDS = ("parity", "periodic", "list", "function", "derived")


def _const(value):
    cache = {}

    def rule(_n, backend):
        v = cache.get(backend)
        if v is None:
            v = cache[backend] = backend.convert(value)
        return v

    return rule


def _from_callable(f):
    return lambda n, backend: backend.convert(f(n))


def _cyclic(values):
    converted = {}
    p = len(values)

    def rule(n, backend):
        vals = converted.get(backend)
        if vals is None:
            vals = converted[backend] = [backend.convert(v) for v in values]
        return vals[(n - 1) % p]

    return rule


@dataclass(frozen=True)
class SequenceSpec:
    """Rules producing a_n and b_n for n >= 1, plus b_0.

    ``b_rule=None`` means unit partial denominators. ``length=None`` means the
    sequence is unbounded. ``period`` is set when the elements (a_n, b_n) are
    known to repeat with that period; criteria use it to upgrade a prefix
    check to a full certificate.
    """

    a_rule: Rule
    b_rule: Optional[Rule] = None
    b0_rule: Optional[Callable[[object], object]] = None
    length: Optional[int] = None
    kind: str = "function"
    period: Optional[int] = None
    text: Optional[str] = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def periodic(cls, pattern: Sequence, b=None, b0=0) -> SequenceSpec:
        pattern = list(pattern)
        if not pattern:
            raise ValueError("empty period")
        b_rule, b_period = _denominator_rule(b)
        period = len(pattern) if b_period is None else _lcm(len(pattern), b_period)
        if b_period == 0:
            period = None
        return cls(_cyclic(pattern), b_rule, _b0_rule(b0), None, "periodic", period)

    @classmethod
    def from_list(cls, values: Sequence, b=None, b0=0) -> SequenceSpec:
        values = list(values)
        if not values:
            raise ValueError("empty element list")
        if isinstance(b, (list, tuple)) and len(b) < len(values):
            raise ValueError("denominator list shorter than numerator list")
        b_rule, _ = _denominator_rule(b)
        return cls(_cyclic(values), b_rule, _b0_rule(b0), len(values), "list")

    @classmethod
    def from_function(cls, a: Callable, b=None, b0=0, length=None) -> SequenceSpec:
        b_rule, _ = _denominator_rule(b)
        return cls(_from_callable(a), b_rule, _b0_rule(b0), length, "function")

    @classmethod
    def from_parity(cls, even, odd, b=None, b0=0) -> SequenceSpec:
        """a_{2n} = even(n) for n >= 1 and a_{2n+1} = odd(n) for n >= 0."""
        ev = even if callable(even) else (lambda _n, v=even: v)
        od = odd if callable(odd) else (lambda _n, v=odd: v)

        def a(n):
            return ev(n // 2) if n % 2 == 0 else od((n - 1) // 2)

        b_rule, b_period = _denominator_rule(b)
        constant = not callable(even) and not callable(odd)
        period = 2 if constant and b_period in (1, 2) else None
        return cls(_from_callable(a), b_rule, _b0_rule(b0), None, "parity", period)

    # -- element access ---------------------------------------------------

    @property
    def unit_denominators(self) -> bool:
        return self.b_rule is None

    def _check(self, n: int):
        if n < 1 or (self.length is not None and n > self.length):
            raise IndexOutOfRange(n, self.length)

    def a(self, n: int, backend=EXACT):
        self._check(n)
        v = self.a_rule(n, backend)
        if not v:
            raise ZeroPartialNumerator(n)
        return v

    def b(self, n: int, backend=EXACT):
        self._check(n)
        if self.b_rule is None:
            return backend.one()
        return self.b_rule(n, backend)

    def b0(self, backend=EXACT):
        if self.b0_rule is None:
            return backend.zero()
        return self.b0_rule(backend)

    def available(self, N: int) -> int:
        """Number of elements actually available out of the first N."""
        return N if self.length is None else min(N, self.length)

    def terms(self, N: int, backend=EXACT) -> Iterator[tuple[int, object, object]]:
        for n in range(1, self.available(N) + 1):
            yield n, self.a(n, backend), self.b(n, backend)

    def prefix(self, N: int, backend=EXACT) -> list:
        """[a_1, ..., a_N] (truncated to the sequence length)."""
        return [self.a(n, backend) for n in range(1, self.available(N) + 1)]

    def with_text(self, text: str) -> SequenceSpec:
        return SequenceSpec(self.a_rule, self.b_rule, self.b0_rule, self.length,
                            self.kind, self.period, text)


def _lcm(p, q):
    from math import gcd

    return p * q // gcd(p, q)


def _b0_rule(b0):
    if b0 is None or (not callable(b0) and b0 == 0):
        return None
    rule = _const(b0)
    return lambda backend: rule(0, backend)


def _denominator_rule(b):
    """(rule, period) for a user-supplied denominator description.

    period is 1 for constants, the pattern length for lists and 0 for
    arbitrary callables (no known period).
    """
    if b is None:
        return None, 1
    if callable(b):
        return _from_callable(b), 0
    if isinstance(b, (list, tuple)):
        return _cyclic(list(b)), len(b)
    if b == 1:
        return None, 1
    return _const(b), 1


def is_exact(spec: SequenceSpec, N: int) -> bool:
    """True when the first N elements (and b_0) are exactly representable."""
    try:
        spec.b0(EXACT)
        for _ in spec.terms(N, EXACT):
            pass
    except InexactError:
        return False
    return True


def choose_backend(spec: SequenceSpec, N: int, backend="auto", precision=DEFAULT_PRECISION):
    """Resolve ``backend`` ("auto", "exact", "float" or a backend object)."""
    if not isinstance(backend, str):
        return backend
    if backend == "exact":
        return EXACT
    if backend == "float":
        return FloatBackend(precision)
    if backend != "auto":
        raise ValueError(f"unknown backend {backend!r}")
    return EXACT if is_exact(spec, N) else FloatBackend(precision)


def exact_elements(spec: SequenceSpec, N: int, precision=DEFAULT_PRECISION) -> list[RationalComplex]:
    """a_1..a_N as exact Gaussian rationals.

    Irrational elements are evaluated at ``precision`` bits and their binary
    values are then taken exactly, so downstream comparisons never round.
    """
    try:
        return spec.prefix(N, EXACT)
    except InexactError:
        fb = FloatBackend(precision)
        return [RationalComplex.coerce(v) for v in spec.prefix(N, fb)]


def exact_denominators(spec: SequenceSpec, N: int, precision=DEFAULT_PRECISION) -> list[RationalComplex]:
    n_avail = spec.available(N)
    try:
        return [spec.b(n, EXACT) for n in range(1, n_avail + 1)]
    except InexactError:
        fb = FloatBackend(precision)
        return [RationalComplex.coerce(spec.b(n, fb)) for n in range(1, n_avail + 1)]
