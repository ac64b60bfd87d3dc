"""Even and odd canonical contractions.

The even part has approximants A_{2k}/B_{2k} of the original fraction; the
odd part has A_{2k+1}/B_{2k+1}. Both are returned as lazy specs whose k-th
element only touches a handful of the original elements, so unbounded
inputs contract to unbounded outputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .cf_core import approximant, iter_states
from .errors import ContractionUndefined
from .scalars import DEFAULT_PRECISION, INFINITY, magnitude
from .sequence import SequenceSpec, choose_backend


class ContractionKind(str, Enum):
    EVEN = "even"
    ODD = "odd"


def _nonzero_b(spec, index, bk, kind, k):
    v = spec.b(index, bk)
    if not v:
        raise ContractionUndefined(kind, index, k)
    return v


def even_part(spec: SequenceSpec) -> SequenceSpec:
    """b0 + b2 a1/(b2 b1 + a2) - (a2 a3 b4/b2)/(a4 + b3 b4 + a3 b4/b2) - ..."""
    unit = spec.unit_denominators

    def a_rule(k, bk):
        if k == 1:
            b2 = _nonzero_b(spec, 2, bk, "even", 1)
            return b2 * spec.a(1, bk)
        i = 2 * k
        if unit:
            return -(spec.a(i - 2, bk) * spec.a(i - 1, bk))
        b_prev = _nonzero_b(spec, i - 2, bk, "even", k)
        b_here = _nonzero_b(spec, i, bk, "even", k)
        return -(spec.a(i - 2, bk) * spec.a(i - 1, bk) * b_here / b_prev)

    def b_rule(k, bk):
        i = 2 * k
        if k == 1:
            if unit:
                return bk.one() + spec.a(2, bk)
            b2 = _nonzero_b(spec, 2, bk, "even", 1)
            return b2 * spec.b(1, bk) + spec.a(2, bk)
        if unit:
            return spec.a(i, bk) + bk.one() + spec.a(i - 1, bk)
        b_prev = _nonzero_b(spec, i - 2, bk, "even", k)
        b_here = _nonzero_b(spec, i, bk, "even", k)
        return spec.a(i, bk) + spec.b(i - 1, bk) * b_here + spec.a(i - 1, bk) * b_here / b_prev

    length = None if spec.length is None else spec.length // 2
    # the first contracted element is special, so no clean period survives
    return SequenceSpec(a_rule, b_rule, spec.b0_rule, length, "derived")


def odd_part(spec: SequenceSpec) -> SequenceSpec:
    """(b0 b1 + a1)/b1 - (a1 a2 b3/b1)/(b1(a3 + b2 b3) + a2 b3) - ..."""
    unit = spec.unit_denominators

    def b0_rule(bk):
        b1 = _nonzero_b(spec, 1, bk, "odd", 0)
        return (spec.b0(bk) * b1 + spec.a(1, bk)) / b1

    def a_rule(k, bk):
        i = 2 * k + 1
        if unit:
            return -(spec.a(i - 2, bk) * spec.a(i - 1, bk))
        if k == 1:
            b1 = _nonzero_b(spec, 1, bk, "odd", 1)
            b3 = _nonzero_b(spec, 3, bk, "odd", 1)
            return -(spec.a(1, bk) * spec.a(2, bk) * b3 / b1)
        b_prev = _nonzero_b(spec, i - 2, bk, "odd", k)
        b_here = _nonzero_b(spec, i, bk, "odd", k)
        value = -(spec.a(i - 2, bk) * spec.a(i - 1, bk) * b_here / b_prev)
        if k == 2:
            # the first denominator carries an extra factor b1
            value = value * _nonzero_b(spec, 1, bk, "odd", k)
        return value

    def b_rule(k, bk):
        i = 2 * k + 1
        if unit:
            return spec.a(i, bk) + bk.one() + spec.a(i - 1, bk)
        if k == 1:
            b1 = _nonzero_b(spec, 1, bk, "odd", 1)
            b3 = _nonzero_b(spec, 3, bk, "odd", 1)
            return b1 * (spec.a(3, bk) + spec.b(2, bk) * b3) + spec.a(2, bk) * b3
        b_prev = _nonzero_b(spec, i - 2, bk, "odd", k)
        b_here = _nonzero_b(spec, i, bk, "odd", k)
        return spec.a(i, bk) + spec.b(i - 1, bk) * b_here + spec.a(i - 1, bk) * b_here / b_prev

    length = None if spec.length is None else (spec.length - 1) // 2
    return SequenceSpec(a_rule, b_rule, b0_rule, length, "derived")


def contract(spec: SequenceSpec, kind) -> SequenceSpec:
    kind = ContractionKind(kind)
    return even_part(spec) if kind is ContractionKind.EVEN else odd_part(spec)


@dataclass(frozen=True)
class ContractionReport:
    kind: str
    K: int
    backend: str
    residuals: tuple
    max_residual: object

    @property
    def exact_match(self) -> bool:
        return not self.max_residual


def verify_contraction(spec: SequenceSpec, K: int, kind, backend="auto",
                       precision: int = DEFAULT_PRECISION) -> ContractionReport:
    """Compare contraction approximants C_k/D_k against the original A_m/B_m
    (m = 2k for even, 2k+1 for odd), k = 1..K."""
    kind = ContractionKind(kind)
    offset = 0 if kind is ContractionKind.EVEN else 1
    need = 2 * K + offset
    bk = choose_backend(spec, need, backend, precision)
    original = [approximant(s) for s in iter_states(spec, bk, need)]
    contracted_spec = contract(spec, kind)
    contracted = [approximant(s) for s in iter_states(contracted_spec, bk, K)]
    residuals = []
    for k, c_val in enumerate(contracted, start=1):
        o_val = original[2 * k + offset - 1]
        residuals.append(_distance(c_val, o_val, bk))
    max_res = max(residuals, key=_sort_key) if residuals else Fraction(0)
    return ContractionReport(kind.value, len(contracted), bk.name, tuple(residuals), max_res)


def _distance(x, y, bk):
    if x is INFINITY or y is INFINITY:
        return Fraction(0) if x is y else INFINITY
    d = x - y
    if bk.exact:
        return Fraction(0) if not d else magnitude(d)
    return abs(d)


def _sort_key(v):
    if v is INFINITY:
        return float("inf")
    return float(v)
