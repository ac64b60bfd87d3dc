"""Forward evaluation of b0 + K(a_n/b_n) by the three-term recurrences."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple

from .errors import TransformUndefined, WrongForm, ZeroPartialNumerator
from .scalars import DEFAULT_PRECISION, EXACT, INFINITY, magnitude
from .sequence import SequenceSpec, choose_backend


@dataclass(frozen=True, slots=True)
class ApproximantState:
    """Rolling recurrence state after consuming elements 1..n.

    ``a_product`` is the running product a_1 * ... * a_n.
    """

    n: int
    A_prev: object
    A_cur: object
    B_prev: object
    B_cur: object
    a_product: object


class TraceEntry(NamedTuple):
    n: int
    value: object
    residual: object


class TailRatio(NamedTuple):
    value: object
    descending: object
    agree: bool


def initial_state(b0=0, backend=EXACT) -> ApproximantState:
    one = backend.one()
    return ApproximantState(0, one, backend.convert(b0), backend.zero(), one, one)


def step(state: ApproximantState, a, b) -> ApproximantState:
    """Consume one element pair (a, b)."""
    if not a:
        raise ZeroPartialNumerator(state.n + 1)
    return ApproximantState(
        state.n + 1,
        state.A_cur,
        b * state.A_cur + a * state.A_prev,
        state.B_cur,
        b * state.B_cur + a * state.B_prev,
        state.a_product * a,
    )


def approximant(state: ApproximantState):
    """A_n / B_n, or INFINITY when B_n = 0."""
    if state.n < 1:
        raise ValueError("approximant needs at least one element")
    if not state.B_cur:
        return INFINITY
    return state.A_cur / state.B_cur


def determinant_residual(state: ApproximantState, backend=EXACT):
    """Defect in A_n B_{n-1} - A_{n-1} B_n = (-1)^(n-1) a_1...a_n.

    Exact backend: the absolute defect (0 unless arithmetic is broken).
    Float backend: the defect relative to the largest term involved.
    """
    cross = state.A_cur * state.B_prev - state.A_prev * state.B_cur
    expected = state.a_product if state.n % 2 == 1 else -state.a_product
    diff = cross - expected
    if backend.exact:
        return Fraction(0) if not diff else magnitude(diff)
    ctx = backend.ctx
    scale = max(abs(state.A_cur * state.B_prev), abs(state.A_prev * state.B_cur), abs(expected))
    if not scale:
        return ctx.mpf(0)
    return abs(diff) / scale


def iter_states(spec: SequenceSpec, backend=EXACT, N=None) -> Iterator[ApproximantState]:
    """States for n = 1, 2, ... (up to N, or the sequence length)."""
    state = initial_state(spec.b0(backend), backend)
    n = 0
    limit = spec.length if N is None else spec.available(N)
    while limit is None or n < limit:
        n += 1
        state = step(state, spec.a(n, backend), spec.b(n, backend))
        yield state


def evaluate_trace(spec: SequenceSpec, N: int, backend="auto",
                   precision: int = DEFAULT_PRECISION) -> list[TraceEntry]:
    """Approximants f_1..f_N with their determinant residuals."""
    if N < 1:
        raise ValueError("N must be at least 1")
    bk = choose_backend(spec, N, backend, precision)
    return [TraceEntry(s.n, approximant(s), determinant_residual(s, bk))
            for s in iter_states(spec, bk, N)]


def nested_value(a_values, b_values=None, b0=0):
    """Evaluate b0 + a1/(b1 + a2/(b2 + ...)) from the bottom up.

    Independent of the recurrences; used as a cross-check. Returns INFINITY
    when a division by zero occurs at the top level.
    """
    if b_values is None:
        b_values = [1] * len(a_values)
    t = 0
    for a, b in zip(reversed(a_values), reversed(b_values)):
        if t is INFINITY:
            t = 0 * a
            continue
        denom = b + t
        t = INFINITY if not denom else a / denom
    if t is INFINITY:
        return INFINITY
    return b0 + t


def equivalence_to_unit(spec: SequenceSpec) -> SequenceSpec:
    """Equivalent fraction K(c_n/1) with c_1 = a_1/b_1, c_n = a_n/(b_{n-1} b_n).

    Elements are produced lazily; a zero b_n raises TransformUndefined when
    an element that needs it is requested.
    """
    if spec.unit_denominators:
        return spec

    def c(n, bk):
        bn = spec.b(n, bk)
        if not bn:
            raise TransformUndefined(n)
        if n == 1:
            return spec.a(1, bk) / bn
        bp = spec.b(n - 1, bk)
        if not bp:
            raise TransformUndefined(n - 1)
        return spec.a(n, bk) / (bp * bn)

    return SequenceSpec(c, None, spec.b0_rule, spec.length, "derived", spec.period)


def tail_ratio(spec: SequenceSpec, n: int, backend="auto",
               precision: int = DEFAULT_PRECISION) -> TailRatio:
    """B_{2n+1}/B_{2n}, by the recurrence and by the descending fraction
    1 + a_{2n+1}/(1 + a_{2n}/(1 + ... + a_2/1))."""
    if not spec.unit_denominators:
        raise WrongForm("tail_ratio needs unit partial denominators")
    if n < 0:
        raise ValueError("n must be non-negative")
    bk = choose_backend(spec, 2 * n + 1, backend, precision)
    one = bk.one()
    if n == 0:
        return TailRatio(one, one, True)
    a = [None] + [spec.a(k, bk) for k in range(1, 2 * n + 2)]

    B_prev, B_cur = one, one  # B_0, B_1
    for k in range(2, 2 * n + 2):
        B_prev, B_cur = B_cur, B_cur + a[k] * B_prev
    value = INFINITY if not B_prev else B_cur / B_prev

    r = one  # B_1/B_0
    for k in range(2, 2 * n + 2):
        if r is INFINITY:
            r = one
        elif not r:
            r = INFINITY
        else:
            r = one + a[k] / r
    return TailRatio(value, r, _same(value, r, bk))


def _same(x, y, backend) -> bool:
    if x is INFINITY or y is INFINITY:
        return x is y
    if backend.exact:
        return x == y
    ctx = backend.ctx
    tol = ctx.ldexp(ctx.mpf(1), 12 - backend.precision)
    return abs(x - y) <= tol * max(1, abs(x))
