"""Numerical convergence diagnostics: Cauchy-window limit estimates, the
even/odd gap identity and the B_{2n+1}/B_{2n} bound scan."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .cf_core import approximant, determinant_residual, equivalence_to_unit, iter_states
from .errors import CFError, WrongForm
from .scalars import DEFAULT_PRECISION, INFINITY, magnitude, mp_context
from .sequence import SequenceSpec, choose_backend

DEFAULT_TOL = 1e-12
DEFAULT_WINDOW = 6


@dataclass(frozen=True)
class GapPoint:
    """Gaps at one n. Moduli are mpmath reals; INFINITY when a B vanishes."""

    n: int
    even_gap: object          # |f_{2n} - f_{2n-1}| computed directly
    even_gap_formula: object  # prod_{i<=2n}|a_i| / |B_{2n} B_{2n-1}|
    odd_gap: object           # |f_{2n+1} - f_{2n-1}| computed directly
    odd_gap_formula: object   # prod_{i<=2n}|a_i| / |B_{2n+1} B_{2n-1}|
    identity_exact: Optional[bool] = None


@dataclass(frozen=True)
class GapTrace:
    backend: str
    points: tuple

    @property
    def even(self):
        return [(p.n, p.even_gap) for p in self.points]

    @property
    def odd(self):
        return [(p.n, p.odd_gap) for p in self.points if p.odd_gap is not None]


@dataclass(frozen=True)
class BRatioScan:
    max_ratio: object
    argmax: Optional[int]
    unbounded_at: Optional[int]
    checked: int


@dataclass(frozen=True)
class ConvergenceReport:
    limit_estimate: object
    cauchy_satisfied: bool
    terms_used: int
    gap_trace: list = field(default_factory=list)
    odd_gap_trace: list = field(default_factory=list)
    max_b_ratio: object = None
    residual_summary: object = None
    even_limit: object = None
    odd_limit: object = None
    rate: object = None
    backend: str = ""
    trace: list = field(default_factory=list)


def _abs_diff(x, y):
    if x is INFINITY or y is INFINITY:
        return INFINITY
    return magnitude(x - y)


def limit_estimate(trace: Sequence, tol: float = DEFAULT_TOL, window: int = DEFAULT_WINDOW):
    """(estimate, cauchy) from a list of approximants (or TraceEntry items).

    Cauchy when every pair inside the trailing window differs by less than
    tol * max(1, |f|) (relative above magnitude 1, absolute below) and every
    windowed value is finite. The estimate is then the last approximant.
    """
    if not trace:
        raise ValueError("empty trace")
    if tol <= 0 or window < 2:
        raise ValueError("tol must be positive and window at least 2")
    values = [getattr(t, "value", t) for t in trace]
    tail = values[-window:]
    if len(tail) < window or any(v is INFINITY for v in tail):
        return None, False
    last = tail[-1]
    scale = max(1, magnitude(last))
    ctx = mp_context(64)
    bound = ctx.mpf(tol) * scale
    for i in range(len(tail)):
        for j in range(i + 1, len(tail)):
            if not magnitude(tail[i] - tail[j]) < bound:
                return None, False
    return last, True


def _unit_view(spec: SequenceSpec) -> SequenceSpec:
    return spec if spec.unit_denominators else equivalence_to_unit(spec)


def even_odd_gap(spec: SequenceSpec, N: int, backend="auto",
                 precision: int = DEFAULT_PRECISION) -> GapTrace:
    """Gaps for n = 1 .. N//2, both directly and via the determinant formula.

    Needs unit denominators (non-unit specs should go through
    ``equivalence_to_unit`` first). In the exact backend the identity is
    checked on squared moduli, so ``identity_exact`` is a strict equality.
    """
    if not spec.unit_denominators:
        raise WrongForm("even_odd_gap needs unit partial denominators")
    bk = choose_backend(spec, N, backend, precision)
    states = list(iter_states(spec, bk, N))
    points = []
    for n in range(1, len(states) // 2 + 1):
        s_odd = states[2 * n - 2]   # index 2n-1
        s_even = states[2 * n - 1]  # index 2n
        s_next = states[2 * n] if 2 * n < len(states) else None
        f_odd, f_even = approximant(s_odd), approximant(s_even)
        prod = s_even.a_product
        B_odd, B_even = s_odd.B_cur, s_even.B_cur

        even_direct = _abs_diff(f_even, f_odd)
        even_formula = INFINITY if (not B_odd or not B_even) else magnitude(prod) / (magnitude(B_even) * magnitude(B_odd))
        odd_direct = odd_formula = None
        if s_next is not None:
            f_next = approximant(s_next)
            B_next = s_next.B_cur
            odd_direct = _abs_diff(f_next, f_odd)
            odd_formula = INFINITY if (not B_odd or not B_next) else magnitude(prod) / (magnitude(B_next) * magnitude(B_odd))

        exact = None
        if bk.exact and B_odd and B_even:
            diff = f_even - f_odd
            lhs = diff.abs2()
            rhs = prod.abs2() / (B_even.abs2() * B_odd.abs2())
            exact = lhs == rhs
            if s_next is not None and B_next:
                exact = exact and (approximant(s_next) - f_odd).abs2() == prod.abs2() / (B_next.abs2() * B_odd.abs2())
        points.append(GapPoint(n, even_direct, even_formula, odd_direct, odd_formula, exact))
    return GapTrace(bk.name, tuple(points))


def b_ratio_scan(spec: SequenceSpec, N: int, backend="auto",
                 precision: int = DEFAULT_PRECISION) -> BRatioScan:
    """max_{1 <= n <= N} |B_{2n+1}/B_{2n}| (uses elements up to 2N+1)."""
    if not spec.unit_denominators:
        raise WrongForm("b_ratio_scan needs unit partial denominators")
    need = 2 * N + 1
    bk = choose_backend(spec, need, backend, precision)
    best, arg, checked = None, None, 0
    prev_B = None
    for s in iter_states(spec, bk, need):
        if s.n % 2 == 1 and s.n >= 3:
            n = (s.n - 1) // 2
            checked = n
            if not prev_B:
                return BRatioScan(INFINITY, n, n, checked)
            r = magnitude(s.B_cur / prev_B)
            if best is None or r > best:
                best, arg = r, n
        prev_B = s.B_cur
    return BRatioScan(best, arg, None, checked)


def convergence_rate(gaps: Sequence) -> Optional[float]:
    """Least-squares slope of log10(gap) against n over the later half of the
    finite, nonzero gaps. Strongly negative: geometric; near zero: slow or none."""
    pts = [(n, g) for n, g in gaps if g is not INFINITY and g is not None and g > 0]
    pts = pts[len(pts) // 2:]
    if len(pts) < 3:
        return None
    ctx = mp_context(64)
    xs = [float(n) for n, _ in pts]
    ys = [float(ctx.log10(g)) for _, g in pts]
    mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
    sxx = sum((x - mx) ** 2 for x in xs)
    if not sxx:
        return None
    return sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sxx


def convergence_report(spec: SequenceSpec, N: int, backend="auto", precision: int = DEFAULT_PRECISION,
                       tol: float = DEFAULT_TOL, window: int = DEFAULT_WINDOW) -> ConvergenceReport:
    """Evaluate N approximants and collect the diagnostics in one pass."""
    if N < 1:
        raise ValueError("N must be at least 1")
    bk = choose_backend(spec, N, backend, precision)
    states = list(iter_states(spec, bk, N))
    values = [approximant(s) for s in states]
    residuals = [determinant_residual(s, bk) for s in states]
    res_max = max(residuals, key=lambda r: float(r) if r is not INFINITY else float("inf"))
    estimate, cauchy = limit_estimate(values, tol, window)
    even_vals = values[1::2]
    odd_vals = values[0::2]
    even_limit = limit_estimate(even_vals, tol, window)[0] if len(even_vals) >= window else None
    odd_limit = limit_estimate(odd_vals, tol, window)[0] if len(odd_vals) >= window else None

    gap_trace, odd_trace, max_ratio = [], [], None
    unit = _unit_view(spec)
    try:
        gaps = even_odd_gap(unit, N, bk, precision)
        gap_trace = gaps.even
        odd_trace = gaps.odd
        if N >= 3:
            scan = b_ratio_scan(unit, (N - 1) // 2, bk, precision)
            max_ratio = scan.max_ratio
    except CFError:  # transform undefined (some b_n = 0): gaps stay empty
        pass

    return ConvergenceReport(
        limit_estimate=estimate,
        cauchy_satisfied=cauchy,
        terms_used=len(states),
        gap_trace=gap_trace,
        odd_gap_trace=odd_trace,
        max_b_ratio=max_ratio,
        residual_summary=res_max,
        even_limit=even_limit,
        odd_limit=odd_limit,
        rate=convergence_rate(gap_trace),
        backend=bk.name,
        trace=values,
    )

