"""Convergence certificates for K(a_n/1) and b0 + K(a_n/b_n), checked on prefixes.

Every checker compares moduli exactly. Inputs are turned into Gaussian
rationals (irrational DSL values are taken at their big-float binary value),
inequalities between moduli are squared, and inequalities involving sums of
square roots are squared twice. Nothing is ever accepted because of rounding.

A verdict of ``holds-on-prefix`` means every inequality instance with
indices inside the prefix was verified. For periodic specs with constant
parameters, or finite specs checked to their end, the verdict is marked
``full_certification``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional

from .cf_core import approximant, iter_states
from .errors import InexactError, InvalidParameter, WrongForm
from .scalars import (DEFAULT_PRECISION, EXACT, INFINITY, FloatBackend, RationalComplex,
                      format_real, magnitude, mp_context, rational_sqrt, sqrt_upper)
from .sequence import SequenceSpec, choose_backend, exact_denominators, exact_elements

CRITERIA = ("worpitzky", "pringsheim", "wall-fundamental", "theorem3", "cornew",
            "cor1", "cor2", "thron", "hayden", "lange")
PARTIAL_CRITERIA = ("hayden", "lange")
DISPLAY_DIGITS = 20
DEFAULT_MAX_VIOLATIONS = 16

THRON_GRID_POINTS = 512
THRON_RHO_MAX = 10
THRON_REFINEMENTS = 3

COR2_DISCREPANCY = (
    "known discrepancy: this sequence fails cor2 as indexed (it needs d_n > 25 and "
    "|a_{2n+1}| <= 4 d_n/25) but satisfies the shifted pairing |a_{2n}| >= d_n, "
    "|a_{2n-1}| <= 4 d_n/25 with d_n >= 25, under which it is commonly cited as convergent; "
    "convergence is supported only numerically"
)


class Status(str, Enum):
    HOLDS = "holds-on-prefix"
    VIOLATED = "violated"


@dataclass(frozen=True)
class Violation:
    index: int
    inequality: str
    lhs: str
    rhs: str

    def to_dict(self):
        return {"index": self.index, "inequality": self.inequality, "lhs": self.lhs, "rhs": self.rhs}


@dataclass(frozen=True)
class Verdict:
    criterion: str
    status: Status
    checked_up_to: int
    params: dict = field(default_factory=dict)
    violation: Optional[Violation] = None
    violations: tuple = ()
    full_certification: bool = False
    partial: bool = False
    notes: tuple = ()
    consequence: Optional[dict] = None
    known_discrepancy: bool = False

    @property
    def holds(self) -> bool:
        return self.status is Status.HOLDS

    def to_dict(self):
        return {
            "criterion": self.criterion,
            "params": self.params,
            "status": self.status.value,
            "checked_up_to": self.checked_up_to,
            "violation": None if self.violation is None else self.violation.to_dict(),
            "violations": [v.to_dict() for v in self.violations],
            "full_certification": self.full_certification,
            "partial": self.partial,
            "known_discrepancy": self.known_discrepancy,
            "notes": list(self.notes),
            "consequence": self.consequence,
        }


@dataclass(frozen=True)
class Certificate:
    criterion: str
    params: dict

    def to_dict(self):
        return {"criterion": self.criterion, "params": _params_echo(self.params)}


# -- parameters -----------------------------------------------------------------

@dataclass(frozen=True)
class Param:
    """A parameter sequence p_n (n >= 1) with exact values."""

    fn: Callable[[int], RationalComplex]
    text: str
    constant: bool

    def __call__(self, n: int) -> RationalComplex:
        return self.fn(n)

    def real(self, n: int, name: str) -> Fraction:
        v = self.fn(n)
        if v.im:
            raise InvalidParameter(f"{name}_{n} = {v} must be real")
        return v.re


def make_param(value, precision: int = DEFAULT_PRECISION) -> Param:
    """Build a Param from a number, a DSL expression string or a callable of n."""
    if isinstance(value, Param):
        return value
    if isinstance(value, str):
        from .speclang import parse_expr

        expr = parse_expr(value)
        fb = FloatBackend(precision)

        def fn(n, expr=expr):
            try:
                return expr(n, EXACT)
            except InexactError:
                return RationalComplex.coerce(expr(n, fb))

        return Param(fn, expr.text, expr.constant)
    if callable(value):
        return Param(lambda n: RationalComplex.coerce(value(n)), getattr(value, "__name__", "callable"), False)
    v = RationalComplex.coerce(value)
    return Param(lambda n: v, str(v), True)


def _params_echo(params: dict) -> dict:
    out = {}
    for k, v in params.items():
        if isinstance(v, Param):
            out[k] = v.text
        elif isinstance(v, (Fraction, RationalComplex)):
            out[k] = str(v)
        else:
            out[k] = v
    return out


# -- exact comparison helpers ----------------------------------------------------

def _sqrt_ge_sum(x: Fraction, terms) -> bool:
    """sqrt(x) >= sum(sqrt(t) for t in terms), for x, t >= 0 and at most two terms."""
    terms = [t for t in terms if t]
    if not terms:
        return x >= 0
    if len(terms) == 1:
        return x >= terms[0]
    if len(terms) != 2:
        raise ValueError("at most two radicals supported")
    s, t = terms
    u = x - s - t
    return u >= 0 and u * u >= 4 * s * t


def _ge_sqrt(p: Fraction, y: Fraction) -> bool:
    """p >= sqrt(y)."""
    return p >= 0 and p * p >= y


def _show(q: Fraction, root=False) -> str:
    """Decimal rendering of q, or of sqrt(q) when root is set."""
    if root:
        ctx = mp_context(96)
        return format_real(ctx.sqrt(ctx.mpf(q.numerator) / q.denominator), DISPLAY_DIGITS)
    return format_real(q, DISPLAY_DIGITS)


def _mod(q: Fraction) -> str:
    return _show(q, root=True)


class _Collector:
    def __init__(self, max_violations):
        self.max = max_violations
        self.found = []

    @property
    def full(self):
        return len(self.found) >= self.max

    def check(self, ok, index, inequality, lhs, rhs):
        if not ok:
            self.found.append(Violation(index, inequality, lhs(), rhs()))
        return ok


def _verdict(criterion, col, checked, params, full=False, partial=False, notes=(),
             consequence=None, known=False):
    status = Status.VIOLATED if col.found else Status.HOLDS
    return Verdict(
        criterion=criterion,
        status=status,
        checked_up_to=checked,
        params=_params_echo(params),
        violation=col.found[0] if col.found else None,
        violations=tuple(col.found),
        full_certification=full and not col.found,
        partial=partial,
        notes=tuple(notes),
        consequence=consequence,
        known_discrepancy=known,
    )


def _require_unit(spec, name):
    if not spec.unit_denominators:
        raise WrongForm(f"{name} applies to K(a_n/1); spec has non-unit partial denominators")


def _elements(spec, N, precision):
    a = exact_elements(spec, N, precision)
    return [None] + a, len(a)


def _full(spec: SequenceSpec, checked: int, params=()) -> bool:
    if spec.length is not None:
        return checked >= spec.length
    if spec.period is None or not all(p.constant for p in params):
        return False
    return checked >= 2 * spec.period + 3


# -- classical criteria ---------------------------------------------------------

def _disc_consequence(spec, N, radius_sq: Fraction, label, precision):
    """Check |f_n| < radius for every approximant in the prefix."""
    bk = choose_backend(spec, N, "auto", precision)
    ok = True
    first_bad = None
    for state in iter_states(spec, bk, N):
        f = approximant(state)
        if f is INFINITY:
            inside = False
        elif bk.exact:
            inside = f.abs2() < radius_sq
        else:
            re, im = bk.to_fractions(f)
            inside = re * re + im * im < radius_sq
        if not inside:
            ok = False
            first_bad = state.n
            break
    return {"bound": label, "holds": ok, "first_failure": first_bad, "backend": bk.name}


def worpitzky_check(spec: SequenceSpec, N: int, precision: int = DEFAULT_PRECISION,
                    max_violations: int = DEFAULT_MAX_VIOLATIONS, consequences: bool = True) -> Verdict:
    """|a_n| <= 1/4 for n <= N; on success also checks |f_n| < 1/2."""
    _require_unit(spec, "worpitzky")
    a, M = _elements(spec, N, precision)
    col = _Collector(max_violations)
    quarter_sq = Fraction(1, 16)
    for n in range(1, M + 1):
        q = a[n].abs2()
        col.check(q <= quarter_sq, n, "|a_n| <= 1/4", lambda: _mod(q), lambda: "0.25")
        if col.full:
            break
    consequence = None
    if not col.found and consequences:
        consequence = _disc_consequence(spec, M, Fraction(1, 4), "|f_n| < 1/2", precision)
    return _verdict("worpitzky", col, M, {}, full=_full(spec, M), consequence=consequence)


def pringsheim_check(spec: SequenceSpec, N: int, precision: int = DEFAULT_PRECISION,
                     max_violations: int = DEFAULT_MAX_VIOLATIONS, consequences: bool = True) -> Verdict:
    """|b_n| >= |a_n| + 1 for n <= N; on success also checks |f_n| < 1."""
    a, M = _elements(spec, N, precision)
    b = [None] + exact_denominators(spec, N, precision)
    col = _Collector(max_violations)
    for n in range(1, M + 1):
        qa, qb = a[n].abs2(), b[n].abs2()
        col.check(_sqrt_ge_sum(qb, [qa, Fraction(1)]), n, "|b_n| >= |a_n| + 1",
                  lambda: _mod(qb), lambda: format_real(1 + magnitude(a[n]), DISPLAY_DIGITS))
        if col.full:
            break
    consequence = None
    if not col.found and consequences:
        shifted = spec
        if spec.b0_rule is not None:
            # the disc statement is about K(a_n/b_n) without the constant term
            shifted = SequenceSpec(spec.a_rule, spec.b_rule, None, spec.length, spec.kind, spec.period)
        consequence = _disc_consequence(shifted, M, Fraction(1), "|f_n| < 1", precision)
    return _verdict("pringsheim", col, M, {}, full=_full(spec, M), consequence=consequence)


def wall_fundamental_check(spec: SequenceSpec, r, N: int, precision: int = DEFAULT_PRECISION,
                           max_violations: int = DEFAULT_MAX_VIOLATIONS) -> Verdict:
    """Wall's fundamental inequalities with user-supplied r_n >= 0."""
    _require_unit(spec, "wall-fundamental")
    r = make_param(r, precision)
    a, M = _elements(spec, N, precision)
    rs = [None]
    for n in range(1, M + 1):
        v = r.real(n, "r")
        if v < 0:
            raise InvalidParameter(f"r_{n} = {v} is negative")
        rs.append(v)
    col = _Collector(max_violations)
    for n in range(1, M + 1):
        if n == 1:
            lhs_sq = rs[1] ** 2 * (1 + a[1]).abs2()
            rhs_sq = a[1].abs2()
            col.check(lhs_sq >= rhs_sq, 1, "r_1|1+a_1| >= |a_1|",
                      lambda: _mod(lhs_sq), lambda: _mod(rhs_sq))
        elif n == 2:
            lhs_sq = rs[2] ** 2 * (1 + a[1] + a[2]).abs2()
            rhs_sq = a[2].abs2()
            col.check(lhs_sq >= rhs_sq, 2, "r_2|1+a_1+a_2| >= |a_2|",
                      lambda: _mod(lhs_sq), lambda: _mod(rhs_sq))
        else:
            lhs_sq = rs[n] ** 2 * (1 + a[n - 1] + a[n]).abs2()
            t1 = (rs[n] * rs[n - 2]) ** 2 * a[n - 1].abs2()
            t2 = a[n].abs2()
            col.check(_sqrt_ge_sum(lhs_sq, [t1, t2]), n,
                      "r_n|1+a_{n-1}+a_n| >= r_n r_{n-2}|a_{n-1}| + |a_n|",
                      lambda: _mod(lhs_sq),
                      lambda: format_real(_msqrt(t1) + _msqrt(t2), DISPLAY_DIGITS))
        if col.full:
            break
    return _verdict("wall-fundamental", col, M, {"r": r}, full=_full(spec, M, [r]))


def _msqrt(q: Fraction):
    ctx = mp_context(96)
    return ctx.sqrt(ctx.mpf(q.numerator) / q.denominator)


# -- theorem3 (paired even/odd bounds) and corollaries --------------------------------------------

def _even_threshold(c: Fraction, beta: Fraction) -> Fraction:
    return (c + 1) / (1 - beta)


def _odd_term(beta_n, beta_m, c_k, beta_k) -> Fraction:
    """beta_n beta_m (c_k + 1) / (4 (1 - beta_k))."""
    return beta_n * beta_m * (c_k + 1) / (4 * (1 - beta_k))


def _theorem_params(c: Param, beta: Param, count: int):
    cs, bs = [None], [None]
    for n in range(1, count + 1):
        cn = c.real(n, "c")
        bn = beta.real(n, "beta")
        if cn <= 0:
            raise InvalidParameter(f"c_{n} = {cn} must be positive")
        if not 0 < bn < 1:
            raise InvalidParameter(f"beta_{n} = {bn} must lie in (0, 1)")
        cs.append(cn)
        bs.append(bn)
    return cs, bs


def _check_bounds(col, a, M, even_bounds, odd_bounds):
    """Shared loop: even_bounds(n) -> [(name, T)], odd_bounds(n) -> [(name, m)].

    Verifies |a_{2n}| >= T and |a_{2n+1}| <= m for each listed bound.
    """
    n = 1
    while 2 * n <= M and not col.full:
        q = a[2 * n].abs2()
        for name, t in even_bounds(n):
            col.check(q >= t * t, 2 * n, name, lambda: _mod(q), lambda: _show(t))
            if col.full:
                return
        if 2 * n + 1 <= M:
            q = a[2 * n + 1].abs2()
            for name, m in odd_bounds(n):
                col.check(q <= m * m, 2 * n + 1, name, lambda: _mod(q), lambda: _show(m))
                if col.full:
                    return
        n += 1


def theorem3_check(spec: SequenceSpec, c, beta, variant: str = "cond1", N: int = 100,
                   precision: int = DEFAULT_PRECISION,
                   max_violations: int = DEFAULT_MAX_VIOLATIONS) -> Verdict:
    """Conditions (cond1) or (cond2) (paired even/odd bounds) on a_2..a_N.

    a_1 is exempt from the inequalities; only a_1 != 0 is required.
    """
    _require_unit(spec, "theorem3")
    if variant not in ("cond1", "cond2"):
        raise InvalidParameter(f"unknown theorem3 variant {variant!r}")
    c, beta = make_param(c, precision), make_param(beta, precision)
    a, M = _elements(spec, N, precision)
    cs, bs = _theorem_params(c, beta, M // 2 + 2)

    def even_bounds(n):
        t_n = _even_threshold(cs[n], bs[n])
        if variant == "cond1":
            return [("|a_{2n}| >= (c_n+1)/(1-beta_n)", t_n)]
        t_m = _even_threshold(cs[n + 1], bs[n + 1])
        return [("|a_{2n}| >= max{(c_n+1)/(1-beta_n), (c_{n+1}+1)/(1-beta_{n+1})}", max(t_n, t_m))]

    def odd_bounds(n):
        bounds = [
            ("|a_{2n+1}| <= c_n", cs[n]),
            ("|a_{2n+1}| <= c_{n+1}", cs[n + 1]),
            ("|a_{2n+1}| <= beta_n beta_{n+1}(c_{n+1}+1)/(4(1-beta_{n+1}))",
             _odd_term(bs[n], bs[n + 1], cs[n + 1], bs[n + 1])),
        ]
        if variant == "cond1":
            bounds.append(("|a_{2n+1}| <= beta_n beta_{n+1}(c_n+1)/(4(1-beta_n))",
                           _odd_term(bs[n], bs[n + 1], cs[n], bs[n])))
        return bounds

    col = _Collector(max_violations)
    _check_bounds(col, a, M, even_bounds, odd_bounds)
    return _verdict("theorem3", col, M, {"c": c, "beta": beta, "variant": variant},
                    full=_full(spec, M, [c, beta]))


def _cor1_threshold_display(c: Fraction) -> str:
    ctx = mp_context(128)
    cm = ctx.mpf(c.numerator) / c.denominator
    return format_real(1 + 3 * cm + 2 * ctx.sqrt(cm * (2 * cm + 1)), DISPLAY_DIGITS)


def cor1_threshold(c) -> Fraction | None:
    """T(c) = 1 + 3c + 2 sqrt(c(2c+1)) when it is rational, else None."""
    c = Fraction(c)
    try:
        return 1 + 3 * c + 2 * rational_sqrt(c * (2 * c + 1))
    except InexactError:
        return None


def cor1_beta(c, bits: int = 256) -> Fraction:
    """beta = 2(sqrt(c(2c+1)) - c)/(c+1), exact when the root is rational, else rounded up."""
    c = Fraction(c)
    return 2 * (sqrt_upper(c * (2 * c + 1), bits) - c) / (c + 1)


def corollary_check(spec: SequenceSpec, variant: str, params: dict, N: int,
                    precision: int = DEFAULT_PRECISION,
                    max_violations: int = DEFAULT_MAX_VIOLATIONS) -> Verdict:
    """Corollaries: ``cornew`` (params c, beta, form cond1|cond2), ``cor1``
    (param c) and ``cor2`` (param d)."""
    _require_unit(spec, variant)
    a, M = _elements(spec, N, precision)
    col = _Collector(max_violations)

    if variant == "cor1":
        c = make_param(params["c"], precision)
        if not c.constant:
            raise InvalidParameter("cor1 needs a constant c")
        cv = c.real(1, "c")
        if cv <= 0:
            raise InvalidParameter(f"c = {cv} must be positive")
        p_sq = (1 + 3 * cv) ** 2
        r_sq = 4 * cv * (2 * cv + 1)
        t_text = _cor1_threshold_display(cv)
        n = 1
        while 2 * n <= M and not col.full:
            q = a[2 * n].abs2()
            col.check(_sqrt_ge_sum(q, [p_sq, r_sq]), 2 * n, "|a_{2n}| >= 1 + 3c + 2 sqrt(c(2c+1))",
                      lambda: _mod(q), lambda: t_text)
            if 2 * n + 1 <= M and not col.full:
                q = a[2 * n + 1].abs2()
                col.check(q <= cv * cv, 2 * n + 1, "|a_{2n+1}| <= c", lambda: _mod(q), lambda: _show(cv))
            n += 1
        return _verdict("cor1", col, M, {"c": c}, full=_full(spec, M, [c]))

    if variant == "cor2":
        d = make_param(params["d"], precision)
        ds = [None] + [d.real(n, "d") for n in range(1, M // 2 + 3)]
        n = 1
        while (2 * n <= M) and not col.full:
            col.check(ds[n] > 25, n, "d_n > 25", lambda: _show(ds[n]), lambda: "25")
            if 2 * n + 2 <= M:
                col.check(ds[n + 1] >= ds[n], n, "d_{n+1} >= d_n",
                          lambda: _show(ds[n + 1]), lambda: _show(ds[n]))
            q = a[2 * n].abs2()
            col.check(q >= ds[n] ** 2, 2 * n, "|a_{2n}| >= d_n", lambda: _mod(q), lambda: _show(ds[n]))
            if 2 * n + 1 <= M:
                q = a[2 * n + 1].abs2()
                m = Fraction(4, 25) * ds[n]
                col.check(q <= m * m, 2 * n + 1, "|a_{2n+1}| <= (4/25) d_n",
                          lambda: _mod(q), lambda: _show(m))
            n += 1
        notes, known = [], False
        if col.found and _cor2_shifted_holds(a, M, ds):
            notes.append(COR2_DISCREPANCY)
            known = True
        return _verdict("cor2", col, M, {"d": d}, full=_full(spec, M, [d]), notes=notes, known=known)

    if variant == "cornew":
        c = make_param(params["c"], precision)
        beta = make_param(params["beta"], precision)
        form = params.get("variant", "cond1")
        if form not in ("cond1", "cond2"):
            raise InvalidParameter(f"unknown cornew form {form!r}")
        cs, bs = _theorem_params(c, beta, M // 2 + 2)
        for n in range(1, len(cs) - 1):
            if cs[n + 1] < cs[n] or bs[n + 1] < bs[n]:
                raise InvalidParameter(f"cornew needs increasing c_n and beta_n (fails at n={n})")

        def even_bounds(n):
            k = n if form == "cond1" else n + 1
            name = ("|a_{2n}| >= (c_n+1)/(1-beta_n)" if form == "cond1"
                    else "|a_{2n}| >= (c_{n+1}+1)/(1-beta_{n+1})")
            return [(name, _even_threshold(cs[k], bs[k]))]

        def odd_bounds(n):
            k = n if form == "cond1" else n + 1
            name = ("|a_{2n+1}| <= beta_n beta_{n+1}(c_n+1)/(4(1-beta_n))" if form == "cond1"
                    else "|a_{2n+1}| <= beta_n beta_{n+1}(c_{n+1}+1)/(4(1-beta_{n+1}))")
            return [("|a_{2n+1}| <= c_n", cs[n]), (name, _odd_term(bs[n], bs[n + 1], cs[k], bs[k]))]

        _check_bounds(col, a, M, even_bounds, odd_bounds)
        return _verdict("cornew", col, M, {"c": c, "beta": beta, "variant": form},
                        full=_full(spec, M, [c, beta]))

    raise InvalidParameter(f"unknown corollary {variant!r}")


def _cor2_shifted_holds(a, M, ds) -> bool:
    n = 1
    while 2 * n <= M:
        if ds[n] < 25:
            return False
        if a[2 * n].abs2() < ds[n] ** 2:
            return False
        m = Fraction(4, 25) * ds[n]
        if a[2 * n - 1].abs2() > m * m:
            return False
        n += 1
    return True


def reduce_cor1(c) -> dict:
    """theorem3 parameters induced by cor1 at c (beta rounded up if irrational)."""
    c = Fraction(c)
    return {"c": c, "beta": cor1_beta(c), "variant": "cond1"}


def reduce_cor2(d) -> dict:
    """theorem3 parameters induced by cor2: c_n = d_n/5 - 1, beta_n = 4/5."""
    d = make_param(d)
    c = Param(lambda n: d(n) / 5 - 1, f"({d.text})/5 - 1", d.constant)
    return {"c": c, "beta": Fraction(4, 5), "variant": "cond1"}


# -- comparison criteria ----------------------------------------------------------------

def classical_check(spec: SequenceSpec, variant: str, params: dict, N: int,
                    precision: int = DEFAULT_PRECISION,
                    max_violations: int = DEFAULT_MAX_VIOLATIONS) -> Verdict:
    """``thron`` (param rho), ``hayden`` (no params) or ``lange`` (params a, rho, optional c).

    hayden and lange implement only a necessary fragment of their hypotheses and are
    marked partial.
    """
    _require_unit(spec, variant)
    a, M = _elements(spec, N, precision)
    col = _Collector(max_violations)

    if variant == "thron":
        rho = make_param(params["rho"], precision)
        if not rho.constant:
            raise InvalidParameter("thron needs a constant rho")
        r = rho.real(1, "rho")
        if r <= 1:
            raise InvalidParameter(f"rho = {r} must exceed 1")
        r2 = r * r
        r4 = r2 * r2
        for n in range(1, M + 1):
            q = a[n].abs2()
            if n % 2 == 1:
                col.check(q <= r4, n, "|a_{2n-1}| <= rho^2", lambda: _mod(q), lambda: _show(r2))
            else:
                p = q + 2 * a[n].re
                col.check(_ge_sqrt(p, 4 * r4 * q), n, "|a_{2n}| >= 2(rho^2 - cos arg a_{2n})",
                          lambda: _mod(q),
                          lambda: format_real(2 * (_mpf(r2) - _mpf(a[n].re) / _msqrt(q)), DISPLAY_DIGITS))
            if col.full:
                break
        return _verdict("thron", col, M, {"rho": rho}, full=_full(spec, M, [rho]))

    if variant == "hayden":
        for n in range(1, M):
            q1, q2 = a[n].abs2(), a[n + 1].abs2()
            col.check(q1 < 1 or q2 < 1, n, "|a_n| < 1 or |a_{n+1}| < 1",
                      lambda: format_real(min(_msqrt(q1), _msqrt(q2)), DISPLAY_DIGITS), lambda: "1")
            if col.full:
                break
        return _verdict("hayden", col, M, {}, full=_full(spec, M), partial=True,
                        notes=["partial: only the condition (one of a_n, a_{n+1} in the unit disc) is checked"])

    if variant == "lange":
        shift = make_param(params["a"], precision)
        rho = make_param(params["rho"], precision)
        if not (shift.constant and rho.constant):
            raise InvalidParameter("lange needs constant a and rho")
        av = shift(1)
        r = rho.real(1, "rho")
        if r <= 0 or not (av.abs2() < r * r < (av + 1).abs2()):
            raise InvalidParameter("lange needs |a| < rho < |a+1|")
        notes = ["partial: only the condition |c_{2n-1} +- i a| <= rho is checked"]
        ia = RationalComplex(-av.im, av.re)
        cparam = params.get("c")
        cp = make_param(cparam, precision) if cparam is not None else None
        if cp is None:
            notes.append("c_n taken as principal square roots of a_n")
        for n in range(1, M + 1, 2):
            if cp is not None:
                cn = cp(n)
                if (cn * cn) != a[n] and _exact_param(cparam, n):
                    raise InvalidParameter(f"c_{n}^2 does not equal a_{n}")
            else:
                cn = _principal_root(a[n], precision)
            for sign, z in (("+", cn + ia), ("-", cn - ia)):
                q = z.abs2()
                col.check(q <= r * r, n, f"|c_{{2n-1}} {sign} i a| <= rho", lambda: _mod(q), lambda: _show(r))
            if col.full:
                break
        params_echo = {"a": shift, "rho": rho}
        if cp is not None:
            params_echo["c"] = cp
        return _verdict("lange", col, M, params_echo, full=_full(spec, M, [shift, rho]),
                        partial=True, notes=notes)

    raise InvalidParameter(f"unknown classical criterion {variant!r}")


def _mpf(q: Fraction):
    ctx = mp_context(96)
    return ctx.mpf(q.numerator) / q.denominator


def _exact_param(raw, n) -> bool:
    if isinstance(raw, str):
        from .speclang import parse_expr

        try:
            parse_expr(raw)(n, EXACT)
        except InexactError:
            return False
    return True


def _principal_root(z: RationalComplex, precision) -> RationalComplex:
    try:
        return EXACT.sqrt(z)
    except InexactError:
        fb = FloatBackend(precision)
        return RationalComplex.coerce(fb.sqrt(fb.convert(z)))


# -- dispatch ----------------------------------------------------------------------

def check(spec: SequenceSpec, criterion: str, params: dict | None = None, N: int = 100,
          precision: int = DEFAULT_PRECISION, max_violations: int = DEFAULT_MAX_VIOLATIONS) -> Verdict:
    """Run any criterion by name."""
    params = dict(params or {})
    kw = {"precision": precision, "max_violations": max_violations}
    try:
        if criterion == "worpitzky":
            return worpitzky_check(spec, N, **kw)
        if criterion == "pringsheim":
            return pringsheim_check(spec, N, **kw)
        if criterion in ("wall-fundamental", "wall"):
            return wall_fundamental_check(spec, params["r"], N, **kw)
        if criterion == "theorem3":
            return theorem3_check(spec, params["c"], params["beta"], params.get("variant", "cond1"), N, **kw)
        if criterion in ("cornew", "cor1", "cor2"):
            return corollary_check(spec, criterion, params, N, **kw)
        if criterion in ("thron", "hayden", "lange"):
            return classical_check(spec, criterion, params, N, **kw)
    except KeyError as e:
        raise InvalidParameter(f"{criterion} needs parameter {e.args[0]!r}") from None
    raise InvalidParameter(f"unknown criterion {criterion!r}")


# -- certificate search ----------------------------------------------------------------

def _log_grid(lo: float, hi: float, count: int):
    step = (math.log10(hi) - math.log10(lo)) / count
    return [10 ** (math.log10(lo) + k * step) for k in range(1, count + 1)]


def _theorem3_constant_search(spec, N, precision):
    a, M = _elements(spec, N, precision)
    if M < 3:
        return None
    even_sq = min(a[k].abs2() for k in range(2, M + 1, 2))
    odd_sq = max(a[k].abs2() for k in range(3, M + 1, 2))
    odd = sqrt_upper(odd_sq)  # >= max |a_{2n+1}|

    def beta_for(c: Fraction) -> Fraction:
        # smallest beta with beta^2 (c+1) >= 4 odd (1 - beta), rounded up
        disc = odd * odd + odd * (c + 1)
        return 2 * (sqrt_upper(disc) - odd) / (c + 1)

    def threshold(c):
        beta = beta_for(c)
        if beta >= 1:
            return None, beta
        return (c + 1) / (1 - beta), beta

    candidates = [odd] + [odd * Fraction(f) for f in _log_grid(1.0, 1e4, 128)]
    scored = []
    for c in candidates:
        t, beta = threshold(c)
        if t is not None:
            scored.append((t, c, beta))
    if not scored:
        return None
    # refine around the best grid point by ternary search on log c
    best_t, best_c, best_beta = min(scored, key=lambda s: s[0])
    idx = candidates.index(best_c)
    lo = candidates[max(idx - 1, 0)]
    hi = candidates[min(idx + 1, len(candidates) - 1)]
    for _ in range(24):
        if hi - lo <= lo * Fraction(1, 10 ** 12):
            break
        m1 = lo + (hi - lo) / 3
        m2 = hi - (hi - lo) / 3
        m1 = Fraction(float(m1)) if m1.denominator > 2 ** 80 else m1
        m2 = Fraction(float(m2)) if m2.denominator > 2 ** 80 else m2
        t1, _ = threshold(max(m1, odd))
        t2, _ = threshold(max(m2, odd))
        if t1 is None or (t2 is not None and t2 < t1):
            lo = m1
        else:
            hi = m2
        for c in (m1, m2):
            c = max(c, odd)
            t, beta = threshold(c)
            if t is not None and t < best_t:
                best_t, best_c, best_beta = t, c, beta
    if best_t * best_t > even_sq:
        return None
    cert = Certificate("theorem3", {"c": best_c, "beta": best_beta, "variant": "cond1"})
    verdict = theorem3_check(spec, best_c, best_beta, "cond1", N, precision, max_violations=1)
    return cert if verdict.holds else None


def _thron_search(spec, N, precision):
    _require_unit(spec, "thron")

    def attempt(rho: Fraction):
        v = classical_check(spec, "thron", {"rho": rho}, N, precision, max_violations=1)
        return v

    grid = [Fraction(x) for x in _log_grid(1.0, float(THRON_RHO_MAX), THRON_GRID_POINTS)]
    kinds = []
    for rho in grid:
        v = attempt(rho)
        if v.holds:
            return Certificate("thron", {"rho": rho})
        kinds.append("odd" if v.violation.index % 2 == 1 else "even")
    # bisect where the failing inequality changes from odd (rho too small) to even (too large)
    brackets = [(Fraction(1), grid[0])] if kinds[0] == "even" else []
    brackets += [(grid[k], grid[k + 1]) for k in range(len(grid) - 1)
                 if kinds[k] == "odd" and kinds[k + 1] == "even"]
    for lo, hi in brackets:
        for _ in range(THRON_REFINEMENTS):
            mid = (lo + hi) / 2
            if mid <= 1:
                lo = mid
                continue
            v = attempt(mid)
            if v.holds:
                return Certificate("thron", {"rho": mid})
            if v.violation.index % 2 == 1:
                lo = mid
            else:
                hi = mid
    return None


def certificate_search(spec: SequenceSpec, target: str, N: int,
                       precision: int = DEFAULT_PRECISION) -> Optional[Certificate]:
    """Search parameters for ``theorem3-constant`` (constant c, beta under cond1)
    or ``thron`` (rho on a log grid over (1, 10]). Deterministic; None if nothing passes."""
    _require_unit(spec, target)
    if target == "theorem3-constant":
        return _theorem3_constant_search(spec, N, precision)
    if target == "thron":
        return _thron_search(spec, N, precision)
    raise InvalidParameter(f"unknown search target {target!r}")


def check_certificate(spec: SequenceSpec, cert: Certificate, N: int,
                      precision: int = DEFAULT_PRECISION) -> Verdict:
    return check(spec, cert.criterion, cert.params, N, precision)
