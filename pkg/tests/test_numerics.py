from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cfconv.cf_core import evaluate_trace, tail_ratio
from cfconv.criteria import theorem3_check, worpitzky_check
from cfconv.errors import WrongForm
from cfconv.numerics import b_ratio_scan, convergence_rate, convergence_report, even_odd_gap, limit_estimate
from cfconv.scalars import INFINITY, FloatBackend, RationalComplex, magnitude, mp_context
from cfconv.sequence import SequenceSpec
from cfconv.speclang import parse_spec

from conftest import gaussian

HI = mp_context(256)
EX1 = "even: -36/23; odd: 1/23;"


def test_limit_quarter_fixed_point():
    trace = evaluate_trace(parse_spec("period: [1/4];"), 60, "float")
    est, cauchy = limit_estimate(trace, 1e-12, 4)
    assert cauchy
    assert abs(est.real - (HI.sqrt(2) - 1) / 2) < 1e-12


def test_limit_golden_fixed_point():
    est, cauchy = limit_estimate(evaluate_trace(parse_spec("period: [1];"), 80), 1e-10)
    assert cauchy
    assert abs(magnitude(est) - (HI.sqrt(5) - 1) / 2) < 1e-10


def test_limit_oscillating_trace():
    assert limit_estimate([1, 2] * 10, 1e-3, 4) == (None, False)


def test_limit_infinity_in_window():
    assert limit_estimate([1, 1, INFINITY, 1], 1e-3, 3) == (None, False)


def test_limit_invalid_input():
    with pytest.raises(ValueError):
        limit_estimate([], 1e-3, 4)
    with pytest.raises(ValueError):
        limit_estimate([1, 1], 0, 4)
    with pytest.raises(ValueError):
        limit_estimate([1, 1], 1e-3, 1)


def test_limit_relative_above_one():
    # 1e6 and 1e6 + 1e-7 differ by 1e-13 relative
    assert limit_estimate([Fraction(10**6), Fraction(10**13 + 1, 10**7)], 1e-12, 2)[1]
    assert not limit_estimate([Fraction(0), Fraction(1, 10**11)], 1e-12, 2)[1]


def test_gap_first_point_by_hand():
    p = even_odd_gap(parse_spec("list: [1, 1];"), 2).points[0]
    assert p.even_gap == Fraction(1, 2) or p.even_gap == 0.5
    assert p.even_gap == p.even_gap_formula
    assert p.identity_exact


@given(st.lists(gaussian(nonzero=True), min_size=30, max_size=30))
def test_gap_identity_exact(a):
    gaps = even_odd_gap(SequenceSpec.from_list(a), 30, "exact")
    assert len(gaps.points) == 15
    assert all(p.identity_exact is not False for p in gaps.points)


def test_gap_identity_float():
    gaps = even_odd_gap(parse_spec("period: [1/3, -2/9 + i/5];"), 200, "float")
    # the direct route subtracts O(1) approximants, so agreement is absolute at ~2^-120
    for p in gaps.points:
        assert abs(p.even_gap - p.even_gap_formula) <= 1e-35


def test_gap_ex1_decays():
    points = even_odd_gap(parse_spec(EX1), 400, "float").points
    assert points[-1].even_gap < 1e-10
    tail = [p.even_gap_formula for p in points[10:]]
    assert all(x >= y for x, y in zip(tail, tail[1:]))


def test_zero_denominator_gives_infinite_gap():
    # a_1 = 1, a_2 = -1 gives B_2 = 0
    p = even_odd_gap(parse_spec("list: [1, -1, 1];"), 3).points[0]
    assert p.even_gap is INFINITY and p.even_gap_formula is INFINITY


def test_gap_requires_unit_form():
    with pytest.raises(WrongForm):
        even_odd_gap(parse_spec("period: [1]; b: 2;"), 4)


def test_b_ratio_ex1_bounded_by_three():
    scan = b_ratio_scan(parse_spec(EX1), 1000, FloatBackend(128))
    assert scan.unbounded_at is None and scan.max_ratio <= 3


def test_b_ratio_golden():
    scan = b_ratio_scan(parse_spec("period: [1];"), 60)
    assert abs(scan.max_ratio - (1 + HI.sqrt(5)) / 2) < 1e-20


def test_b_ratio_matches_tail_ratio_at_one():
    spec = parse_spec("list: [3/7, -2, 5/3];")
    scan = b_ratio_scan(spec, 1)
    assert scan.max_ratio == magnitude(tail_ratio(spec, 1).value)


def test_b_ratio_unbounded_index():
    scan = b_ratio_scan(parse_spec("list: [1, -1, 1, 2, 3];"), 2)
    assert scan.max_ratio is INFINITY and scan.unbounded_at == 1


def test_rate_distinguishes_slow_from_fast():
    fast = convergence_report(parse_spec("period: [1/4];"), 200)
    slow = convergence_report(parse_spec("period: [-1/4];"), 400)
    assert fast.rate < -0.5
    assert -0.05 < slow.rate < 0
    assert convergence_rate([(1, INFINITY)]) is None


def test_report_ex1():
    r = convergence_report(parse_spec(EX1), 300, "float")
    assert r.cauchy_satisfied
    assert abs(r.even_limit - r.odd_limit) < 1e-12
    assert r.max_b_ratio <= 3
    assert r.residual_summary < 1e-30
    assert all(g >= 0 for _, g in r.gap_trace + r.odd_gap_trace)


def test_report_non_unit_uses_equivalent_form():
    r = convergence_report(parse_spec("period: [1]; b: 2;"), 80)
    assert abs(magnitude(r.limit_estimate) - (HI.sqrt(2) - 1)) < 1e-20
    assert r.gap_trace


def test_report_negative_quarter_tends_to_minus_half():
    r = convergence_report(parse_spec("period: [-1/4];"), 5000)
    last = r.trace[-1]
    assert isinstance(last, RationalComplex)
    assert abs(last.re + Fraction(1, 2)) < Fraction(1, 1000)


@given(st.lists(st.integers(-25, 25).filter(bool).map(lambda k: Fraction(k, 100)), min_size=2, max_size=2))
def test_worpitzky_specs_stay_in_half_disc(pattern):
    spec = SequenceSpec.periodic(pattern)
    assert worpitzky_check(spec, 20).holds
    r = convergence_report(spec, 200, "float")
    if r.cauchy_satisfied:
        assert magnitude(r.limit_estimate) <= 0.5


@given(st.integers(1, 40), st.integers(0, 7))
def test_theorem3_accepted_specs_behave(k, phase):
    # |a_{2n}| = 36/23 * (1 + k/10), |a_{2n+1}| = 1/23, rotated by a Pythagorean phase
    rot = [RationalComplex(1), RationalComplex(0, 1), RationalComplex(Fraction(3, 5), Fraction(4, 5)),
           RationalComplex(Fraction(-5, 13), Fraction(12, 13))][phase % 4]
    even = RationalComplex(Fraction(-36, 23) * (1 + Fraction(k, 10))) * rot
    odd = RationalComplex(Fraction(1, 23)) * (rot if phase < 4 else rot.conjugate())
    spec = SequenceSpec.from_parity(even, odd)
    assert theorem3_check(spec, "1/23", "1/3", "cond1", 40).holds
    r = convergence_report(spec, 400, "float", tol=1e-12)
    assert r.max_b_ratio <= 3
    assert r.even_limit is not None and r.odd_limit is not None
    assert magnitude(r.even_limit - r.odd_limit) < 1e-11
