from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cfconv.criteria import (
    Status,
    certificate_search,
    check,
    check_certificate,
    classical_check,
    corollary_check,
    cor1_beta,
    cor1_threshold,
    pringsheim_check,
    reduce_cor1,
    reduce_cor2,
    theorem3_check,
    wall_fundamental_check,
    worpitzky_check,
)
from cfconv.errors import InvalidParameter, WrongForm
from cfconv.scalars import mp_context
from cfconv.sequence import SequenceSpec
from cfconv.speclang import parse_spec

EX1 = "even: -36/23; odd: 1/23;"


def violated_at(verdict, index):
    return verdict.status is Status.VIOLATED and verdict.violation.index == index


# -- worpitzky / pringsheim --------------------------------------------------------

def test_worpitzky_quarter_holds_and_disc():
    v = worpitzky_check(parse_spec("period: [1/4];"), 60)
    assert v.holds and v.full_certification
    assert v.consequence["holds"]


def test_worpitzky_negative_quarter_holds():
    v = worpitzky_check(parse_spec("period: [-1/4];"), 200)
    assert v.holds and v.consequence["holds"]


def test_worpitzky_single_bad_element():
    v = worpitzky_check(parse_spec("list: [1/4, 1/4, 0.3, 1/4, 1/4];"), 5)
    assert violated_at(v, 3)
    assert v.violation.inequality == "|a_n| <= 1/4"


def test_worpitzky_needs_unit_form():
    with pytest.raises(WrongForm):
        worpitzky_check(parse_spec("period: [1/4]; b: 2;"), 5)


def test_pringsheim_examples():
    assert pringsheim_check(parse_spec("period: [1]; b: 2;"), 50).holds
    assert violated_at(pringsheim_check(parse_spec("period: [1];"), 50), 1)
    v = pringsheim_check(parse_spec("period: [-3]; b: 4;"), 50)
    assert v.holds and v.consequence["holds"]


# -- wall fundamental inequalities ------------------------------------------------------

def test_wall_examples():
    assert wall_fundamental_check(parse_spec("period: [1];"), "1/2", 30).holds
    assert violated_at(wall_fundamental_check(parse_spec("period: [1];"), "0.4", 30), 1)
    assert wall_fundamental_check(parse_spec("period: [0.1];"), "0.5", 30).holds


def test_wall_negative_r_rejected():
    with pytest.raises(InvalidParameter):
        wall_fundamental_check(parse_spec("period: [1];"), "-1", 5)


# -- theorem3 and corollaries ------------------------------------------------------------

def test_theorem3_ex1_holds_exactly_at_threshold():
    v = theorem3_check(parse_spec(EX1), "1/23", "1/3", "cond1", 100)
    assert v.holds and v.full_certification


def test_theorem3_bad_odd_element():
    spec = SequenceSpec.from_function(lambda n: Fraction(1, 2) if n == 3 else
                                      (Fraction(-36, 23) if n % 2 == 0 else Fraction(1, 23)))
    v = theorem3_check(spec, "1/23", "1/3", "cond1", 50)
    assert violated_at(v, 3)
    assert v.violation.inequality.startswith("|a_{2n+1}|")


def test_theorem3_a1_is_exempt():
    spec = SequenceSpec.from_function(lambda n: 1000 if n == 1 else
                                      (Fraction(-36, 23) if n % 2 == 0 else Fraction(1, 23)))
    assert theorem3_check(spec, "1/23", "1/3", "cond1", 50).holds


def test_theorem3_cor2_family():
    spec = parse_spec("even: 25*n + 30; odd: 4;")
    params = reduce_cor2("25*n + 30")
    assert theorem3_check(spec, params["c"], params["beta"], "cond1", 200).holds


def test_theorem3_cond2_variant():
    v = theorem3_check(parse_spec(EX1), "1/23", "1/3", "cond2", 100)
    assert v.holds


def test_theorem3_invalid_parameters():
    with pytest.raises(InvalidParameter):
        theorem3_check(parse_spec(EX1), "1/23", "1", "cond1", 10)
    with pytest.raises(InvalidParameter):
        theorem3_check(parse_spec(EX1), "-1", "1/3", "cond1", 10)


def test_cor1_threshold_values():
    assert cor1_threshold(Fraction(1, 23)) == Fraction(36, 23)
    hi = mp_context(200)
    t2 = 1 + 6 + 2 * hi.sqrt(10)
    assert abs(hi.mpf(13.3246) - t2) < 1e-4


def test_cor1_examples():
    assert corollary_check(parse_spec(EX1), "cor1", {"c": "1/23"}, 100).holds
    assert corollary_check(parse_spec("even: 14; odd: 2;"), "cor1", {"c": "2"}, 100).holds
    v = corollary_check(parse_spec("even: 13.32; odd: 2;"), "cor1", {"c": "2"}, 10)
    assert violated_at(v, 2)


def test_cor1_beta_closed_form():
    # beta = 2(sqrt(c(2c+1)) - c)/(c+1); c = 1/23 gives 1/3 exactly
    assert cor1_beta(Fraction(1, 23)) == Fraction(1, 3)
    b = cor1_beta(Fraction(2))
    hi = mp_context(300)
    exact = 2 * (hi.sqrt(10) - 2) / 3
    assert 0 <= hi.mpf(b.numerator) / b.denominator - exact < hi.mpf(2) ** -250


def test_cor2_four_n_twenty_five_n_is_flagged():
    v = corollary_check(parse_spec("odd: 4*(n+1); even: 25*n;"), "cor2", {"d": "25*n"}, 100)
    assert v.status is Status.VIOLATED
    kinds = {x.inequality for x in v.violations}
    assert "d_n > 25" in kinds
    assert "|a_{2n+1}| <= (4/25) d_n" in kinds
    assert v.violation.index == 1
    assert v.known_discrepancy and v.notes


def test_cor2_accepted_instance():
    v = corollary_check(parse_spec("even: 25*n + 30; odd: 4;"), "cor2", {"d": "25*n + 30"}, 100)
    assert v.holds and not v.known_discrepancy


def test_cornew_requires_increasing_params():
    with pytest.raises(InvalidParameter):
        corollary_check(parse_spec(EX1), "cornew", {"c": "1/n", "beta": "1/3"}, 10)
    assert corollary_check(parse_spec(EX1), "cornew", {"c": "1/23", "beta": "1/3"}, 100).holds


# -- classical comparison criteria ------------------------------------------------------

def test_thron_fails_for_ex1_at_every_grid_rho():
    for rho in ("1.0001", "1.5", "3", "10"):
        v = classical_check(parse_spec(EX1), "thron", {"rho": rho}, 20)
        assert v.status is Status.VIOLATED
        assert v.violation.index % 2 == 0
    assert certificate_search(parse_spec(EX1), "thron", 60) is None


def test_thron_rejects_rho_at_most_one():
    with pytest.raises(InvalidParameter):
        classical_check(parse_spec(EX1), "thron", {"rho": "1"}, 5)


def test_hayden_partial():
    v = classical_check(parse_spec("even: 100; odd: 0.5;"), "hayden", {}, 40)
    assert v.holds and v.partial


def test_lange_partial():
    v = classical_check(parse_spec("period: [0.09];"), "lange", {"a": "0", "rho": "0.5", "c": "0.3"}, 20)
    assert v.holds and v.partial


def test_lange_parameter_range():
    with pytest.raises(InvalidParameter):
        classical_check(parse_spec("period: [0.09];"), "lange", {"a": "0", "rho": "2"}, 5)


def test_dispatch_and_unknown():
    assert check(parse_spec("period: [1/4];"), "worpitzky", N=10).holds
    with pytest.raises(InvalidParameter):
        check(parse_spec("period: [1/4];"), "nonsense")
    with pytest.raises(InvalidParameter):
        check(parse_spec("period: [1/4];"), "cor1")


# -- certificate search --------------------------------------------------------------------

def test_theorem3_search_on_ex1():
    spec = parse_spec(EX1)
    cert = certificate_search(spec, "theorem3-constant", 100)
    assert cert is not None
    c, beta = Fraction(cert.params["c"]), Fraction(cert.params["beta"])
    # at least as permissive as (1/23, 1/3): even threshold no larger
    assert (c + 1) / (1 - beta) <= Fraction(36, 23)
    assert check_certificate(spec, cert, 100).holds


def test_theorem3_search_none_for_growing_terms():
    spec = SequenceSpec.from_function(lambda n: n)
    assert certificate_search(spec, "theorem3-constant", 60) is None


def test_thron_search_quarter():
    spec = parse_spec("period: [1/4];")
    cert = certificate_search(spec, "thron", 40)
    if cert is not None:
        assert check_certificate(spec, cert, 40).holds


def test_search_is_deterministic():
    spec = parse_spec(EX1)
    a = certificate_search(spec, "theorem3-constant", 50)
    b = certificate_search(spec, "theorem3-constant", 50)
    assert a.to_dict() == b.to_dict()


# -- properties ----------------------------------------------------------------------------

quarter_disc = st.builds(Fraction, st.integers(-25, 25), st.just(100))


@given(st.lists(quarter_disc.filter(bool), min_size=1, max_size=30))
def test_worpitzky_acceptance_implies_disc(a):
    v = worpitzky_check(SequenceSpec.from_list(a), len(a))
    assert v.holds and v.consequence["holds"]


@given(st.lists(st.tuples(st.integers(1, 9), st.integers(0, 5)), min_size=1, max_size=25))
def test_pringsheim_acceptance_implies_unit_disc(pairs):
    a = [Fraction(p, 3) for p, _ in pairs]
    b = [abs(x) + 1 + Fraction(s, 7) for x, (_, s) in zip(a, pairs)]
    v = pringsheim_check(SequenceSpec.from_list(a, b=b), len(a))
    assert v.holds and v.consequence["holds"]


@given(st.integers(1, 200), st.integers(1, 200))
def test_violation_is_reconfirmed(p, q):
    x = Fraction(p, q)
    v = worpitzky_check(SequenceSpec.periodic([x]), 3)
    assert v.holds == (x <= Fraction(1, 4))
    if not v.holds:
        assert v.violation.index == 1


@given(st.integers(1, 60).map(lambda k: Fraction(k, 60)))
def test_cor1_reduction_passes_theorem3(c):
    t = cor1_threshold(c)
    bound = t if t is not None else Fraction(int(1 + 3 * c + 2 * (c * (2 * c + 1)) ** 0.5) + 1)
    spec = SequenceSpec.from_parity(-bound, c)
    if corollary_check(spec, "cor1", {"c": c}, 30).holds:
        p = reduce_cor1(c)
        assert theorem3_check(spec, p["c"], p["beta"], "cond1", 30).holds
