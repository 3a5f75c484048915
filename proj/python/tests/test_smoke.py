from fractions import Fraction

import pytest

import padic_path as pp


def test_digits_and_norm():
    x = pp.PadicNumber("7/25", 5, 4)
    assert x.valuation == -2
    assert x.digits() == [2, 1, 0, 0]
    assert x.norm() == 25
    assert pp.fractional_part(x) == Fraction(7, 25)
    assert pp.PadicNumber(-1, 5, 4).digits() == [4, 4, 4, 4]
    assert pp.PadicNumber(Fraction(1, 5), 5, 4).valuation == -1


def test_arithmetic():
    a = pp.PadicNumber(2, 5, 4)
    b = pp.PadicNumber(3, 5, 4)
    s = a + b
    assert s.valuation == 1
    assert pp.agree(pp.PadicNumber("1/5", 5) * pp.PadicNumber(5, 5), pp.PadicNumber(1, 5))
    assert pp.PadicNumber.from_json(s.to_json()) == s
    with pytest.raises(pp.PadicError):
        pp.PadicNumber(1, 4)


def test_exponential_and_character():
    e = pp.exp_p(pp.PadicNumber(5, 5), 6)
    assert e.digits() == [1, 1, 3, 3, 4, 1]
    with pytest.raises(pp.DomainError):
        pp.exp_p(pp.PadicNumber(1, 5), 6)
    assert pp.character_phase(pp.PadicNumber("1/5", 5)) == Fraction(1, 5)
    assert pp.char_a(pp.PadicNumber(5, 5), pp.PadicNumber(1, 5), 6) == e


def test_integration():
    report = pp.integrate("x", "mu-1", 5, precision=20, level=6)
    assert report["converged"]
    assert report["rational_estimate"] == "-1/2"
    assert pp.integrate("x^2", "haar", 5, precision=20, level=6)["rational_estimate"] == "1/6"
    assert pp.haar_unboundedness_witness(5, 3) == [5, 25, 125]
    b = pp.PadicNumber(3, 5)
    assert pp.agree(pp.line_integral("2*x", 0, b, 5), b * b)


def test_propagator():
    out = pp.propagator(
        {"prime": 5, "precision": 6, "m": "2", "a": "5", "x": "0", "y": "1", "N": 3}
    )
    assert out["agreement"] is True
    assert out["value"]["digits"] == [1, 1, 3, 3, 4, 1]
    with pytest.raises(pp.DomainError):
        pp.propagator({"prime": 5, "m": "1", "a": "1", "x": "0", "y": "1", "N": 3})
    lhs, rhs = pp.complete_square_step(
        4, pp.PadicNumber(3, 5, 30), pp.PadicNumber(8, 5, 30), pp.PadicNumber(11, 5, 30)
    )
    assert pp.agree(lhs, rhs)
