from fractions import Fraction

import pytest

import rdens


def test_field_and_elements():
    k = rdens.Field(8)
    assert k.degree == 4
    assert k.torsion_order == 8
    a = rdens.Element(k, "12*z")
    b = rdens.Element(k, "18")
    assert str(a * b) == "216*z"
    assert (a / a) == rdens.Element(k, "1")
    assert rdens.Element(k, "z") ** 8 == rdens.Element(k, "1")
    assert rdens.Element(k, "1/2 + z").coeffs == [Fraction(1, 2), Fraction(1), Fraction(0), Fraction(0)]
    assert rdens.Element(k, "3").norm() == Fraction(81)


def test_roots():
    q = rdens.Field(1)
    assert rdens.lth_root(rdens.Element(q, "216"), 3) == rdens.Element(q, "6")
    assert rdens.lth_root(rdens.Element(q, "12"), 3) is None
    depth, root = rdens.power_depth(rdens.Element(q, "2^81"), 3)
    assert depth == 4
    assert root == rdens.Element(q, "2")


def test_worked_examples():
    assert rdens.density(8, 2, ["12", "18"])["density"] == Fraction(1, 56)
    assert rdens.density(8, 2, ["12", "18*z"])["density"] == Fraction(1, 448)
    assert rdens.density(1, 3, ["12", "18"])["density"] == Fraction(8, 13)
    p = rdens.extract_parameters(8, 2, ["12", "18*z"])
    assert p["d"] == [0, 1]
    assert p["h"] == [0, 3]
    assert rdens.kummer_degree(1, 3, ["12", "18"], 2, 2) == 162


def test_bracket_and_estimate():
    b = rdens.bracket(1, 3, ["12", "18"], 6)
    assert b["lower"] <= Fraction(8, 13) <= b["upper"]
    assert b["upper"] - b["lower"] == Fraction(1, 486)
    r = rdens.estimate(1, 3, ["12", "18"], 100000, jobs=1)
    assert r["exact"] == Fraction(8, 13)
    assert r["total"] == 9592
    assert abs(r["observed"] - r["exact"]) < Fraction(1, 50)


def test_errors():
    with pytest.raises(rdens.ParseError):
        rdens.density(1, 3, ["12", "1+"])
    with pytest.raises(rdens.DependenceError):
        rdens.density(1, 2, ["-4", "2"])
    with pytest.raises(rdens.UnsupportedError):
        rdens.density(27, 2, ["2"])
    with pytest.raises(rdens.RdensError):
        rdens.density(1, 3, ["0"])
    assert rdens.density(27, 2, ["2"], allow_large=True)["density"] > 0
