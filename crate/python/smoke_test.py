"""Smoke test for the raux extension: python smoke_test.py, or under pytest."""

import json
import math
from fractions import Fraction

import raux


def close(a, b, rel):
    return abs(a - b) <= rel * abs(b)


def test_values_against_mpmath():
    # mpmath, 30 digits
    assert close(raux.r(0.5 + 10j), 0.79399947737103199941 + 0.23101216503772365948j, 1e-10)
    assert close(raux.r(-30 + 3j), -18.049766433855925688 + 307.79547883368009652j, 1e-9)
    assert close(raux.quadrature(10 + 5j, "saddle"), 1.0415344805059220514 + 0.014184526914776832225j, 1e-10)


def test_huge_values_stay_in_log_form():
    ev = raux.evaluate(-200 - 50j)
    assert abs(ev.log_mod - 346.220798147985) < 1e-8
    try:
        raux.r(-2000 - 500j)
    except OverflowError:
        pass
    else:
        raise AssertionError("expected OverflowError")


def test_functional_equation():
    s = 0.3 + 40j
    lhs = raux.zeta(s)
    rhs = raux.r(s) + raux.chi(s) * raux.r(1 - s.conjugate()).conjugate()
    assert close(rhs, lhs, 1e-9)


def test_coefficients():
    rows = raux.d_table(2)
    assert rows[1] == [Fraction(-1, 12), Fraction(-1, 2)]
    doc = json.loads(raux.coefficients_json(1))
    assert doc["d"][1][0] == {"re_num": "-1", "re_den": "12", "im_num": "0", "im_den": "1"}


def test_regions_and_angle():
    assert raux.region(100 + 100j) == "L"
    assert raux.region(-1e4 + 10j) == "N"
    phi = raux.phi(math.exp(10))
    assert abs(phi - raux.phi(math.exp(10), series=True)) < 1e-4


def test_zeros():
    assert raux.count_zeros(0, 30, -10, 0) == 3
    zs = raux.find_zeros(0, 30, -10, 0)
    assert abs(zs[0] - (10.648190516854 - 0.951042932605j)) < 1e-8
    assert abs(raux.refine_zero(-20.1 + 0.05j) + 20) < 1e-8
    assert raux.hardy_z(14.0) < 0 < raux.hardy_z(14.3)


def test_errors_are_python_exceptions():
    for bad in (lambda: raux.expand_right(-3 + 0j, 3), lambda: raux.phi(1.0), lambda: raux.quadrature(1j, "nowhere")):
        try:
            bad()
        except ValueError:
            continue
        raise AssertionError("expected ValueError")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            fn()
            print("ok", name)
