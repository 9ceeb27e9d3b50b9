from fractions import Fraction
import math

import pytest

from tiltlab.exactnum import FpScalar, NotPAdmissible, format_rational, is_prime, parse_rational, pval, reduce_mod_p


def test_primes():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


@pytest.mark.parametrize("q, p, want", [(Fraction(1, 2), 2, -1), (18, 3, 2), (Fraction(485105, 689087), 7, -5), (5, 3, 0)])
def test_pval(q, p, want):
    assert pval(q, p) == want


def test_pval_zero_is_infinite():
    assert pval(0, 5) == math.inf


def test_reduce():
    assert reduce_mod_p(Fraction(1, 2), 3) == FpScalar(2, 3)
    with pytest.raises(NotPAdmissible):
        reduce_mod_p(Fraction(1, 3), 3)


def test_field_arithmetic():
    a = FpScalar(2, 5)
    assert a * a.inverse() == FpScalar(1, 5)
    assert a + 4 == FpScalar(1, 5)
    assert -a == FpScalar(3, 5)
    with pytest.raises(ValueError):
        a + FpScalar(1, 3)


def test_rational_text_round_trip():
    for q in (Fraction(-7, 3), Fraction(4), Fraction(485105, 689087)):
        assert parse_rational(format_rational(q)) == q
