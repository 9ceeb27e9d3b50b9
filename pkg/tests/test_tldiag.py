from fractions import Fraction

import pytest

from tiltlab.tldiag import (
    CompositionError, Matching, TLMorphism, compose, enumerate_matchings, identity, jw_slow, partial_trace, tensor,
)
from tiltlab import projectors as P

CATALAN = [1, 1, 2, 5, 14, 42, 132]


def coeff_of_empty(f):
    assert (f.m, f.n) == (0, 0)
    return f.terms.get(Matching.from_pairs(0, 0, []), 0)


def test_circle_value():
    assert coeff_of_empty(compose(TLMorphism.cap(), TLMorphism.cup())) == -2


@pytest.mark.parametrize("n", range(7))
def test_basis_sizes(n):
    assert len(enumerate_matchings(n, n)) == CATALAN[n]


def test_odd_total_has_no_diagrams():
    assert enumerate_matchings(2, 1) == []


def test_temperley_lieb_relations():
    e1, e2 = TLMorphism.e(3, 0), TLMorphism.e(3, 1)
    assert compose(e1, e1) == e1.scale(-2)
    assert compose(compose(e1, e2), e1) == e1
    assert compose(compose(e2, e1), e2) == e2


def test_composition_is_associative():
    ms = enumerate_matchings(3, 3)
    for a in ms[:3]:
        for b in ms:
            for c in ms[:3]:
                A, B, C = (TLMorphism.from_matching(x) for x in (a, b, c))
                assert compose(compose(A, B), C) == compose(A, compose(B, C))


def test_shape_mismatch():
    with pytest.raises(CompositionError):
        compose(identity(2), identity(3))


def test_reflect_is_antihomomorphism():
    e1, e2 = TLMorphism.e(3, 0), TLMorphism.e(3, 1)
    assert compose(e1, e2).reflect() == compose(e2.reflect(), e1.reflect())
    assert TLMorphism.cap().reflect() == TLMorphism.cup()


def test_tensor_and_through_degree():
    f = tensor(TLMorphism.cup(), identity(1))
    assert (f.m, f.n) == (1, 3)
    assert f.through_degree() == 1
    assert identity(4).through_degree() == 4
    assert TLMorphism.e(4, 1).through_degree() == 2


def test_jw2():
    j = jw_slow(2)
    assert j == identity(2) + TLMorphism.e(2, 0).scale(Fraction(1, 2))
    assert j.ord(2) == -1 and j.ord(3) == 0
    assert partial_trace(j, 1) == identity(1).scale(Fraction(-3, 2))


def test_jw_agrees_with_definition():
    for n in range(1, 6):
        assert P.jw(n) == jw_slow(n)


def test_specialize():
    j = jw_slow(2)
    with pytest.raises(ArithmeticError):
        j.specialize(2)
    s = j.specialize(3)
    assert s.ring == 3 and len(s) == 2


def test_json_round_trip():
    f = jw_slow(4)
    assert TLMorphism.from_json(f.to_json()) == f
    g = f.specialize(5)
    assert TLMorphism.from_json(g.to_json()) == g


def test_invalid_matching():
    with pytest.raises(ValueError):
        Matching.from_pairs(2, 2, [(1, 3), (2, 4), (1, 2)])
    with pytest.raises(ValueError):
        Matching.from_pairs(2, 2, [(1, 4), (2, 3)])  # crossing
