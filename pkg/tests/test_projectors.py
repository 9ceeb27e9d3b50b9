from fractions import Fraction

import pytest

from tiltlab import padic
from tiltlab import projectors as P
from tiltlab.rep import RMat, rho
from tiltlab.tldiag import Matching, compose, identity, jw_slow


def test_lambda():
    assert P.lambda_scalar(5, (0,), 3) == Fraction(1, 3)


@pytest.mark.parametrize("v, p", [(3, 3), (9, 3), (4, 2), (8, 2), (5, 5), (2, 3)])
def test_eves_are_classical(v, p):
    assert P.pjw(v, p) == P.jw(v - 1).specialize(p)


def test_first_nonclassical_projector():
    # jw(3) has a 1/3 coefficient, pjw(4) at p=3 does not
    with pytest.raises(ArithmeticError):
        jw_slow(3).specialize(3)
    f = P.pjw(4, 3)
    assert compose(f, f) == f


@pytest.mark.parametrize("p", [2, 3, 5])
def test_closed_form_equals_recursion(p):
    for v in range(1, 10):
        assert P.pqjw_closed(v, p) == P.pqjw_recursive(v, p)


@pytest.mark.parametrize("p", [2, 3])
def test_idempotent_and_reflection_invariant(p):
    for v in range(2, 10):
        f = P.pjw(v, p)
        assert compose(f, f) == f
        assert f.reflect() == f
        assert f.terms[Matching.from_pairs(v - 1, v - 1, [(i, v - 1 + i) for i in range(1, v)])] == 1


def test_labels():
    labs = P.labels(13, 17, 3)
    assert [(L.S, L.Sp) for L in labs] == [((0,), ()), ((1,), (1, 0))]
    assert P.labels(13, 14, 3) == []


def test_p_morphism_label_check():
    with pytest.raises(ValueError):
        P.p_morphism_rho(13, 17, (1,), (), 3)


def test_expansion_of_basis_elements():
    for L in P.labels(5, 7, 3) + P.labels(7, 7, 3):
        f = P.p_morphism(L.v, L.w, L.S, L.Sp, 3)
        coef = P.expand_in_p_morphisms(f, L.v, L.w, 3)
        assert {k: int(c.residue) for k, c in coef.items()} == {L: 1}


def test_expansion_of_identity():
    coef = P.expand_in_p_morphisms(identity(6, ring=3), 7, 7, 3)
    assert {(k.S, k.Sp): int(c.residue) for k, c in coef.items()} == {((), ()): 1}


def test_ancestor_centering_examples():
    def config(pairs):
        caps = {x for pr in pairs for x in pr}
        through = [j for j in range(1, 13) if j not in caps]
        return Matching.from_pairs(12, len(through), list(pairs) + [(j, 13 + t) for t, j in enumerate(through)])

    assert P.is_ancestor_centered(config([(1, 2), (3, 6), (4, 5)]), 13, 3)
    assert not P.is_ancestor_centered(config([(1, 2), (4, 7), (5, 6)]), 13, 3)


def test_cap_configuration_counts():
    assert [len(P.cap_configurations(n)) for n in range(1, 8)] == [0, 1, 2, 5, 9, 19, 34]


def test_noncentered_caps_kill():
    x = P.pjw_vec(8, 3)
    for mt in P.cap_configurations(7):
        if not P.is_ancestor_centered(mt, 8, 3):
            assert P.apply_configuration(mt, x).is_zero()


def test_ploop_squares_to_zero():
    for S in padic.minimal_down_stretches(7, 3):
        L = P.ploop_rho(7, S, 3)
        assert (L @ L).is_zero()
        assert not L.is_zero()


def test_strand_limit():
    old = P.MAX_STRANDS
    try:
        P.set_max_strands(5)
        with pytest.raises(ValueError):
            P.pqjw_closed_vec(8, 3, (101,))
    finally:
        P.set_max_strands(old)
