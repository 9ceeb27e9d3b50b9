import pytest

from tiltlab import padic


def test_expand():
    assert padic.expand(23, 3).to_json() == {
        "v": 23, "p": 3, "digits": [2, 1, 2], "support": [13, 17, 19, 23], "fsupport": [17, 19], "generation": 2,
    }
    assert padic.digits(9, 3) == (0, 0, 1)
    with pytest.raises(ValueError):
        padic.expand(0, 3)


def test_signed_value():
    assert padic.signed_value([2, -1, -2], 3) == 13
    assert padic.signed_value([1, -2], 3) == 1
    assert padic.signed_value([0], 5) == 0


def test_ancestry():
    a = padic.ancestry(23, 3)
    assert (a.mother, a.ancestors, a.generation, a.eve) == (21, (21, 18), 2, 18)
    assert padic.ancestry(18, 3).is_eve
    assert padic.mother(5, 3) == 3 and padic.generation(5, 3) == 1


def test_fancest():
    v = padic.signed_value([1, 2, 6, 4, 0, 6, 6], 7)
    assert padic.fancest(v, 7, 3) == padic.signed_value([1, 2, 6, 0, 0, 0, 0], 7)
    assert padic.fancest(v, 7, -1) == v
    assert padic.fancest(23, 3, 0) == 21


def test_fancest_clears_lower_digits():
    # digit 1 of 5 = <1,0,1>_2 is zero, but the youngest ancestor with digits 0..1 zero is 4
    assert padic.fancest(5, 2, 1) == 4


def test_supports():
    assert padic.support(17, 3) == {17, 13, 5, 1}
    assert padic.support(18, 3) == {18} and padic.fsupport(18, 3) == set()


def test_admissibility_example():
    v = padic.signed_value([4, 5, 0, 2, 0, 6, 1], 7)
    S, Sp = {5, 4, 3, 0}, {5, 4, 3, 1, 0}
    assert padic.is_down_admissible(v, 7, S) and not padic.is_up_admissible(v, 7, S)
    assert padic.is_up_admissible(v, 7, Sp) and not padic.is_down_admissible(v, 7, Sp)
    assert padic.reflect_down(v, 7, S) == padic.signed_value([4, -5, 0, -2, 0, 6, -1], 7)
    assert padic.reflect_up(v, 7, Sp) == padic.signed_value([6, -5, 0, -2, 2, -6, -1], 7)
    assert padic.hull(v, 7, Sp) == (5, 4, 3, 2, 1, 0)
    assert padic.minimal_partition(v, 7, S) == [(5,), (4, 3), (0,)]


def test_condition_tags():
    assert not padic.is_down_admissible(10, 3, {0})
    with pytest.raises(padic.AdmissibilityError) as e:
        padic.reflect_down(10, 3, {0})
    assert e.value.tag == "d2"
    assert padic.is_down_admissible(7, 3, set()) and padic.is_up_admissible(7, 3, set())


@pytest.mark.parametrize("v, S, op, want", [
    (23, (1, 0), "down", 13), (13, (1, 0), "up", 23), (37, (2,), "down", 19), (19, (1, 0), "down", 17),
    (17, (1,), "up", 23), (37, (1, 0), "down", 35), (35, (2, 1), "down", 23),
])
def test_reflections(v, S, op, want):
    f = padic.reflect_down if op == "down" else padic.reflect_up
    assert f(v, 3, S) == want


def test_hull_and_partition():
    assert padic.hull(11, 3, {0}) == (1, 0)
    assert padic.minimal_partition(13, 3, {1, 0}) == [(1,), (0,)]


def test_stretch_distance():
    assert padic.stretch_distance({0}, {3, 2}) == padic.StretchDistance(2, "distant")
    assert padic.stretch_distance({0}, {1}).kind == "adjacent"
    assert padic.stretch_distance({1, 0}, {2, 1}).kind == "overlapping"
    with pytest.raises(ValueError):
        padic.stretch_distance(set(), {1})


def test_x_set_as_printed():
    assert padic.x_set(2, 3) == {0}
    assert padic.x_set(7, 3) == {0, 2}
    assert padic.x_set(3, 3) == {0}
    assert padic.x_set(23, 3) == {0, 6}


def test_monoid_and_blocks():
    assert padic.monoid_act([1], 7, 3) == 22
    assert padic.monoid_act([0, 0], 7, 3) == 63
    assert padic.monoid_act([], 7, 3) == 7
    assert padic.enumerate_block(1, 3, 23) == [0, 4, 6, 10, 12, 16, 18, 22]
    assert padic.enumerate_block(9, 3, 8) == [8]
    assert padic.block_of(23, 3) == 1
    with pytest.raises(ValueError):
        padic.enumerate_block(5, 3, 10)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_support_bijection_and_round_trips(p):
    for v in range(1, 700):
        sets = padic.down_admissible_sets(v, p)
        assert len(sets) == 2 ** padic.generation(v, p)
        assert {padic.reflect_down(v, p, S) for S in sets} == padic.support(v, p)
        for S in sets:
            w = padic.reflect_down(v, p, S)
            assert padic.reflect_up(w, p, S) == v
            assert len(padic.digits(v, p)) - 1 not in S


@pytest.mark.parametrize("p", [2, 3, 5])
def test_distant_reflections_commute(p):
    for v in range(1, 700):
        mins = padic.minimal_down_stretches(v, p)
        for A in mins:
            for B in mins:
                if padic.stretch_distance(A, B).d > 1:
                    ab = padic.reflect_down(padic.reflect_down(v, p, A), p, B)
                    assert ab == padic.reflect_down(padic.reflect_down(v, p, B), p, A)


def test_lambda_factor_valuation():
    for p in (2, 3, 5):
        for v in range(1, 300):
            for S in padic.down_admissible_sets(v, p):
                lam = padic.lambda_factor(v, p, S)
                num, den = lam.numerator, lam.denominator
                k = 0
                while den % p == 0:
                    den //= p
                    k += 1
                assert num % p != 0 and k == len(S)
