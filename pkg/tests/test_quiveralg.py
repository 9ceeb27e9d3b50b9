import random
from fractions import Fraction

import pytest

from tiltlab import padic
from tiltlab import quiveralg as Q
from tiltlab.quiveralg import Letter


def terms(nf):
    return [(t["ups"], t["downs"], t["coeff"]) for t in nf.to_json()["terms"]]


def test_zigzag_becomes_loop():
    nf = Q.rewrite_text("D{0} U{0} @ 10", 3)
    assert terms(nf) == [([[1, 0]], [[1, 0]], "1")]


def test_adjacent_downs():
    nf = Q.rewrite_text("D{1} D{0} @ 16", 3)
    assert nf.to_json()["target"] == 6
    assert terms(nf) == [([[0]], [[1]], "1")]


def test_nested_downs_vanish():
    nf = Q.rewrite_text("D{0} D{0} D{1} @ 12", 3)
    assert nf.to_json() == {"source": 12, "target": 0, "terms": []}


def test_overlapping_downs():
    assert terms(Q.rewrite_text("D{2,1} D{1,0} @ 36", 3)) == [([[1]], [[1, 0], [2]], "1")]


def test_distant_downs_commute():
    a = Q.rewrite_text("D{0} D{3,2} @ 93", 3)
    b = Q.rewrite_text("D{3,2} D{0} @ 93", 3)
    assert a == b and len(a.terms) == 1


def test_distant_example_needs_admissible_vertex():
    with pytest.raises((Q.NotComposable, ValueError)):
        Q.parse_word("D{0} D{3,2} @ 90", 3)


def test_parse_errors():
    for bad in ["D{0} U{0}", "X{0} @ 3", "D{0 @ 3", "D{0} @ -1"]:
        with pytest.raises(ValueError):
            Q.parse_word(bad, 3)


def test_written_order():
    w = Q.parse_word("D{1} D{0} @ 16", 3)
    assert w.written() == "D{1} D{0} @ 16"
    assert [L.S for L in w.letters] == [(0,), (1,)]
    assert w.path() == [17, 13, 7]


def test_digit_scalars():
    assert [Q.f_digit(a, 5) for a in range(5)] == [0, -2, 1, Fraction(-2, 3), 0]
    assert [Q.g_digit(a, 3) for a in range(3)] == [-2, -2, Fraction(-3, 2)]
    with pytest.raises(ValueError):
        Q.g_digit(3, 3)
    assert Q.scalar_g(13, (1,), 3).residue == 1


def test_generators_at_13():
    gens = Q.generators_at(13, 3)
    assert [(g.direction, g.S) for g in gens if g.direction == "Down"] == [("Down", (0,)), ("Down", (1,))]
    for g in gens:
        assert g.target in padic.support(13, 3) or g.direction == "Up"


def test_hom_and_end():
    assert len(Q.hom_basis(13, 17, 3)) == 2
    assert len(Q.hom_basis(13, 14, 3)) == 0
    ep = Q.end_presentation(23, 3)
    assert ep["dimension"] == 4 and ep["generators"] == [[0], [1]]


@pytest.mark.parametrize("p", [2, 3, 5])
def test_hom_dimension_counts_common_supports(p):
    for v in range(1, 40):
        for w in range(1, 40):
            common = len(padic.support(v, p) & padic.support(w, p))
            assert len(Q.hom_basis(v, w, p)) == common


@pytest.mark.parametrize("p", [2, 3])
def test_rewrite_is_confluent(p):
    rng = random.Random(p)
    for _ in range(60):
        from tiltlab.verify import random_word
        w = random_word(rng, p, 60, rng.randint(1, 5))
        nf = Q.rewrite(w)
        assert Q.rewrite(w, rng=random.Random(rng.random())) == nf
        assert Q.rewrite(w.reflect()) == nf.reflect()


def test_fuel_exhaustion():
    with pytest.raises(Q.RewriteError):
        Q.rewrite(Q.parse_word("D{2,1} D{1,0} @ 36", 3), fuel=0)


def test_letter_swap():
    assert Letter("D", (1, 0)).swap() == Letter("U", (1, 0))


def test_quiver_component_and_exports():
    g = Q.quiver_graph(3, 23)
    assert g.component(0) == [0, 4, 6, 10, 12, 16, 18, 22]
    dot = g.to_dot()
    assert dot.startswith("digraph") and "style=dashed" in dot
    js = g.to_json()
    assert len(js["vertices"]) == 23
    assert all(a["kind"] in ("down", "up") for a in js["arrows"])


@pytest.mark.parametrize("p", [2, 3])
def test_evaluation_matches_normal_form(p):
    from tiltlab.verify import composable_words
    for w in composable_words(p, 9, 2)[:40]:
        assert Q.eval_word(w) == Q.eval_normal_form(Q.rewrite(w))
