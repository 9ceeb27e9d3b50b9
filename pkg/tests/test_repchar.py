import pytest

from tiltlab import padic, repchar
from tiltlab.repchar import Character


def test_weyl_character():
    assert repchar.weyl_character(3).weights() == {-2: 1, 0: 1, 2: 1}
    with pytest.raises(ValueError):
        repchar.weyl_character(0)


def test_character_arithmetic():
    a, b = repchar.weyl_character(3), repchar.weyl_character(1)
    assert (a + b).weights() == {-2: 1, 0: 2, 2: 1}
    assert (a - a).is_zero()
    assert a.scale(2).dim == 6
    assert a.highest_weight() == 2
    assert Character.from_weights({}).highest_weight() is None


def test_tilting_22():
    t = repchar.tilting_character(23, 3)
    assert t.labels == (22, 18, 16, 12)
    assert t.dim == repchar.tilting_dim(23, 3) == 72


def test_simple_characters():
    # L(4) at p=3 is L(1) (x) L(1)^(1)
    assert repchar.simple_character(4, 3).weights() == {-4: 1, -2: 1, 2: 1, 4: 1}
    assert repchar.simple_character(2, 3).dim == 3
    assert repchar.simple_character(0, 5).weights() == {0: 1}


def test_weyl_decompositions():
    assert repchar.decompose_weyl(23, 3) == {22: 1, 18: 1, 12: 1, 10: 1}
    assert repchar.decompose_weyl(7, 3) == {6: 1, 4: 1}
    assert repchar.decompose_weyl(3, 3) == {2: 1}


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_decompositions_are_consistent(p):
    for w in range(1, 150):
        d = repchar.decompose_weyl(w, p)
        assert max(d) == w - 1 and d[w - 1] == 1
        total = Character.from_weights({})
        for h, m in d.items():
            total = total + repchar.simple_character(h, p).scale(m)
        assert total == repchar.weyl_character(w)
        assert all(padic.block_of(h + 1, p) == padic.block_of(w, p) for h in d)


def test_x_recursion_differs_from_characters():
    assert sorted(repchar.delta_labels_via_x(7, 3)) != sorted(h + 1 for h in repchar.decompose_weyl(7, 3))


@pytest.mark.parametrize("p", [3, 5, 7])
def test_ideal_levels(p):
    from tiltlab.exactnum import pval
    for v in range(1, 400):
        k = repchar.ideal_level(v, p)
        assert pval(repchar.tilting_dim(v, p), p) >= k
        assert p**k <= v < p ** (k + 1)
    assert repchar.ideal_members(p, 1, p + 1) == [p - 1, p, p + 1]


def test_negligible():
    assert [v for v in range(1, 12) if repchar.negligible(v, 3)] == list(range(3, 12))


def test_csv():
    text = repchar.to_csv(repchar.table(3, 7))
    lines = text.splitlines()
    assert lines[0] == "v-1,supp,tilting_nabla_labels,delta_factors,dim_T,ideal_level"
    assert lines[7] == "6,7 5,6 4,6 4,12,1"
    assert len(lines) == 8
