"""Vector and matrix engines against the diagram algebra."""
from fractions import Fraction
import random

import pytest

from tiltlab.tldiag import TLMorphism, compose, enumerate_matchings, identity, jw_slow, tensor
from tiltlab.tlvec import MVec, big_primes, rational_reconstruct
from tiltlab.rep import RMat, rho

MODS = big_primes(3)


def random_morphism(m, n, rng, den=5):
    f = TLMorphism.zero(m, n)
    for mt in rng.sample(enumerate_matchings(m, n), k=min(4, len(enumerate_matchings(m, n)))):
        f = f + TLMorphism.from_matching(mt, coeff=Fraction(rng.randint(-9, 9), rng.randint(1, den)))
    return f


def cap_at(n, j):
    return tensor(tensor(identity(j), TLMorphism.cap()), identity(n - j - 2))


def test_round_trip():
    rng = random.Random(1)
    for m, n in [(3, 3), (4, 2), (5, 1), (0, 4)]:
        f = random_morphism(m, n, rng)
        assert MVec.from_morphism(f, MODS).to_morphism() == f


def test_cap_matches_composition():
    rng = random.Random(2)
    f = random_morphism(3, 5, rng)
    x = MVec.from_morphism(f, MODS)
    for j in range(4):
        assert x.cap(j).to_morphism() == compose(cap_at(5, j), f)


def test_jw_and_trace():
    x = MVec.identity(5, MODS).jw(0, 5)
    assert x.to_morphism() == jw_slow(5)
    assert x.jw(1, 3) == x
    assert x.trace_left(1).to_morphism() == jw_slow(4).scale(Fraction(-6, 5))


def test_reflect():
    f = random_morphism(2, 4, random.Random(3))
    assert MVec.from_morphism(f, MODS).reflect().to_morphism() == f.reflect()


def test_rational_reconstruction():
    M = 1_000_003 * 998_244_353
    q = Fraction(-485105, 689087)
    x = q.numerator * pow(q.denominator, -1, M) % M
    assert rational_reconstruct(x, M) == q


@pytest.mark.parametrize("p", [2, 3, 5])
def test_rho_is_faithful_homomorphism(p):
    rng = random.Random(p)
    for _ in range(5):
        f = random_morphism(3, 3, rng, den=1).specialize(p)
        g = random_morphism(3, 3, rng, den=1).specialize(p)
        assert rho(compose(f, g)) == rho(f) @ rho(g)
    basis = [rho(TLMorphism.from_matching(mt, ring=p)) for mt in enumerate_matchings(4, 4)]
    flat = {tuple(b.a.ravel()) for b in basis}
    assert len(flat) == len(basis)
    assert rho(identity(3, ring=p)) == RMat.identity(3, p)


def test_rho_circle():
    assert rho(compose(TLMorphism.cap(5), TLMorphism.cup(5))).a.ravel().tolist() == [3]
