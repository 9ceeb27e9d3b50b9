"""Temperley-Lieb morphisms as sparse linear combinations of crossingless
matchings, with loop value -2.

Point labels follow the JSON convention: bottom points 1..m left to right,
top points m+1..m+n left to right.  Coefficients live in Q (``Fraction``) or
in F_p (ints reduced mod p, ring tag = p).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

from .exactnum import INF, NotPAdmissible, as_rational, format_rational, pval, reduce_mod_p

Ring = Union[str, int]  # "Q" or a prime
LOOP = -2


class CompositionError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Matching:
    m: int
    n: int
    pairs: tuple[tuple[int, int], ...]

    @staticmethod
    def from_pairs(m: int, n: int, pairs: Iterable[tuple[int, int]]) -> "Matching":
        ps = tuple(sorted((min(a, b), max(a, b)) for a, b in pairs))
        mt = Matching(m, n, ps)
        mt.validate()
        return mt

    def validate(self) -> None:
        pts = sorted(x for pr in self.pairs for x in pr)
        if pts != list(range(1, self.m + self.n + 1)):
            raise ValueError(f"not a perfect matching of {self.m}+{self.n} points")
        pos = {x: self.circ(x) for x in pts}
        arcs = [tuple(sorted((pos[a], pos[b]))) for a, b in self.pairs]
        for a, b in arcs:
            for c, d in arcs:
                if a < c < b < d:
                    raise ValueError("matching is not crossingless")

    def circ(self, label: int) -> int:
        """Circular position: bottom left to right, then top right to left."""
        if label <= self.m:
            return label - 1
        return self.m + self.n - 1 - (label - self.m - 1)

    def partner_map(self) -> dict[int, int]:
        out = {}
        for a, b in self.pairs:
            out[a] = b
            out[b] = a
        return out

    def through_degree(self) -> int:
        return sum(1 for a, b in self.pairs if a <= self.m < b)

    def reflect(self) -> "Matching":
        m, n = self.m, self.n

        def sw(x):
            return x + n if x <= m else x - m

        return Matching.from_pairs(n, m, ((sw(a), sw(b)) for a, b in self.pairs))

    def tensor(self, other: "Matching") -> "Matching":
        m1, n1, m2, n2 = self.m, self.n, other.m, other.n

        def s1(x):
            return x if x <= m1 else x + m2

        def s2(x):
            return x + m1 if x <= m2 else x + m1 + n1

        pairs = [(s1(a), s1(b)) for a, b in self.pairs] + [(s2(a), s2(b)) for a, b in other.pairs]
        return Matching.from_pairs(m1 + m2, n1 + n2, pairs)


def compose_matchings(f: Matching, g: Matching) -> tuple[Matching, int]:
    """f o g (g below f); returns the matching and the number of closed loops."""
    if g.n != f.m:
        raise CompositionError(f"cannot compose {f.m}->{f.n} after {g.m}->{g.n}")
    m, n, k = g.m, g.n, f.n
    # nodes: ('g', label) and ('f', label); g top i == f bottom i
    pg, pf = g.partner_map(), f.partner_map()

    def glue(side, label):
        if side == "g" and label > m:
            return ("f", label - m)
        if side == "f" and label <= n:
            return ("g", label + m)
        return None

    def external(side, label):
        if side == "g":
            return label if label <= m else None
        return m + (label - n) if label > n else None

    visited = set()
    pairs = []
    starts = [("g", i) for i in range(1, m + 1)] + [("f", n + i) for i in range(1, k + 1)]
    for start in starts:
        if start in visited:
            continue
        side, lab = start
        visited.add(start)
        while True:
            lab = (pg if side == "g" else pf)[lab]
            visited.add((side, lab))
            ext = external(side, lab)
            if ext is not None:
                pairs.append((external(*start), ext))
                break
            side, lab = glue(side, lab)
            visited.add((side, lab))
    loops = 0
    for i in range(1, n + 1):
        node = ("f", i)
        if node in visited:
            continue
        loops += 1
        side, lab = node
        while (side, lab) not in visited:
            visited.add((side, lab))
            lab = (pg if side == "g" else pf)[lab]
            visited.add((side, lab))
            side, lab = glue(side, lab)
    return Matching.from_pairs(m, k, pairs), loops


@lru_cache(maxsize=None)
def _circular_matchings(npts: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    if npts == 0:
        return ((),)
    out = []
    for partner in range(1, npts, 2):
        for inner in _circular_matchings(partner - 1):
            for outer in _circular_matchings(npts - partner - 1):
                arcs = ((0, partner),) + tuple((a + 1, b + 1) for a, b in inner) + tuple(
                    (a + partner + 1, b + partner + 1) for a, b in outer)
                out.append(arcs)
    return tuple(out)


def circ_to_label(m: int, n: int, pos: int) -> int:
    return pos + 1 if pos < m else m + (m + n - 1 - pos) + 1


def enumerate_matchings(m: int, n: int) -> list[Matching]:
    if (m + n) % 2:
        return []
    out = []
    for arcs in _circular_matchings(m + n):
        out.append(Matching.from_pairs(m, n, ((circ_to_label(m, n, a), circ_to_label(m, n, b)) for a, b in arcs)))
    return sorted(out)


class TLMorphism:
    """Finitely supported linear combination of matchings m -> n."""

    __slots__ = ("m", "n", "ring", "terms")

    def __init__(self, m: int, n: int, ring: Ring = "Q", terms: Mapping[Matching, object] | None = None):
        self.m, self.n, self.ring = m, n, ring
        self.terms: dict[Matching, object] = {}
        for mt, c in (terms or {}).items():
            if (mt.m, mt.n) != (m, n):
                raise ValueError("matching boundary does not match morphism")
            c = self._norm(c)
            if c:
                self.terms[mt] = c

    # -- scalars
    def _norm(self, c):
        if self.ring == "Q":
            return as_rational(c)
        if isinstance(c, Fraction):
            return reduce_mod_p(c, self.ring).residue
        return int(c) % self.ring

    def _same(self, other: "TLMorphism"):
        if self.ring != other.ring:
            raise CompositionError("ring mismatch")

    # -- constructors
    @staticmethod
    def from_matching(mt: Matching, ring: Ring = "Q", coeff=1) -> "TLMorphism":
        return TLMorphism(mt.m, mt.n, ring, {mt: coeff})

    @staticmethod
    def identity(n: int, ring: Ring = "Q") -> "TLMorphism":
        return TLMorphism.from_matching(Matching.from_pairs(n, n, ((i, n + i) for i in range(1, n + 1))), ring)

    @staticmethod
    def zero(m: int, n: int, ring: Ring = "Q") -> "TLMorphism":
        return TLMorphism(m, n, ring)

    @staticmethod
    def cap(ring: Ring = "Q") -> "TLMorphism":
        return TLMorphism.from_matching(Matching.from_pairs(2, 0, [(1, 2)]), ring)

    @staticmethod
    def cup(ring: Ring = "Q") -> "TLMorphism":
        return TLMorphism.from_matching(Matching.from_pairs(0, 2, [(1, 2)]), ring)

    @staticmethod
    def e(n: int, i: int, ring: Ring = "Q") -> "TLMorphism":
        """Cup-cap on strands i, i+1 (0-based) of n strands."""
        pairs = [(i + 1, i + 2), (n + i + 1, n + i + 2)]
        pairs += [(t + 1, n + t + 1) for t in range(n) if t not in (i, i + 1)]
        return TLMorphism.from_matching(Matching.from_pairs(n, n, pairs), ring)

    # -- linear structure
    def __add__(self, other: "TLMorphism") -> "TLMorphism":
        self._same(other)
        if (self.m, self.n) != (other.m, other.n):
            raise CompositionError("adding morphisms with different boundaries")
        terms = dict(self.terms)
        for mt, c in other.terms.items():
            terms[mt] = terms.get(mt, 0) + c
        return TLMorphism(self.m, self.n, self.ring, terms)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TLMorphism":
        c = self._norm(c)
        return TLMorphism(self.m, self.n, self.ring, {mt: x * c for mt, x in self.terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, TLMorphism):
            return NotImplemented
        return (self.m, self.n, self.ring) == (other.m, other.n, other.ring) and self.terms == other.terms

    def __hash__(self):
        return hash((self.m, self.n, self.ring, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"TLMorphism({self.m}->{self.n}, ring={self.ring}, {len(self.terms)} terms)"

    # -- structure
    def compose(self, g: "TLMorphism") -> "TLMorphism":
        """self o g."""
        self._same(g)
        if g.n != self.m:
            raise CompositionError(f"cannot compose {self.m}->{self.n} after {g.m}->{g.n}")
        terms: dict[Matching, object] = {}
        for mf, cf in self.terms.items():
            for mg, cg in g.terms.items():
                mt, loops = compose_matchings(mf, mg)
                terms[mt] = terms.get(mt, 0) + cf * cg * LOOP**loops
        return TLMorphism(g.m, self.n, self.ring, terms)

    __matmul__ = compose

    def tensor(self, other: "TLMorphism") -> "TLMorphism":
        self._same(other)
        terms = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                mt = a.tensor(b)
                terms[mt] = terms.get(mt, 0) + ca * cb
        return TLMorphism(self.m + other.m, self.n + other.n, self.ring, terms)

    def reflect(self) -> "TLMorphism":
        return TLMorphism(self.n, self.m, self.ring, {mt.reflect(): c for mt, c in self.terms.items()})

    def through_degree(self) -> int:
        if not self.terms:
            raise ValueError("through-degree of the zero morphism is undefined")
        return max(mt.through_degree() for mt in self.terms)

    def ord(self, p: int):
        if self.ring != "Q":
            raise ValueError("ord is defined for rational morphisms")
        return min((pval(c, p) for c in self.terms.values()), default=INF)

    def specialize(self, p: int) -> "TLMorphism":
        if self.ring != "Q":
            raise ValueError("already modular")
        if self.ord(p) < 0:
            raise NotPAdmissible(f"morphism has negative {p}-adic valuation")
        return TLMorphism(self.m, self.n, p, {mt: reduce_mod_p(c, p).residue for mt, c in self.terms.items()})

    def partial_trace(self, k: int, side: str = "left") -> "TLMorphism":
        """Close k strands around the given side."""
        if self.m != self.n:
            raise ValueError("partial trace needs an endomorphism")
        if k > self.m:
            raise ValueError(f"cannot trace {k} of {self.m} strands")
        out = self
        for _ in range(k):
            out = _trace_one(out, side)
        return out

    # -- serialization
    def to_json(self) -> dict:
        ring = "Q" if self.ring == "Q" else f"F{self.ring}"
        terms = [
            {"pairs": [list(pr) for pr in mt.pairs],
             "coeff": format_rational(c) if self.ring == "Q" else str(c)}
            for mt, c in sorted(self.terms.items())
        ]
        return {"m": self.m, "n": self.n, "ring": ring, "terms": terms}

    @staticmethod
    def from_json(d: dict) -> "TLMorphism":
        ring = "Q" if d["ring"] == "Q" else int(str(d["ring"]).lstrip("F"))
        m, n = d["m"], d["n"]
        terms = {}
        for t in d["terms"]:
            mt = Matching.from_pairs(m, n, (tuple(pr) for pr in t["pairs"]))
            terms[mt] = Fraction(t["coeff"]) if ring == "Q" else int(t["coeff"])
        return TLMorphism(m, n, ring, terms)


def _trace_one(f: TLMorphism, side: str) -> TLMorphism:
    n = f.m
    b = 1 if side == "left" else n
    t = n + 1 if side == "left" else 2 * n
    terms: dict[Matching, object] = {}
    for mt, c in f.terms.items():
        pm = mt.partner_map()
        if pm[b] == t:
            factor, pairs = LOOP, [pr for pr in mt.pairs if pr != (b, t)]
        else:
            x, y = pm[b], pm[t]
            factor = 1
            pairs = [pr for pr in mt.pairs if b not in pr and t not in pr] + [(x, y)]

        def relabel(z):
            if z <= n:
                return z - 1 if side == "left" else z
            return z - 2 if side == "left" else z - 1

        new = Matching.from_pairs(n - 1, n - 1, ((relabel(a), relabel(z)) for a, z in pairs))
        terms[new] = terms.get(new, 0) + c * factor
    return TLMorphism(n - 1, n - 1, f.ring, terms)


def identity(n: int, ring: Ring = "Q") -> TLMorphism:
    return TLMorphism.identity(n, ring)


def compose(f: TLMorphism, g: TLMorphism) -> TLMorphism:
    return f.compose(g)


def tensor(f: TLMorphism, g: TLMorphism) -> TLMorphism:
    return f.tensor(g)


def reflect(f: TLMorphism) -> TLMorphism:
    return f.reflect()


def through_degree(f: TLMorphism) -> int:
    return f.through_degree()


def ord_morphism(f: TLMorphism, p: int):
    return f.ord(p)


def specialize(f: TLMorphism, p: int) -> TLMorphism:
    return f.specialize(p)


def partial_trace(f: TLMorphism, k: int, side: str = "left") -> TLMorphism:
    return f.partial_trace(k, side)


def jw_slow(n: int) -> TLMorphism:
    """Jones-Wenzl projector by the defining three-term recursion (small n only)."""
    f = identity(n if n <= 1 else 1)
    if n <= 1:
        return identity(n)
    for k in range(2, n + 1):
        prev = f.tensor(identity(1))
        f = prev + prev.compose(TLMorphism.e(k, k - 2)).compose(prev).scale(Fraction(k - 1, k))
    return f
