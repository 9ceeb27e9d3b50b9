"""The zigzag-type path algebra: generators, relations, a rewriting engine to
the normal-form basis, hom bases, endomorphism presentations and the quiver.

Words are stored in application order (first applied generator first).  The
written order used by the grammar and JSON is the reverse, so ``D{1} D{0} @ 16``
applies D{0} at vertex 16 and then D{1}.  Vertices are held as v internally;
everything user-facing is the label v-1.
"""

from __future__ import annotations

import random
import re
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from . import padic
from .exactnum import FpScalar, check_prime, reduce_mod_p

DEFAULT_FUEL = 10**6


class NotComposable(ValueError):
    pass


class RewriteError(RuntimeError):
    """Fuel exhausted or no relation matches an out-of-order pair."""

    def __init__(self, msg: str, term=None):
        super().__init__(msg)
        self.term = term


# ------------------------------------------------------------------ scalars

def f_digit(a: int, p: int) -> Fraction:
    if 1 <= a <= p - 2:
        return Fraction((-1) ** a * 2, a)
    return Fraction(0)


def g_digit(a: int, p: int) -> Fraction:
    if a == 0:
        return Fraction(-2)
    if 1 <= a <= p - 1:
        return Fraction(-(a + 1), a)
    raise ValueError(f"g undefined at {a}")


def _next_digit(v: int, p: int, S) -> int:
    return padic.digit(v, p, max(S) + 1)


def scalar_f(v: int, S, p: int) -> FpScalar:
    return reduce_mod_p(f_digit(_next_digit(v, p, S), p), p)


def scalar_g(v: int, S, p: int) -> FpScalar:
    return reduce_mod_p(g_digit(_next_digit(v, p, S), p), p)


def scalar_h(v: int, S, p: int) -> FpScalar:
    return reduce_mod_p(g_digit(_next_digit(v, p, S) - 1, p), p)


def _fp(q: Fraction, p: int) -> int:
    return q.numerator * pow(q.denominator, -1, p) % p


# --------------------------------------------------------------- generators

@dataclass(frozen=True)
class Letter:
    kind: str  # "D" or "U"
    S: tuple[int, ...]

    def __str__(self):
        return f"{self.kind}{{{','.join(map(str, self.S))}}}"

    def swap(self) -> "Letter":
        return Letter("U" if self.kind == "D" else "D", self.S)


@dataclass(frozen=True)
class Generator:
    direction: str  # "Down" | "Up"
    v: int
    S: tuple[int, ...]
    p: int

    @property
    def target(self) -> int:
        return step(self.v, Letter(self.direction[0], self.S), self.p)

    def __str__(self):
        return f"{self.direction}{{{','.join(map(str, self.S))}}}: {self.v - 1}->{self.target - 1}"


@lru_cache(maxsize=1 << 18)
def is_generator(x: int, L: Letter, p: int) -> bool:
    if L.kind == "D":
        return L.S in padic.minimal_down_stretches(x, p)
    return L.S in padic.up_generator_stretches(x, p)


def step(x: int, L: Letter, p: int) -> int:
    """Target of a (possibly composite) letter at v=x."""
    return _step(x, L, p)


@lru_cache(maxsize=1 << 18)
def _step(x: int, L: Letter, p: int) -> int:
    try:
        return padic.reflect_down(x, p, L.S) if L.kind == "D" else padic.reflect_up(x, p, L.S)
    except padic.AdmissibilityError as e:
        raise NotComposable(f"{L} not admissible at vertex {x - 1}: {e}") from None


def generators_at(v: int, p: int) -> list[Generator]:
    check_prime(p)
    out = [Generator("Down", v, S, p) for S in padic.minimal_down_stretches(v, p)]
    out += [Generator("Up", v, S, p) for S in padic.up_generator_stretches(v, p)]
    return out


def decompose(x: int, L: Letter, p: int) -> list[Letter]:
    """Minimal generators (application order) whose product is the symbol L at x."""
    S = padic.canon(L.S)
    if not S:
        return []
    if L.kind == "D":
        if not padic.is_down_admissible(x, p, S):
            raise NotComposable(f"{L} not down-admissible at vertex {x - 1}")
        return [Letter("D", piece) for piece in padic.minimal_partition(x, p, S, "down")]
    if not padic.is_up_admissible(x, p, S):
        raise NotComposable(f"{L} not up-admissible at vertex {x - 1}")
    target = padic.reflect_up(x, p, S)
    rest, y, out = set(S), x, []
    while rest:
        lo = min(rest)
        pick = [G for G in padic.up_generator_stretches(y, p) if lo in G and set(G) <= rest]
        if not pick:
            raise NotComposable(f"{L} at vertex {x - 1} does not split into up generators")
        G = pick[0]
        out.append(Letter("U", G))
        y = padic.reflect_up(y, p, G)
        rest -= set(G)
    if y != target:
        raise NotComposable(f"{L} at vertex {x - 1} splits to a different target")
    return out


def expand(v: int, letters: Iterable[Letter], p: int) -> tuple[Letter, ...]:
    """Replace composite symbols by products of minimal generators."""
    return _expand(v, tuple(letters), p)


@lru_cache(maxsize=1 << 18)
def _expand(v: int, letters: tuple[Letter, ...], p: int) -> tuple[Letter, ...]:
    out: list[Letter] = []
    x = v
    for L in letters:
        if is_generator(x, L, p):
            pieces = [L]
        else:
            pieces = decompose(x, L, p)
        for G in pieces:
            out.append(G)
            x = step(x, G, p)
    return tuple(out)


# -------------------------------------------------------------------- words

@dataclass(frozen=True)
class QuiverWord:
    v: int
    letters: tuple[Letter, ...]  # application order
    p: int

    def path(self) -> list[int]:
        xs = [self.v]
        for L in self.letters:
            xs.append(step(xs[-1], L, self.p))
        return xs

    @property
    def target(self) -> int:
        return self.path()[-1]

    def written(self) -> str:
        body = " ".join(str(L) for L in reversed(self.letters)) or "1"
        return f"{body} @ {self.v - 1}"

    def reflect(self) -> "QuiverWord":
        return QuiverWord(self.target, tuple(L.swap() for L in reversed(self.letters)), self.p)

    def __str__(self):
        return self.written()


_TOKEN = re.compile(r"\s*([DU])\s*\{([^}]*)\}")


def parse_word(text: str, p: int, vertex: int | None = None) -> QuiverWord:
    """Parse ``D{1} D{0} @ 16``; the number after @ is the vertex label v-1."""
    text = text.strip()
    if "@" in text:
        text, at = text.rsplit("@", 1)
        vertex = int(at.strip())
    if vertex is None:
        raise ValueError("word needs a source vertex: append '@ <vertex>'")
    letters = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse word near {text[pos:]!r}")
        body = m.group(2).strip()
        S = padic.canon(int(t) for t in body.split(",")) if body else ()
        letters.append(Letter(m.group(1), S))
        pos = m.end()
        while pos < len(text) and text[pos] in " \t*·∘":
            pos += 1
    w = QuiverWord(vertex + 1, tuple(reversed(letters)), p)
    w.path()
    return w


# ------------------------------------------------------------- normal forms

@dataclass(frozen=True)
class BasisElement:
    v: int
    w: int
    ups: tuple[tuple[int, ...], ...]  # written order, largest first
    downs: tuple[tuple[int, ...], ...]  # written order, smallest first

    def letters(self) -> tuple[Letter, ...]:
        """Application order."""
        return tuple(Letter("D", S) for S in reversed(self.downs)) + tuple(Letter("U", S) for S in reversed(self.ups))

    def word(self, p: int) -> QuiverWord:
        return QuiverWord(self.v, self.letters(), p)

    def __str__(self):
        parts = [f"U{{{','.join(map(str, S))}}}" for S in self.ups] + [f"D{{{','.join(map(str, S))}}}" for S in self.downs]
        return (" ".join(parts) or "1") + f" : {self.v - 1}->{self.w - 1}"

    def to_json(self) -> dict:
        return {"ups": [list(S) for S in self.ups], "downs": [list(S) for S in self.downs]}


def _basis_of_letters(v: int, w: int, letters: tuple[Letter, ...]) -> BasisElement:
    downs = [L.S for L in letters if L.kind == "D"]
    ups = [L.S for L in letters if L.kind == "U"]
    return BasisElement(v, w, tuple(reversed(ups)), tuple(reversed(downs)))


@dataclass
class NormalForm:
    v: int
    w: int
    p: int
    terms: dict  # BasisElement -> int (mod p)

    def coeff(self, b: BasisElement) -> FpScalar:
        return FpScalar(self.terms.get(b, 0), self.p)

    def __eq__(self, other):
        if not isinstance(other, NormalForm):
            return NotImplemented
        return (self.v, self.w, self.p) == (other.v, other.w, other.p) and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "NormalForm") -> "NormalForm":
        if (self.v, self.w, self.p) != (other.v, other.w, other.p):
            raise ValueError("normal forms with different endpoints")
        t = dict(self.terms)
        for b, c in other.terms.items():
            t[b] = (t.get(b, 0) + c) % self.p
        return NormalForm(self.v, self.w, self.p, {b: c for b, c in t.items() if c})

    def scale(self, c: int) -> "NormalForm":
        return NormalForm(self.v, self.w, self.p, {b: x * c % self.p for b, x in self.terms.items() if x * c % self.p})

    def reflect(self) -> "NormalForm":
        out = {}
        for b, c in self.terms.items():
            rw = b.word(self.p).reflect()
            out[_basis_of_letters(rw.v, rw.target, rw.letters)] = c
        return NormalForm(self.w, self.v, self.p, out)

    def to_json(self) -> dict:
        terms = sorted(self.terms.items(), key=lambda bc: (len(bc[0].ups) + len(bc[0].downs), str(bc[0])))
        return {
            "source": self.v - 1,
            "target": self.w - 1,
            "terms": [dict(b.to_json(), coeff=str(c)) for b, c in terms],
        }

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*[{b}]" for b, c in sorted(self.terms.items(), key=lambda bc: str(bc[0])))


# ---------------------------------------------------------------- relations

def _out_of_order(X: Letter, Y: Letter) -> bool:
    """Written pair X Y (Y applied first) violates the basis ordering."""
    if X.kind == "D" and Y.kind == "D":
        return not padic.set_greater(Y.S, X.S)
    if X.kind == "U" and Y.kind == "U":
        return not padic.set_greater(X.S, Y.S)
    return X.kind == "D" and Y.kind == "U"


def _minus(A, B) -> tuple[int, ...]:
    return padic.canon(set(A) - set(B))


def pair_relation(X: Letter, Y: Letter, x: int, p: int):
    """The relation for the written pair X Y at source x.

    Returns (relation id, [(coefficient, letters in application order)]) or
    None when no relation applies.  Composite letters on the right-hand side
    are left to the caller to expand.
    """
    Xs, Ys = set(X.S), set(Y.S)
    d = padic.stretch_distance(X.S, Y.S).d
    if X.kind == "D" and Y.kind == "D":
        if Xs <= Ys:
            return 2, []
        if d > 1:
            return 3, [(1, [X, Y])]
        if d == 1 and min(Xs) > max(Ys):
            h = _fp(g_digit(_next_digit(x, p, Y.S) - 1, p), p)
            return 4, [(h, [X, Y.swap()])]
        if min(Xs) == max(Ys):
            s = (min(Xs),)
            return 5, [(1, [Letter("D", _minus(Xs, s)), Y, Letter("U", s)])]
        return None
    if X.kind == "U" and Y.kind == "U":
        if Ys <= Xs:
            return 2, []
        if d > 1:
            return 3, [(1, [X, Y])]
        if d == 1 and min(Ys) > max(Xs):
            end = step(step(x, Y, p), X, p)
            h = _fp(g_digit(_next_digit(end, p, X.S) - 1, p), p)
            return 4, [(h, [X.swap(), Y])]
        if min(Ys) == max(Xs):
            s = (max(Xs),)
            return 5, [(1, [Letter("D", s), X, Letter("U", _minus(Ys, s))])]
        return None
    if X.kind == "D" and Y.kind == "U":
        if X.S == Y.S:
            return 6, zigzag_terms(x, Y.S, p)
        if d > 1:
            return 3, [(1, [X, Y])]
        if d == 1 and min(Xs) > max(Ys):
            return 4, [(1, [Letter("D", padic.canon(Xs | Ys))])]
        if d == 1 and min(Ys) > max(Xs):
            return 4, [(1, [Letter("U", padic.canon(Xs | Ys))])]
        return None
    if d > 1:  # U_X D_Y: already ordered, far-commutativity still holds
        return 3, [(1, [X, Y])]
    return None


def zigzag_terms(v: int, S, p: int):
    H = padic.hull(v, p, S)
    if H is None:
        return []
    a = _next_digit(v, p, S)
    g, f = _fp(g_digit(a, p), p), _fp(f_digit(a, p), p)
    out = []
    if g:
        out.append((g, [Letter("D", H), Letter("U", H)]))
    above = [T for T in padic.minimal_down_stretches(v, p) if padic.set_greater(T, H)]
    if f and above:
        T = min(above, key=min)
        out.append((f, [Letter("D", T), Letter("D", H), Letter("U", H), Letter("U", T)]))
    return out


# ---------------------------------------------------------------- rewriting

def rewrite(word: QuiverWord, fuel: int = DEFAULT_FUEL, rng: random.Random | None = None) -> NormalForm:
    """Reduce a word to the normal-form basis.

    The deterministic strategy always resolves the leftmost (written order)
    out-of-order pair; with ``rng`` a random out-of-order pair is chosen."""
    p = word.p
    v = word.v
    w = word.target
    start = expand(v, word.letters, p)
    work: dict[tuple[Letter, ...], int] = {start: 1}
    done: dict[BasisElement, int] = defaultdict(int)
    steps = 0
    while work:
        letters, c = work.popitem()
        path = [v]
        for L in letters:
            path.append(step(path[-1], L, p))
        sites = [i for i in range(len(letters) - 1) if _out_of_order(letters[i + 1], letters[i])]
        if not sites:
            b = _basis_of_letters(v, w, letters)
            done[b] = (done[b] + c) % p
            continue
        steps += 1
        if steps > fuel:
            raise RewriteError(f"fuel exhausted after {fuel} steps", QuiverWord(v, letters, p))
        i = rng.choice(sites) if rng else sites[-1]
        X, Y = letters[i + 1], letters[i]
        rel = pair_relation(X, Y, path[i], p)
        if rel is None:
            raise RewriteError(f"no relation for {X} {Y} at vertex {path[i] - 1}", QuiverWord(v, letters, p))
        for k, repl in rel[1]:
            try:
                mid = expand(path[i], repl, p)
            except NotComposable as e:
                raise RewriteError(f"relation {rel[0]} leaves its domain: {e}", QuiverWord(v, letters, p)) from None
            new = letters[:i] + mid + letters[i + 2 :]
            cc = c * k % p
            if cc:
                work[new] = (work.get(new, 0) + cc) % p
                if not work[new]:
                    del work[new]
    return NormalForm(v, w, p, {b: c for b, c in done.items() if c})


def rewrite_text(text: str, p: int, **kw) -> NormalForm:
    return rewrite(parse_word(text, p), **kw)


# ------------------------------------------------------------- hom spaces

@lru_cache(maxsize=1 << 14)
def _downs(v: int, p: int) -> dict:
    return {padic.reflect_down(v, p, S): S for S in padic.down_admissible_sets(v, p)}


def hom_basis(v: int, w: int, p: int) -> list[BasisElement]:
    out = []
    downs_v, downs_w = _downs(v, p), _downs(w, p)
    for t in sorted(set(downs_v) & set(downs_w), reverse=True):
        dl = expand(v, [Letter("D", downs_v[t])], p)
        ul = expand(t, [Letter("U", downs_w[t])], p)
        out.append(_basis_of_letters(v, w, dl + ul))
    return out


def end_presentation(v: int, p: int) -> dict:
    gens = padic.minimal_down_stretches(v, p)
    return {
        "vertex": v - 1,
        "generators": [list(S) for S in gens],
        "relations": [f"L{{{','.join(map(str, S))}}}^2 = 0" for S in gens] + ["commutative"],
        "dimension": 2 ** len(gens),
    }


def ploop_element(v: int, S, p: int) -> BasisElement:
    S = padic.canon(S)
    t = padic.reflect_down(v, p, S)
    return _basis_of_letters(v, v, expand(v, [Letter("D", S)], p) + expand(t, [Letter("U", S)], p))


@dataclass
class RelationInstance:
    relation: str
    lhs: QuiverWord
    rhs: list  # [(coefficient mod p, QuiverWord)]

    def __str__(self):
        r = " + ".join(f"{c}*({w})" for c, w in self.rhs) or "0"
        return f"({self.relation}) {self.lhs} = {r}"


RELATION_IDS = ("1", "2", "3", "4", "5", "6", "overlap-hull")


def _pairs_at(v: int, p: int):
    for g1 in generators_at(v, p):
        Y = Letter(g1.direction[0], g1.S)
        x1 = g1.target
        for g2 in generators_at(x1, p):
            yield Y, Letter(g2.direction[0], g2.S)


def relation_instances(v: int, p: int, relation_id) -> list[RelationInstance]:
    rid = str(relation_id)
    if rid not in RELATION_IDS:
        raise ValueError(f"unknown relation {relation_id!r}")
    out = []
    if rid == "1":
        for g in generators_at(v, p):
            w = QuiverWord(v, (Letter(g.direction[0], g.S),), p)
            out.append(RelationInstance("1", w, [(1, w)]))
        return out
    if rid == "overlap-hull":
        for S in padic.minimal_down_stretches(v, p):
            vS = padic.reflect_down(v, p, S)
            if padic.is_down_admissible(vS, p, S) or not padic.is_up_admissible(vS, p, S):
                continue
            H = padic.hull(vS, p, S)
            if H is None or not padic.is_down_admissible(vS, p, H):
                continue
            lhs = QuiverWord(v, (Letter("D", S), Letter("D", H)), p)
            rhs = QuiverWord(v, (Letter("D", H), Letter("U", S)), p)
            try:
                lhs.path(), rhs.path()
            except NotComposable:
                continue
            out.append(RelationInstance(rid, lhs, [(1, rhs)]))
        return out
    for Y, X in _pairs_at(v, p):
        rel = pair_relation(X, Y, v, p)
        if rel is None or rel[0] != int(rid):
            continue
        if rid in ("3", "4") and not _out_of_order(X, Y) and X.kind == Y.kind:
            continue
        lhs = QuiverWord(v, (Y, X), p)
        out.append(RelationInstance(rid, lhs, [(c, QuiverWord(v, tuple(ls), p)) for c, ls in rel[1]]))
    return out


# ------------------------------------------------------------------ quiver

@dataclass
class QuiverGraph:
    p: int
    vmax: int
    vertices: list[int]  # labels v-1
    arrows: list[tuple[int, int, str, tuple[int, ...]]]  # (source, target, "down"/"up", S)

    def blocks(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = defaultdict(list)
        for x in self.vertices:
            out[padic.block_of(x + 1, self.p) - 1].append(x)
        return dict(out)

    def component(self, label: int) -> list[int]:
        adj = defaultdict(set)
        for a, b, _, _ in self.arrows:
            adj[a].add(b)
            adj[b].add(a)
        seen, todo = {label}, [label]
        while todo:
            x = todo.pop()
            for y in adj[x] - seen:
                seen.add(y)
                todo.append(y)
        return sorted(seen)

    def to_dot(self) -> str:
        lines = [f'digraph "quiver_p{self.p}" {{', "  rankdir=LR;"]
        for e, members in sorted(self.blocks().items()):
            lines.append(f"  subgraph cluster_{e} {{")
            lines.append(f'    label="block of {e}";')
            for x in members:
                lines.append(f'    v{x} [label="{x}"];')
            lines.append("  }")
        for a, b, kind, S in self.arrows:
            style = "solid" if kind == "down" else "dashed"
            lab = "{" + ",".join(map(str, S)) + "}"
            lines.append(f'  v{a} -> v{b} [style={style}, label="{lab}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "vertices": self.vertices,
            "arrows": [{"source": a, "target": b, "kind": k, "S": list(S)} for a, b, k, S in self.arrows],
        }


def quiver_graph(p: int, vmax: int) -> QuiverGraph:
    check_prime(p)
    arrows = []
    for v in range(1, vmax + 1):
        for S in padic.minimal_down_stretches(v, p):
            t = padic.reflect_down(v, p, S)
            arrows.append((v - 1, t - 1, "down", S))
            arrows.append((t - 1, v - 1, "up", S))
    arrows.sort(key=lambda a: (a[0], a[2], a[1]))
    return QuiverGraph(p, vmax, list(range(vmax)), arrows)


# -------------------------------------------------------- diagram semantics

def eval_letter(x: int, L: Letter, p: int):
    from . import projectors as P

    y = step(x, L, p)
    if L.kind == "D":
        return P.p_morphism_rho(x, y, (), L.S, p)
    return P.p_morphism_rho(x, y, L.S, (), p)


def eval_word(word: QuiverWord):
    """The word as a morphism between pJW projectors, in the F_p representation."""
    from . import projectors as P

    x = word.v
    out = P.pjw_rho(x, word.p)
    for L in word.letters:
        out = eval_letter(x, L, word.p) @ out
        x = step(x, L, word.p)
    return out


def eval_normal_form(nf: NormalForm):
    from . import projectors as P
    from .rep import RMat

    out = RMat.zero(nf.v - 1, nf.w - 1, nf.p)
    for b, c in nf.terms.items():
        out = out + eval_word(b.word(nf.p)).scale(c)
    return out


def coordinates(f, v: int, w: int, p: int) -> dict[BasisElement, int] | None:
    """Coefficients of a representation matrix in hom_basis(v, w), or None."""
    from .projectors import solve_mod_p

    basis = hom_basis(v, w, p)
    cols = [eval_word(b.word(p)).a.ravel() for b in basis]
    sol = solve_mod_p(cols, f.a.ravel(), p)
    if sol is None:
        return None
    return {b: c for b, c in zip(basis, sol) if c}
