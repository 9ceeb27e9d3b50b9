"""Jones-Wenzl and p-Jones-Wenzl projectors, cap/cup bundles, trapezes,
standard loops, p-morphisms and their expansion.

Diagrams that are built from elementary pieces are described by *programs*:
tuples of operations applied bottom to top to the top boundary of a morphism.

    ("jw", lo, L)    Jones-Wenzl box on strands lo .. lo+L-1
    ("caps", x, c)   c nested caps on strands x .. x+2c-1
    ("cups", x, c)   c nested cups creating strands x .. x+2c-1

Rational work runs on ``tlvec.MVec`` over several word-sized primes; work over
F_p runs either on ``MVec`` with one modulus or on the matrix representation
in ``rep`` (products of projectors are only cheap there).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import padic
from .exactnum import FpScalar, NotPAdmissible, check_prime, pval
from .padic import AdmissibilityError, canon, digit, digits
from .rep import RMat, rho_vec
from .tldiag import Matching, TLMorphism
from .tlvec import MVec, ReconstructionError, big_primes, index_to_matching

MAX_STRANDS = 16
_lock = threading.Lock()
_disk_cache = None


def set_max_strands(n: int) -> None:
    global MAX_STRANDS
    MAX_STRANDS = n


def set_disk_cache(cache) -> None:
    """Install an object with ``get(key)`` / ``put(key, morphism)`` for pJW results."""
    global _disk_cache
    _disk_cache = cache


def _check_strands(n: int) -> None:
    if n > MAX_STRANDS:
        raise ValueError(f"{n} strands exceeds the configured limit of {MAX_STRANDS}")


# ------------------------------------------------------------- programs

Op = tuple
Program = tuple


def run(prog: Iterable[Op], x):
    """Left-multiply ``x`` (an MVec or RMat) by the diagram described by ``prog``."""
    for op, a, b in prog:
        if op == "jw":
            if b > 1:
                if isinstance(x, RMat):
                    raise ValueError("Jones-Wenzl boxes are not available on F_p matrices")
                x = x.jw(a, b)
        elif op == "caps":
            for t in range(b - 1, -1, -1):
                x = x.cap(a + t)
        elif op == "cups":
            for t in range(b):
                x = x.cup(a + t)
        else:
            raise ValueError(f"unknown op {op}")
    return x


def reflect_program(prog: Sequence[Op]) -> Program:
    swap = {"caps": "cups", "cups": "caps", "jw": "jw"}
    return tuple((swap[o], a, b) for o, a, b in reversed(prog))


def shift_program(prog: Sequence[Op], k: int) -> Program:
    return tuple((o, a + k, b) for o, a, b in prog)


def _check_down(v: int, p: int, S) -> tuple[int, ...]:
    S = canon(S)
    tag = padic._violation(v, p, S, up=False)
    if tag:
        raise AdmissibilityError(f"{list(S)} not down-admissible for {v} (p={p})", tag)
    return S


def _check_up(v: int, p: int, S) -> tuple[int, ...]:
    S = canon(S)
    tag = padic._violation(v, p, S, up=True)
    if tag:
        raise AdmissibilityError(f"{list(S)} not up-admissible for {v} (p={p})", tag)
    return S


def cap_bundle_program(v: int, S, p: int) -> Program:
    """d_S at v: for each s in S (largest first) a_s p^s nested caps after v mod p^s strands."""
    S = _check_down(v, p, S)
    return tuple(("caps", v % p**s, digit(v, p, s) * p**s) for s in S)


def cup_bundle_program(u: int, S, p: int) -> Program:
    """u_S at u: the reflection of the cap bundle d_S at u(S)."""
    S = _check_up(u, p, S)
    return reflect_program(cap_bundle_program(padic.reflect_up(u, p, S), S, p))


def trapeze_down_program(v: int, S, p: int) -> Program:
    S = _check_down(v, p, S)
    ops = []
    n = v - 1
    for s in S:
        x, c = v % p**s, digit(v, p, s) * p**s
        ops.append(("jw", x + c, n - x - c))
        ops.append(("caps", x, c))
        n -= 2 * c
    ops.append(("jw", 0, n))
    return tuple(ops)


def trapeze_up_program(v: int, S, p: int) -> Program:
    """upo_S indexed by its target v: the reflection of downo_S at v."""
    return reflect_program(trapeze_down_program(v, S, p))


def standard_loop_program(v: int, S, p: int) -> Program:
    down = trapeze_down_program(v, S, p)
    return down + reflect_program(down)[1:]


# ---------------------------------------------------------- evaluation

_RATIONAL_PRIMES = 8


def _rational(build, m: int, n: int, primes: int = _RATIONAL_PRIMES) -> TLMorphism:
    """Evaluate ``build(mods) -> MVec`` and reconstruct, adding primes on demand."""
    r = primes
    while True:
        try:
            return build(big_primes(r)).to_morphism()
        except ReconstructionError:
            r *= 2
            if r > 256:
                raise


def _eval_program(prog: Program, m: int, mods) -> MVec:
    return run(prog, MVec.identity(m, mods))


def program_morphism(prog: Program, m: int) -> TLMorphism:
    _check_strands(m)
    return _rational(lambda mods: _eval_program(prog, m, mods), m, None)


@lru_cache(maxsize=64)
def jw(n: int) -> TLMorphism:
    """Jones-Wenzl projector on n strands, exact over Q."""
    if n < 0:
        raise ValueError("negative strand count")
    _check_strands(n)
    return program_morphism((("jw", 0, n),), n)


def lambda_scalar(v: int, S, p: int) -> Fraction:
    check_prime(p)
    S = _check_down(v, p, S)
    return padic.lambda_factor(v, p, S)


def cap_bundle(v: int, S, p: int) -> TLMorphism:
    return program_morphism(cap_bundle_program(v, S, p), v - 1)


def cup_bundle(u: int, S, p: int) -> TLMorphism:
    return program_morphism(cup_bundle_program(u, S, p), padic.reflect_up(u, p, canon(S)) - 1)


def trapeze_down(v: int, S, p: int) -> TLMorphism:
    return program_morphism(trapeze_down_program(v, S, p), v - 1)


def trapeze_up(v: int, S, p: int) -> TLMorphism:
    return program_morphism(trapeze_up_program(v, S, p), padic.reflect_down(v, p, canon(S)) - 1)


def standard_loop(v: int, S, p: int) -> TLMorphism:
    return program_morphism(standard_loop_program(v, S, p), v - 1)


def pqjw_terms(v: int, p: int) -> list[tuple[Fraction, Program]]:
    """The closed form as (lambda_{v,S}, standard loop program) pairs."""
    check_prime(p)
    return [(lambda_scalar(v, S, p), standard_loop_program(v, S, p)) for S in padic.down_admissible_sets(v, p)]


def apply_terms(terms, x: MVec) -> MVec:
    out = None
    for c, prog in terms:
        y = run(prog, x).scale(c)
        out = y if out is None else out + y
    return out


def pqjw_closed_vec(v: int, p: int, mods) -> MVec:
    _check_strands(v - 1)
    return apply_terms(pqjw_terms(v, p), MVec.identity(v - 1, mods))


def pqjw_recursive_terms(v: int, p: int) -> list[tuple[Fraction, Program]]:
    """The mother recursion, flattened into weighted programs."""
    check_prime(p)
    if padic.is_eve(v, p):
        return [(Fraction(1), (("jw", 0, v - 1),))]
    m = padic.mother(v, p)
    s = min(i for i, a in enumerate(digits(v, p)) if a)
    a = digit(v, p, s) * p**s
    out = []
    for S in padic.down_admissible_sets(m, p):
        lam = padic.lambda_factor(m, p, S)
        # the mother's trapezes sit to the right of the a new strands; in the
        # capped term their own top box matters, in the other it is absorbed
        down = shift_program(trapeze_down_program(m, S, p), a)
        vS = padic.formal_negate(v, p, S)
        mS = padic.formal_negate(m, p, S)
        out.append((lam, down[:-1] + (("jw", 0, vS - 1),) + reflect_program(down[:-1])))
        inner = (("caps", 0, a), ("jw", 0, vS - 2 * a - 1), ("cups", 0, a))
        sign = -1 if a % 2 else 1
        out.append((lam * sign * Fraction(vS - 2 * a, mS), down + inner + reflect_program(down)))
    return out


def pqjw_recursive_vec(v: int, p: int, mods) -> MVec:
    _check_strands(v - 1)
    return apply_terms(pqjw_recursive_terms(v, p), MVec.identity(v - 1, mods))


@lru_cache(maxsize=256)
def pqjw_closed(v: int, p: int) -> TLMorphism:
    return _rational(lambda mods: pqjw_closed_vec(v, p, mods), v - 1, v - 1)


@lru_cache(maxsize=64)
def pqjw_recursive(v: int, p: int) -> TLMorphism:
    return _rational(lambda mods: pqjw_recursive_vec(v, p, mods), v - 1, v - 1)


def _reduce(f: TLMorphism, p: int) -> TLMorphism:
    o = f.ord(p)
    if o < 0:
        raise AssertionError(f"rational pJW projector has ord {o} < 0 at p={p}")
    return f.specialize(p)


_pjw_memo: dict = {}


def pjw(v: int, p: int) -> TLMorphism:
    """The p-Jones-Wenzl projector for v over F_p."""
    key = (v, p)
    got = _pjw_memo.get(key)
    if got is not None:
        return got
    f = _disk_cache.get(("pjw", p, v)) if _disk_cache is not None else None
    if f is None:
        f = _reduce(pqjw_closed(v, p), p)
        if _disk_cache is not None:
            _disk_cache.put(("pjw", p, v), f)
    with _lock:
        _pjw_memo.setdefault(key, f)
    return _pjw_memo[key]


@lru_cache(maxsize=256)
def pjw_vec(v: int, p: int) -> MVec:
    return MVec.from_morphism(pjw(v, p), (p,))


@lru_cache(maxsize=256)
def pjw_rho(v: int, p: int) -> RMat:
    return rho_vec(pjw_vec(v, p))


# ------------------------------------------------------------ traces

def partial_trace(f, k: int, side: str = "left"):
    """Close k strands of an endomorphism (left side by default, where bundles sit)."""
    if isinstance(f, TLMorphism):
        return f.partial_trace(k, side)
    if side != "left":
        raise ValueError("vector and matrix traces close the left strands")
    if k > f.m:
        raise ValueError("cannot trace more strands than present")
    return f.trace_left(k)


def smallest_stretch(v: int, p: int) -> tuple[int, ...]:
    mins = padic.minimal_down_stretches(v, p)
    if not mins:
        raise ValueError(f"{v} is an eve for p={p}")
    return mins[0]


def ptrace_S(v: int, S, p: int) -> RMat:
    """Trace of the ploop for S over the bundle of the smallest minimal stretch."""
    Sp = smallest_stretch(v, p)
    k = v - padic.mother(v, p)
    return ploop_rho(v, S, p).trace_left(k)


# ---------------------------------------------------------- p-morphisms

@dataclass(frozen=True, order=True)
class PMorphismLabel:
    v: int
    w: int
    S: tuple[int, ...]   # down-admissible for w (the cup side)
    Sp: tuple[int, ...]  # down-admissible for v (the cap side)

    def through(self, p: int) -> int:
        return padic.reflect_down(self.v, p, self.Sp)

    def to_json(self) -> dict:
        return {"v": self.v, "w": self.w, "S": list(self.S), "Sp": list(self.Sp)}


def labels(v: int, w: int, p: int) -> list[PMorphismLabel]:
    out = []
    down_w = {padic.reflect_down(w, p, S): S for S in padic.down_admissible_sets(w, p)}
    for Sp in padic.down_admissible_sets(v, p):
        t = padic.reflect_down(v, p, Sp)
        if t in down_w:
            out.append(PMorphismLabel(v, w, down_w[t], Sp))
    return sorted(out, key=lambda L: (-L.through(p), L))


def _check_label(v: int, w: int, S, Sp, p: int) -> PMorphismLabel:
    S, Sp = _check_down(w, p, S), _check_down(v, p, Sp)
    if padic.reflect_down(w, p, S) != padic.reflect_down(v, p, Sp):
        raise ValueError(f"label mismatch: {w}[{list(S)}] != {v}[{list(Sp)}]")
    return PMorphismLabel(v, w, S, Sp)


def bundle_program(L: PMorphismLabel, p: int) -> Program:
    """u_S d_S' between the through object and the two ends."""
    return cap_bundle_program(L.v, L.Sp, p) + reflect_program(cap_bundle_program(L.w, L.S, p))


def p_morphism_rho(v: int, w: int, S, Sp, p: int) -> RMat:
    L = _check_label(v, w, S, Sp, p)
    x = run(bundle_program(L, p), pjw_rho(v, p))
    return pjw_rho(w, p) @ x


def ploop_rho(v: int, S, p: int) -> RMat:
    return p_morphism_rho(v, v, S, S, p)


def p_morphism(v: int, w: int, S, Sp, p: int, rational: bool = False) -> TLMorphism:
    """pjw(w) u_S d_S' pjw(v) over F_p, or with rational projectors over Q."""
    L = _check_label(v, w, S, Sp, p)
    _check_strands(max(v, w) - 1)
    prog = bundle_program(L, p)

    def build(mods):
        x = run(prog, pqjw_closed_vec(v, p, mods))
        return apply_terms(pqjw_terms(w, p), x)

    f = _rational(build, v - 1, w - 1)
    return f if rational else _reduce(f, p)


class ExpansionError(ArithmeticError):
    pass


def expand_in_p_morphisms(f, v: int, w: int, p: int) -> dict[PMorphismLabel, FpScalar]:
    """Coefficients of pjw(w) f pjw(v) in the p-morphism basis.

    The coefficients are found by Gaussian elimination over F_p on the matrix
    images and the full residual is checked, so an inconsistent input raises.
    """
    if isinstance(f, TLMorphism):
        f = rho_vec(MVec.from_morphism(f if f.ring == p else f.specialize(p), (p,)))
    elif isinstance(f, MVec):
        f = rho_vec(f)
    if (f.m, f.n) != (v - 1, w - 1) or f.p != p:
        raise ValueError("morphism does not match the given endpoints")
    f = pjw_rho(w, p) @ f @ pjw_rho(v, p)
    labs = labels(v, w, p)
    cols = [p_morphism_rho(v, w, L.S, L.Sp, p).a.ravel() for L in labs]
    coef = solve_mod_p(cols, f.a.ravel(), p)
    if coef is None:
        raise ExpansionError(f"morphism {v - 1} -> {w - 1} is not in the span of the p-morphisms")
    return {L: FpScalar(c, p) for L, c in zip(labs, coef) if c}


def solve_mod_p(cols: list[np.ndarray], target: np.ndarray, p: int) -> list[int] | None:
    """Solve sum c_i cols[i] = target over F_p; None if inconsistent."""
    if not cols:
        return [] if not target.any() else None
    rows = np.flatnonzero(np.any(np.stack(cols), axis=0) | (target != 0))
    M = np.stack([c[rows] for c in cols] + [target[rows]], axis=1) % p
    k = len(cols)
    pivots = []
    used = np.zeros(len(rows), dtype=bool)
    for j in range(k):
        cand = np.flatnonzero((M[:, j] != 0) & ~used)
        if not len(cand):
            raise ExpansionError("p-morphism images are linearly dependent")
        r = cand[0]
        used[r] = True
        M[r] = M[r] * pow(int(M[r, j]), -1, p) % p
        factor = M[:, j].copy()
        factor[r] = 0
        M = (M - factor[:, None] * M[r][None, :]) % p
        pivots.append(r)
    rest = M[~used, k]
    if rest.any():
        return None
    return [int(M[r, k]) for r in pivots]


# ---------------------------------------------------------- cap configurations

def is_ancestor_centered(config: Matching, v: int, p: int) -> bool:
    """Every cap center sits at (v-a)+1/2 strands from the left for an ancestor a."""
    if any(a > config.m and b > config.m for a, b in config.pairs):
        raise ValueError("configuration must consist of caps and through strands only")
    centers = {2 * (v - a) + 1 for a in padic.ancestors(v, p)}
    return all(a + b in centers for a, b in config.pairs if b <= config.m)


def cap_configurations(n: int) -> list[Matching]:
    """All cap-only diagrams on n source strands with at least one cap.

    Through strands may not sit under a cap, so a configuration is a word of
    opening, closing and passing steps with passing only at depth zero."""
    out: list[Matching] = []

    def rec(i: int, stack: list[int], pairs: list[tuple[int, int]]):
        if i > n:
            if pairs and not stack:
                caps = set(x for pr in pairs for x in pr)
                through = [j for j in range(1, n + 1) if j not in caps]
                k = len(through)
                tops = [(j, n + t + 1) for t, j in enumerate(through)]
                out.append(Matching.from_pairs(n, k, pairs + tops))
            return
        if not stack:
            rec(i + 1, stack, pairs)
        if len(stack) < n - i:
            rec(i + 1, stack + [i], pairs)
        if stack:
            rec(i + 1, stack[:-1], pairs + [(stack[-1], i)])

    rec(1, [], [])
    return out


def apply_configuration(config: Matching, x):
    """Left-multiply by a cap-only matching, innermost caps first."""
    caps = sorted((b - a, a, b) for a, b in config.pairs if b <= config.m)
    removed: list[int] = []
    for _, a, b in caps:
        pos = a - 1 - sum(1 for r in removed if r < a)
        x = x.cap(pos)
        removed += [a, b]
    return x


def vec_to_morphism_fp(x: MVec) -> TLMorphism:
    p = x.mods[0]
    return TLMorphism(x.m, x.n, p, {index_to_matching(x.m, x.n, i): c[0] for i, c in x.residues().items()})
