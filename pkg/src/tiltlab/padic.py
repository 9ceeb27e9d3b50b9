"""Digit combinatorics: expansions, ancestry, supports, admissible digit sets,
reflections, stretches, hulls, X(v), blocks and the digit-appending monoid."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from .exactnum import check_prime


class AdmissibilityError(ValueError):
    """A digit set violates an admissibility condition; ``tag`` names it."""

    def __init__(self, msg: str, tag: str):
        super().__init__(f"{msg} [{tag}]")
        self.tag = tag


# ---------------------------------------------------------------- digits

@lru_cache(maxsize=65536)
def digits(v: int, p: int) -> tuple[int, ...]:
    """Digits a_0, a_1, ..., a_j (least significant first)."""
    if v < 1:
        raise ValueError(f"v must be a positive integer, got {v}")
    out = []
    while v:
        v, r = divmod(v, p)
        out.append(r)
    return tuple(out)


def digit(v: int, p: int, i: int) -> int:
    return (v // p**i) % p if i >= 0 else 0


def signed_value(b: Iterable[int], p: int) -> int:
    """Value of <b_j, ..., b_0>_p; ``b`` is written most significant first."""
    total = 0
    for x in b:
        total = total * p + x
    return total


def _eval_lsf(a, p: int) -> int:
    return sum(x * p**i for i, x in enumerate(a))


@dataclass(frozen=True)
class PadicContext:
    v: int
    p: int
    digits: tuple[int, ...] = field(repr=False)  # least significant first

    @property
    def j(self) -> int:
        return len(self.digits) - 1

    def a(self, i: int) -> int:
        return self.digits[i] if 0 <= i < len(self.digits) else 0

    def to_json(self) -> dict:
        return {
            "v": self.v,
            "p": self.p,
            "digits": list(reversed(self.digits)),
            "support": sorted(support(self.v, self.p)),
            "fsupport": sorted(fsupport(self.v, self.p)),
            "generation": generation(self.v, self.p),
        }


def expand(v: int, p: int) -> PadicContext:
    check_prime(p)
    return PadicContext(v, p, digits(v, p))


# -------------------------------------------------------------- ancestry

def is_eve(v: int, p: int) -> bool:
    return sum(1 for a in digits(v, p) if a) == 1


def mother(v: int, p: int) -> int | None:
    """Zero the rightmost nonzero digit; None for an eve."""
    if is_eve(v, p):
        return None
    k = 0
    while digit(v, p, k) == 0:
        k += 1
    return v - digit(v, p, k) * p**k


def ancestors(v: int, p: int) -> list[int]:
    out = []
    m = mother(v, p)
    while m is not None:
        out.append(m)
        m = mother(m, p)
    return out


def generation(v: int, p: int) -> int:
    return sum(1 for a in digits(v, p) if a) - 1


def eve(v: int, p: int) -> int:
    a = digits(v, p)
    return a[-1] * p ** (len(a) - 1)


@dataclass(frozen=True)
class Ancestry:
    is_eve: bool
    mother: int | None
    ancestors: tuple[int, ...]
    generation: int
    eve: int


def ancestry(v: int, p: int) -> Ancestry:
    anc = tuple(ancestors(v, p))
    return Ancestry(not anc, mother(v, p), anc, len(anc), eve(v, p))


def fancest(v: int, p: int, s: int) -> int:
    """Youngest member of {v} and its ancestors whose digits 0..s all vanish.

    A zero digit a_s alone does not qualify: lower nonzero digits are
    cleared too, otherwise the telescoping product for lambda breaks.
    """
    if s < 0:
        return v
    return v - v % p ** (s + 1)


# --------------------------------------------------------------- supports

def nonzero_positions(v: int, p: int) -> list[int]:
    """Positions of the nonzero non-leading digits."""
    a = digits(v, p)
    return [i for i in range(len(a) - 1) if a[i]]


@lru_cache(maxsize=65536)
def _support(v: int, p: int) -> frozenset:
    a = digits(v, p)
    vals = {a[-1] * p ** (len(a) - 1)}
    for i in range(len(a) - 1):
        if a[i]:
            c = a[i] * p**i
            vals = {x + c for x in vals} | {x - c for x in vals}
    return frozenset(vals)


def support(v: int, p: int) -> set[int]:
    return set(_support(v, p))


def fsupport(v: int, p: int) -> set[int]:
    return {v - 2 * digit(v, p, i) * p**i for i in nonzero_positions(v, p)}


# ---------------------------------------------------------------- stretches

def canon(S: Iterable[int]) -> tuple[int, ...]:
    """Canonical digit set: sorted descending tuple, matching paper notation."""
    return tuple(sorted(set(S), reverse=True))


def stretches(S: Iterable[int]) -> list[tuple[int, ...]]:
    """Maximal runs of consecutive positions, highest run first, each descending."""
    s = sorted(set(S))
    runs: list[list[int]] = []
    for x in s:
        if runs and runs[-1][-1] == x - 1:
            runs[-1].append(x)
        else:
            runs.append([x])
    return [tuple(reversed(r)) for r in reversed(runs)]


def _violation(v: int, p: int, S, up: bool) -> str | None:
    Sset = set(S)
    if any(s < 0 for s in Sset):
        return "negative"
    for run in stretches(Sset):
        if digit(v, p, min(run)) == 0:
            return "u1" if up else "d1"
    for s in Sset:
        nxt = digit(v, p, s + 1)
        if up and nxt == p - 1 and s + 1 not in Sset:
            return "u2"
        if not up and nxt == 0 and s + 1 not in Sset:
            return "d2"
    return None


def is_down_admissible(v: int, p: int, S) -> bool:
    return _violation(v, p, S, up=False) is None


def is_up_admissible(v: int, p: int, S) -> bool:
    return _violation(v, p, S, up=True) is None


def reflect_down(v: int, p: int, S) -> int:
    """v[S]: negate the digits at positions in S."""
    tag = _violation(v, p, S, up=False)
    if tag:
        raise AdmissibilityError(f"{sorted(S)} not down-admissible for {v} (p={p})", tag)
    return v - 2 * sum(digit(v, p, s) * p**s for s in set(S))


def reflect_up(v: int, p: int, S) -> int:
    """v(S): negate digits in S, add 2 to each digit just above a run."""
    tag = _violation(v, p, S, up=True)
    if tag:
        raise AdmissibilityError(f"{sorted(S)} not up-admissible for {v} (p={p})", tag)
    Sset = set(S)
    out = v
    for s in Sset:
        out -= 2 * digit(v, p, s) * p**s
        if s + 1 not in Sset:
            out += 2 * p ** (s + 1)
    return out


def formal_negate(v: int, p: int, S) -> int:
    """Negate digits at S without any admissibility requirement."""
    return v - 2 * sum(digit(v, p, s) * p**s for s in set(S))


def _split_points(v: int, p: int, run, direction: str) -> list[int]:
    lo = min(run)
    pts = []
    for u in sorted(run):
        if u == lo:
            continue
        a = digit(v, p, u)
        if direction == "down" and a != 0:
            pts.append(u)
        if direction == "up" and a not in (0, p - 1):
            pts.append(u)
    return pts


def minimal_partition(v: int, p: int, S, direction: str = "down") -> list[tuple[int, ...]]:
    """Finest admissible partition of S, highest piece first."""
    if direction not in ("down", "up"):
        raise ValueError("direction must be 'down' or 'up'")
    tag = _violation(v, p, S, up=direction == "up")
    if tag:
        raise AdmissibilityError(f"{sorted(S)} not {direction}-admissible for {v}", tag)
    pieces = []
    for run in stretches(S):
        cuts = [min(run)] + _split_points(v, p, run, direction) + [max(run) + 1]
        for lo, hi in zip(cuts, cuts[1:]):
            pieces.append(tuple(range(hi - 1, lo - 1, -1)))
    pieces.sort(key=lambda t: -t[0])
    return pieces


def hull(v: int, p: int, S) -> tuple[int, ...] | None:
    """Smallest down-admissible superset of an up-admissible S, or None."""
    if not is_up_admissible(v, p, S):
        raise AdmissibilityError(f"{sorted(S)} not up-admissible for {v}", "u")
    H = set(S)
    j = len(digits(v, p)) - 1
    changed = True
    while changed:
        changed = False
        for s in list(H):
            if s + 1 not in H and digit(v, p, s + 1) == 0:
                if s + 1 > j:
                    return None
                H.add(s + 1)
                changed = True
    return canon(H) if is_down_admissible(v, p, H) else None


@dataclass(frozen=True)
class StretchDistance:
    d: int
    kind: str  # distant | adjacent | overlapping


def stretch_distance(A, B) -> StretchDistance:
    A, B = set(A), set(B)
    if not A or not B:
        raise ValueError("stretch_distance needs nonempty sets")
    d = min(abs(a - b) for a in A for b in B)
    return StretchDistance(d, "distant" if d > 1 else "adjacent" if d == 1 else "overlapping")


def set_greater(T, S) -> bool:
    """T > S: every element of T exceeds every element of S."""
    return min(T) > max(S)


# --------------------------------------------------- admissible enumeration

def minimal_down_stretches(v: int, p: int) -> list[tuple[int, ...]]:
    """One minimal down-admissible stretch per nonzero non-leading digit, ascending."""
    a = digits(v, p)
    out = []
    for s in nonzero_positions(v, p):
        t = s
        while a[t + 1] == 0:
            t += 1
        out.append(tuple(range(t, s - 1, -1)))
    return out


def up_generator_stretches(v: int, p: int) -> list[tuple[int, ...]]:
    """Up-admissible stretches S with v in fsupport(v(S)), ascending.

    One per nonzero digit (the leading one included): start there and
    continue through digits equal to p-1.
    """
    a = digits(v, p)
    out = []
    for s in range(len(a)):
        if not a[s]:
            continue
        t = s
        while digit(v, p, t + 1) == p - 1:
            t += 1
        out.append(tuple(range(t, s - 1, -1)))
    return out


def down_admissible_sets(v: int, p: int) -> list[tuple[int, ...]]:
    """All down-admissible sets; they biject onto support(v) via S -> v[S]."""
    mins = minimal_down_stretches(v, p)
    out = []
    for r in range(len(mins) + 1):
        for combo in combinations(mins, r):
            out.append(canon(x for c in combo for x in c))
    return out


# -------------------------------------------------------- fractal / blocks

@lru_cache(maxsize=None)
def x_set(v: int, p: int) -> frozenset:
    """The recursively defined set X(v), with X(n) empty for n <= 0."""
    if v <= 0:
        return frozenset()
    if v <= p - 1:
        return frozenset({0})
    a0 = v % p
    out = {p * x for x in x_set((v - a0) // p, p)}
    if a0 != p - 1:
        out |= {a0 + 1 + p * x for x in x_set((v - a0 - p) // p, p)}
    return frozenset(out)


def monoid_act(word: Iterable[int], v: int, p: int) -> int:
    """[b_k..b_0] (.) <a_j..a_0> = <a_j..a_0,b_k..b_0>."""
    out = v
    for b in word:
        if not 0 <= b < p:
            raise ValueError(f"word letter {b} outside [0,{p})")
        out = out * p + b
    return out


@lru_cache(maxsize=65536)
def block_of(v: int, p: int) -> int:
    """The eve e with v-1 in (e)_p."""
    while not is_eve(v, p):
        v = min(_support(v, p))
    return v


def enumerate_block(e: int, p: int, bound: int) -> list[int]:
    """(e)_p intersected with [0, bound], as vertex labels v-1."""
    if not is_eve(e, p):
        raise ValueError(f"{e} is not an eve for p={p}")
    return [v - 1 for v in range(1, bound + 2) if block_of(v, p) == e]


def lambda_factor(v: int, p: int, S) -> Fraction:
    """Product formula for lambda_{v,S} using formal digit negation."""
    out = Fraction(1)
    for s in S:
        sign = -1 if (digit(v, p, s) * p**s) % 2 else 1
        num = formal_negate(fancest(v, p, s - 1), p, S)
        den = formal_negate(fancest(v, p, s), p, S)
        out *= Fraction(sign * num, den)
    return out
