"""SL2 characters in characteristic p: Weyl, tilting (via supports), simple
(Steinberg tensor products), Weyl-module decompositions and ideal levels."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import padic
from .exactnum import check_prime, pval


class CharacterError(ArithmeticError):
    pass


@dataclass(frozen=True)
class Character:
    """Multiplicities of the weights -top, -top+1, ..., top as a dense vector."""

    top: int
    mult: tuple[int, ...]

    @staticmethod
    def from_array(a: np.ndarray) -> "Character":
        a = np.asarray(a, dtype=np.int64)
        top = (len(a) - 1) // 2
        nz = np.flatnonzero(a)
        if len(nz):
            r = max(abs(int(nz[0]) - top), abs(int(nz[-1]) - top))
            a = a[top - r : top + r + 1]
            top = r
        else:
            a, top = np.zeros(1, dtype=np.int64), 0
        return Character(top, tuple(int(x) for x in a))

    @staticmethod
    def from_weights(ws: dict[int, int]) -> "Character":
        top = max((abs(w) for w in ws), default=0)
        a = np.zeros(2 * top + 1, dtype=np.int64)
        for w, m in ws.items():
            a[w + top] += m
        return Character.from_array(a)

    def array(self, top: int | None = None) -> np.ndarray:
        top = self.top if top is None else top
        if top < self.top:
            raise ValueError("range too small for character")
        a = np.zeros(2 * top + 1, dtype=np.int64)
        a[top - self.top : top + self.top + 1] = self.mult
        return a

    def weights(self) -> dict[int, int]:
        return {i - self.top: m for i, m in enumerate(self.mult) if m}

    @property
    def dim(self) -> int:
        return sum(self.mult)

    def highest_weight(self) -> int | None:
        nz = [i for i, m in enumerate(self.mult) if m]
        return nz[-1] - self.top if nz else None

    def __add__(self, other: "Character") -> "Character":
        t = max(self.top, other.top)
        return Character.from_array(self.array(t) + other.array(t))

    def __sub__(self, other: "Character") -> "Character":
        t = max(self.top, other.top)
        return Character.from_array(self.array(t) - other.array(t))

    def scale(self, k: int) -> "Character":
        return Character.from_array(self.array() * k)

    def is_zero(self) -> bool:
        return not any(self.mult)


@lru_cache(maxsize=4096)
def weyl_character(w: int) -> Character:
    if w < 1:
        raise ValueError("w must be positive")
    return Character.from_weights({w - 1 - 2 * i: 1 for i in range(w)})


@dataclass(frozen=True)
class TiltingCharacter:
    labels: tuple[int, ...]  # nabla labels w-1, descending
    character: Character

    @property
    def dim(self) -> int:
        return self.character.dim


def tilting_character(v: int, p: int) -> TiltingCharacter:
    check_prime(p)
    supp = sorted(padic.support(v, p), reverse=True)
    ch = Character.from_weights({})
    for w in supp:
        ch = ch + weyl_character(w)
    return TiltingCharacter(tuple(w - 1 for w in supp), ch)


def tilting_dim(v: int, p: int) -> int:
    return sum(padic.support(v, p))


@lru_cache(maxsize=8192)
def simple_character(n: int, p: int) -> Character:
    """Steinberg tensor product over the digits of the highest weight n."""
    check_prime(p)
    if n < 0:
        raise ValueError("highest weight must be nonnegative")
    out = {0: 1}
    i = 0
    while n:
        n, a = divmod(n, p)
        if a:
            scale = p**i
            new: dict[int, int] = {}
            for w, m in out.items():
                for u in range(-a, a + 1, 2):
                    new[w + scale * u] = new.get(w + scale * u, 0) + m
            out = new
        i += 1
    return Character.from_weights(out)


def decompose_weyl(w: int, p: int) -> dict[int, int]:
    """Simple constituents of the Weyl module with highest weight w-1, keyed by label."""
    check_prime(p)
    top = w - 1
    rest = weyl_character(w).array(top)
    out: dict[int, int] = {}
    while True:
        nz = np.flatnonzero(rest)
        if not len(nz):
            return out
        h = int(nz[-1]) - top
        m = int(rest[nz[-1]])
        if m < 0 or h < 0:
            raise CharacterError(f"negative multiplicity at weight {h} while decomposing {w - 1}")
        out[h] = m
        rest = rest - m * simple_character(h, p).array(top)
        if (rest < 0).any():
            raise CharacterError(f"subtraction of L({h}) went negative while decomposing {w - 1}")


def delta_labels_via_x(w: int, p: int) -> set[int]:
    """{w - 2x : x in X(w)} restricted to positive integers (values v, not labels)."""
    return {w - 2 * x for x in padic.x_set(w, p) if w - 2 * x > 0}


def ideal_level(v: int, p: int) -> int:
    k = 0
    while v >= p ** (k + 1):
        k += 1
    return k


def ideal_members(p: int, k: int, bound: int) -> list[int]:
    """Labels v-1 <= bound of indecomposable tiltings in the k-th thick ideal."""
    return [v - 1 for v in range(1, bound + 2) if v >= p**k]


def negligible(v: int, p: int) -> bool:
    return tilting_dim(v, p) % p == 0


@dataclass(frozen=True)
class CharacterRow:
    label: int
    supp: tuple[int, ...]
    nabla: tuple[int, ...]
    delta_factors: tuple[int, ...]
    dim: int
    level: int
    ord_dim: int


def table(p: int, vmax: int) -> list[CharacterRow]:
    rows = []
    for v in range(1, vmax + 1):
        tc = tilting_character(v, p)
        rows.append(
            CharacterRow(
                v - 1,
                tuple(sorted(padic.support(v, p), reverse=True)),
                tc.labels,
                tuple(sorted(decompose_weyl(v, p), reverse=True)),
                tc.dim,
                ideal_level(v, p),
                int(pval(tc.dim, p)),
            )
        )
    return rows


def to_csv(rows: list[CharacterRow]) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["v-1", "supp", "tilting_nabla_labels", "delta_factors", "dim_T", "ideal_level"])
    for r in rows:
        wr.writerow([r.label, " ".join(map(str, r.supp)), " ".join(map(str, r.nabla)),
                     " ".join(map(str, r.delta_factors)), r.dim, r.level])
    return buf.getvalue()
