"""Dense Temperley-Lieb vectors for larger strand counts.

A morphism m -> n is a coefficient vector over all crossingless matchings of
the m+n boundary points read in circular order (bottom left to right, then
top right to left), so the basis only depends on m+n.  Coefficients are held
modulo several word-sized primes at once (shape ``(r, N)`` int64); exact
rationals are recovered by CRT plus rational reconstruction, checked against
a spare prime.  With ``r == 1`` and a small prime the same code computes over
F_p directly.

Morphisms are built by left-multiplying with elementary pieces (caps, cups,
Jones-Wenzl boxes on a strand range), so no dense-by-dense products occur.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

import numpy as np

from .exactnum import is_prime
from .tldiag import Matching, TLMorphism, circ_to_label

LOOP = -2


@lru_cache(maxsize=None)
def big_primes(count: int) -> tuple[int, ...]:
    out = []
    q = (1 << 31) - 1
    while len(out) < count:
        if is_prime(q):
            out.append(q)
        q -= 2
    return tuple(out)


# ------------------------------------------------------------------ bases

@lru_cache(maxsize=None)
def basis(npts: int):
    """(codes, partners) for all crossingless matchings of npts circular points.

    ``partners[r, i]`` is the partner of point i in matching r; rows are sorted
    by the code sum(2**i for openers i).
    """
    if npts % 2:
        raise ValueError("odd number of points")
    if npts == 0:
        return np.zeros(1, dtype=np.int64), np.zeros((1, 0), dtype=np.int16)
    rows = _partner_rows(npts)
    codes = _codes(rows)
    order = np.argsort(codes)
    return codes[order], rows[order]


def _partner_rows(npts: int) -> np.ndarray:
    # build level by level: matchings of 2k points from matchings of smaller sizes
    tables = {0: np.zeros((1, 0), dtype=np.int16)}
    for size in range(2, npts + 1, 2):
        blocks = []
        for partner in range(1, size, 2):
            inner = tables[partner - 1]
            outer = tables[size - partner - 1]
            ni, no = len(inner), len(outer)
            blk = np.empty((ni * no, size), dtype=np.int16)
            blk[:, 0] = partner
            blk[:, partner] = 0
            blk[:, 1:partner] = np.repeat(inner + 1, no, axis=0)
            blk[:, partner + 1:] = np.tile(outer + partner + 1, (ni, 1))
            blocks.append(blk)
        tables[size] = np.concatenate(blocks)
    return tables[npts]


def _codes(rows: np.ndarray) -> np.ndarray:
    npts = rows.shape[1]
    idx = np.arange(npts, dtype=np.int16)
    bits = (rows > idx).astype(np.int64)
    return bits @ (np.int64(1) << np.arange(npts, dtype=np.int64))


def lookup(npts: int, rows: np.ndarray) -> np.ndarray:
    codes, _ = basis(npts)
    c = _codes(rows) if rows.shape[1] else np.zeros(len(rows), dtype=np.int64)
    pos = np.searchsorted(codes, c)
    assert np.all(codes[pos] == c), "malformed matching rows"
    return pos


# ------------------------------------------------------------ index maps

class ManyToOne:
    """Sparse linear map: out[t] += factor * in[i] aggregated by target."""

    def __init__(self, target: np.ndarray, factor: np.ndarray | None, n_out: int):
        order = np.argsort(target, kind="stable")
        ts = target[order]
        starts = np.flatnonzero(np.r_[True, ts[1:] != ts[:-1]])
        self.order = order
        self.starts = starts
        self.uniq = ts[starts]
        self.factor = None if factor is None else factor[order]
        self.n_out = n_out
        self.injective = len(starts) == len(target)

    def apply(self, data: np.ndarray, mods: np.ndarray) -> np.ndarray:
        x = data[:, self.order]
        if self.factor is not None:
            x = (x * self.factor) % mods
        out = np.zeros((data.shape[0], self.n_out), dtype=np.int64)
        if self.injective:
            out[:, self.uniq] = x
        elif x.shape[1]:
            out[:, self.uniq] = np.add.reduceat(x, self.starts, axis=1) % mods
        return out


@lru_cache(maxsize=None)
def connect_map(npts: int, c: int) -> ManyToOne:
    """Join circular points c and c+1 (c = npts-1 joins the last and first)."""
    _, P = basis(npts)
    P = P.astype(np.int64)
    N = len(P)
    if c == npts - 1:
        i, j = npts - 1, 0
    else:
        i, j = c, c + 1
    a, b = P[:, i].copy(), P[:, j].copy()
    loop = a == j
    Q = P.copy()
    r = np.arange(N)
    nl = ~loop
    Q[r[nl], a[nl]] = b[nl]
    Q[r[nl], b[nl]] = a[nl]
    keep = [t for t in range(npts) if t not in (i, j)]
    Q = Q[:, keep]
    # renumber surviving points
    newpos = np.full(npts, -1, dtype=np.int64)
    newpos[keep] = np.arange(npts - 2)
    Q = newpos[Q]
    target = lookup(npts - 2, Q)
    factor = np.where(loop, LOOP, 1).astype(np.int64)
    return ManyToOne(target, factor, len(basis(npts - 2)[0]))


@lru_cache(maxsize=None)
def insert_map(npts: int, c: int) -> ManyToOne:
    """Insert a new adjacent pair at circular positions c, c+1."""
    _, P = basis(npts)
    P = P.astype(np.int64)
    N = len(P)
    shift = np.arange(npts, dtype=np.int64)
    shift = np.where(shift >= c, shift + 2, shift)
    Q = np.empty((N, npts + 2), dtype=np.int64)
    Q[:, shift] = shift[P]
    Q[:, c] = c + 1
    Q[:, c + 1] = c
    target = lookup(npts + 2, Q)
    return ManyToOne(target, None, len(basis(npts + 2)[0]))


# ----------------------------------------------------------------- vectors

class MVec:
    """Morphism m -> n with coefficients modulo ``mods`` (one row per modulus)."""

    __slots__ = ("m", "n", "mods", "data")

    def __init__(self, m: int, n: int, mods: tuple[int, ...], data: np.ndarray):
        self.m, self.n, self.mods, self.data = m, n, tuple(mods), data

    @property
    def npts(self) -> int:
        return self.m + self.n

    def _mcol(self) -> np.ndarray:
        return np.array(self.mods, dtype=np.int64)[:, None]

    @staticmethod
    def zero(m: int, n: int, mods) -> "MVec":
        N = len(basis(m + n)[0])
        return MVec(m, n, mods, np.zeros((len(mods), N), dtype=np.int64))

    @staticmethod
    def identity(n: int, mods) -> "MVec":
        rows = np.array([[2 * n - 1 - i for i in range(2 * n)]], dtype=np.int64)
        out = MVec.zero(n, n, mods)
        out.data[:, lookup(2 * n, rows)] = 1
        return out

    @staticmethod
    def from_morphism(f: TLMorphism, mods) -> "MVec":
        out = MVec.zero(f.m, f.n, mods)
        if not f.terms:
            return out
        rows, coeffs = [], []
        for mt, c in f.terms.items():
            row = [0] * (f.m + f.n)
            for a, b in mt.pairs:
                pa, pb = mt.circ(a), mt.circ(b)
                row[pa], row[pb] = pb, pa
            rows.append(row)
            coeffs.append(c)
        idx = lookup(f.m + f.n, np.array(rows, dtype=np.int64).reshape(len(rows), f.m + f.n))
        for k, q in enumerate(out.mods):
            out.data[k, idx] = [_mod(c, q) for c in coeffs]
        return out

    def copy(self) -> "MVec":
        return MVec(self.m, self.n, self.mods, self.data.copy())

    # -- linear structure
    def __add__(self, other: "MVec") -> "MVec":
        self._check(other)
        return MVec(self.m, self.n, self.mods, (self.data + other.data) % self._mcol())

    def __sub__(self, other: "MVec") -> "MVec":
        self._check(other)
        return MVec(self.m, self.n, self.mods, (self.data - other.data) % self._mcol())

    def scale(self, c) -> "MVec":
        s = np.array([_mod(c, q) for q in self.mods], dtype=np.int64)[:, None]
        return MVec(self.m, self.n, self.mods, (self.data * s) % self._mcol())

    def _check(self, other):
        if (self.m, self.n, self.mods) != (other.m, other.n, other.mods):
            raise ValueError("incompatible vectors")

    def is_zero(self) -> bool:
        return not self.data.any()

    def __eq__(self, other):
        if not isinstance(other, MVec):
            return NotImplemented
        return (self.m, self.n, self.mods) == (other.m, other.n, other.mods) and np.array_equal(self.data, other.data)

    def nnz(self) -> int:
        return int(np.count_nonzero(self.data.any(axis=0)))

    # -- left multiplication by elementary pieces on the top boundary
    def cap(self, j: int) -> "MVec":
        """Cap top strands j, j+1 (0-based from the left)."""
        if not 0 <= j < self.n - 1:
            raise ValueError(f"cap at {j} out of range for {self.n} strands")
        c = self.m + self.n - 2 - j
        return MVec(self.m, self.n - 2, self.mods, connect_map(self.npts, c).apply(self.data, self._mcol()))

    def cup(self, j: int) -> "MVec":
        """Create new top strands j, j+1 joined by a cup."""
        if not 0 <= j <= self.n:
            raise ValueError(f"cup at {j} out of range for {self.n} strands")
        c = self.m + self.n - j
        return MVec(self.m, self.n + 2, self.mods, insert_map(self.npts, c).apply(self.data, self._mcol()))

    def e(self, j: int) -> "MVec":
        return self.cap(j).cup(j)

    def jw(self, lo: int, length: int) -> "MVec":
        """Left-multiply by the Jones-Wenzl projector on top strands lo..lo+length-1."""
        if lo < 0 or lo + length > self.n:
            raise ValueError("projector range out of bounds")
        x = self
        for L in range(length, 1, -1):
            x = x._rchain(lo, L)
        return x

    def _rchain(self, lo: int, L: int) -> "MVec":
        # (1 + sum_j (j/L) E_{L-1}...E_j) with E_i on relative strands i-1, i
        z = self.scale(Fraction(1, L)).e(lo)
        for i in range(2, L):
            z = (z + self.scale(Fraction(i, L))).e(lo + i - 1)
        return self + z

    # -- left multiplication by bottom pieces (right composition)
    def cap_bottom(self, j: int) -> "MVec":
        """self o (cap on strands j, j+1 of a wider source)."""
        return MVec(self.m + 2, self.n, self.mods, insert_map(self.npts, j).apply(self.data, self._mcol()))

    def cup_bottom(self, j: int) -> "MVec":
        """self o (cup creating source strands j, j+1)."""
        return MVec(self.m - 2, self.n, self.mods, connect_map(self.npts, j).apply(self.data, self._mcol()))

    def trace_left(self, k: int = 1) -> "MVec":
        """Close the k leftmost strands of an endomorphism."""
        if self.m != self.n or k > self.m:
            raise ValueError("partial trace needs an endomorphism with enough strands")
        x = self
        for _ in range(k):
            x = MVec(x.m - 1, x.n - 1, x.mods, connect_map(x.npts, x.npts - 1).apply(x.data, x._mcol()))
        return x

    def reflect(self) -> "MVec":
        out = np.zeros_like(self.data)
        out[:, _cached_reflect(self.m, self.n)] = self.data
        return MVec(self.n, self.m, self.mods, out)

    # -- recovery
    def residues(self) -> dict[int, list[int]]:
        nz = np.flatnonzero(self.data.any(axis=0))
        return {int(i): [int(x) for x in self.data[:, i]] for i in nz}

    def to_fractions(self, check: bool = True) -> dict[int, Fraction]:
        """Rational reconstruction of every nonzero coefficient.

        The last modulus is held back to validate the reconstruction; a
        ``ReconstructionError`` asks the caller to use more primes.
        """
        mods = self.mods
        use = mods[:-1] if check and len(mods) > 1 else mods
        M = 1
        for q in use:
            M *= q
        crt = [M // q * pow(M // q, -1, q) for q in use]
        out = {}
        nz = np.flatnonzero(self.data.any(axis=0))
        cols = self.data[:, nz].T.tolist()
        for i, col in zip(nz.tolist(), cols):
            x = sum(r * c for r, c in zip(col, crt)) % M
            fr = rational_reconstruct(x, M)
            if fr is None:
                raise ReconstructionError("rational reconstruction failed")
            if check and len(mods) > 1:
                q = mods[-1]
                if fr.numerator * pow(fr.denominator, -1, q) % q != col[-1]:
                    raise ReconstructionError("spare prime disagrees")
            out[i] = fr
        return out

    def to_morphism(self) -> TLMorphism:
        """Exact rational TLMorphism (or F_p when a single small prime is used)."""
        if len(self.mods) == 1 and self.mods[0] < 1 << 20:
            terms = {index_to_matching(self.m, self.n, i): c[0] for i, c in self.residues().items()}
            return TLMorphism(self.m, self.n, self.mods[0], terms)
        fr = self.to_fractions()
        return TLMorphism(self.m, self.n, "Q", {index_to_matching(self.m, self.n, i): c for i, c in fr.items()})


class ReconstructionError(ArithmeticError):
    pass


@lru_cache(maxsize=None)
def _cached_reflect(m: int, n: int) -> np.ndarray:
    npts = m + n
    _, P = basis(npts)
    P = P.astype(np.int64)
    # bottom i becomes top i and top j becomes bottom j: position x -> npts-1-x
    newpos = npts - 1 - np.arange(npts)
    Q = np.empty_like(P)
    Q[:, newpos] = newpos[P]
    return lookup(npts, Q)


def _mod(c, q: int) -> int:
    c = Fraction(c) if not isinstance(c, (int, Fraction)) else c
    if isinstance(c, int):
        return c % q
    return c.numerator % q * pow(c.denominator % q, -1, q) % q


def rational_reconstruct(x: int, M: int) -> Fraction | None:
    """Find a/b with a = b*x mod M, |a|, b <= sqrt(M/2)."""
    bound = isqrt(M // 2)
    r0, r1 = M, x % M
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def index_to_matching(m: int, n: int, idx: int) -> Matching:
    _, P = basis(m + n)
    row = P[idx]
    pairs = [(circ_to_label(m, n, i), circ_to_label(m, n, int(row[i]))) for i in range(m + n) if row[i] > i]
    return Matching.from_pairs(m, n, pairs)


def through_degree_array(m: int, n: int) -> np.ndarray:
    """Through-degree of each basis matching of B(m, n)."""
    _, P = basis(m + n)
    bottom = np.arange(m + n) < m
    partner_bottom = bottom[P.astype(np.int64)] if m + n else np.zeros((1, 0), bool)
    return (bottom & ~partner_bottom).sum(axis=1)
