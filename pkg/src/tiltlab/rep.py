"""Matrix representation of the Temperley-Lieb category over F_p.

Strand i of an n-strand object is a tensor factor spanned by two states; the
state of the leftmost strand is the most significant bit of the row/column
index.  A cap sends (0,1) to -1 and (1,0) to +1, a cup is the transposed
vector with the opposite sign, so a closed loop evaluates to -2 and zigzags
straighten.  Composition becomes a matrix product, which is far cheaper than
composing dense diagram vectors.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .tldiag import TLMorphism
from .tlvec import MVec, basis

CAP = np.array([0, -1, 1, 0], dtype=np.int64)
CUP = -CAP
_CHUNK = 1 << 22


class RMat:
    """Image of a morphism m -> n: an int64 array of shape (2**n, 2**m) mod p."""

    __slots__ = ("m", "n", "p", "a")

    def __init__(self, m: int, n: int, p: int, a: np.ndarray):
        self.m, self.n, self.p, self.a = m, n, p, a

    @staticmethod
    def identity(n: int, p: int) -> "RMat":
        return RMat(n, n, p, np.eye(1 << n, dtype=np.int64))

    @staticmethod
    def zero(m: int, n: int, p: int) -> "RMat":
        return RMat(m, n, p, np.zeros((1 << n, 1 << m), dtype=np.int64))

    def _same(self, other: "RMat"):
        if (self.m, self.n, self.p) != (other.m, other.n, other.p):
            raise ValueError("incompatible representation matrices")

    def __add__(self, other: "RMat") -> "RMat":
        self._same(other)
        return RMat(self.m, self.n, self.p, (self.a + other.a) % self.p)

    def __sub__(self, other: "RMat") -> "RMat":
        self._same(other)
        return RMat(self.m, self.n, self.p, (self.a - other.a) % self.p)

    def __neg__(self) -> "RMat":
        return RMat(self.m, self.n, self.p, (-self.a) % self.p)

    def scale(self, c: int) -> "RMat":
        return RMat(self.m, self.n, self.p, (self.a * (int(c) % self.p)) % self.p)

    def __eq__(self, other):
        if not isinstance(other, RMat):
            return NotImplemented
        return (self.m, self.n, self.p) == (other.m, other.n, other.p) and np.array_equal(self.a, other.a)

    def is_zero(self) -> bool:
        return not self.a.any()

    def __matmul__(self, other: "RMat") -> "RMat":
        return self.compose(other)

    def compose(self, other: "RMat") -> "RMat":
        """self o other."""
        if self.m != other.n or self.p != other.p:
            raise ValueError("boundary mismatch in composition")
        return RMat(other.m, self.n, self.p, matmul_mod(self.a, other.a, self.p))

    def tensor(self, other: "RMat") -> "RMat":
        return RMat(self.m + other.m, self.n + other.n, self.p, np.kron(self.a, other.a) % self.p)

    def reflect(self) -> "RMat":
        # each cap turns into a cup of opposite sign; their number has the parity of (m-n)/2
        sign = -1 if ((self.m - self.n) // 2) % 2 else 1
        return RMat(self.n, self.m, self.p, (sign * self.a.T) % self.p)

    # -- elementary pieces on the top boundary
    def cap(self, j: int) -> "RMat":
        if not 0 <= j < self.n - 1:
            raise ValueError(f"cap at {j} out of range for {self.n} strands")
        a = self.a.reshape(1 << j, 4, 1 << (self.n - j - 2), 1 << self.m)
        out = np.tensordot(CAP, a, axes=([0], [1]))
        return RMat(self.m, self.n - 2, self.p, out.reshape(1 << (self.n - 2), 1 << self.m) % self.p)

    def cup(self, j: int) -> "RMat":
        if not 0 <= j <= self.n:
            raise ValueError(f"cup at {j} out of range for {self.n} strands")
        a = self.a.reshape(1 << j, 1, 1 << (self.n - j), 1 << self.m)
        out = a * CUP.reshape(1, 4, 1, 1)
        return RMat(self.m, self.n + 2, self.p, out.reshape(1 << (self.n + 2), 1 << self.m) % self.p)

    def trace_left(self, k: int = 1) -> "RMat":
        """Close the k leftmost strands; a closed strand contributes minus its trace."""
        if self.m != self.n or k > self.m:
            raise ValueError("partial trace needs an endomorphism with enough strands")
        r = self.n - k
        a = self.a.reshape(1 << k, 1 << r, 1 << k, 1 << r)
        out = np.einsum("iaib->ab", a) * (-1 if k % 2 else 1)
        return RMat(r, r, self.p, out % self.p)


def matmul_mod(x: np.ndarray, y: np.ndarray, p: int) -> np.ndarray:
    inner = x.shape[1]
    if inner * (p - 1) ** 2 < 1 << 52:
        return np.rint(x.astype(np.float64) @ y.astype(np.float64)).astype(np.int64) % p
    # split y into base-2**12 limbs to stay exact
    out = np.zeros((x.shape[0], y.shape[1]), dtype=np.int64)
    shift = 1
    yy = y.copy()
    while yy.any():
        limb = yy & 0xFFF
        part = np.rint(x.astype(np.float64) @ limb.astype(np.float64)) if inner * (p - 1) * 4096 < 1 << 52 else x @ limb
        out = (out + (np.asarray(part, dtype=np.int64) % p) * shift) % p
        yy >>= 12
        shift = shift * 4096 % p
    return out


@lru_cache(maxsize=64)
def _arc_tables(m: int, n: int):
    npts = m + n
    _, P = basis(npts)
    N, k = len(P), npts // 2
    if k == 0:
        z = np.zeros(N, dtype=np.int64)
        return z, np.zeros((N, 0), dtype=np.int64), np.ones(N, dtype=np.int64), np.zeros((N, 0), dtype=np.int64)
    P = P.astype(np.int64)
    w = np.empty(npts, dtype=np.int64)
    for x in range(m):
        w[x] = 1 << (m - 1 - x)
    for x in range(m, npts):
        w[x] = 1 << (n - 1 - (npts - 1 - x) + m)
    mask = np.arange(npts)[None, :] < P
    rows, X = np.nonzero(mask)
    X = X.reshape(N, k)
    Y = P[rows.reshape(N, k), X]
    bx, by = X < m, Y < m
    through = bx != by
    cup = ~bx & ~by
    # endpoint A is the left strand of a cap/cup (a larger position on top)
    A = np.where(cup, Y, X)
    B = np.where(cup, X, Y)
    delta = np.where(through, w[A] + w[B], w[A] - w[B])
    base = np.where(through, 0, w[B]).sum(axis=1)
    cap = bx & by
    sign0 = np.where((cap.sum(axis=1) % 2) == 1, -1, 1).astype(np.int64)
    return base, delta, sign0, (~through).astype(np.int64)


@lru_cache(maxsize=16)
def _bits(k: int) -> np.ndarray:
    c = np.arange(1 << k, dtype=np.int64)
    return ((c[:, None] >> np.arange(k)) & 1).astype(np.int64)


def rho_vec(x: MVec) -> RMat:
    """Representation matrix of a diagram vector held modulo a single prime."""
    if len(x.mods) != 1:
        raise ValueError("rho needs a vector over a single prime field")
    p = x.mods[0]
    m, n = x.m, x.n
    base, delta, sign0, pair = _arc_tables(m, n)
    coef = x.data[0]
    nz = np.flatnonzero(coef)
    bits = _bits((m + n) // 2)
    size = (1 << m) * (1 << n)
    acc = np.zeros(size, dtype=np.float64)
    step = max(1, _CHUNK // len(bits))
    for lo in range(0, len(nz), step):
        idx = nz[lo : lo + step]
        flat = base[idx, None] + delta[idx] @ bits.T
        par = (pair[idx] @ bits.T) & 1
        val = (coef[idx] * sign0[idx])[:, None] * (1 - 2 * par)
        acc += np.bincount(flat.ravel(), weights=val.ravel().astype(np.float64), minlength=size)
    a = np.rint(acc).astype(np.int64) % p
    return RMat(m, n, p, a.reshape(1 << n, 1 << m))


def rho(f: TLMorphism | MVec, p: int | None = None) -> RMat:
    if isinstance(f, MVec):
        return rho_vec(f)
    q = f.ring if isinstance(f.ring, int) else p
    if q is None:
        raise ValueError("a prime is needed for a rational morphism")
    g = f if f.ring == q else f.specialize(q)
    return rho_vec(MVec.from_morphism(g, (q,)))
