"""
Rank tables
Numpy multiplication, inverse and order tables indexed by element rank
"""
from dataclasses import dataclass, field
from typing import Union

import numpy as np

Ranks = Union[int, np.ndarray]


@dataclass(eq=False)
class RankTables:
    prime: int
    right: np.ndarray      # right[j, r] = rank(unrank(r) * g_j)
    cayley: np.ndarray     # cayley[a, b] = rank(a * b)
    inverse: np.ndarray
    _orders: np.ndarray = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return len(self.inverse)

    def mul(self, a: Ranks, b: Ranks) -> Ranks:
        return self.cayley[a, b]

    def inv(self, a: Ranks) -> Ranks:
        return self.inverse[a]

    def conj(self, a: Ranks, g: Ranks) -> Ranks:
        """a^g = g^-1 a g, elementwise."""
        return self.cayley[self.cayley[self.inverse[g], a], g]

    def comm(self, a: Ranks, b: Ranks) -> Ranks:
        return self.cayley[self.inverse[self.cayley[b, a]], self.cayley[a, b]]

    def power(self, a: Ranks, k: int) -> Ranks:
        a = np.asarray(a)
        result = np.zeros_like(a)
        base, m = a, abs(k)
        while m:
            if m & 1:
                result = self.cayley[result, base]
            base = self.cayley[base, base]
            m >>= 1
        return self.inverse[result] if k < 0 else result

    @property
    def orders(self) -> np.ndarray:
        if self._orders is None:
            orders = np.ones(self.size, dtype=np.int64)
            current = np.arange(self.size)
            while True:
                pending = current != 0
                if not pending.any():
                    break
                orders[pending] *= self.prime
                current = self.power(current, self.prime)
            self._orders = orders
        return self._orders


def build_tables(G) -> RankTables:
    """Materialize the Cayley table of G column by column from right multiplication by pc generators."""
    N, n = G.order, G.n
    exps = G.exponent_matrix()
    right = np.empty((n, N), dtype=np.int32)
    for r, u in enumerate(G.elements()):
        for j in range(n):
            right[j, r] = G.rank(G._times_generator_power(u, j, 1))

    cayley = np.empty((N, N), dtype=np.int32)
    cayley[:, 0] = np.arange(N)
    weights = G._weights
    for v in range(1, N):
        j = int(np.flatnonzero(exps[v])[-1])
        cayley[:, v] = right[j, cayley[:, v - weights[j]]]

    rows, cols = np.nonzero(cayley == 0)
    inverse = np.empty(N, dtype=np.int32)
    inverse[rows] = cols
    return RankTables(prime=G.prime, right=right, cayley=cayley, inverse=inverse)
