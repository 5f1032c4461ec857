import threading
from dataclasses import dataclass
from typing import Any

import numpy as np

from homeo_orbits.cantor.address import CantorAddress, left_endpoint, left_endpoint_rank
from homeo_orbits.exceptions import InvalidQuadruple, throw

KEY_BITS = 62


def order_key(rank: int) -> int:
	"""Integer key ordering left endpoints as points of [0, 1].

	The Cantor function sends the left endpoint w0(2) of generation k to the dyadic
	(2w + 1) / 2^k (w read in binary), and is injective and increasing on P^L.
	"""
	k = rank.bit_length()
	if k > KEY_BITS:
		throw(f"left endpoint rank {rank} is too deep to order", InvalidQuadruple)
	return (2 * (rank - (1 << (k - 1))) + 1) << (KEY_BITS - k)


@dataclass(frozen=True)
class QuadIndex:
	p1: CantorAddress
	p2: CantorAddress
	p1s: CantorAddress
	p2s: CantorAddress

	def __post_init__(self):
		ranks = [left_endpoint_rank(p) for p in (self.p1, self.p2, self.p1s, self.p2s)]
		if not (order_key(ranks[0]) < order_key(ranks[1]) and order_key(ranks[2]) < order_key(ranks[3])):
			throw(f"quadruple {self} needs p1 < p2 and p1* < p2*", InvalidQuadruple)

	@classmethod
	def from_ranks(cls, r1: int, r2: int, r3: int, r4: int) -> "QuadIndex":
		return cls(*(left_endpoint(r) for r in (r1, r2, r3, r4)))

	@property
	def ranks(self) -> tuple[int, int, int, int]:
		return tuple(left_endpoint_rank(p) for p in (self.p1, self.p2, self.p1s, self.p2s))

	def __str__(self) -> str:
		return f"({self.p1}, {self.p2}; {self.p1s}, {self.p2s})"

	def as_dict(self) -> dict[str, Any]:
		return {"p1": str(self.p1), "p2": str(self.p2), "p1s": str(self.p1s), "p2s": str(self.p2s)}


class _PairTable:
	"""pairs[s]: number of rank pairs (r1, r2) with r1 + r2 = s and point(r1) < point(r2)."""

	def __init__(self):
		self._lock = threading.Lock()
		self._keys = np.zeros(1, dtype=np.int64)
		self._pairs = np.zeros(1, dtype=np.int64)

	def arrays(self, upto: int) -> tuple[np.ndarray, np.ndarray]:
		with self._lock:
			if len(self._pairs) <= upto:
				size = max(upto + 1, 2 * len(self._pairs))
				keys = np.array([0] + [order_key(r) for r in range(1, size)], dtype=np.int64)
				extra = [np.count_nonzero(keys[1:s] < keys[s - 1 : 0 : -1]) for s in range(len(self._pairs), size)]
				self._keys = keys
				self._pairs = np.concatenate([self._pairs, np.array(extra, dtype=np.int64)])
			return self._pairs, self._keys


_TABLE = _PairTable()


def _count(pairs: np.ndarray, total: int) -> int:
	return sum(int(pairs[s]) * int(pairs[total - s]) for s in range(total + 1))


def _before(pairs: np.ndarray, total: int) -> int:
	running = np.cumsum(pairs[:total], dtype=np.int64)
	return sum(int(pairs[s]) * int(running[total - 1 - s]) for s in range(total))


def _block(pairs: np.ndarray, keys: np.ndarray, first: int, total: int) -> int:
	"""Tuples with rank sum total whose first rank is first."""
	if total - first < 2:
		return 0
	admissible = keys[first] < keys[1 : total - first]
	return int(pairs[total - first - 1 : 0 : -1][admissible].sum())


def quad_rank(q: QuadIndex) -> int:
	"""1-based position of q among admissible rank tuples ordered by rank sum, then lexicographically."""
	r1, r2, r3, r4 = q.ranks
	total = r1 + r2 + r3 + r4
	pairs, keys = _TABLE.arrays(total)

	position = _before(pairs, total)
	position += sum(_block(pairs, keys, a, total) for a in range(1, r1))
	position += sum(int(pairs[total - r1 - b]) for b in range(1, r2) if keys[r1] < keys[b])
	rest = r3 + r4
	position += sum(1 for c in range(1, r3) if keys[c] < keys[rest - c])
	return position + 1


def quad_unrank(n: int) -> QuadIndex:
	if n < 1:
		throw(f"quadruple ranks start at 1, got {n}", InvalidQuadruple)
	total, before = 4, 0
	while True:
		pairs, keys = _TABLE.arrays(total)
		count = _count(pairs, total)
		if before + count >= n:
			break
		before += count
		total += 1

	m = n - before
	a = 1
	while m > (block := _block(pairs, keys, a, total)):
		m -= block
		a += 1
	b = 1
	while True:
		if keys[a] < keys[b]:
			inner = int(pairs[total - a - b])
			if m <= inner:
				break
			m -= inner
		b += 1
	rest = total - a - b
	for c in range(1, rest):
		if keys[c] < keys[rest - c]:
			m -= 1
			if m == 0:
				return QuadIndex.from_ranks(a, b, c, rest - c)
	throw(f"enumeration of quadruple {n} ran past its block", InvalidQuadruple)
