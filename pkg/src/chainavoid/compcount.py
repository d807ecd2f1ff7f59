"""Counting compositions of n that avoid a set of composition patterns.

The fast path splits on the first part ``d_1`` of the composition.  With the
patterns sorted by first part, ``d_1`` can serve as the first entry of exactly
the patterns whose first part is at most ``d_1``; those patterns lose their
first part and the rest of the composition must avoid the resulting set.
Whole tables ``b_0..b_N`` are built per pattern set and memoized, so each
reduction costs a prefix-sum lookup instead of a recursive call.
"""

from dataclasses import dataclass
from threading import RLock

from .compositions import (
    Composition,
    CompositionSet,
    avoids_all,
    generate_compositions,
    prune_redundant,
)


@dataclass(frozen=True)
class CountResult:
    n: int
    count: int
    method: str

    def __int__(self):
        return self.count

    def __post_init__(self):
        if self.count < 0:
            raise ValueError("counts are nonnegative")


def hat(c):
    """Drop the first part of a nonempty composition."""
    if not c:
        raise ValueError("hat of the empty composition is undefined")
    return Composition._trusted(tuple(c)[1:])


def hat_set(comps, j):
    """Hat the first ``j`` members (canonical order) and keep the rest."""
    comps = CompositionSet(comps)
    if not 0 <= j <= len(comps):
        raise ValueError(f"j={j} out of range for a set of {len(comps)} members")
    return CompositionSet([hat(c) for c in comps[:j]] + list(comps[j:]))


class AvoiderCounter:
    """Memoized b_n(C) tables.

    ``capacity`` caps the number of cached pattern sets (oldest evicted first);
    ``None`` means unbounded.  All cache access happens under one reentrant lock,
    so a shared instance is safe across threads.
    """

    def __init__(self, prune=True, capacity=None):
        self.prune = prune
        self.capacity = capacity
        self._tables = {}
        self._lock = RLock()

    def _key(self, comps):
        comps = CompositionSet(comps)
        return prune_redundant(comps) if self.prune else comps

    def table(self, comps, n_max):
        """[b_0(C), ..., b_{n_max}(C)]."""
        comps = CompositionSet(comps)
        if not comps:
            raise ValueError("need a nonempty set of compositions")
        with self._lock:
            return list(self._table(self._key(comps), n_max)[: n_max + 1])

    def count(self, n, comps):
        return self.table(comps, n)[n]

    def clear(self):
        with self._lock:
            self._tables.clear()

    def _table(self, comps, n_max):
        if n_max < 0:
            return []
        if comps.has_empty:
            return [0] * (n_max + 1)
        cached = self._tables.get(comps)
        if cached is not None and len(cached) > n_max:
            return cached
        if cached is not None:
            n_max = max(n_max, 2 * len(cached))

        firsts = [c[0] for c in comps]
        # branch j (1..m): d_1 in [firsts[j-1], firsts[j]-1] (last branch unbounded)
        branches = []
        for j in range(1, len(comps) + 1):
            lo = firsts[j - 1]
            hi = firsts[j] - 1 if j < len(comps) else None
            if hi is not None and hi < lo:
                continue
            if lo > n_max:
                continue
            sub = self._key(hat_set(comps, j))
            sub_table = self._table(sub, n_max - lo)
            prefix = [0]
            for v in sub_table:
                prefix.append(prefix[-1] + v)
            branches.append((lo, hi, prefix))

        self_width = firsts[0] - 1
        b = [1]
        for n in range(1, n_max + 1):
            total = sum(b[n - i] for i in range(1, min(self_width, n) + 1))
            for lo, hi, prefix in branches:
                top = n if hi is None else min(hi, n)
                if top >= lo:
                    # sum of sub_table[n - i] for i in lo..top
                    total += prefix[n - lo + 1] - prefix[n - top]
            b.append(total)

        self._tables[comps] = b
        if self.capacity is not None:
            while len(self._tables) > self.capacity:
                self._tables.pop(next(iter(self._tables)))
        return b


_default_counter = AvoiderCounter()


def count_avoiders(n, comps, prune=True):
    """b_n(C) by the first-part recurrence.

    >>> count_avoiders(5, [(3, 2)]).count
    15
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    counter = _default_counter if prune else AvoiderCounter(prune=False)
    return CountResult(n, counter.count(n, comps), "recurrence")


def avoider_counts(n_max, comps):
    """[b_0(C), ..., b_{n_max}(C)] in one pass."""
    return _default_counter.table(comps, n_max)


def count_avoiders_bruteforce(n, comps):
    """Count compositions of n avoiding every member, by exhaustive listing."""
    comps = CompositionSet(comps)
    if not comps:
        raise ValueError("need a nonempty set of compositions")
    count = sum(1 for d in generate_compositions(n) if avoids_all(d, comps))
    return CountResult(n, count, "brute-force")
