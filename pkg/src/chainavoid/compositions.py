"""Integer compositions and containment by dominance.

A composition ``d`` contains ``c`` when some subsequence of ``d`` (same length
as ``c``) is part-wise at least ``c``.  No order-isomorphism is involved.
"""

from itertools import combinations

from .errors import BOUNDS, ParseError


class Composition(tuple):
    """Immutable sequence of positive integers.

    The empty composition is a legal value (weight 0).

    >>> Composition([3, 2]).weight
    5
    """

    __slots__ = ()

    def __new__(cls, parts=()):
        parts = tuple(parts)
        for x in parts:
            if not isinstance(x, int) or isinstance(x, bool) or x < 1:
                raise ValueError(f"composition parts must be positive integers, got {parts!r}")
        return super().__new__(cls, parts)

    @classmethod
    def _trusted(cls, parts):
        return tuple.__new__(cls, parts)

    @classmethod
    def parse(cls, text):
        """Parse ``"3,2"``; the empty string gives the empty composition."""
        text = text.strip()
        if not text:
            return cls()
        try:
            return cls(int(tok) for tok in text.split(","))
        except ValueError as exc:
            raise ParseError(f"bad composition {text!r}: {exc}") from None

    @property
    def weight(self):
        return sum(self)

    def hat(self):
        """Drop the first part."""
        if not self:
            raise ValueError("hat of the empty composition is undefined")
        return Composition._trusted(self[1:])

    def contains(self, pattern):
        return comp_contains(self, pattern)

    def avoids(self, pattern):
        return not comp_contains(self, pattern)

    def __str__(self):
        return ",".join(map(str, self))

    def __repr__(self):
        return f"Composition(({', '.join(map(str, self))}{',' if len(self) == 1 else ''}))"


def _canonical_key(c):
    return (c[0] if c else 0, tuple(c))


class CompositionSet(tuple):
    """Finite set of compositions in canonical order.

    Members are sorted by first part and then lexicographically, which is the
    ordering the first-part recurrence needs.  The empty composition sorts first.
    """

    __slots__ = ()

    def __new__(cls, members=()):
        uniq = {m if isinstance(m, Composition) else Composition(m) for m in members}
        return super().__new__(cls, sorted(uniq, key=_canonical_key))

    @classmethod
    def parse(cls, text):
        """Parse ``"3,2;6"``.  An empty member denotes the empty composition."""
        return cls(Composition.parse(part) for part in text.split(";"))

    @property
    def has_empty(self):
        return bool(self) and len(self[0]) == 0

    def union(self, other):
        return CompositionSet((*self, *other))

    def __str__(self):
        return ";".join(map(str, self))

    def __repr__(self):
        return f"CompositionSet({str(self)!r})"

    def pretty(self):
        return "{" + ", ".join("(" + str(c) + ")" for c in self) + "}"


def dominates(sub, pattern):
    """True when ``sub`` is part-wise at least ``pattern`` (equal lengths required)."""
    if len(sub) != len(pattern):
        raise ValueError(f"length mismatch: {len(sub)} vs {len(pattern)}")
    return all(a >= b for a, b in zip(sub, pattern))


def comp_contains(d, c):
    """Greedy left-to-right match: each pattern part takes the earliest later host part >= it."""
    it = iter(d)
    return all(any(x >= p for x in it) for p in c)


def comp_contains_naive(d, c):
    """Reference check over every index subsequence (exponential; tests only)."""
    return any(dominates(sub, c) for sub in combinations(d, len(c)))


def avoids_all(d, comps):
    return not any(comp_contains(d, c) for c in comps)


def generate_compositions(n, *, first=None):
    """Yield every composition of ``n`` (2^(n-1) of them; just ``()`` for n = 0).

    ``first`` restricts the first part, which is how brute-force work is split.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    BOUNDS.check("compositions", n)
    if n == 0:
        if first is None:
            yield Composition()
        return
    firsts = range(1, n + 1) if first is None else [first] if 1 <= first <= n else []
    for head in firsts:
        for tail in _compositions(n - head):
            yield Composition._trusted((head, *tail))


def _compositions(n):
    if n == 0:
        yield ()
        return
    for head in range(1, n + 1):
        for tail in _compositions(n - head):
            yield (head, *tail)


def prune_redundant(comps):
    """Drop members that contain another member; avoiding the smaller one already forces it."""
    comps = CompositionSet(comps)
    if comps.has_empty:
        return CompositionSet([()])
    kept = [c2 for c2 in comps
            if not any(c1 != c2 and comp_contains(c2, c1) for c1 in comps)]
    return CompositionSet(kept)
