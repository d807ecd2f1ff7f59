"""Permutations in one-line notation: containment, powers, direct sums, symmetries.

Values are 1-based.  The text forms accepted are a compact digit string
(``"2341"``), digits mixed with parenthesised multi-digit tokens
(``"2341567(10)89(11)(12)"``) and comma-separated integers (``"2,3,4,1"``).
"""

import re
from functools import lru_cache
from itertools import permutations as _itperms

from .compositions import Composition
from .errors import BOUNDS, ParseError

_TOKEN = re.compile(r"\d|\(\s*\d+\s*\)")


class Permutation(tuple):
    """A bijection on {1..n} stored as its one-line tuple.

    >>> Permutation("2341") ** 2
    Permutation('3412')
    """

    __slots__ = ()

    def __new__(cls, values=()):
        if isinstance(values, str):
            values = _parse_values(values)
        values = tuple(values)
        if sorted(values) != list(range(1, len(values) + 1)):
            raise ValueError(f"not a permutation of 1..{len(values)}: {values!r}")
        return super().__new__(cls, values)

    @classmethod
    def _trusted(cls, values):
        return tuple.__new__(cls, values)

    @classmethod
    def parse(cls, text):
        try:
            return cls(text)
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(str(exc)) from None

    @classmethod
    def identity(cls, n):
        return cls._trusted(range(1, n + 1))

    # -- text ---------------------------------------------------------------

    def __str__(self):
        return ",".join(map(str, self))

    def compact(self):
        """Digit-string form with multi-digit values in parentheses."""
        return "".join(str(v) if v < 10 else f"({v})" for v in self)

    def __repr__(self):
        return f"Permutation({self.compact()!r})"

    # -- algebra ------------------------------------------------------------

    def __call__(self, i):
        return self[i - 1]

    def compose(self, other):
        """``(self o other)(i) = self(other(i))``."""
        if len(self) != len(other):
            raise ValueError("cannot compose permutations of different lengths")
        return Permutation._trusted(self[v - 1] for v in other)

    def __pow__(self, k):
        return power(self, k)

    def inverse(self):
        inv = [0] * len(self)
        for i, v in enumerate(self, 1):
            inv[v - 1] = i
        return Permutation._trusted(inv)

    def reverse(self):
        return Permutation._trusted(self[::-1])

    def complement(self):
        n1 = len(self) + 1
        return Permutation._trusted(n1 - v for v in self)

    def rci(self):
        return rci(self)

    # -- patterns -----------------------------------------------------------

    def contains(self, pattern):
        return contains(self, pattern)

    def avoids(self, pattern):
        return not contains(self, pattern)


def _parse_values(text):
    text = text.strip()
    if not text:
        return ()
    if "," in text:
        try:
            return tuple(int(tok) for tok in text.split(","))
        except ValueError:
            raise ParseError(f"bad permutation {text!r}") from None
    compact = text.replace(" ", "")
    pos = 0
    values = []
    for m in _TOKEN.finditer(compact):
        if m.start() != pos:
            break
        values.append(int(m.group().strip("()")))
        pos = m.end()
    if pos != len(compact):
        raise ParseError(f"bad permutation {text!r} at offset {pos}")
    return tuple(values)


def as_perm(p):
    return p if isinstance(p, Permutation) else Permutation(p)


# -- containment -------------------------------------------------------------

@lru_cache(maxsize=None)
def _order_constraints(pattern):
    """For each pattern slot, the earlier slots holding the nearest smaller and larger values.

    Missing neighbours point at two sentinel slots (k: -inf, k+1: +inf).
    """
    k = len(pattern)
    lo, hi = [], []
    for t, v in enumerate(pattern):
        below = [s for s in range(t) if pattern[s] < v]
        above = [s for s in range(t) if pattern[s] > v]
        lo.append(max(below, key=pattern.__getitem__) if below else k)
        hi.append(min(above, key=pattern.__getitem__) if above else k + 1)
    return tuple(lo), tuple(hi)


def _embeds(host, pattern, anchor_last=False):
    """Backtracking search for an order-isomorphic copy of ``pattern`` in ``host``.

    Each slot is checked only against its nearest-value predecessors, so a
    candidate costs O(1).  Worst case O(n^k) for pattern length k.  With
    ``anchor_last`` the final pattern entry must sit on the final host entry.
    """
    k, n = len(pattern), len(host)
    if k > n:
        return False
    lo, hi = _order_constraints(tuple(pattern))
    chosen = [0] * k + [float("-inf"), float("inf")]
    idx = [0] * k
    t = i = 0
    while True:
        limit = n - k + t + 1
        if anchor_last and t == k - 1:
            i = max(i, n - 1)
        low = chosen[lo[t]]
        high = chosen[hi[t]]
        while i < limit and not low < host[i] < high:
            i += 1
        if i < limit:
            chosen[t] = host[i]
            idx[t] = i
            if t == k - 1:
                return True
            t += 1
            i += 1
        elif t == 0:
            return False
        else:
            t -= 1
            i = idx[t] + 1


def avoids_321(seq):
    """O(n): 321-avoiders are exactly the sequences whose non-record values increase."""
    top = last = float("-inf")
    for v in seq:
        if v > top:
            top = v
        elif v < last:
            return False
        else:
            last = v
    return True


def _avoids_231(seq):
    # stack-sortable sequences are exactly the 231-avoiders
    stack = []
    out = float("-inf")
    for v in seq:
        while stack and stack[-1] < v:
            x = stack.pop()
            if x < out:
                return False
            out = x
        stack.append(v)
    return all(x > out for x in stack)


def avoids_312(seq):
    """O(n): reverse-complement maps 312 to 231."""
    return _avoids_231([-v for v in reversed(seq)])


def perm_avoids_312(p):
    """O(n) for permutations of 1..n: the 312-avoiders are exactly the stack words of the identity."""
    stack = []
    nxt = 1
    for v in p:
        while nxt <= v:
            stack.append(nxt)
            nxt += 1
        if stack.pop() != v:
            return False
    return True


_FAST = {(3, 1, 2): avoids_312, (3, 2, 1): avoids_321}


def avoidance_checker(patterns):
    """A predicate ``f(p) -> bool`` testing a permutation of 1..n against every pattern.

    Cheap tests run first: 321, then 312, then generic patterns by length.
    """
    checks = []
    for pat in sorted((tuple(q) for q in patterns), key=lambda q: (q != (3, 2, 1), q != (3, 1, 2), len(q))):
        if pat == (3, 2, 1):
            checks.append(avoids_321)
        elif pat == (3, 1, 2):
            checks.append(perm_avoids_312)
        elif len(pat) == 1:
            checks.append(lambda p: len(p) == 0)
        else:
            checks.append(lambda p, pat=pat: not _embeds(p, pat))
    if len(checks) == 1:
        return checks[0]
    return lambda p: all(f(p) for f in checks)


def contains(host, pattern):
    """True when some subsequence of ``host`` is order-isomorphic to ``pattern``."""
    pattern = tuple(pattern)
    if not pattern:
        raise ValueError("the empty permutation is not a valid pattern")
    fast = _FAST.get(pattern)
    if fast is not None:
        return not fast(host)
    return _embeds(tuple(host), pattern)


def avoids(host, pattern):
    return not contains(host, pattern)


def avoids_all(host, patterns):
    return not any(contains(host, p) for p in patterns)


def _completes(prefix, pattern):
    """True when ``pattern`` occurs in ``prefix`` using its final entry."""
    k = len(pattern)
    if k > len(prefix):
        return False
    v = prefix[-1]
    if k == 1:
        return True
    if pattern == (3, 1, 2):
        # need earlier j with prefix[j] < v and something before j above v
        top = float("-inf")
        for x in prefix[:-1]:
            if x < v < top:
                return True
            top = max(top, x)
        return False
    if pattern == (3, 2, 1):
        top = float("-inf")
        for x in prefix[:-1]:
            if x > v and x < top:
                return True
            top = max(top, x)
        return False
    return _embeds(prefix, pattern, anchor_last=True)


# -- algebra -----------------------------------------------------------------

def power(p, k):
    """``p`` composed with itself ``k`` times (k >= 1)."""
    if k < 1:
        raise ValueError("power must be >= 1")
    p = tuple(p)
    out = p
    for _ in range(k - 1):
        out = tuple(p[v - 1] for v in out)
    return Permutation._trusted(out)


def direct_sum(parts):
    values = []
    for part in parts:
        shift = len(values)
        values.extend(v + shift for v in part)
    return Permutation._trusted(values)


def sum_decompose(p):
    """Split into sum-indecomposable blocks; a cut falls wherever the prefix max equals its length."""
    if not p:
        raise ValueError("cannot decompose the empty permutation")
    blocks, start, top = [], 0, 0
    for i, v in enumerate(p, 1):
        top = max(top, v)
        if top == i:
            blocks.append(Permutation._trusted(x - start for x in p[start:i]))
            start = i
    return blocks


def is_indecomposable(p):
    return len(sum_decompose(p)) == 1


def epsilon(d):
    """1, 21, 231, 2341, ...: the block 23...d1."""
    if d < 1:
        raise ValueError("epsilon needs d >= 1")
    if d == 1:
        return Permutation._trusted((1,))
    return Permutation._trusted((*range(2, d + 1), 1))


def delta(d):
    """The decreasing permutation d(d-1)...1."""
    if d < 1:
        raise ValueError("delta needs d >= 1")
    return Permutation._trusted(range(d, 0, -1))


def rci(p):
    """Reverse-complement-inverse."""
    p = as_perm(p)
    return p.reverse().complement().inverse()


def perm_from_composition(d):
    """The direct sum of epsilon_{d_1}, epsilon_{d_2}, ..."""
    values = []
    for x in d:
        s = len(values)
        if x == 1:
            values.append(s + 1)
        else:
            values.extend(range(s + 2, s + x + 1))
            values.append(s + 1)
    return Permutation._trusted(values)


class NotInDomainError(ValueError):
    """Raised when inverting the composition bijection on a permutation containing 312 or 321."""


def composition_from_perm(p):
    if not (avoids_312(p) and avoids_321(p)):
        raise NotInDomainError(f"{p} contains 312 or 321")
    # each block of a {312,321}-avoider is some epsilon_d
    return Composition._trusted(len(b) for b in sum_decompose(p)) if p else Composition()


# -- pattern sets and generation ---------------------------------------------

class PatternSet(tuple):
    """Nonempty set of patterns, ordered by length then lexicographically."""

    __slots__ = ()

    def __new__(cls, patterns):
        if isinstance(patterns, str):
            return cls.parse(patterns)
        uniq = {as_perm(p) for p in patterns}
        if not uniq:
            raise ValueError("a pattern set needs at least one pattern")
        if any(len(p) == 0 for p in uniq):
            raise ValueError("the empty permutation is not a valid pattern")
        return super().__new__(cls, sorted(uniq, key=lambda p: (len(p), p)))

    @classmethod
    def parse(cls, text):
        """``"312;321"``.  ``"312,321"`` is read as two patterns when it is not itself a permutation."""
        text = text.strip()
        if ";" in text:
            toks = text.split(";")
        elif "," in text and not _is_comma_perm(text):
            toks = text.split(",")
        else:
            toks = [text]
        return cls(Permutation.parse(t) for t in toks if t.strip())

    def __str__(self):
        return ";".join(p.compact() for p in self)

    def __repr__(self):
        return f"PatternSet({str(self)!r})"


def _is_comma_perm(text):
    try:
        Permutation(tuple(int(t) for t in text.split(",")))
    except ValueError:
        return False
    return True


def all_permutations(n, *, first=None):
    """Every permutation of length n, optionally with a fixed first value."""
    BOUNDS.check("full", n)
    if first is None:
        for t in _itperms(range(1, n + 1)):
            yield Permutation._trusted(t)
        return
    rest = [v for v in range(1, n + 1) if v != first]
    for t in _itperms(rest):
        yield Permutation._trusted((first, *t))


def generate_avoiders(n, forbidden, *, prefix=()):
    """Yield S_n(forbidden) by backtracking; a prefix containing a forbidden pattern is never extended.

    ``prefix`` pins the leading values, which is how the work is partitioned.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    forbidden = PatternSet(forbidden)
    BOUNDS.check("restricted", n)
    pats = tuple(tuple(p) for p in forbidden)
    seq = []
    used = [False] * (n + 1)

    def ok():
        return not any(_completes(seq, p) for p in pats)

    for v in prefix:
        if not 1 <= v <= n or used[v]:
            return
        used[v] = True
        seq.append(v)
        if not ok():
            return

    def extend():
        if len(seq) == n:
            yield Permutation._trusted(seq)
            return
        for v in range(1, n + 1):
            if used[v]:
                continue
            seq.append(v)
            if ok():
                used[v] = True
                yield from extend()
                used[v] = False
            seq.pop()

    yield from extend()
