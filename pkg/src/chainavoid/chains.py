"""Chain avoidance: pi avoids a chain (S_1 : S_2 : ...) when pi^i avoids every
pattern of S_i.  This module holds the predicates, the brute-force counters
used as oracles, the fast paths for (312,321:sigma) and (312,4321:sigma), the
ends-in-1 convolution machinery and the two conjecture checkers.
"""

import atexit
import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations

from .compcount import CountResult, count_avoiders
from .compositions import CompositionSet, generate_compositions
from .errors import BOUNDS
from .omega import c_of_sigma, omega_decompose
from .perm import (
    PatternSet,
    Permutation,
    as_perm,
    avoidance_checker,
    generate_avoiders,
    perm_from_composition,
    power,
)
from .sequences import (
    A_DENOMINATOR,
    A_NUMERATOR,
    B_DENOMINATOR,
    B_NUMERATOR,
    gf_coefficients,
    tetranacci,
    tribonacci,
)

P312_321 = PatternSet("312;321")
P312_4321 = PatternSet("312;4321")
P312_54321 = PatternSet("312;54321")


@dataclass(frozen=True)
class ChainSpec:
    """Pattern sets per power: ``levels[i]`` constrains pi^(i+1); ``None`` means unconstrained."""

    levels: tuple

    def __post_init__(self):
        levels = tuple(None if lvl is None or (not isinstance(lvl, PatternSet) and not lvl)
                       else lvl if isinstance(lvl, PatternSet) else PatternSet(lvl)
                       for lvl in self.levels)
        if not levels:
            raise ValueError("a chain needs at least one level")
        if all(lvl is None for lvl in levels):
            raise ValueError("a chain needs at least one constrained level")
        object.__setattr__(self, "levels", levels)

    @classmethod
    def of(cls, *levels):
        return cls(tuple(levels))

    @classmethod
    def parse(cls, text):
        """``"312,321:231"`` or ``"(312,321:-:2143)"``; ``-``, ``∅`` or nothing marks a free level."""
        text = text.strip()
        if text.startswith("(") and text.endswith(")") and ":" in text:
            text = text[1:-1]
        levels = []
        for part in text.split(":"):
            part = part.strip()
            levels.append(None if part in ("", "-", "∅") else PatternSet.parse(part))
        return cls(tuple(levels))

    @property
    def level1(self):
        return self.levels[0]

    def __str__(self):
        return "(" + ":".join(
            "∅" if lvl is None else ",".join(p.compact() for p in lvl)
            for lvl in self.levels) + ")"


def avoids_chain(p, spec):
    """True when p^i avoids every pattern of level i, for every constrained level."""
    return _compiled(spec)(tuple(p))


def _compile(spec, skip_level1=False):
    levels = [(i, avoidance_checker(lvl)) for i, lvl in enumerate(spec.levels, 1)
              if lvl is not None and not (skip_level1 and i == 1)]

    def check(p):
        q = p
        k = 1
        for i, ok in levels:
            while k < i:
                q = tuple([p[v - 1] for v in q])
                k += 1
            if not ok(q):
                return False
        return True

    return check


_compiled_cache = {}


def _compiled(spec, skip_level1=False):
    key = (spec, skip_level1)
    fn = _compiled_cache.get(key)
    if fn is None:
        fn = _compiled_cache[key] = _compile(spec, skip_level1)
    return fn


# -- brute force ---------------------------------------------------------------

_executors = {}


def _executor(workers):
    ex = _executors.get(workers)
    if ex is None:
        try:
            ctx = multiprocessing.get_context("fork")
        except ValueError:
            ctx = None
        ex = _executors[workers] = ProcessPoolExecutor(max_workers=workers, mp_context=ctx)
    return ex


@atexit.register
def _shutdown_executors():
    for ex in _executors.values():
        ex.shutdown(wait=False, cancel_futures=True)
    _executors.clear()


def _parallel_sum(func, tasks, workers):
    """Sum ``func`` over ``tasks``; the total does not depend on ``workers``."""
    tasks = list(tasks)
    if workers is None or workers <= 1 or len(tasks) <= 1:
        return sum(map(func, tasks))
    return sum(_executor(workers).map(func, tasks))


def _candidates(mode, n, spec, first):
    if mode == "comp":
        return (perm_from_composition(d) for d in generate_compositions(n, first=first))
    if mode == "restricted":
        return generate_avoiders(n, spec.level1, prefix=(first,))
    BOUNDS.check("full", n)
    rest = [v for v in range(1, n + 1) if v != first]
    return ((first, *t) for t in permutations(rest))


def _count_task(args):
    mode, n, spec, first, last_one = args
    # comp and restricted candidates already satisfy level 1
    check = _compiled(spec, skip_level1=mode != "full")
    if last_one:
        return sum(1 for p in _candidates(mode, n, spec, first) if p[-1] == 1 and check(p))
    return sum(1 for p in _candidates(mode, n, spec, first) if check(p))


def _mode_for(spec, restrict_to_level1):
    if not restrict_to_level1 or spec.level1 is None:
        return "full"
    if spec.level1 == P312_321:
        return "comp"
    return "restricted"


def _brute_count(n, spec, mode, workers, last_one=False):
    BOUNDS.check({"full": "full", "comp": "compositions", "restricted": "restricted"}[mode], n)
    if n == 0:
        return 0 if last_one else 1
    tasks = [(mode, n, spec, first, last_one) for first in range(1, n + 1)]
    return _parallel_sum(_count_task, tasks, workers)


def count_chain_bruteforce(n, spec, restrict_to_level1=False, workers=1):
    """Count chain avoiders of length n by listing candidates.

    Without ``restrict_to_level1`` every permutation of S_n is tested.  With it,
    candidates come from backtracking on the level-1 patterns, or from all
    compositions of n when level 1 is exactly {312, 321}.  Work is split by
    first value (or first part) across ``workers`` processes.
    """
    if isinstance(spec, str):
        spec = ChainSpec.parse(spec)
    mode = _mode_for(spec, restrict_to_level1)
    method = {"full": "perm-brute-full", "restricted": "perm-brute", "comp": "comp-brute"}[mode]
    return CountResult(n, _brute_count(n, spec, mode, workers), method)


def _two_power(n):
    return 1 if n == 0 else 2 ** (n - 1)


def count_chain_312_321(n, sigma):
    """a_n(312,321:sigma): 2^(n-1) when sigma is outside Omega, else b_n(C(sigma))."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    sigma = as_perm(sigma)
    if omega_decompose(sigma) is None:
        return CountResult(n, _two_power(n), "recurrence")
    return CountResult(n, count_avoiders(n, c_of_sigma(sigma)).count, "recurrence")


def c_of_pattern_set(sigmas):
    """Union of C(sigma) over the Omega members; None when no member is in Omega."""
    members = [as_perm(s) for s in sigmas]
    comps = [c for s in members if omega_decompose(s) is not None for c in c_of_sigma(s)]
    return CompositionSet(comps) if comps else None


def count_chain_312_321_set(n, sigmas):
    """a_n(312,321:S) for a set S of patterns."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    comps = c_of_pattern_set(PatternSet(sigmas))
    if comps is None:
        return CountResult(n, _two_power(n), "recurrence")
    return CountResult(n, count_avoiders(n, comps).count, "recurrence")


# -- ends in 1 -----------------------------------------------------------------

@dataclass
class EndsInOneTable:
    """b_k: number of chain avoiders of length k whose last value is 1."""

    counts: dict = field(default_factory=dict)

    def __post_init__(self):
        if any(v < 0 for v in self.counts.values()):
            raise ValueError("counts are nonnegative")
        if self.counts.get(1, 0) not in (0, 1):
            raise ValueError("b_1 is 0 or 1")

    def __getitem__(self, k):
        return self.counts[k]


def ends_in_one_bruteforce(n, spec, workers=1):
    """Number of chain avoiders of length n ending in 1."""
    if isinstance(spec, str):
        spec = ChainSpec.parse(spec)
    mode = _mode_for(spec, True)
    return _brute_count(n, spec, mode, workers, last_one=True)


def ends_in_one_members(n, spec):
    """The chain avoiders of length n ending in 1, in lexicographic order."""
    if isinstance(spec, str):
        spec = ChainSpec.parse(spec)
    mode = _mode_for(spec, True)
    BOUNDS.check({"full": "full", "comp": "compositions", "restricted": "restricted"}[mode], n)
    out = []
    for first in range(1, n + 1):
        out.extend(Permutation._trusted(p) for p in _candidates(mode, n, spec, first)
                   if p[-1] == 1 and avoids_chain(p, spec))
    return sorted(out)


def ends_in_one_table(n_max, spec, workers=1):
    return EndsInOneTable({k: ends_in_one_bruteforce(k, spec, workers) for k in range(1, n_max + 1)})


def convolve_ends_in_one(b, tail_counts=None, n_max=None):
    """a_n = sum_{i=1..n} b_i * tail_{n-i}, with tail_0 = 1.

    Without ``tail_counts`` the output is its own tail (a_0 = 1), which is the
    self-convolution used when a pattern occurrence in pi^2 cannot straddle the
    first block.  Returns [a_0, ..., a_{n_max}].
    """
    counts = b.counts if isinstance(b, EndsInOneTable) else dict(b)
    if n_max is None:
        n_max = max(counts, default=0)
    missing = [k for k in range(1, n_max + 1) if k not in counts]
    if missing:
        raise ValueError(f"ends-in-1 counts missing for k={missing}")
    if tail_counts is not None:
        tail = list(tail_counts)
        if len(tail) < n_max:
            raise ValueError(f"tail counts needed for 0..{n_max - 1}, got {len(tail)} entries")
        if tail and tail[0] != 1:
            raise ValueError("tail_0 must be 1")
    a = [1]
    for n in range(1, n_max + 1):
        src = a if tail_counts is None else tail
        a.append(sum(counts[i] * src[n - i] for i in range(1, n + 1)))
    return a


def involution_tail_count(m):
    """Involutions in S_m(312,4321): direct sums of blocks 1, 21, 321, counted by T_{m+2}."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return tribonacci(m + 2)


def involutions_bruteforce(m):
    ident = tuple(range(1, m + 1))
    return sum(1 for p in generate_avoiders(m, P312_4321) if power(p, 2) == ident)


# -- (312,4321:sigma) ----------------------------------------------------------

# a_n(312,4321:123) for n = 0..6, produced by count_chain_bruteforce over
# S_n(312,4321) and checked against it in the test suite; zero from n = 7 on.
CHAIN_4321_123_PREFIX = (1, 1, 2, 1, 4, 7, 7)


def count_chain_312_4321(n, sigma):
    """a_n(312,4321:sigma) for sigma in S_3 from the per-pattern closed forms."""
    sigma = as_perm(sigma)
    if len(sigma) != 3:
        raise ValueError(f"sigma must have length 3, got {sigma.compact()}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    key = sigma.compact()
    if key == "123":
        value = CHAIN_4321_123_PREFIX[n] if n < len(CHAIN_4321_123_PREFIX) else 0
    elif key in ("132", "213"):
        value = 1 if n == 0 else tribonacci(n + 2) + tribonacci(n + 1) - 1
    elif key == "231":
        value = gf_coefficients(A_NUMERATOR, A_DENOMINATOR, n)[n]
    elif key == "312":
        value = tetranacci(n + 3)
    elif key == "321":
        value = gf_coefficients(B_NUMERATOR, B_DENOMINATOR, n)[n]
    else:
        raise ValueError(f"no formula for sigma={key}")
    return CountResult(n, value, "recurrence")


# -- conjectures -----------------------------------------------------------------

CUBE_2143 = ChainSpec((P312_321, None, PatternSet("2143")))


@dataclass(frozen=True)
class ConjectureRow:
    n: int
    left: int
    right: int
    match: bool
    left_full: int = None


def _at_most_one_odd_part(d):
    return sum(1 for x in d if x not in (1, 3)) <= 1


def conjecture_cube_2143(n, full_check_max=8, workers=1):
    """Compare a_n(312,321:∅:2143) with compositions of n whose parts are 1 or 3 except at most one.

    For n <= ``full_check_max`` the left side is recomputed over all of S_n and
    stored in ``left_full``.  Nothing is asserted.
    """
    BOUNDS.check("compositions", n)
    left = count_chain_bruteforce(n, CUBE_2143, restrict_to_level1=True, workers=workers).count
    right = sum(1 for d in generate_compositions(n) if _at_most_one_odd_part(d))
    full = None
    if n <= full_check_max:
        full = count_chain_bruteforce(n, CUBE_2143, restrict_to_level1=False, workers=workers).count
    return ConjectureRow(n, left, right, left == right, full)


CHAIN_54321_132 = ChainSpec((P312_54321, PatternSet("132")))


@dataclass(frozen=True)
class RecurrenceRow:
    n: int
    value: int
    predicted: int = None
    match: bool = None


def conjecture_54321_132(n_max, workers=1):
    """a_n(312,54321:132) by brute force, with a_{n-1}+a_{n-2}+a_{n-3}+a_{n-4}+n-1 checked for n >= 6."""
    BOUNDS.check("restricted", n_max)
    values = [count_chain_bruteforce(n, CHAIN_54321_132, restrict_to_level1=True,
                                     workers=workers).count
              for n in range(n_max + 1)]
    rows = []
    for n in range(1, n_max + 1):
        if n >= 6:
            pred = sum(values[n - i] for i in range(1, 5)) + n - 1
            rows.append(RecurrenceRow(n, values[n], pred, pred == values[n]))
        else:
            rows.append(RecurrenceRow(n, values[n]))
    return rows


# -- fast path registry ----------------------------------------------------------

def fast_path(spec):
    """A callable n -> CountResult for chains with a closed form, else None."""
    if len(spec.levels) != 2 or spec.levels[1] is None:
        return None
    level1, level2 = spec.levels
    if level1 == P312_321:
        return lambda n: count_chain_312_321_set(n, level2)
    if level1 == P312_4321 and len(level2) == 1 and len(level2[0]) == 3:
        sigma = level2[0]
        return lambda n: count_chain_312_4321(n, sigma)
    return None

