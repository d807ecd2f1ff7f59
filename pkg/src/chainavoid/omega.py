"""The Omega class (patterns that can occur in squares of {312,321}-avoiders)
and the composition sets C(sigma) that encode them.

A permutation is in Omega when each sum-indecomposable block is ``1``,
``23...m1`` (m >= 2) or ``34...m12`` (m >= 3).
"""

import enum
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .compositions import Composition, CompositionSet, generate_compositions
from .errors import BOUNDS, NotInOmegaError
from .perm import Permutation, as_perm, direct_sum, sum_decompose


class BlockKind(enum.Enum):
    SINGLETON = "1"
    CYCLE_UP = "23...m1"
    SHIFT_TWO = "34...m12"


@dataclass(frozen=True)
class OmegaBlock:
    kind: BlockKind
    size: int

    def __post_init__(self):
        minimum = {BlockKind.SINGLETON: 1, BlockKind.CYCLE_UP: 2, BlockKind.SHIFT_TWO: 3}[self.kind]
        if self.size < minimum or (self.kind is BlockKind.SINGLETON and self.size != 1):
            raise ValueError(f"invalid {self.kind.name} block of size {self.size}")

    def permutation(self):
        m = self.size
        if self.kind is BlockKind.SINGLETON:
            return Permutation._trusted((1,))
        if self.kind is BlockKind.CYCLE_UP:
            return Permutation._trusted((*range(2, m + 1), 1))
        return Permutation._trusted((*range(3, m + 1), 1, 2))

    def base_part(self):
        """Shortest epsilon-block whose square holds this block."""
        return self.size + 1 if self.kind is BlockKind.CYCLE_UP else self.size

    def __str__(self):
        return f"{self.kind.name}({self.size})"


@dataclass(frozen=True)
class OmegaDecomposition:
    blocks: tuple

    @property
    def total(self):
        return sum(b.size for b in self.blocks)

    def permutation(self):
        return direct_sum(b.permutation() for b in self.blocks)

    def base_composition(self):
        return Composition._trusted(b.base_part() for b in self.blocks)


def classify_block(block):
    """The :class:`OmegaBlock` for an indecomposable block, or None."""
    m = len(block)
    if m == 1:
        return OmegaBlock(BlockKind.SINGLETON, 1)
    if tuple(block) == (*range(2, m + 1), 1):
        return OmegaBlock(BlockKind.CYCLE_UP, m)
    if m >= 3 and tuple(block) == (*range(3, m + 1), 1, 2):
        return OmegaBlock(BlockKind.SHIFT_TWO, m)
    return None


def omega_decompose(sigma, strict=False):
    """Omega-form of ``sigma``; None when some block is outside the families.

    With ``strict`` a :class:`NotInOmegaError` naming the offending block is
    raised instead of returning None.
    """
    sigma = as_perm(sigma)
    blocks = []
    for block in sum_decompose(sigma):
        kind = classify_block(block)
        if kind is None:
            if strict:
                raise NotInOmegaError(sigma.compact(), block.compact())
            return None
        blocks.append(kind)
    return OmegaDecomposition(tuple(blocks))


def in_omega(sigma):
    return omega_decompose(sigma) is not None


def _block_choices(size):
    if size == 1:
        return [OmegaBlock(BlockKind.SINGLETON, 1)]
    if size == 2:
        return [OmegaBlock(BlockKind.CYCLE_UP, 2)]
    return [OmegaBlock(BlockKind.CYCLE_UP, size), OmegaBlock(BlockKind.SHIFT_TWO, size)]


def enumerate_omega(n):
    """Omega_n, built from block-size compositions of n and a kind for each block."""
    if n < 1:
        raise ValueError("Omega_n is defined for n >= 1")
    BOUNDS.check("compositions", n)
    out = set()
    for sizes in generate_compositions(n):
        for blocks in product(*(_block_choices(s) for s in sizes)):
            out.add(direct_sum(b.permutation() for b in blocks))
    return out


def omega_count(n):
    """|Omega_n| from the first-block recurrence with |Omega_0| = 1."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    counts = [1]
    for m in range(1, n + 1):
        counts.append(counts[m - 1]
                      + sum(counts[m - i] for i in range(2, m + 1))
                      + sum(counts[m - i] for i in range(3, m + 1)))
    return counts[n]


@lru_cache(maxsize=None)
def _c_of_identity(k):
    return CompositionSet(
        Composition._trusted(x + 2 if x >= 3 else x for x in d)
        for d in generate_compositions(k))


def c_of_identity(k):
    """C(12...k): every composition of k with 2 added to each part >= 3."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return _c_of_identity(k)


def _split_runs(base):
    """Cut the base composition into alternating non-1 parts and maximal runs of 1s."""
    segments = []
    for x in base:
        if x == 1:
            if segments and segments[-1][0] == "run":
                segments[-1] = ("run", segments[-1][1] + 1)
            else:
                segments.append(("run", 1))
        else:
            segments.append(("part", x))
    return segments


def c_of_sigma(sigma):
    """C(sigma) for sigma in Omega.

    The base composition takes 1 per singleton, m per 34...m12 block and m+1 per
    23...m1 block; every maximal run of r ones is then replaced, independently,
    by each member of C(12...r).
    """
    decomposition = omega_decompose(sigma, strict=True)
    options = []
    for kind, value in _split_runs(decomposition.base_composition()):
        if kind == "part":
            options.append([(value,)])
        else:
            options.append([tuple(c) for c in c_of_identity(value)])
    return CompositionSet(
        Composition._trusted(sum(choice, ())) for choice in product(*options))
