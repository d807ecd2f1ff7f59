"""Exception types and brute-force bounds shared across the package."""

from dataclasses import dataclass


class ChainAvoidError(Exception):
    """Base class for errors raised by this package."""


class ParseError(ChainAvoidError, ValueError):
    """Text could not be parsed as a permutation, composition or chain."""


class BoundExceededError(ChainAvoidError):
    """A brute-force enumeration was asked to go past its configured size bound."""

    def __init__(self, what, n, bound):
        super().__init__(f"{what}: n={n} exceeds the configured bound {bound}")
        self.what = what
        self.n = n
        self.bound = bound


class NotInOmegaError(ChainAvoidError, ValueError):
    """A pattern has a sum-indecomposable block outside the Omega families."""

    def __init__(self, sigma, block):
        super().__init__(f"{sigma} is not in Omega: block {block} is not 1, 23...m1 or 34...m12")
        self.sigma = sigma
        self.block = block


class NetworkUnavailableError(ChainAvoidError):
    """A b-file could not be obtained from cache, fixtures or the network."""


@dataclass
class Bounds:
    """Largest n accepted by each brute-force tier.

    ``full`` caps iteration over all of S_n, ``restricted`` caps prefix-pruned
    backtracking over a pattern class, ``compositions`` caps iteration over all
    compositions of n.
    """

    full: int = 10
    restricted: int = 16
    compositions: int = 26

    def check(self, tier, n):
        bound = getattr(self, tier)
        if n > bound:
            raise BoundExceededError(tier, n, bound)


BOUNDS = Bounds()
