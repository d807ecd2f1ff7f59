"""Exact integer sequences: k-nacci numbers, rational generating functions and
the named closed forms for the (312,321:sigma) and (312,4321:sigma) tables.

Everything here is integer arithmetic; there is no floating point.
"""

import warnings
from dataclasses import dataclass, field
from threading import Lock

_knacci_cache = {}
_knacci_lock = Lock()


def knacci(k, n):
    """n-th k-nacci number: F_i = 0 for i < k-1, F_{k-1} = 1, then the sum of the previous k.

    Negative indices give 0.

    >>> [knacci(3, i) for i in range(9)]
    [0, 0, 1, 1, 2, 4, 7, 13, 24]
    """
    if k < 1:
        raise ValueError("k-nacci numbers need k >= 1")
    if n < 0:
        return 0
    with _knacci_lock:
        terms = _knacci_cache.setdefault(k, [0] * (k - 1) + [1])
        while len(terms) <= n:
            terms.append(sum(terms[-k:]))
        return terms[n]


def fibonacci(n):
    return knacci(2, n)


def tribonacci(n):
    return knacci(3, n)


def tetranacci(n):
    return knacci(4, n)


def partial_sum_tribonacci(n):
    """T_1 + T_2 + ... + T_{n+1}."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return sum(tribonacci(i) for i in range(1, n + 2))


def gf_coefficients(numerator, denominator, n_max):
    """First ``n_max + 1`` Taylor coefficients of numerator/denominator.

    Polynomials are coefficient lists, constant term first.  The denominator's
    constant term must be +1 or -1 so every coefficient is an integer.

    >>> gf_coefficients([1, -1], [1, -2, 0, -1, 0, 1], 6)
    [1, 1, 2, 5, 11, 23, 50]
    """
    if not denominator or denominator[0] == 0:
        raise ValueError("denominator constant term must be nonzero")
    lead = denominator[0]
    if lead not in (1, -1):
        raise ValueError("denominator constant term must be +1 or -1 for integer coefficients")
    out = []
    for n in range(n_max + 1):
        acc = numerator[n] if n < len(numerator) else 0
        for j in range(1, min(n, len(denominator) - 1) + 1):
            acc -= denominator[j] * out[n - j]
        out.append(acc * lead)
    return out


def linear_recurrence(coefficients, initial, n_max, offset=0):
    """Terms a_offset..a_n_max of a_n = sum_i coefficients[i-1] * a_{n-i}."""
    depth = len(coefficients)
    if depth == 0:
        raise ValueError("need at least one coefficient")
    if len(initial) < depth:
        raise ValueError("initial terms must cover the recurrence depth")
    terms = list(initial)
    while len(terms) < n_max - offset + 1:
        terms.append(sum(c * terms[-i] for i, c in enumerate(coefficients, 1)))
    return terms[: max(0, n_max - offset + 1)]


@dataclass(frozen=True)
class SequenceSpec:
    """A named exact sequence given by a recurrence, a closed form or a rational GF.

    ``terms(n_max)`` returns a dict from index to value for every defined index
    up to ``n_max``.
    """

    name: str
    kind: str
    coefficients: tuple = ()
    initial: tuple = ()
    offset: int = 0
    numerator: tuple = ()
    denominator: tuple = ()
    formula: object = None
    oeis_id: str = None

    def __post_init__(self):
        if self.kind == "recurrence":
            if not self.coefficients or len(self.initial) < len(self.coefficients):
                raise ValueError("recurrence needs coefficients and enough initial terms")
        elif self.kind == "gf":
            if not self.denominator or self.denominator[0] not in (1, -1):
                raise ValueError("GF denominator constant term must be +1 or -1")
        elif self.kind == "closed":
            if self.formula is None:
                raise ValueError("closed form needs a formula")
        else:
            raise ValueError(f"unknown sequence kind {self.kind!r}")

    @classmethod
    def recurrence(cls, name, coefficients, initial, offset=0, oeis_id=None):
        return cls(name, "recurrence", coefficients=tuple(coefficients),
                   initial=tuple(initial), offset=offset, oeis_id=oeis_id)

    @classmethod
    def rational(cls, name, numerator, denominator, oeis_id=None):
        return cls(name, "gf", numerator=tuple(numerator),
                   denominator=tuple(denominator), oeis_id=oeis_id)

    @classmethod
    def closed(cls, name, formula, offset=0, oeis_id=None):
        return cls(name, "closed", formula=formula, offset=offset, oeis_id=oeis_id)

    def terms(self, n_max):
        if self.kind == "recurrence":
            vals = linear_recurrence(self.coefficients, self.initial, n_max, self.offset)
            return {self.offset + i: v for i, v in enumerate(vals)}
        if self.kind == "gf":
            return dict(enumerate(gf_coefficients(self.numerator, self.denominator, n_max)))
        return {n: self.formula(n) for n in range(self.offset, n_max + 1)}

    def __getitem__(self, n):
        return self.terms(n)[n]


# -- table formulas ----------------------------------------------------------

class FormulaRangeWarning(UserWarning):
    """A closed form was evaluated outside the range where it is claimed to hold."""


@dataclass(frozen=True)
class Formula:
    """A table row's closed form together with its validity range and OEIS alignment.

    Our value at ``n`` equals the OEIS entry at index ``n + oeis_shift`` plus
    ``oeis_adjust``.
    """

    ident: str
    label: str
    func: object = field(repr=False)
    start: int
    oeis_id: str = None
    oeis_shift: int = 0
    oeis_adjust: int = 0


def _exact_div(num, den):
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"{num} is not divisible by {den}")
    return q


def table1_2143(n):
    """1 + (n F_{n+2} + (n-3) F_n) / 5, with the division checked exact."""
    return 1 + _exact_div(n * fibonacci(n + 2) + (n - 3) * fibonacci(n), 5)


A_NUMERATOR, A_DENOMINATOR = (1,), (1, -1, -1, -2, -3, -2)
B_NUMERATOR, B_DENOMINATOR = (1, -1), (1, -2, 0, -1, 0, 1)


def _gf_term(num, den):
    cache = []

    def term(n):
        if n >= len(cache):
            cache[:] = gf_coefficients(num, den, max(n, 2 * len(cache), 16))
        return cache[n]

    return term


_T1 = [
    ("123", "0", lambda n: 0, 5, None, 0, 0),
    ("132", "F_{n+2}-1", lambda n: fibonacci(n + 2) - 1, 2, "A000071", 2, 0),
    ("213", "F_{n+2}-1", lambda n: fibonacci(n + 2) - 1, 2, "A000071", 2, 0),
    ("231", "T_{n+2}", lambda n: tribonacci(n + 2), 2, "A000073", 2, 0),
    ("312", "F_{n+1}", lambda n: fibonacci(n + 1), 2, "A000045", 1, 0),
    ("1234", "0", lambda n: 0, 6, None, 0, 0),
    ("1243", "2F_{n+1}-2", lambda n: 2 * fibonacci(n + 1) - 2, 2, "A019274", 1, 0),
    ("2134", "2F_{n+1}-2", lambda n: 2 * fibonacci(n + 1) - 2, 2, "A019274", 1, 0),
    ("1324", "F_{n+3}-n-1", lambda n: fibonacci(n + 3) - n - 1, 2, "A000126", 0, 0),
    ("1342", "sum_{i=1}^{n+1} T_i", partial_sum_tribonacci, 2, "A008937", 1, 0),
    ("2314", "sum_{i=1}^{n+1} T_i", partial_sum_tribonacci, 2, "A008937", 1, 0),
    ("1423", "F_{n+2}-1", lambda n: fibonacci(n + 2) - 1, 2, "A000071", 2, 0),
    ("3124", "F_{n+2}-1", lambda n: fibonacci(n + 2) - 1, 2, "A000071", 2, 0),
    ("2143", "1+(nF_{n+2}+(n-3)F_n)/5", table1_2143, 2, "A023610", -2, 1),
    ("2341", "Q_{n+3}", lambda n: tetranacci(n + 3), 2, "A000078", 3, 0),
    ("3412", "T_{n+2}", lambda n: tribonacci(n + 2), 2, "A000073", 2, 0),
]

_T2 = [
    ("123", "0", lambda n: 0, 7, None, 0, 0),
    ("132", "T_{n+2}+T_{n+1}-1", lambda n: tribonacci(n + 2) + tribonacci(n + 1) - 1, 1, "A001590", 3, -1),
    ("213", "T_{n+2}+T_{n+1}-1", lambda n: tribonacci(n + 2) + tribonacci(n + 1) - 1, 1, "A001590", 3, -1),
    ("231", "[x^n] 1/(1-x-x^2-2x^3-3x^4-2x^5)", _gf_term(A_NUMERATOR, A_DENOMINATOR), 0, "A381858", 0, 0),
    ("312", "Q_{n+3}", lambda n: tetranacci(n + 3), 1, "A000078", 3, 0),
    ("321", "[x^n] (1-x)/(1-2x-x^3+x^5)", _gf_term(B_NUMERATOR, B_DENOMINATOR), 0, "A381859", 0, 0),
]

FORMULAS = {}
for _table, _rows in (("Table1", _T1), ("Table2", _T2)):
    for _sigma, _label, _func, _start, _oeis, _shift, _adj in _rows:
        _id = f"{_table}-{_sigma}"
        FORMULAS[_id] = Formula(_id, _label, _func, _start, _oeis, _shift, _adj)

TABLE1_SIGMAS = tuple(row[0] for row in _T1)
TABLE2_SIGMAS = tuple(row[0] for row in _T2)


def closed_form(ident, n):
    """Evaluate a registered table formula.

    Outside its validity range the value is still returned, with a
    :class:`FormulaRangeWarning`.
    """
    try:
        f = FORMULAS[ident]
    except KeyError:
        raise KeyError(f"unknown formula id {ident!r}; known: {', '.join(FORMULAS)}") from None
    if n < f.start:
        warnings.warn(f"{ident} is only claimed for n >= {f.start} (got n={n})",
                      FormulaRangeWarning, stacklevel=2)
    return f.func(n)
