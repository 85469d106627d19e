"""Digit-position machinery.

Binary start/end/gap profiles for naturals, primorial-base expansions with
signed digit positions for rationals, and the derived exponent functions
``b``/``c``/``epsilon``/``r`` used by the colourings.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    PrimeTable,
    Rational,
    a_exponent,
    check_exponent,
    default_table,
    floor_frac,
    is_power_of_two,
    minimal_base_index,
    pow2,
)
from .errors import DomainError, InternalInvariantError, UnsupportedPrimeError


@dataclass(frozen=True)
class BinaryProfile:
    """Positions of the significant binary digits of a natural number.

    ``end``/``start`` are the rightmost/leftmost 1 positions, ``gap`` the
    distance between the two most significant 1s (None for powers of two),
    ``next_digit`` the bit immediately left of the end position.
    """

    end: int
    start: int
    gap: int | None
    next_digit: int
    power_of_two: bool


def binary_profile(m: int) -> BinaryProfile:
    if m < 1:
        raise DomainError(f"need a natural number, got {m}")
    end = (m & -m).bit_length() - 1
    start = m.bit_length() - 1
    ptwo = m & (m - 1) == 0
    rest = m ^ (1 << start)
    gap = None if ptwo else start - (rest.bit_length() - 1)
    next_digit = (m >> (end + 1)) & 1
    return BinaryProfile(end=end, start=start, gap=gap, next_digit=next_digit, power_of_two=ptwo)


def end2(m: int) -> int:
    """Rightmost significant binary position (2-adic valuation)."""
    if m < 1:
        raise DomainError(f"need a natural number, got {m}")
    return (m & -m).bit_length() - 1


def start2(m: int) -> int:
    """Leftmost significant binary position."""
    if m < 1:
        raise DomainError(f"need a natural number, got {m}")
    return m.bit_length() - 1


def right_left_disjoint(a: int, b: int) -> int:
    """0 if the support of b sits strictly left of the support of a, else 1."""
    return 0 if end2(b) > start2(a) else 1


def b_exponent(x: Rational) -> int:
    """The unique b with 2^a + 2^b <= x < 2^a + 2^(b+1), a = a_exponent(x)."""
    if is_power_of_two(x):
        raise DomainError(f"b-exponent undefined on powers of two: {x}")
    a = a_exponent(x)
    b = a_exponent(x - pow2(a))
    if not pow2(a) + pow2(b) <= x < pow2(a) + pow2(b + 1):
        raise InternalInvariantError(f"b-exponent self-check failed for {x}")
    return b


def c_exponent(x: Rational) -> int:
    """The unique c < a with 2^(a+1) - 2^(c+1) <= x < 2^(a+1) - 2^c."""
    if is_power_of_two(x):
        raise DomainError(f"c-exponent undefined on powers of two: {x}")
    a = a_exponent(x)
    w = pow2(a + 1) - x
    j = a_exponent(w)
    c = j - 1 if w == pow2(j) else j
    if not (c < a and pow2(a + 1) - pow2(c + 1) <= x < pow2(a + 1) - pow2(c)):
        raise InternalInvariantError(f"c-exponent self-check failed for {x}")
    return check_exponent(c)


def epsilon_exponent(f: Rational) -> int:
    """The unique e with 1 - 2^e <= f < 1 - 2^(e-1), for 0 < f < 1."""
    if not 0 < f < 1:
        raise DomainError(f"epsilon-exponent needs 0 < f < 1, got {f}")
    w = 1 - f
    j = a_exponent(w)
    e = j if w == pow2(j) else j + 1
    if not 1 - pow2(e) <= f < 1 - pow2(e - 1):
        raise InternalInvariantError(f"epsilon-exponent self-check failed for {f}")
    return check_exponent(e)


def r_ratio(x: Rational) -> Rational:
    """(x - 2^a) / 2^a, strictly inside (0, 1)."""
    if is_power_of_two(x):
        raise DomainError(f"r-ratio undefined on powers of two: {x}")
    a = a_exponent(x)
    return (x - pow2(a)) / pow2(a)


@dataclass(frozen=True)
class DigitExpansion:
    """Sparse base-P_n expansion: only nonzero digits, keyed by signed position."""

    base_index: int
    digits: dict[int, int]

    def leading(self) -> int:
        return max(self.digits)

    def trailing(self) -> int:
        return min(self.digits)

    def value(self, table: PrimeTable | None = None) -> Rational:
        base = (table or default_table()).primorial(self.base_index)
        total = Fraction(0)
        for pos, digit in self.digits.items():
            total += digit * (Fraction(base) ** pos)
        return total

    def positional(self, table: PrimeTable | None = None) -> str:
        """Positional string with an explicit radix point.

        Digits are concatenated for bases up to 10 and comma-separated above.
        """
        base = (table or default_table()).primorial(self.base_index)
        hi = max(self.leading(), 0)
        whole = [str(self.digits.get(p, 0)) for p in range(hi, -1, -1)]
        frac = []
        if self.trailing() < 0:
            frac = [str(self.digits.get(p, 0)) for p in range(-1, self.trailing() - 1, -1)]
        sep = "" if base <= 10 else ","
        return sep.join(whole) + "." + sep.join(frac)


def expand(x: Rational, n: int, table: PrimeTable | None = None) -> DigitExpansion:
    """Greedy exact base-P_n expansion of a positive rational."""
    table = table or default_table()
    base = table.primorial(n)
    if minimal_base_index(x, table) > n:
        raise UnsupportedPrimeError(f"{x} has no terminating base-P_{n} expansion")
    whole, frac = floor_frac(x)
    digits: dict[int, int] = {}
    pos = 0
    while whole:
        whole, d = divmod(whole, base)
        if d:
            digits[check_exponent(pos)] = d
        pos += 1
    pos = -1
    while frac:
        frac *= base
        d = int(frac)
        frac -= d
        if d:
            digits[check_exponent(pos)] = d
        pos -= 1
    return DigitExpansion(base_index=n, digits=digits)


def s_frac(x: Rational, n: int, table: PrimeTable | None = None) -> int:
    """Leading nonzero digit position of x in base P_n, for 0 < x < 1."""
    _check_frac_domain(x, n, table)
    base = (table or default_table()).primorial(n)
    level = Fraction(1, base)
    s = -1
    while x < level:
        level /= base
        s -= 1
        check_exponent(s)
    return s


def e_frac(x: Rational, n: int, table: PrimeTable | None = None) -> int:
    """Trailing nonzero digit position of x in base P_n, for 0 < x < 1.

    Computed as minus the smallest u with x·P_n^u integral (the base is
    squarefree, so u is the largest prime-power exponent in the denominator).
    """
    _check_frac_domain(x, n, table)
    d = x.denominator
    u = 0
    for p in (table or default_table()).primes[:n]:
        v = 0
        while d % p == 0:
            d //= p
            v += 1
        u = max(u, v)
    return -u


def _check_frac_domain(x: Rational, n: int, table: PrimeTable | None) -> None:
    if not 0 < x < 1:
        raise DomainError(f"need 0 < x < 1, got {x}")
    if minimal_base_index(x, table or default_table()) > n:
        raise UnsupportedPrimeError(f"{x} has no terminating base-P_{n} expansion")


def e_int(m: int, n: int, table: PrimeTable | None = None) -> int:
    """Largest k with P_n^k dividing the natural number m."""
    if m < 1:
        raise DomainError(f"need a natural number, got {m}")
    base = (table or default_table()).primorial(n)
    k = 0
    while m % base == 0:
        m //= base
        k += 1
    return k
