"""The eight colourings and their structured, canonically serializable values.

Every colouring returns a ``ColourValue``; ``colour_key`` maps values to the
canonical strings used as equality tokens everywhere else (verification,
search pruning, CLI output), and ``parse_colour_key`` inverts them.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Union

from .core import (
    Ordering,
    PrimeTable,
    Rational,
    a_exponent,
    check_exponent,
    cmp_c5_boundary,
    cmp_pow2_half,
    in_C3,
    in_C4,
    is_power_of_two,
    floor_frac,
    minimal_base_index,
)
from .digits import (
    b_exponent,
    binary_profile,
    c_exponent,
    e_frac,
    e_int,
    epsilon_exponent,
    r_ratio,
    right_left_disjoint,
    s_frac,
)
from .errors import DomainError


class ColourValue:
    """Base class; concrete variants are frozen dataclasses below."""

    def key(self) -> str:
        raise NotImplementedError

    def to_obj(self):
        raise NotImplementedError


@dataclass(frozen=True)
class Bit(ColourValue):
    value: int

    def key(self) -> str:
        return f"bit:{self.value}"

    def to_obj(self):
        return {"kind": "bit", "value": self.value}


@dataclass(frozen=True)
class PhiZero(ColourValue):
    """Degenerate pair colour (first component zero, second zero, or not increasing)."""

    def key(self) -> str:
        return "phi:z"

    def to_obj(self):
        return {"kind": "phi-zero"}


@dataclass(frozen=True)
class PhiTuple(ColourValue):
    c1: int
    c2: int
    c3: int
    c4: int
    c5: int

    def key(self) -> str:
        return f"phi:t:{self.c1},{self.c2},{self.c3},{self.c4},{self.c5}"

    def _compact(self) -> str:
        return f"{self.c1}{self.c2}{self.c3}{self.c4}{self.c5}"

    def to_obj(self):
        return {"kind": "phi-tuple", "components": [self.c1, self.c2, self.c3, self.c4, self.c5]}


PhiValue = Union[PhiZero, PhiTuple]

PHI_ZERO = PhiZero()


@dataclass(frozen=True)
class ThetaTuple(ColourValue):
    power: int
    end_parity: int
    gap_parity: int
    phi_inner: PhiValue
    phi_inner_shift: PhiValue
    phi_of_end: int
    tail: int

    def key(self) -> str:
        inner = "z" if isinstance(self.phi_inner, PhiZero) else self.phi_inner._compact()
        shift = "z" if isinstance(self.phi_inner_shift, PhiZero) else self.phi_inner_shift._compact()
        return (
            f"theta:{self.power},{self.end_parity},{self.gap_parity},"
            f"{inner},{shift},{self.phi_of_end},{self.tail}"
        )

    def to_obj(self):
        return {
            "kind": "theta",
            "power": self.power,
            "end_parity": self.end_parity,
            "gap_parity": self.gap_parity,
            "phi_inner": self.phi_inner.to_obj(),
            "phi_inner_shift": self.phi_inner_shift.to_obj(),
            "phi_of_end": self.phi_of_end,
            "tail": self.tail,
        }


class NuClass(Enum):
    C1 = "C1"
    C2 = "C2"
    C3mC4 = "C3mC4"
    C4mC1 = "C4mC1"
    C5mC2 = "C5mC2"


@dataclass(frozen=True)
class NuSpecial(ColourValue):
    cls: NuClass

    def key(self) -> str:
        return f"nu:s:{self.cls.value}"

    def to_obj(self):
        return {"kind": "nu-special", "cls": self.cls.value}


@dataclass(frozen=True)
class NuTuple(ColourValue):
    w1: int
    w2: int
    w3: int
    w4: int
    w5: int

    def key(self) -> str:
        return f"nu:t:{self.w1},{self.w2},{self.w3},{self.w4},{self.w5}"

    def to_obj(self):
        return {"kind": "nu-tuple", "components": [self.w1, self.w2, self.w3, self.w4, self.w5]}


NuValue = Union[NuSpecial, NuTuple]


@dataclass(frozen=True)
class MuWhole(ColourValue):
    nu: NuValue

    def key(self) -> str:
        return f"mu:w:{self.nu.key()}"

    def to_obj(self):
        return {"kind": "mu-whole", "nu": self.nu.to_obj()}


@dataclass(frozen=True)
class MuFrac(ColourValue):
    nu: NuValue
    phi: PhiValue
    psi_prime: PhiValue

    def key(self) -> str:
        return f"mu:f:{self.nu.key()}|{self.phi.key()}|{self.psi_prime.key()}"

    def to_obj(self):
        return {
            "kind": "mu-frac",
            "nu": self.nu.to_obj(),
            "phi": self.phi.to_obj(),
            "psi_prime": self.psi_prime.to_obj(),
        }


@dataclass(frozen=True)
class AlphaNat(ColourValue):
    theta: ThetaTuple

    def key(self) -> str:
        return f"alpha:n:{self.theta.key()}"

    def to_obj(self):
        return {"kind": "alpha-nat", "theta": self.theta.to_obj()}


@dataclass(frozen=True)
class AlphaNegPow2(ColourValue):
    def key(self) -> str:
        return "alpha:negpow2"

    def to_obj(self):
        return {"kind": "alpha-negpow2"}


@dataclass(frozen=True)
class AlphaSmall(ColourValue):
    def key(self) -> str:
        return "alpha:small"

    def to_obj(self):
        return {"kind": "alpha-small"}


@dataclass(frozen=True)
class AlphaBig(ColourValue):
    components: tuple[int, ...]  # 13 entries

    def key(self) -> str:
        return "alpha:b:" + ",".join(str(c) for c in self.components)

    def to_obj(self):
        return {"kind": "alpha-big", "components": list(self.components)}


@dataclass(frozen=True)
class ConstColour(ColourValue):
    def key(self) -> str:
        return "const"

    def to_obj(self):
        return {"kind": "const"}


def colour_key(value: ColourValue) -> str:
    return value.key()


# --- the colourings ----------------------------------------------------------

_PHI_MEMO: dict[int, int] = {0: 0, 1: 1, 2: 0, 3: 1}


def phi(k: int) -> int:
    """Two-colouring of the integers with phi(k+1) != phi(2k), phi(2k+1) for k not in {0,1}.

    Defined by phi(0)=phi(2)=0, phi(1)=phi(3)=1 and phi(m) = 1 - phi(m//2 + 1)
    elsewhere (floor division), memoized. Dict writes are atomic, so the memo
    is safe to share between threads.
    """
    check_exponent(k)
    chain = []
    while k not in _PHI_MEMO:
        chain.append(k)
        k = k // 2 + 1
    v = _PHI_MEMO[k]
    for m in reversed(chain):
        v = 1 - v
        _PHI_MEMO[m] = v
    return v


def big_phi(a: int, b: int) -> PhiValue:
    """Pair colouring on non-negative integers; degenerate pairs map to PhiZero."""
    if a < 0 or b < 0:
        raise DomainError(f"pair components must be non-negative: ({a}, {b})")
    if a == 0 or b == 0 or a >= b:
        return PHI_ZERO
    ea, eb = (a & -a).bit_length() - 1, (b & -b).bit_length() - 1
    return PhiTuple(
        c1=ea % 2,
        c2=eb % 2,
        c3=(a >> (ea + 1)) & 1,
        c4=(b >> (eb + 1)) & 1,
        c5=right_left_disjoint(a, b),
    )


def psi(a: int, b: int) -> PhiValue:
    return big_phi(a, b + 1)


def psi_prime(a: int, b: int) -> PhiValue:
    if a < 1:
        raise DomainError(f"first component must be >= 1, got {a}")
    if a == 1:
        return big_phi(1, 2)
    return big_phi(a - 1, b)


def theta(m: int) -> ThetaTuple:
    """Colouring of the naturals from the binary profile and the pair colourings.

    On powers of two the gap is undefined; the gap-parity and tail components
    are fixed to 0 there (the power flag already isolates those inputs).
    """
    prof = binary_profile(m)
    if prof.power_of_two:
        gap_parity, tail = 0, 0
    else:
        gap_parity = prof.gap % 2
        tail = 0 if prof.gap == 1 else 1
    return ThetaTuple(
        power=1 if prof.power_of_two else 0,
        end_parity=prof.end % 2,
        gap_parity=gap_parity,
        phi_inner=big_phi(prof.end, prof.start),
        phi_inner_shift=big_phi(prof.end, prof.start + 1),
        phi_of_end=phi(prof.end),
        tail=tail,
    )


def nu(x: Rational) -> NuValue:
    """Five special classes, then the quintuple of interval indices.

    Classes are tried in order: powers of two, the (empty on rationals)
    half-power class, two-digit-not-run, run-not-power, then the (empty on
    rationals) surd class; all remaining rationals get a tuple.
    """
    if is_power_of_two(x):
        return NuSpecial(NuClass.C1)
    # C2 = {2^(k+1/2)} and C5 (the surd family) contain no rationals.
    c3, c4 = in_C3(x), in_C4(x)
    if c3 and not c4:
        return NuSpecial(NuClass.C3mC4)
    if c4:
        return NuSpecial(NuClass.C4mC1)
    a = a_exponent(x)
    b = b_exponent(x)
    c = c_exponent(x)
    w1 = 0 if cmp_pow2_half(x, a) is Ordering.BELOW else 1
    w3 = (a - b) % 3
    if cmp_c5_boundary(x, a, c) is Ordering.BELOW:
        w5 = (a - c) % 3
    else:
        w5 = (a - c - 1) % 3
    return NuTuple(w1=w1, w2=phi(a), w3=w3, w4=(a - c) % 3, w5=w5)


def mu(x: Rational, table: PrimeTable | None = None) -> ColourValue:
    """nu plus, below 1, the pair colours of the leading/trailing digit positions."""
    if x >= 1:
        return MuWhole(nu=nu(x))
    n = minimal_base_index(x, table)
    s = s_frac(x, n, table)
    e = e_frac(x, n, table)
    return MuFrac(nu=nu(x), phi=big_phi(-s, -e), psi_prime=psi_prime(-s, -e))


def alpha(x: Rational, table: PrimeTable | None = None) -> ColourValue:
    """Four-case colouring of the positive rationals."""
    if x.denominator == 1:
        return AlphaNat(theta=theta(x.numerator))
    if is_power_of_two(x):  # denominator > 1, so x = 2^k with k < 0
        return AlphaNegPow2()
    if x <= 2:
        return AlphaSmall()
    return AlphaBig(components=_alpha_prime(x, table))


def _alpha_prime(x: Rational, table: PrimeTable | None = None) -> tuple[int, ...]:
    r = minimal_base_index(x, table)
    a = a_exponent(x)
    b = b_exponent(x)
    c = c_exponent(x)
    whole, frac = floor_frac(x)
    er_w = e_int(whole, r, table)
    e2_w = e_int(whole, 1, table)
    er_w1 = e_int(whole + 1, r, table)
    e2_w1 = e_int(whole + 1, 1, table)
    return (
        a % 2,
        a_exponent(frac) % 2,
        epsilon_exponent(frac) % 2,
        er_w % 2,
        e2_w % 2,
        er_w1 % 2,
        e2_w1 % 2,
        a_exponent(r_ratio(x)) % 3,
        0 if whole & (whole - 1) == 0 else 1,
        0 if a - b > er_w else 1,
        0 if a - b > er_w1 else 1,
        0 if a - c > er_w else 1,
        0 if a - c > er_w1 else 1,
    )


# --- key parsing -------------------------------------------------------------


def _component(text: str, limit: int) -> int:
    """One bounded key component; anything outside 0..limit is a bad key."""
    if text.isdigit() and int(text) <= limit:
        return int(text)
    raise DomainError(f"bad colour-key component: {text!r}")


def _parse_phi(text: str) -> PhiValue:
    if text == "phi:z":
        return PHI_ZERO
    if text.startswith("phi:t:"):
        parts = text[len("phi:t:") :].split(",")
        if len(parts) == 5:
            return PhiTuple(*(_component(t, 1) for t in parts))
    raise DomainError(f"bad pair-colour key: {text!r}")


def _parse_compact_phi(text: str) -> PhiValue:
    if text == "z":
        return PHI_ZERO
    if len(text) == 5 and all(ch in "01" for ch in text):
        return PhiTuple(*(int(ch) for ch in text))
    raise DomainError(f"bad embedded pair-colour key: {text!r}")


def _parse_theta(text: str) -> ThetaTuple:
    body = text[len("theta:") :]
    parts = body.split(",")
    if len(parts) != 7:
        raise DomainError(f"bad theta key: {text!r}")
    return ThetaTuple(
        power=_component(parts[0], 1),
        end_parity=_component(parts[1], 1),
        gap_parity=_component(parts[2], 1),
        phi_inner=_parse_compact_phi(parts[3]),
        phi_inner_shift=_parse_compact_phi(parts[4]),
        phi_of_end=_component(parts[5], 1),
        tail=_component(parts[6], 1),
    )


def _parse_nu(text: str) -> NuValue:
    if text.startswith("nu:s:"):
        try:
            return NuSpecial(NuClass(text[len("nu:s:") :]))
        except ValueError:
            raise DomainError(f"bad nu class key: {text!r}") from None
    if text.startswith("nu:t:"):
        parts = text[len("nu:t:") :].split(",")
        if len(parts) == 5:
            limits = (1, 1, 2, 2, 2)
            return NuTuple(*(_component(t, lim) for t, lim in zip(parts, limits)))
    raise DomainError(f"bad nu key: {text!r}")


def parse_colour_key(text: str) -> ColourValue:
    """Inverse of ``colour_key`` on canonical keys."""
    if text == "const":
        return ConstColour()
    if text.startswith("bit:"):
        v = text[len("bit:") :]
        if v in ("0", "1"):
            return Bit(int(v))
        raise DomainError(f"bad bit key: {text!r}")
    if text.startswith("phi:"):
        return _parse_phi(text)
    if text.startswith("theta:"):
        return _parse_theta(text)
    if text.startswith("nu:"):
        return _parse_nu(text)
    if text.startswith("mu:w:"):
        return MuWhole(nu=_parse_nu(text[len("mu:w:") :]))
    if text.startswith("mu:f:"):
        parts = text[len("mu:f:") :].split("|")
        if len(parts) == 3:
            return MuFrac(
                nu=_parse_nu(parts[0]),
                phi=_parse_phi(parts[1]),
                psi_prime=_parse_phi(parts[2]),
            )
        raise DomainError(f"bad mu key: {text!r}")
    if text == "alpha:negpow2":
        return AlphaNegPow2()
    if text == "alpha:small":
        return AlphaSmall()
    if text.startswith("alpha:n:"):
        return AlphaNat(theta=_parse_theta(text[len("alpha:n:") :]))
    if text.startswith("alpha:b:"):
        parts = tuple(_component(t, 2) for t in text[len("alpha:b:") :].split(","))
        if len(parts) == 13:
            return AlphaBig(components=parts)
        raise DomainError(f"bad alpha key: {text!r}")
    raise DomainError(f"unknown colour key: {text!r}")


# --- registry for the value-colouring engines --------------------------------

#: ids accepted by check/search: each maps a positive rational to a ColourValue.
UNARY_IDS = ("phi", "theta", "nu", "mu", "alpha", "const")
#: ids that colour pairs of integers; usable with `colour` only.
PAIR_IDS = ("bigphi", "psi", "psiprime")


def _phi_on_rational(x: Rational) -> ColourValue:
    if x.denominator != 1:
        raise DomainError(f"phi colours integers only, got {x}")
    return Bit(phi(x.numerator))


def _theta_on_rational(x: Rational) -> ColourValue:
    if x.denominator != 1:
        raise DomainError(f"theta colours naturals only, got {x}")
    return theta(x.numerator)


def colouring_fn(colouring_id: str, table: PrimeTable | None = None) -> Callable[[Rational], ColourValue]:
    """Resolve a colouring id to a function on positive rationals."""
    if colouring_id == "phi":
        return _phi_on_rational
    if colouring_id == "theta":
        return _theta_on_rational
    if colouring_id == "nu":
        return nu
    if colouring_id == "mu":
        return lambda x: mu(x, table)
    if colouring_id == "alpha":
        return lambda x: alpha(x, table)
    if colouring_id == "const":
        return lambda x: ConstColour()
    if colouring_id in PAIR_IDS:
        raise DomainError(f"colouring {colouring_id!r} applies to pairs, not single values")
    raise DomainError(f"unknown colouring id: {colouring_id!r}")
