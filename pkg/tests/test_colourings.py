"""Colouring families: structured implementations, keys, oracle agreement."""
from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcolour import oracles
from qcolour.colourings import (
    AlphaBig,
    AlphaNat,
    AlphaNegPow2,
    AlphaSmall,
    ConstColour,
    MuFrac,
    MuWhole,
    NuSpecial,
    NuTuple,
    PhiTuple,
    PhiZero,
    alpha,
    big_phi,
    colour_key,
    colouring_fn,
    mu,
    nu,
    parse_colour_key,
    phi,
    psi,
    psi_prime,
    theta,
)
from qcolour.errors import DomainError


class TestPhi:
    def test_base_values(self):
        assert [phi(k) for k in (0, 1, 2, 3)] == [0, 1, 0, 1]

    def test_frozen_window(self):
        assert tuple(phi(k) for k in range(1, 17)) == (1, 0, 1, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0)
        assert tuple(phi(-k) for k in range(1, 9)) == (1, 1, 0, 0, 0, 0, 1, 1)

    def test_negative_zone_boundaries(self):
        # ones exactly on |k| in [1,2], [7,14], [31,62], ...
        for k in (-1, -2, -7, -14, -31, -62, -127):
            assert phi(k) == 1
        for k in (-3, -6, -15, -30, -63):
            assert phi(k) == 0

    def test_recurrence(self):
        for k in range(-200, 201):
            if k in (0, 1):
                continue
            assert phi(k + 1) != phi(2 * k)
            assert phi(k + 1) != phi(2 * k + 1)

    @given(st.integers(-10**4, 10**4))
    @settings(deadline=None)
    def test_matches_zone_oracle(self, k):
        assert phi(k) == oracles.phi_oracle(k)


class TestPairColourings:
    def test_zero_class(self):
        for a, b in [(0, 5), (5, 0), (3, 3), (7, 2)]:
            assert isinstance(big_phi(a, b), PhiZero)
        assert colour_key(big_phi(3, 3)) == "phi:z"

    @pytest.mark.parametrize(
        "a, b, key",
        [
            (1, 3, "phi:t:0,0,0,1,1"),
            (4, 6, "phi:t:0,1,0,1,1"),
            (3, 6, "phi:t:0,1,1,1,1"),
            (2, 5, "phi:t:1,0,0,0,1"),
            (2, 6, "phi:t:1,1,0,1,1"),
        ],
    )
    def test_frozen_tuples(self, a, b, key):
        assert colour_key(big_phi(a, b)) == key

    def test_psi_is_shifted(self):
        for a in range(1, 40):
            for b in range(a + 1, 41):
                assert psi(a, b) == big_phi(a, b + 1)

    def test_psi_prime_cases(self):
        ref = big_phi(1, 2)
        assert colour_key(ref) == "phi:t:0,1,0,0,0"
        for y in (2, 9, 500):
            assert psi_prime(1, y) == ref
        for x in range(2, 40):
            assert psi_prime(x, x + 3) == big_phi(x - 1, x + 3)
        assert colour_key(psi_prime(4, 6)) == "phi:t:0,1,1,1,1"

    @given(st.integers(0, 10**4), st.integers(0, 10**4))
    @settings(deadline=None)
    def test_matches_string_oracle(self, a, b):
        assert big_phi(a, b) == oracles.big_phi_oracle(a, b)


class TestTheta:
    @pytest.mark.parametrize(
        "m, key",
        [
            (1, "theta:1,0,0,z,z,0,0"),
            (6, "theta:0,1,1,01000,00011,1,0"),
            (8, "theta:1,1,0,z,00100,1,0"),
            (12, "theta:0,0,1,10011,10000,0,0"),
            (96, "theta:0,1,1,01011,00011,0,0"),
        ],
    )
    def test_frozen_keys(self, m, key):
        assert colour_key(theta(m)) == key

    def test_power_convention(self):
        for e in range(0, 12):
            t = theta(2**e)
            assert t.power == 1 and t.gap_parity == 0 and t.tail == 0

    @given(st.integers(1, 10**6))
    @settings(deadline=None)
    def test_matches_string_oracle(self, m):
        assert theta(m) == oracles.theta_oracle(m)


# rationals with moderate numerators/denominators, never zero
def _grid():
    out = []
    for num in range(1, 48):
        for den in (1, 2, 3, 4, 6, 8, 12, 96):
            out.append(Fraction(num, den))
    return sorted(set(out))


GRID = _grid()


class TestNu:
    @pytest.mark.parametrize(
        "x, key",
        [
            (Fraction(8), "nu:s:C1"),
            (Fraction(1, 4), "nu:s:C1"),
            (Fraction(6), "nu:s:C4mC1"),
            (Fraction(3), "nu:s:C4mC1"),
            (Fraction(7, 2), "nu:s:C4mC1"),
            (Fraction(5), "nu:s:C3mC4"),
            (Fraction(11, 4), "nu:t:0,1,2,1,1"),
            (Fraction(1, 3), "nu:t:0,1,2,1,1"),
            (Fraction(5, 6), "nu:t:1,1,1,2,2"),
        ],
    )
    def test_frozen_keys(self, x, key):
        assert colour_key(nu(x)) == key

    def test_special_classes_match_set_definitions(self):
        for x in GRID:
            v = nu(x)
            if isinstance(v, NuSpecial):
                assert oracles.nu_oracle(x) == v
            else:
                assert isinstance(v, NuTuple)
                for w in (v.w1, v.w2):
                    assert w in (0, 1)
                for w in (v.w3, v.w4, v.w5):
                    assert w in (0, 1, 2)

    def test_matches_scan_oracle_on_grid(self):
        for x in GRID:
            assert nu(x) == oracles.nu_oracle(x)

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            nu(Fraction(0))


class TestMu:
    def test_whole_part_reuses_nu(self):
        v = mu(Fraction(3))
        assert isinstance(v, MuWhole) and v.nu == nu(Fraction(3))
        assert colour_key(v) == "mu:w:nu:s:C4mC1"

    @pytest.mark.parametrize(
        "x, key",
        [
            (Fraction(1, 2), "mu:f:nu:s:C1|phi:z|phi:t:0,1,0,0,0"),
            (Fraction(5, 6), "mu:f:nu:t:1,1,1,2,2|phi:z|phi:t:0,1,0,0,0"),
            (Fraction(1, 3), "mu:f:nu:t:0,1,2,1,1|phi:z|phi:t:0,1,0,0,0"),
        ],
    )
    def test_frozen_fractional_keys(self, x, key, table):
        assert colour_key(mu(x, table)) == key

    def test_fractional_positions_feed_pair_colours(self, table):
        x = Fraction(5, 8)  # 0.101 in the minimal (binary) base: s=-1, e=-3
        v = mu(x, table)
        assert isinstance(v, MuFrac)
        assert v.phi == big_phi(1, 3) and v.psi_prime == psi_prime(1, 3)

    def test_matches_oracle_on_grid(self, table):
        for x in GRID:
            assert mu(x, table) == oracles.mu_oracle(x)


class TestAlpha:
    def test_case_split(self, table):
        assert isinstance(alpha(Fraction(7), table), AlphaNat)
        assert isinstance(alpha(Fraction(1, 4), table), AlphaNegPow2)
        assert isinstance(alpha(Fraction(2, 3), table), AlphaSmall)
        assert isinstance(alpha(Fraction(3, 2), table), AlphaSmall)
        assert isinstance(alpha(Fraction(5, 2), table), AlphaBig)

    @pytest.mark.parametrize(
        "x, key",
        [
            (Fraction(7), "alpha:n:theta:0,0,1,z,z,0,0"),
            (Fraction(1, 4), "alpha:negpow2"),
            (Fraction(2, 3), "alpha:small"),
            (Fraction(5, 2), "alpha:b:1,1,1,1,1,0,0,1,0,0,0,1,0"),
        ],
    )
    def test_frozen_keys(self, x, key, table):
        assert colour_key(alpha(x, table)) == key

    def test_big_tuple_has_13_components(self, table):
        v = alpha(Fraction(11, 4), table)
        assert isinstance(v, AlphaBig) and len(v.components) == 13

    def test_matches_oracle_on_grid(self, table):
        for x in GRID:
            assert alpha(x, table) == oracles.alpha_oracle(x)


class TestKeys:
    def test_round_trip_everywhere(self, table):
        rng = random.Random(7)
        values = [theta(rng.randint(1, 10**6)) for _ in range(50)]
        values += [big_phi(rng.randint(0, 50), rng.randint(0, 50)) for _ in range(50)]
        values += [nu(x) for x in GRID[:100]]
        values += [mu(x, table) for x in GRID[:100]]
        values += [alpha(x, table) for x in GRID[:100]]
        values.append(ConstColour())
        for v in values:
            key = colour_key(v)
            assert parse_colour_key(key) == v
            assert colour_key(parse_colour_key(key)) == key

    def test_rejects_garbage(self):
        for text in ("", "nu:", "phi:t:9,9,9,9,9", "mu:f:nu:s:C1", "wat:1"):
            with pytest.raises(DomainError):
                parse_colour_key(text)


class TestRegistry:
    def test_ids_dispatch(self, table):
        assert colouring_fn("nu", table)(Fraction(11, 4)) == nu(Fraction(11, 4))
        assert colouring_fn("mu", table)(Fraction(5, 6)) == mu(Fraction(5, 6), table)
        assert colouring_fn("const", table)(Fraction(9, 7)) == ConstColour()

    def test_integer_colourings_reject_fractions(self, table):
        for cid in ("phi", "theta"):
            fn = colouring_fn(cid, table)
            assert fn(Fraction(6)) is not None
            with pytest.raises(DomainError):
                fn(Fraction(3, 2))

    def test_unknown_id(self):
        with pytest.raises(DomainError):
            colouring_fn("nope")
