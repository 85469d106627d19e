"""Build finite sequences in (0,1) whose sums and products are μ-monochromatic.

The recipe: base terms are reciprocals of primes chosen so their sum stays
below 1/2; blocks of base terms are multiplied into derived terms y_n whose
ν colours all agree (including every product of the y's); the sum side is
then closed by keeping each new term below half the openness radius of every
subset sum so far. Everything is exact rational arithmetic; floats appear
only as search heuristics, never in accepted answers.

The block search targets the "low corner" band: a term y = 2^a·M with
mantissa M ∈ (1, 1.5) and M² < 2 pins three of ν's tuple components, the
dyadic order j of M−1 (kept ≡ 2 mod 3, separated by ≥ 3 between levels)
pins the fourth, and keeping every subset sum of the |a|'s inside the
1-coloured zones of the integer two-colouring pins the last.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .colourings import NuTuple, colour_key, nu, phi
from .core import (
    Ordering,
    PrimeTable,
    Rational,
    a_exponent,
    cmp_c5_boundary,
    cmp_pow2_half,
    minimal_base_index,
    pow2,
)
from .digits import b_exponent, c_exponent, e_frac, s_frac
from .errors import (
    BudgetExhaustedError,
    DomainError,
    InternalInvariantError,
    TableExhaustedError,
)
from .verify import (
    Certificate,
    CombinationEntry,
    CombinationMode,
    Monochromatic,
    check,
    combinations,
)

DEFAULT_SEARCH_BUDGET = 250_000


@dataclass(frozen=True)
class OpennessRadius:
    center: Rational
    radius: Rational
    key: str

    def to_obj(self) -> dict:
        return {"center": str(self.center), "radius": str(self.radius), "key": self.key}


@dataclass(frozen=True)
class BlockSystem:
    """Base indices r_t (terms 1/p_{r_t}) and ordered disjoint blocks H_n.

    Block entries are 1-based positions into the base sequence; y_n is the
    product of the base terms at the positions in H_n.
    """

    base_indices: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if any(not b for b in self.blocks):
            raise DomainError("blocks must be nonempty")
        flat = [t for b in self.blocks for t in b]
        if any(t < 1 or t > len(self.base_indices) for t in flat):
            raise DomainError("block positions out of base-sequence range")
        for earlier, later in zip(self.blocks, self.blocks[1:]):
            if max(earlier) >= min(later):
                raise DomainError("blocks must be strictly ordered")

    def base_terms(self, table: PrimeTable) -> list[Rational]:
        return [Fraction(1, table.nth(r)) for r in self.base_indices]

    def terms(self, table: PrimeTable) -> list[Rational]:
        base = self.base_terms(table)
        out = []
        for block in self.blocks:
            y = Fraction(1)
            for t in block:
                y *= base[t - 1]
            out.append(y)
        return out

    def to_obj(self) -> dict:
        return {
            "base_indices": list(self.base_indices),
            "blocks": [list(b) for b in self.blocks],
        }


@dataclass(frozen=True)
class ProductSystem:
    system: BlockSystem
    terms: tuple[Rational, ...]
    key: str
    products: tuple[CombinationEntry, ...]

    def to_obj(self) -> dict:
        return {
            "system": self.system.to_obj(),
            "terms": [str(y) for y in self.terms],
            "key": self.key,
            "products": [e.to_obj() for e in self.products],
        }


@dataclass(frozen=True)
class ConstructResult:
    system: BlockSystem
    terms: tuple[Rational, ...]
    key: str
    certificate: Certificate

    def to_obj(self) -> dict:
        return {
            "system": self.system.to_obj(),
            "terms": [str(y) for y in self.terms],
            "key": self.key,
            "certificate": self.certificate.to_obj(),
        }


def reciprocal_prime_indices(
    count: int, budget: int | None = None, table: PrimeTable | None = None
) -> list[int]:
    """Indices r_1 < ... < r_count with Σ 1/p_{r_i} < 1/2, prefix-stable.

    r_1 = 2 (term 1/3); for i ≥ 2 the smallest unused index whose prime is
    at least 6·i·(i−1), so the tail after 1/3 is bounded by the telescoping
    sum Σ 1/(6·i·(i−1)) = 1/6. ``budget`` optionally caps the largest index.
    """
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    table = table or _table_for_terms(count)
    cap = budget if budget is not None else table.count
    out = [2]
    for i in range(2, count + 1):
        bound = 6 * i * (i - 1)
        j = bisect_left(table.primes, bound)
        r = max(j + 1, out[-1] + 1)
        if r > cap or r > table.count:
            raise TableExhaustedError(
                f"term {i} needs prime index {r}, beyond limit {min(cap, table.count)}"
            )
        out.append(r)
    return out


def _table_for_terms(count: int) -> PrimeTable:
    """A prime table comfortably covering the first ``count`` base terms."""
    bound = 6 * (count + 1) * count + 100
    n = max(64, int(bound / max(1.0, math.log(bound) - 1.1)) + 32)
    table = PrimeTable(n)
    while table.primes[-1] < bound:
        n = int(n * 1.4) + 16
        table = PrimeTable(n)
    return table


def openness_radius(x: Rational) -> OpennessRadius:
    """A radius δ > 0 with ν constant on [x, x+δ], for tuple-class x.

    The nearest colour boundary above x in each family is computed in closed
    form: the next power of two, the next two-digit point 2^a + 2^(b+1), the
    next point 2^(a+1) − 2^c below a power of two, and the two quadratic-surd
    boundaries, whose gaps are under-approximated by (S − x²)/2^(a+2) to stay
    rational. δ is half the smallest gap.
    """
    value = nu(x)
    if not isinstance(value, NuTuple):
        raise DomainError(f"{x} lies in a special class; no open neighbourhood")
    a, b, c = a_exponent(x), b_exponent(x), c_exponent(x)
    gaps = [
        pow2(a + 1) - x,
        pow2(a) + pow2(b + 1) - x,
        pow2(a + 1) - pow2(c) - x,
    ]
    if cmp_pow2_half(x, a) is Ordering.BELOW:
        gaps.append((pow2(2 * a + 1) - x * x) / pow2(a + 2))
    l = c if cmp_c5_boundary(x, a, c) is Ordering.BELOW else c - 1
    gaps.append((pow2(2 * a + 2) - pow2(a + l + 2) - x * x) / pow2(a + 2))
    if any(g <= 0 for g in gaps):
        raise InternalInvariantError(f"non-positive boundary gap at {x}")
    return OpennessRadius(center=x, radius=min(gaps) / 2, key=colour_key(value))


def minimal_digit_fact(z: Rational, table: PrimeTable | None = None) -> bool:
    """True iff z's expansion in its minimal primorial base is the single
    position −1 span: s_k(z) = e_k(z) = −1."""
    if not 0 < z < 1:
        raise DomainError(f"value must be in (0,1), got {z}")
    k = minimal_base_index(z, table)
    return s_frac(z, k, table) == -1 and e_frac(z, k, table) == -1


class _Budget:
    def __init__(self, limit: int):
        self.left = limit

    def spend(self, amount: int = 1) -> bool:
        self.left -= amount
        return self.left >= 0


def _blocks_in_window(
    pool: list[tuple[int, int]], lo: int, hi: int, budget: _Budget
) -> Iterator[tuple[tuple[int, ...], int]]:
    """Subsets of pool (position, prime) whose product lies in [lo, hi].

    Yielded in (max position, then include-first DFS) order so early blocks
    leave as much of the pool as possible for later levels. Float logs steer
    the pruning; membership is decided on the exact integer product.
    """
    if lo > hi or not pool:
        return
    logs = [math.log2(p) for _, p in pool]
    t_lo, t_hi = math.log2(lo) - 1e-9, math.log2(hi) + 1e-9

    def dfs(i: int, h: int, cur_log: float, cur: int, chosen: list[int]):
        if not budget.spend():
            raise BudgetExhaustedError("block enumeration budget exhausted")
        if t_lo <= cur_log <= t_hi and lo <= cur <= hi:
            yield tuple(sorted(chosen + [pool[h][0]])), cur
        if i >= h or cur_log > t_hi:
            return
        remaining = _suffix[i] - _suffix[h]
        if cur_log + remaining < t_lo:
            return
        yield from dfs(i + 1, h, cur_log + logs[i], cur * pool[i][1], chosen + [pool[i][0]])
        yield from dfs(i + 1, h, cur_log, cur, chosen)

    _suffix = [0.0] * (len(pool) + 1)
    for i in range(len(pool) - 1, -1, -1):
        _suffix[i] = _suffix[i + 1] + logs[i]
    for h in range(len(pool)):
        yield from dfs(0, h, logs[h], pool[h][1], [])


def _mantissa_window(n: int, j: int) -> tuple[int, int]:
    """Integer products P with 2^n/P ∈ [1 + 2^(−j), 1 + 1.25·2^(−j)]."""
    lo = pow2(n) / (1 + Fraction(5, 4) * pow2(-j))
    hi = pow2(n) / (1 + pow2(-j))
    return math.ceil(lo), math.floor(hi)


def _zone_ok(prev_ns: list[int], n: int) -> bool:
    """Every subset sum of |a|-values containing n must colour 1 under φ."""
    sums = {0}
    for p in prev_ns:
        sums |= {s + p for s in sums}
    return all(phi(-(s + n)) == 1 for s in sums)


@dataclass
class _Level:
    block: tuple[int, ...]
    y: Rational
    n: int
    j: int


def _search_blocks(
    m: int,
    budget_limit: int,
    pool_size: int | None,
    table: PrimeTable | None,
    delta_rule: bool,
) -> tuple[BlockSystem, list[Rational], str, PrimeTable]:
    if m < 1:
        raise DomainError(f"term count must be >= 1, got {m}")
    pool_size = pool_size if pool_size is not None else 16 + 14 * m
    table = table or _table_for_terms(pool_size)
    indices = reciprocal_prime_indices(pool_size, table=table)
    base_primes = [table.nth(r) for r in indices]

    y1 = Fraction(1, 3)
    target = colour_key(nu(y1))
    budget = _Budget(budget_limit)
    levels = [_Level(block=(1,), y=y1, n=2, j=2)]
    subset_sums = [y1]
    radii: dict[Rational, Rational] = {}
    best_depth = 1

    def delta_bound() -> Rational:
        for s in subset_sums:
            if s not in radii:
                radii[s] = openness_radius(s).radius
        return min(min(radii[s] for s in subset_sums), levels[-1].y) / 2

    def extend(level: int) -> bool:
        nonlocal best_depth
        if level > m:
            return True
        bound = delta_bound() if delta_rule else None
        prev_ns = [lv.n for lv in levels]
        first_pos = max(levels[-1].block) + 1
        pool = [(t, base_primes[t - 1]) for t in range(first_pos, pool_size + 1)]
        weight = sum(math.log2(p) for _, p in pool)
        n = prev_ns[-1] + 1
        n_cap = int(weight)
        if bound is not None:
            n = max(n, 2 - a_exponent(bound))
        while n <= n_cap:
            if _zone_ok(prev_ns, n):
                for j in (levels[-1].j + 3, levels[-1].j + 6):
                    lo, hi = _mantissa_window(n, j)
                    try:
                        candidates = _blocks_in_window(pool, lo, hi, budget)
                        for block, prod in candidates:
                            if not budget.spend():
                                raise BudgetExhaustedError("budget exhausted")
                            y = Fraction(1, prod)
                            if not _accepts(y, bound):
                                continue
                            levels.append(_Level(block=block, y=y, n=n, j=j))
                            _absorb(y)
                            best_depth = max(best_depth, level)
                            if extend(level + 1):
                                return True
                            levels.pop()
                            _shed()
                    except BudgetExhaustedError as exc:
                        raise BudgetExhaustedError(
                            f"search budget exhausted at depth {best_depth}",
                            best_depth=best_depth,
                        ) from exc
            n += 1
        return False

    def _accepts(y: Rational, bound: Rational | None) -> bool:
        if bound is not None and not y < bound:
            return False
        if colour_key(nu(y)) != target:
            return False
        products = [Fraction(1)]
        for lv in levels:
            products += [p * lv.y for p in products]
        return all(colour_key(nu(p * y)) == target for p in products[1:])

    def _absorb(y: Rational) -> None:
        if delta_rule:
            new_sums = [y] + [s + y for s in subset_sums]
            for s in new_sums:
                if colour_key(nu(s)) != target:
                    raise InternalInvariantError(f"sum {s} left the target class")
            subset_sums.extend(new_sums)

    def _shed() -> None:
        if delta_rule:
            del subset_sums[(len(subset_sums) - 1) // 2 :]

    if not extend(2):
        if budget.left < 0:
            raise BudgetExhaustedError(
                f"search budget exhausted at depth {best_depth}", best_depth=best_depth
            )
        raise BudgetExhaustedError(
            f"pool of {pool_size} terms exhausted at depth {best_depth}",
            best_depth=best_depth,
        )
    ys = [lv.y for lv in levels]
    max_pos = max(levels[-1].block)
    system = BlockSystem(
        base_indices=tuple(indices[:max_pos]),
        blocks=tuple(lv.block for lv in levels),
    )
    return system, ys, target, table


def find_product_subsystem(
    m: int,
    search_budget: int = DEFAULT_SEARCH_BUDGET,
    pool_size: int | None = None,
    table: PrimeTable | None = None,
) -> ProductSystem:
    """Blocks whose 2^m − 1 derived products all share one ν tuple key."""
    system, ys, key, table = _search_blocks(m, search_budget, pool_size, table, False)
    products = tuple(
        CombinationEntry(tag, value, colour_key(nu(value)))
        for tag, value in combinations(ys, CombinationMode.FINITE_FSFP)
        if tag.startswith("p")
    )
    if any(e.colour != key for e in products):
        raise InternalInvariantError("accepted product system is not monochromatic")
    return ProductSystem(system=system, terms=tuple(ys), key=key, products=products)


def extend_sum_closed(
    m: int,
    search_budget: int = DEFAULT_SEARCH_BUDGET,
    pool_size: int | None = None,
    table: PrimeTable | None = None,
) -> ConstructResult:
    """Terms whose finite sums and products are μ-monochromatic, certified.

    Runs the product-subsystem search with the sum-closure rule folded in:
    each accepted term must lie below half the smallest openness radius over
    all current subset sums (and below the current terms), so every sum stays
    in the shared ν class; the final certificate re-checks everything under μ.
    """
    system, ys, key, table = _search_blocks(m, search_budget, pool_size, table, True)
    certificate = check("mu", ys, CombinationMode.FINITE_FSFP, table)
    if not isinstance(certificate.verdict, Monochromatic):
        raise InternalInvariantError(
            f"constructed terms fail the μ check: {certificate.verdict}"
        )
    return ConstructResult(
        system=system, terms=tuple(ys), key=key, certificate=certificate
    )
