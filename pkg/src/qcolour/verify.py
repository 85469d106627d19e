"""Combination sets, monochromaticity certificates, bounded search, law suite.

A *combination set* of a finite sequence is either the pairwise one (sums and
products of all two-element subsets) or the full finite-sums-and-products one
(sums and products of every nonempty subset, singletons included). A
certificate records the sequence, every combination with its exact value and
colour key, and a verdict: one shared key, or the first clashing pair.

Colour keys (strings) are the sole equality tokens throughout; structured
colour values are never compared across colourings.
"""

from __future__ import annotations

import itertools
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd, isqrt
from typing import Callable

from .colourings import colour_key, colouring_fn
from .core import PrimeTable, Rational, default_table, parse_rational
from .digits import end2, expand, start2
from .errors import DomainError


class CombinationMode(Enum):
    PAIRWISE = "pairwise"
    FINITE_FSFP = "finite"


@dataclass(frozen=True)
class Monochromatic:
    key: str | None
    empty: bool = False

    def to_obj(self) -> dict:
        return {"monochromatic": {"key": self.key, "empty": self.empty}}


@dataclass(frozen=True)
class Clash:
    first: int
    second: int

    def to_obj(self) -> dict:
        return {"clash": [self.first, self.second]}


Verdict = Monochromatic | Clash


@dataclass(frozen=True)
class CombinationEntry:
    tag: str
    value: Rational
    colour: str  # colour key of the value

    def to_obj(self) -> dict:
        return {"tag": self.tag, "value": str(self.value), "colour": self.colour}


@dataclass(frozen=True)
class Certificate:
    colouring_id: str
    mode: CombinationMode
    sequence: tuple[Rational, ...]
    combinations: tuple[CombinationEntry, ...]
    verdict: Verdict

    def to_obj(self) -> dict:
        return {
            "colouring": self.colouring_id,
            "mode": self.mode.value,
            "sequence": [str(x) for x in self.sequence],
            "combinations": [c.to_obj() for c in self.combinations],
            "verdict": self.verdict.to_obj(),
        }

    def to_json(self, pretty: bool = False) -> str:
        if pretty:
            return json.dumps(self.to_obj(), indent=2)
        return json.dumps(self.to_obj(), separators=(",", ":"))

    @staticmethod
    def from_obj(obj: dict) -> "Certificate":
        verdict: Verdict
        try:
            v = obj["verdict"]
            if "clash" in v:
                verdict = Clash(first=int(v["clash"][0]), second=int(v["clash"][1]))
            else:
                m = v["monochromatic"]
                verdict = Monochromatic(key=m["key"], empty=bool(m["empty"]))
            return Certificate(
                colouring_id=obj["colouring"],
                mode=CombinationMode(obj["mode"]),
                sequence=tuple(parse_rational(s) for s in obj["sequence"]),
                combinations=tuple(
                    CombinationEntry(c["tag"], parse_rational(c["value"]), c["colour"])
                    for c in obj["combinations"]
                ),
                verdict=verdict,
            )
        except (KeyError, IndexError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed certificate object: {exc}") from exc

    @staticmethod
    def from_json(text: str) -> "Certificate":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DomainError(f"certificate is not valid JSON: {exc}") from exc
        return Certificate.from_obj(obj)


def _subsets(k: int, mode: CombinationMode) -> list[tuple[int, ...]]:
    if mode is CombinationMode.PAIRWISE:
        return list(itertools.combinations(range(k), 2))
    out: list[tuple[int, ...]] = []
    for size in range(1, k + 1):
        out.extend(itertools.combinations(range(k), size))
    return out


def combinations(xs: list[Rational], mode: CombinationMode) -> list[tuple[str, Rational]]:
    """All (tag, value) pairs for the mode, sums block first, then products.

    Subsets are ordered by (size, positions); tags are 1-based, e.g. "s:1,3".
    """
    if len(set(xs)) != len(xs):
        raise DomainError("sequence terms must be distinct")
    subsets = _subsets(len(xs), mode)
    out = []
    for prefix, reduce in (("s", sum_of), ("p", product_of)):
        for idx in subsets:
            tag = f"{prefix}:{','.join(str(i + 1) for i in idx)}"
            out.append((tag, reduce([xs[i] for i in idx])))
    return out


def sum_of(values: list[Rational]) -> Rational:
    total = Fraction(0)
    for v in values:
        total += v
    return total


def product_of(values: list[Rational]) -> Rational:
    total = Fraction(1)
    for v in values:
        total *= v
    return total


def check(
    colouring_id: str,
    xs: list[Rational],
    mode: CombinationMode,
    table: PrimeTable | None = None,
) -> Certificate:
    """Colour every combination and report Monochromatic or the first Clash.

    The clash cited is the lexicographically first pair in combination order,
    which is always (0, j) for the first j whose key differs from entry 0's.
    """
    fn = colouring_fn(colouring_id, table)
    entries = tuple(
        CombinationEntry(tag, value, colour_key(fn(value)))
        for tag, value in combinations(xs, mode)
    )
    verdict: Verdict
    if not entries:
        verdict = Monochromatic(key=None, empty=True)
    else:
        clash_at = next(
            (j for j, e in enumerate(entries) if e.colour != entries[0].colour), None
        )
        if clash_at is None:
            verdict = Monochromatic(key=entries[0].colour)
        else:
            verdict = Clash(0, clash_at)
    return Certificate(
        colouring_id=colouring_id,
        mode=mode,
        sequence=tuple(xs),
        combinations=entries,
        verdict=verdict,
    )


def validate(
    cert: Certificate,
    reasons: list[str] | None = None,
    table: PrimeTable | None = None,
) -> bool:
    """Recompute everything from the sequence alone; true iff it all matches."""

    def fail(why: str) -> bool:
        if reasons is not None:
            reasons.append(why)
        return False

    try:
        expected = check(cert.colouring_id, list(cert.sequence), cert.mode, table)
    except DomainError as exc:
        return fail(f"recomputation failed: {exc}")
    if expected.combinations != cert.combinations:
        for ours, theirs in itertools.zip_longest(expected.combinations, cert.combinations):
            if ours != theirs:
                return fail(f"combination mismatch: expected {ours}, found {theirs}")
    if expected.verdict != cert.verdict:
        return fail(f"verdict mismatch: expected {expected.verdict}, found {cert.verdict}")
    return True


@dataclass(frozen=True)
class UniverseSpec:
    """Finite window of positive rationals, in canonical enumeration order."""

    numerator_bound: int
    denominator_bound: int = 1
    prime_index_bound: int = 1
    integers_only: bool = False

    def elements(self, table: PrimeTable | None = None) -> list[Rational]:
        """All admissible x = n/d in lowest terms, ordered by (d, n)."""
        table = table or default_table()
        admissible: list[int] = []
        for d in range(1, 2 if self.integers_only else self.denominator_bound + 1):
            left = d
            for i in range(self.prime_index_bound):
                p = table.nth(i + 1)
                while left % p == 0:
                    left //= p
            if left == 1:
                admissible.append(d)
        out = []
        for d in admissible:
            for n in range(1, self.numerator_bound + 1):
                if gcd(n, d) == 1:
                    out.append(Fraction(n, d))
        return out


@dataclass
class SearchResult:
    certificates: list[Certificate]
    max_size: int
    exhausted: bool
    nodes: int

    def to_obj(self) -> dict:
        return {
            "max_size": self.max_size,
            "exhausted": self.exhausted,
            "nodes": self.nodes,
            "certificates": [c.to_obj() for c in self.certificates],
        }


def _extend_state(
    xs: list[Rational],
    state: tuple[str | None, list[Rational], list[Rational]],
    x: Rational,
    mode: CombinationMode,
    key_of: Callable[[Rational], str],
) -> tuple[str | None, list[Rational], list[Rational]] | None:
    """Add x to a partial configuration; None if some new combination clashes.

    State carries the shared key so far plus all subset sums and products (for
    the pairwise mode, just the bare terms).
    """
    key, sums, prods = state
    if mode is CombinationMode.PAIRWISE:
        new_sums = [t + x for t in sums]
        new_prods = [t * x for t in prods]
        keep_sums, keep_prods = sums + [x], prods + [x]
    else:
        new_sums = [x] + [t + x for t in sums]
        new_prods = [x] + [t * x for t in prods]
        keep_sums, keep_prods = sums + new_sums, prods + new_prods
    for v in itertools.chain(new_sums, new_prods):
        k = key_of(v)
        if key is None:
            key = k
        elif k != key:
            return None
    return key, keep_sums, keep_prods


def _search_root(
    elements: list[Rational],
    root: int,
    budget: int,
    colouring_id: str,
    mode: CombinationMode,
    target_size: int,
    table: PrimeTable | None,
) -> tuple[list[list[int]], int, bool, int]:
    """DFS below one root element; returns (hits, max_size, exhausted, nodes)."""
    fn = colouring_fn(colouring_id, table)
    cache: dict[Rational, str] = {}

    def key_of(v: Rational) -> str:
        k = cache.get(v)
        if k is None:
            k = cache[v] = colour_key(fn(v))
        return k

    hits: list[list[int]] = []
    max_size = 0
    nodes = 0
    exhausted = True

    def visit(prefix: list[int], state, last: int) -> None:
        nonlocal max_size, nodes, exhausted
        if nodes >= budget:
            exhausted = False
            return
        nodes += 1
        max_size = max(max_size, len(prefix))
        if len(prefix) == target_size:
            hits.append(list(prefix))
        for j in range(last + 1, len(elements)):
            nxt = _extend_state(elements, state, elements[j], mode, key_of)
            if nxt is None:
                continue
            visit(prefix + [j], nxt, j)
            if not exhausted:
                return

    start = _extend_state(elements, (None, [], []), elements[root], mode, key_of)
    if start is not None:
        visit([root], start, root)
    return hits, max_size, exhausted, nodes


def _search_root_packed(args) -> tuple[list[list[int]], int, bool, int]:
    (elements_txt, root, budget, colouring_id, mode_value, target_size, prime_count) = args
    elements = [parse_rational(s) for s in elements_txt]
    table = PrimeTable(prime_count)
    return _search_root(
        elements, root, budget, colouring_id, CombinationMode(mode_value), target_size, table
    )


def search(
    colouring_id: str,
    universe: UniverseSpec,
    mode: CombinationMode,
    target_size: int,
    budget: int,
    workers: int = 1,
    table: PrimeTable | None = None,
) -> SearchResult:
    """Bounded DFS for monochromatic configurations over the universe.

    Extensions only move forward in canonical order, so every subset is
    visited at most once; branches die as soon as a new combination's colour
    key differs from the key fixed by the first combination seen.

    The node budget is split statically across root elements (remainder to the
    earliest roots), which keeps certificates, max_size and node counts
    identical for any worker count.
    """
    if target_size < 2:
        raise DomainError(f"target size must be >= 2, got {target_size}")
    if budget < 1:
        raise DomainError(f"budget must be >= 1, got {budget}")
    if workers < 1:
        raise DomainError(f"worker count must be >= 1, got {workers}")
    table = table or default_table()
    elements = universe.elements(table)
    roots = range(len(elements))
    share, extra = divmod(budget, max(1, len(elements)))
    root_budgets = [share + (1 if r < extra else 0) for r in roots]

    if workers > 1 and len(elements) > 1:
        payload = [
            (
                [str(x) for x in elements],
                r,
                root_budgets[r],
                colouring_id,
                mode.value,
                target_size,
                table.count,
            )
            for r in roots
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            per_root = list(pool.map(_search_root_packed, payload))
    else:
        per_root = [
            _search_root(elements, r, root_budgets[r], colouring_id, mode, target_size, table)
            for r in roots
        ]

    certificates = []
    max_size = 0
    exhausted = True
    nodes = 0
    for hits, root_max, root_exhausted, root_nodes in per_root:
        for idx in hits:
            certificates.append(
                check(colouring_id, [elements[i] for i in idx], mode, table)
            )
        max_size = max(max_size, root_max)
        exhausted = exhausted and root_exhausted
        nodes += root_nodes
    return SearchResult(
        certificates=certificates, max_size=max_size, exhausted=exhausted, nodes=nodes
    )


def naive_search(
    colouring_id: str,
    universe: UniverseSpec,
    mode: CombinationMode,
    target_size: int,
    table: PrimeTable | None = None,
) -> SearchResult:
    """Reference search: test every candidate subset from scratch via check.

    Levels grow by extending the monochromatic subsets of the previous level
    (sound because any subset of a monochromatic configuration is
    monochromatic); each candidate is still verified in full, with no shared
    state. Intended for small universes in tests.
    """
    table = table or default_table()
    elements = universe.elements(table)
    certificates = []
    max_size = 0
    level: list[tuple[int, ...]] = []
    for i in range(len(elements)):
        cert = check(colouring_id, [elements[i]], mode, table)
        if isinstance(cert.verdict, Monochromatic):
            level.append((i,))
    max_size = 1 if level else 0
    while level:
        nxt: list[tuple[int, ...]] = []
        for idx in level:
            for j in range(idx[-1] + 1, len(elements)):
                candidate = idx + (j,)
                cert = check(colouring_id, [elements[i] for i in candidate], mode, table)
                if isinstance(cert.verdict, Monochromatic):
                    nxt.append(candidate)
                    if len(candidate) == target_size:
                        certificates.append(cert)
        if nxt:
            max_size = len(nxt[0])
        level = nxt
    return SearchResult(
        certificates=certificates, max_size=max_size, exhausted=True, nodes=-1
    )


@dataclass(frozen=True)
class LawResult:
    name: str
    samples: int
    passed: bool
    counterexample: str | None = None

    def to_obj(self) -> dict:
        return {
            "name": self.name,
            "samples": self.samples,
            "passed": self.passed,
            "counterexample": self.counterexample,
        }


@dataclass(frozen=True)
class PropertyReport:
    seed: int
    samples: int
    laws: tuple[LawResult, ...]

    @property
    def all_passed(self) -> bool:
        return all(law.passed for law in self.laws)

    def to_obj(self) -> dict:
        return {
            "seed": self.seed,
            "samples": self.samples,
            "laws": [law.to_obj() for law in self.laws],
            "all_passed": self.all_passed,
        }


def _random_support(rng: random.Random, positions: list[int]) -> int:
    chosen = rng.sample(positions, rng.randint(1, min(6, len(positions))))
    return sum(1 << p for p in chosen)


def _random_terminating(rng: random.Random, base: int, span: int = 4) -> Rational:
    """Random x > 0 whose base-``base`` expansion terminates, via random digits."""
    x = Fraction(0)
    positions = rng.sample(range(-span, span + 1), rng.randint(1, 4))
    for pos in positions:
        x += rng.randint(1, base - 1) * Fraction(base) ** pos
    return x


def property_suite(
    seed: int,
    sample_count: int,
    overrides: dict[str, Callable] | None = None,
    table: PrimeTable | None = None,
) -> PropertyReport:
    """Seeded randomized checks of the digit-arithmetic laws.

    ``overrides`` may replace the functions under test by name ("end2",
    "start2", "expand") for fault-injection tests.
    """
    if sample_count < 1:
        raise DomainError(f"sample count must be >= 1, got {sample_count}")
    table = table or default_table()
    overrides = overrides or {}
    f_end2: Callable[[int], int] = overrides.get("end2", end2)
    f_start2: Callable[[int], int] = overrides.get("start2", start2)
    f_expand = overrides.get("expand", expand)

    def last_digit(x: Rational, n: int) -> tuple[int, int]:
        digits = f_expand(x, n, table).digits
        pos = min(digits)
        return pos, digits[pos]

    def lead_pos(x: Rational, n: int) -> int:
        return max(f_expand(x, n, table).digits)

    laws: list[LawResult] = []

    def run(name: str, one_sample: Callable[[random.Random], str | None]) -> None:
        rng = random.Random(f"{seed}:{name}")
        witness = None
        for _ in range(sample_count):
            witness = one_sample(rng)
            if witness is not None:
                break
        laws.append(
            LawResult(
                name=name,
                samples=sample_count,
                passed=witness is None,
                counterexample=witness,
            )
        )

    def disjoint_sum(rng: random.Random) -> str | None:
        pool = list(range(0, 40))
        rng.shuffle(pool)
        cut = rng.randint(1, len(pool) - 1)
        a = _random_support(rng, pool[:cut])
        b = _random_support(rng, pool[cut:])
        ok = (
            f_end2(a + b) == min(f_end2(a), f_end2(b))
            and f_start2(a + b) == max(f_start2(a), f_start2(b))
        )
        return None if ok else f"a={a} b={b}"

    def product_end(rng: random.Random) -> str | None:
        a, b = rng.randint(1, 1 << 30), rng.randint(1, 1 << 30)
        ok = f_end2(a * b) == f_end2(a) + f_end2(b)
        return None if ok else f"a={a} b={b}"

    def product_start(rng: random.Random) -> str | None:
        a, b = rng.randint(1, 1 << 30), rng.randint(1, 1 << 30)
        lift = f_start2(a * b) - (f_start2(a) + f_start2(b))
        return None if lift in (0, 1) else f"a={a} b={b}"

    def carry(rng: random.Random) -> str | None:
        i = rng.randint(0, 20)
        # both end at i with a zero digit right above it
        a = (1 << i) + (_random_support(rng, list(range(i + 2, i + 24))))
        b = (1 << i) + (_random_support(rng, list(range(i + 2, i + 24))))
        ok = f_end2(a + b) == i + 1
        return None if ok else f"a={a} b={b}"

    def primorial_end(rng: random.Random) -> str | None:
        t = rng.randint(1, 3)
        base = table.primorial(t)
        for _ in range(200):
            x = _random_terminating(rng, base)
            y = _random_terminating(rng, base)
            if last_digit(x, t)[1] == last_digit(y, t)[1]:
                break
        else:
            return None
        ex, ey = last_digit(x, t)[0], last_digit(y, t)[0]
        ok = last_digit(x * y, t)[0] == ex + ey
        return None if ok else f"t={t} x={x} y={y}"

    def primorial_start(rng: random.Random) -> str | None:
        t = rng.randint(1, 3)
        base = table.primorial(t)
        x = _random_terminating(rng, base)
        y = _random_terminating(rng, base)
        sx, sy = lead_pos(x, t), lead_pos(y, t)
        mx = x / Fraction(base) ** sx
        my = y / Fraction(base) ** sy
        s_prod = lead_pos(x * y, t)
        if mx * mx < base and my * my < base:
            ok = s_prod == sx + sy
        elif mx * mx > base and my * my > base:
            ok = s_prod == sx + sy + 1
        else:
            ok = s_prod in (sx + sy, sx + sy + 1)
        return None if ok else f"t={t} x={x} y={y}"

    def c3_closure(rng: random.Random) -> str | None:
        triple = c3_triple(rng)
        if triple is None:
            return None
        alpha_, beta_, gamma_, x, y, z = triple
        ok = all(v > 0 and _dyadic(v) for v in (x, y, z))
        return None if ok else f"alpha={alpha_} beta={beta_} gamma={gamma_}"

    run("disjoint-support-sum", disjoint_sum)
    run("binary-product-end", product_end)
    run("binary-product-start", product_start)
    run("same-end-carry", carry)
    run("primorial-product-end", primorial_end)
    run("primorial-product-start", primorial_start)
    run("c3-dyadic-closure", c3_closure)
    return PropertyReport(seed=seed, samples=sample_count, laws=tuple(laws))


def _dyadic(x: Rational) -> bool:
    d = x.denominator
    return d & (d - 1) == 0


def c3_triple(
    rng: random.Random, exponent_bound: int = 12
) -> tuple[Rational, Rational, Rational, Rational, Rational, Rational] | None:
    """Random (α,β,γ) of two-power pairs with positive distinct half-sums.

    Returns (α, β, γ, x, y, z) with x=(α+β−γ)/2, y=(α−β+γ)/2, z=(−α+β+γ)/2,
    or None when the draw fails the positivity/distinctness side conditions.
    """

    def c3_element() -> Rational:
        k = rng.randint(-exponent_bound, exponent_bound)
        l = rng.randint(-exponent_bound, k - 1) if k > -exponent_bound else k - 1
        return Fraction(2) ** k + Fraction(2) ** l

    alpha_, beta_, gamma_ = c3_element(), c3_element(), c3_element()
    x = (alpha_ + beta_ - gamma_) / 2
    y = (alpha_ - beta_ + gamma_) / 2
    z = (-alpha_ + beta_ + gamma_) / 2
    if x <= 0 or y <= 0 or z <= 0 or len({x, y, z}) != 3:
        return None
    return alpha_, beta_, gamma_, x, y, z
