"""Dichotomy criteria: does the n-th power of a finite algebra need
polynomially or exponentially many generators?

The exact decision for idempotent algebras scans covering pairs of proper
subsets (alpha, beta) and asks whether every basic operation is projective
for the pair: some coordinate j such that the j-th argument landing in
alpha (resp. beta) forces the result into alpha (resp. beta).  One such
pair certifies exponential growth; none certifies polynomial growth.

The other routes here are verification-style: close a structured seed set
(equal-pair tuples, bounded-switch tuples) under the operations and test
whether the full power is reached.  They apply to non-idempotent algebras
too but only answer for the sizes actually checked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterator, Optional, Sequence

from .algebra import Algebra, OperationTable, evaluate, first_non_idempotent
from .errors import (
    BudgetExceededError,
    NotIdempotentError,
    PreconditionError,
)
from .subpower import (
    SPACE_BUDGET,
    TupleSet,
    closure,
    closure_extend,
    equal_pair_tuples,
    is_full,
)

EXACT_BUDGET = 256  # largest k**n the exact minimum-size search accepts
EXACT_NODE_BUDGET = 20_000  # search-tree nodes before the exact search gives up


def _format_subset(mask: int) -> str:
    elements = [str(i) for i in range(mask.bit_length()) if mask >> i & 1]
    return "{" + ", ".join(elements) + "}"


@dataclass(frozen=True)
class SubsetPair:
    """Two proper subsets of {0..k-1} that jointly cover the universe."""

    k: int
    alpha: int  # bitmask
    beta: int  # bitmask

    def __post_init__(self):
        full = (1 << self.k) - 1
        for name, mask in (("alpha", self.alpha), ("beta", self.beta)):
            if not 0 < mask < full:
                raise PreconditionError(
                    f"{name} must be a proper nonempty subset of the universe"
                )
        if self.alpha | self.beta != full:
            raise PreconditionError("alpha and beta must cover the universe")

    @classmethod
    def from_elements(
        cls, k: int, alpha: Sequence[int], beta: Sequence[int]
    ) -> "SubsetPair":
        def mask(elements: Sequence[int]) -> int:
            m = 0
            for a in elements:
                if not 0 <= a < k:
                    raise PreconditionError(
                        f"element {a} outside universe [0, {k})"
                    )
                m |= 1 << a
            return m

        return cls(k, mask(alpha), mask(beta))

    def in_alpha(self, a: int) -> bool:
        return bool(self.alpha >> a & 1)

    def in_beta(self, a: int) -> bool:
        return bool(self.beta >> a & 1)

    def alpha_elements(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.k) if self.in_alpha(i))

    def beta_elements(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.k) if self.in_beta(i))

    def describe(self) -> str:
        return f"alpha={_format_subset(self.alpha)} beta={_format_subset(self.beta)}"


def iter_subset_pairs(k: int) -> Iterator[SubsetPair]:
    """All unordered covering pairs of proper subsets, masks ascending.

    The projectivity condition is symmetric in the two subsets, so each
    pair appears once, with the smaller mask first.
    """
    full = (1 << k) - 1
    for a in range(1, full):
        for b in range(a + 1, full):
            if a | b == full:
                yield SubsetPair(k, a, b)


def projective_coordinate(op: OperationTable, pair: SubsetPair) -> Optional[int]:
    """1-based coordinate witnessing projectivity for the pair, or None.

    Coordinate j works when for every argument tuple, args[j] in alpha
    forces the result into alpha, and likewise for beta.
    """
    if op.k != pair.k:
        raise PreconditionError(
            f"operation universe {op.k} != subset pair universe {pair.k}"
        )
    k, s = op.k, op.arity
    candidates = list(range(s))
    for index, args in enumerate(product(range(k), repeat=s)):
        value = op.table[index]
        v_alpha = pair.in_alpha(value)
        v_beta = pair.in_beta(value)
        candidates = [
            j
            for j in candidates
            if (v_alpha or not pair.in_alpha(args[j]))
            and (v_beta or not pair.in_beta(args[j]))
        ]
        if not candidates:
            return None
    return candidates[0] + 1


@dataclass(frozen=True)
class EgpDecision:
    """Outcome of the exact dichotomy decision for an idempotent algebra."""

    k: int
    egp: bool
    pair: Optional[SubsetPair]
    coordinates: tuple[tuple[str, int], ...] = ()
    pairs_checked: int = 0

    @property
    def verdict(self) -> str:
        return "EGP" if self.egp else "PGP"

    def render(self) -> list[str]:
        lines = [f"verdict: {self.verdict}"]
        if self.egp:
            assert self.pair is not None
            lines.append(f"alpha: {_format_subset(self.pair.alpha)}")
            lines.append(f"beta: {_format_subset(self.pair.beta)}")
            for name, j in self.coordinates:
                lines.append(f"projective coordinate for {name}: {j}")
        else:
            lines.append(f"pairs checked: {self.pairs_checked}")
        return lines


def decide_egp_idempotent(algebra: Algebra) -> EgpDecision:
    """Exact growth dichotomy for an idempotent algebra.

    Exponential iff some covering pair of proper subsets makes every
    basic operation projective; the first such pair in mask order is
    reported together with a witnessing coordinate per operation.
    Raises NotIdempotentError otherwise, since the scan only decides
    the question for idempotent algebras.
    """
    witness = first_non_idempotent(algebra)
    if witness is not None:
        op, a, v = witness
        raise NotIdempotentError(op.name, op.arity, a, v)
    checked = 0
    for pair in iter_subset_pairs(algebra.k):
        checked += 1
        coords = []
        for op in algebra.operations:
            j = projective_coordinate(op, pair)
            if j is None:
                break
            coords.append((op.name, j))
        else:
            return EgpDecision(
                k=algebra.k,
                egp=True,
                pair=pair,
                coordinates=tuple(coords),
                pairs_checked=checked,
            )
    return EgpDecision(k=algebra.k, egp=False, pair=None, pairs_checked=checked)


# -- switch-based generation ------------------------------------------


def count_switches(t: Sequence[int]) -> int:
    """Number of adjacent unequal positions."""
    return sum(1 for i in range(len(t) - 1) if t[i] != t[i + 1])


def count_switch_tuples(k: int, n: int, r: int) -> int:
    """|{t in A^n : t has at most r switches}| in closed form.

    A tuple with exactly i switches is i+1 constant runs: choose the i
    boundaries, k values for the first run, k-1 for each later run.
    """
    if k < 1 or n < 1 or r < 0:
        raise ValueError("need k >= 1, n >= 1, r >= 0")
    return sum(
        math.comb(n - 1, i) * k * (k - 1) ** i for i in range(min(r, n - 1) + 1)
    )


def switch_tuples(
    k: int,
    n: int,
    r: int,
    *,
    budget: int | None = None,
    dense_threshold: int | None = None,
) -> TupleSet:
    """All tuples of A^n with at most r switches, generated run by run."""
    limit = SPACE_BUDGET if budget is None else budget
    total = count_switch_tuples(k, n, r)
    if total > limit:
        raise BudgetExceededError(
            f"{total} bounded-switch tuples exceed the budget {limit}"
        )
    ts = TupleSet(k, n, dense_threshold=dense_threshold)
    for i in range(min(r, n - 1) + 1):
        for boundaries in combinations(range(1, n), i):
            cuts = (0,) + boundaries + (n,)
            lengths = [cuts[p + 1] - cuts[p] for p in range(i + 1)]
            for first in range(k):
                stack = [(1, (first,) * lengths[0], first)]
                while stack:
                    run, prefix, prev = stack.pop()
                    if run == i + 1:
                        ts.add(prefix)
                        continue
                    for v in range(k - 1, -1, -1):
                        if v != prev:
                            stack.append(
                                (run + 1, prefix + (v,) * lengths[run], v)
                            )
    return ts


@dataclass(frozen=True)
class SwitchEvidence:
    """Closure check: do the bounded-switch tuples generate the power?"""

    n: int
    r: int
    seed_count: int
    closure_count: int
    space: int
    full: bool

    def render(self) -> list[str]:
        return [
            f"n: {self.n}",
            f"r: {self.r}",
            f"seed-count: {self.seed_count}",
            f"closure-count: {self.closure_count}",
            f"space: {self.space}",
            f"full: {'yes' if self.full else 'no'}",
        ]


def switch_generation_evidence(
    algebra: Algebra,
    r: int,
    n: int,
    *,
    space_budget: int | None = None,
    step_budget: int | None = None,
    dense_threshold: int | None = None,
) -> SwitchEvidence:
    """Close the at-most-r-switch tuples of A^n and record the outcome."""
    seeds = switch_tuples(
        algebra.k, n, r, budget=space_budget, dense_threshold=dense_threshold
    )
    closed = closure(algebra, seeds, step_budget=step_budget)
    return SwitchEvidence(
        n=n,
        r=r,
        seed_count=len(seeds),
        closure_count=len(closed),
        space=seeds.space,
        full=is_full(closed),
    )


def is_r_switchable_at(
    algebra: Algebra,
    r: int,
    n: int,
    *,
    space_budget: int | None = None,
    step_budget: int | None = None,
) -> bool:
    """True iff the at-most-r-switch tuples generate all of A^n."""
    return switch_generation_evidence(
        algebra, r, n, space_budget=space_budget, step_budget=step_budget
    ).full


@dataclass(frozen=True)
class DGenEvidence:
    """Closure check: do the equal-pair tuples generate the power A^(2m)?"""

    m: int
    seed_count: int
    closure_count: int
    space: int
    full: bool

    def render(self) -> list[str]:
        return [
            f"m: {self.m}",
            f"seed-count: {self.seed_count}",
            f"closure-count: {self.closure_count}",
            f"space: {self.space}",
            f"full: {'yes' if self.full else 'no'}",
        ]


def equal_pair_evidence(
    algebra: Algebra,
    m: int,
    *,
    space_budget: int | None = None,
    step_budget: int | None = None,
    dense_threshold: int | None = None,
) -> DGenEvidence:
    """Close the tuples of A^(2m) with some designated equal pair.

    Fullness at some m at least k is polynomial-growth evidence; staying
    non-full at every m at least k characterizes exponential growth, but
    a bounded scan can only ever support, not certify, that direction.
    """
    seeds = equal_pair_tuples(
        algebra.k, m, budget=space_budget, dense_threshold=dense_threshold
    )
    closed = closure(algebra, seeds, step_budget=step_budget)
    return DGenEvidence(
        m=m,
        seed_count=len(seeds),
        closure_count=len(closed),
        space=seeds.space,
        full=is_full(closed),
    )


def equal_pair_generates(
    algebra: Algebra,
    m: int,
    *,
    space_budget: int | None = None,
    step_budget: int | None = None,
) -> bool:
    """True iff the designated-equal-pair tuples generate all of A^(2m)."""
    return equal_pair_evidence(
        algebra, m, space_budget=space_budget, step_budget=step_budget
    ).full


# -- generating-set sizes ----------------------------------------------


@dataclass(frozen=True)
class GeneratingSet:
    """A generating set of A^n found by search.

    mode "exact" means provably minimum; "greedy" is an upper bound.
    """

    n: int
    size: int
    mode: str
    generators: tuple[tuple[int, ...], ...] = field(repr=False)


def _exact_minimum(
    algebra: Algebra, n: int, step_budget: int | None, node_budget: int
) -> tuple[int, ...]:
    space = algebra.k**n
    nodes = 0

    def extend(chosen: list[int], closed: TupleSet, target: int) -> Optional[list[int]]:
        nonlocal nodes
        if is_full(closed):
            return chosen
        if len(chosen) == target:
            return None
        start = chosen[-1] + 1 if chosen else 0
        for e in range(start, space):
            if closed.has_encoding(e):
                # Anything a minimum set picks next is outside the
                # closure of what it already picked.
                continue
            nodes += 1
            if nodes > node_budget:
                raise BudgetExceededError(
                    f"exact search exceeded {node_budget} nodes at k**n = {space}"
                )
            grown = closure_extend(algebra, closed, [e], step_budget=step_budget)
            found = extend(chosen + [e], grown, target)
            if found is not None:
                return found
        return None

    for target in range(1, space + 1):
        found = extend([], TupleSet(algebra.k, n), target)
        if found is not None:
            return tuple(found)
    raise AssertionError("the full space generates itself")


def _greedy_upper_bound(
    algebra: Algebra, n: int, step_budget: int | None
) -> tuple[int, ...]:
    space = algebra.k**n
    closed = TupleSet(algebra.k, n)
    chosen: list[int] = []
    for e in range(space):
        if not closed.has_encoding(e):
            chosen.append(e)
            closed = closure_extend(algebra, closed, [e], step_budget=step_budget)
            if is_full(closed):
                break
    return tuple(chosen)


def min_generating_size(
    algebra: Algebra,
    n: int,
    *,
    mode: str = "auto",
    exact_budget: int = EXACT_BUDGET,
    node_budget: int = EXACT_NODE_BUDGET,
    space_budget: int | None = None,
    step_budget: int | None = None,
) -> GeneratingSet:
    """Smallest (mode "exact") or small (mode "greedy") generating set of A^n.

    The exact search is iterative-deepening over ascending encodings and
    returns the lexicographically least minimum set; it refuses spaces
    larger than exact_budget and searches larger than node_budget (deep
    minimum sets make the tree explode well before the space cap does).
    Mode "auto" picks exact when affordable.
    """
    if n < 1:
        raise PreconditionError(f"power must be >= 1, got {n}")
    if mode not in ("auto", "exact", "greedy"):
        raise PreconditionError(f"unknown search mode {mode!r}")
    space = algebra.k**n
    limit = SPACE_BUDGET if space_budget is None else space_budget
    if space > limit:
        raise BudgetExceededError(f"k**n = {space} exceeds the budget {limit}")
    if not algebra.operations:
        # Closure is the identity, so every tuple must be a generator.
        ts = TupleSet.full(algebra.k, n)
        return GeneratingSet(n=n, size=space, mode="exact", generators=tuple(ts))
    if mode == "auto":
        mode = "exact" if space <= exact_budget else "greedy"
    if mode == "exact":
        if space > exact_budget:
            raise BudgetExceededError(
                f"k**n = {space} exceeds the exact-search budget {exact_budget}"
            )
        encodings = _exact_minimum(algebra, n, step_budget, node_budget)
    else:
        encodings = _greedy_upper_bound(algebra, n, step_budget)
    probe = TupleSet(algebra.k, n)
    generators = tuple(probe.decode(e) for e in encodings)
    return GeneratingSet(n=n, size=len(encodings), mode=mode, generators=generators)


@dataclass(frozen=True)
class GrowthRow:
    n: int
    size: int
    mode: str


@dataclass(frozen=True)
class GrowthProfile:
    k: int
    rows: tuple[GrowthRow, ...]
    note: Optional[str] = None

    def to_csv(self) -> str:
        out = ["n,size,mode"]
        out.extend(f"{row.n},{row.size},{row.mode}" for row in self.rows)
        return "\n".join(out) + "\n"


def growth_profile(
    algebra: Algebra,
    n_max: int,
    *,
    mode: str = "exact",
    exact_budget: int = EXACT_BUDGET,
    node_budget: int = EXACT_NODE_BUDGET,
    space_budget: int | None = None,
    step_budget: int | None = None,
) -> GrowthProfile:
    """Generating-set sizes of A^1 .. A^n_max, one row per power.

    mode "exact" falls back to greedy on rows where the exact search is
    over budget, either by space or by search-tree size (the per-row mode
    column records which happened); rows past the greedy budget are
    omitted and noted instead of raising.
    """
    if n_max < 1:
        raise PreconditionError(f"n_max must be >= 1, got {n_max}")
    if mode not in ("exact", "greedy"):
        raise PreconditionError(f"unknown growth mode {mode!r}")
    rows = []
    note = None
    for n in range(1, n_max + 1):
        row_mode = mode
        if mode == "exact" and algebra.k**n > exact_budget:
            row_mode = "greedy"
        gs = None
        try:
            gs = min_generating_size(
                algebra,
                n,
                mode=row_mode,
                exact_budget=exact_budget,
                node_budget=node_budget,
                space_budget=space_budget,
                step_budget=step_budget,
            )
        except BudgetExceededError:
            if row_mode == "exact":
                try:
                    gs = min_generating_size(
                        algebra,
                        n,
                        mode="greedy",
                        space_budget=space_budget,
                        step_budget=step_budget,
                    )
                except BudgetExceededError as exc:
                    note = f"rows from n = {n} omitted: {exc}"
                    break
            else:
                note = f"rows from n = {n} omitted: greedy scan over budget"
                break
        rows.append(GrowthRow(n=gs.n, size=gs.size, mode=gs.mode))
    return GrowthProfile(k=algebra.k, rows=tuple(rows), note=note)
