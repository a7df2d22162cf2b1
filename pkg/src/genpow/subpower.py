"""Extensional subsets of A^n and the generated-subpower closure engine.

Tuples are encoded as row-major base-k integers with the first coordinate
most significant; a TupleSet keeps either a dense membership array over
the whole space or a sparse set of encodings.  The closure engine is a
semi-naive worklist: each round combines the newly discovered tuples with
everything known, in vectorized batches.  The result is the unique least
fixed point, independent of batching.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Sequence

import numpy as np

from .algebra import Algebra, OperationTable, evaluate
from .errors import BudgetExceededError, UniverseMismatchError

DENSE_THRESHOLD = 1 << 26  # largest k**n realized as a dense membership array
SPACE_BUDGET = 1 << 26  # largest k**n the enumerating constructors accept
STEP_BUDGET = 10**9  # closure combination applications
_ENCODING_LIMIT = 1 << 62  # encodings must fit comfortably in int64
_CHUNK_CELLS = 1 << 21  # grid cells evaluated per vectorized batch


def encode_tuple(t: Sequence[int], k: int) -> int:
    value = 0
    for a in t:
        value = value * k + a
    return value


def decode_tuple(encoding: int, k: int, n: int) -> tuple[int, ...]:
    out = [0] * n
    for i in range(n - 1, -1, -1):
        encoding, out[i] = divmod(encoding, k)
    return tuple(out)


class TupleSet:
    """A subset of A^n with integer-encoded members.

    Membership storage is dense (one byte per point of the whole space)
    when k**n fits under the threshold, sparse (a set of encodings)
    otherwise.  The two representations are observationally identical.
    """

    __slots__ = ("k", "n", "space", "_dense", "_sparse", "_count")

    def __init__(self, k: int, n: int, *, dense_threshold: int | None = None):
        if k < 1:
            raise ValueError(f"universe size must be >= 1, got {k}")
        if n < 1:
            raise ValueError(f"arity must be >= 1, got {n}")
        space = k**n
        if space > _ENCODING_LIMIT:
            raise BudgetExceededError(
                f"tuple space k**n = {space} exceeds the representable limit"
            )
        threshold = DENSE_THRESHOLD if dense_threshold is None else dense_threshold
        self.k = k
        self.n = n
        self.space = space
        if space <= threshold:
            self._dense: np.ndarray | None = np.zeros(space, dtype=bool)
            self._sparse: set[int] | None = None
        else:
            self._dense = None
            self._sparse = set()
        self._count = 0

    # -- construction ------------------------------------------------

    @classmethod
    def empty(cls, k: int, n: int, *, dense_threshold: int | None = None) -> "TupleSet":
        return cls(k, n, dense_threshold=dense_threshold)

    @classmethod
    def from_tuples(
        cls,
        k: int,
        n: int,
        tuples: Iterable[Sequence[int]],
        *,
        dense_threshold: int | None = None,
    ) -> "TupleSet":
        ts = cls(k, n, dense_threshold=dense_threshold)
        for t in tuples:
            ts.add(t)
        return ts

    @classmethod
    def from_encodings(
        cls,
        k: int,
        n: int,
        encodings: Iterable[int],
        *,
        dense_threshold: int | None = None,
    ) -> "TupleSet":
        ts = cls(k, n, dense_threshold=dense_threshold)
        for e in encodings:
            ts.add_encoding(int(e))
        return ts

    @classmethod
    def full(cls, k: int, n: int, *, dense_threshold: int | None = None) -> "TupleSet":
        ts = cls(k, n, dense_threshold=dense_threshold)
        if ts._dense is not None:
            ts._dense[:] = True
        else:
            ts._sparse = set(range(ts.space))
        ts._count = ts.space
        return ts

    def copy(self) -> "TupleSet":
        clone = TupleSet.__new__(TupleSet)
        clone.k = self.k
        clone.n = self.n
        clone.space = self.space
        clone._dense = None if self._dense is None else self._dense.copy()
        clone._sparse = None if self._sparse is None else set(self._sparse)
        clone._count = self._count
        return clone

    # -- membership --------------------------------------------------

    def encode(self, t: Sequence[int]) -> int:
        if len(t) != self.n:
            raise ValueError(f"expected a tuple of arity {self.n}, got {len(t)}")
        for a in t:
            if not 0 <= a < self.k:
                raise ValueError(f"coordinate {a} outside universe [0, {self.k})")
        return encode_tuple(t, self.k)

    def decode(self, encoding: int) -> tuple[int, ...]:
        return decode_tuple(encoding, self.k, self.n)

    def add(self, t: Sequence[int]) -> bool:
        return self.add_encoding(self.encode(t))

    def add_encoding(self, encoding: int) -> bool:
        if not 0 <= encoding < self.space:
            raise ValueError(f"encoding {encoding} outside [0, {self.space})")
        if self._dense is not None:
            if self._dense[encoding]:
                return False
            self._dense[encoding] = True
        else:
            if encoding in self._sparse:
                return False
            self._sparse.add(encoding)
        self._count += 1
        return True

    def has_encoding(self, encoding: int) -> bool:
        if self._dense is not None:
            return bool(self._dense[encoding])
        return encoding in self._sparse

    def __contains__(self, t: Sequence[int]) -> bool:
        return self.has_encoding(self.encode(t))

    def __len__(self) -> int:
        return self._count

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        for e in self.encodings():
            yield self.decode(int(e))

    def encodings(self) -> np.ndarray:
        """All member encodings, ascending, as an int64 array."""
        if self._dense is not None:
            return np.flatnonzero(self._dense).astype(np.int64)
        return np.array(sorted(self._sparse), dtype=np.int64)

    def contains_encodings(self, arr: np.ndarray) -> np.ndarray:
        if self._dense is not None:
            return self._dense[arr]
        sparse = self._sparse
        return np.fromiter((e in sparse for e in arr.tolist()), dtype=bool, count=arr.size)

    def add_encodings_array(self, arr: np.ndarray) -> np.ndarray:
        """Insert encodings in bulk; return the subset that was actually new."""
        if arr.size == 0:
            return arr
        arr = np.unique(arr)
        if self._dense is not None:
            fresh = arr[~self._dense[arr]]
            self._dense[fresh] = True
        else:
            sparse = self._sparse
            fresh_list = [e for e in arr.tolist() if e not in sparse]
            sparse.update(fresh_list)
            fresh = np.array(fresh_list, dtype=np.int64)
        self._count += fresh.size
        return fresh

    # -- comparisons and export ---------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TupleSet):
            return NotImplemented
        if (self.k, self.n, self._count) != (other.k, other.n, other._count):
            return False
        return np.array_equal(self.encodings(), other.encodings())

    def __repr__(self) -> str:
        kind = "dense" if self._dense is not None else "sparse"
        return f"TupleSet(k={self.k}, n={self.n}, size={self._count}, {kind})"

    def lines(self) -> Iterator[str]:
        """Export rows: base-k digits separated by spaces, ascending."""
        for t in self:
            yield " ".join(str(a) for a in t)


def is_full(ts: TupleSet) -> bool:
    """True iff the set is all of A^n."""
    return len(ts) == ts.space


def apply_pointwise(op: OperationTable, rows: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Apply an operation coordinatewise to a stack of equal-length tuples."""
    if len(rows) != op.arity:
        raise ValueError(
            f"operation {op.name!r} expects {op.arity} rows, got {len(rows)}"
        )
    n = len(rows[0])
    for row in rows:
        if len(row) != n:
            raise ValueError("rows must all have the same arity")
    return tuple(evaluate(op, tuple(row[i] for row in rows)) for i in range(n))


def equal_pair_tuples(
    k: int,
    m: int,
    *,
    budget: int | None = None,
    dense_threshold: int | None = None,
) -> TupleSet:
    """Tuples of length 2m where some designated pair (2i, 2i+1) is equal.

    The complement consists of tuples whose m designated pairs are all
    unequal, so the cardinality is k**(2m) - (k*k - k)**m.
    """
    if k < 1 or m < 1:
        raise ValueError("need k >= 1 and m >= 1")
    n = 2 * m
    space = k**n
    limit = SPACE_BUDGET if budget is None else budget
    if space > limit:
        raise BudgetExceededError(f"k**(2m) = {space} exceeds the budget {limit}")
    ts = TupleSet(k, n, dense_threshold=dense_threshold)
    weights = np.power(k, np.arange(n - 1, -1, -1), dtype=np.int64)
    for start in range(0, space, _CHUNK_CELLS):
        enc = np.arange(start, min(start + _CHUNK_CELLS, space), dtype=np.int64)
        mask = np.zeros(enc.size, dtype=bool)
        for i in range(m):
            left = (enc // weights[2 * i]) % k
            right = (enc // weights[2 * i + 1]) % k
            mask |= left == right
        ts.add_encodings_array(enc[mask])
    return ts


def _digit_matrix(encodings: np.ndarray, weights: np.ndarray, k: int) -> np.ndarray:
    """Shape (len(encodings), n) matrix of base-k digits."""
    return (encodings[:, None] // weights[None, :]) % k


def _grid_results(
    table: np.ndarray,
    digit_groups: Sequence[np.ndarray],
    k: int,
    weights: np.ndarray,
    chunk_cells: int,
) -> Iterator[np.ndarray]:
    """Result encodings of applying one operation to every argument combo.

    digit_groups[i] has shape (size_i, n); the grid is the cartesian
    product over rows of the groups, chunked along the first axis.
    """
    s = len(digit_groups)
    n = weights.size
    sizes = [g.shape[0] for g in digit_groups]
    tail = 1
    for size in sizes[1:]:
        tail *= size
    rows_per = max(1, chunk_cells // max(tail, 1))
    shapes = []
    for i in range(s):
        shape = [1] * s
        shape[i] = -1
        shapes.append(tuple(shape))
    for start in range(0, sizes[0], rows_per):
        head = digit_groups[0][start : start + rows_per]
        result = None
        for c in range(n):
            index = None
            for i in range(s):
                column = head[:, c] if i == 0 else digit_groups[i][:, c]
                column = column.reshape(shapes[i])
                index = column if index is None else index * k + column
            values = table[index] * weights[c]
            result = values if result is None else result + values
        yield result.ravel()


def _saturate(
    algebra: Algebra,
    result: TupleSet,
    old: np.ndarray,
    new: np.ndarray,
    step_budget: int,
    chunk_cells: int,
) -> TupleSet:
    """Drive (old | new) to the closure fixed point inside `result`.

    `old` must already be closed as a standalone set; every member of
    both arrays must already be present in `result`.
    """
    if not algebra.operations:
        return result
    k, n = result.k, result.n
    weights = np.power(k, np.arange(n - 1, -1, -1), dtype=np.int64)
    tables = [np.asarray(op.table, dtype=np.int64) for op in algebra.operations]
    steps = 0
    while new.size:
        old_digits = _digit_matrix(old, weights, k)
        new_digits = _digit_matrix(new, weights, k)
        produced: list[np.ndarray] = []
        for op, table in zip(algebra.operations, tables):
            s = op.arity
            # Every argument pattern that draws at least one tuple from
            # the new frontier; all-old combos were covered in earlier
            # rounds.
            for pattern in range(1, 1 << s):
                groups = []
                cells = 1
                for i in range(s):
                    use_new = (pattern >> (s - 1 - i)) & 1
                    g = new_digits if use_new else old_digits
                    groups.append(g)
                    cells *= g.shape[0]
                if cells == 0:
                    continue
                steps += cells
                if steps > step_budget:
                    raise BudgetExceededError(
                        f"closure exceeded the step budget of {step_budget} "
                        "combination applications"
                    )
                for res in _grid_results(table, groups, k, weights, chunk_cells):
                    fresh = result.add_encodings_array(res)
                    if fresh.size:
                        produced.append(fresh)
        old = np.concatenate([old, new])
        old.sort()
        new = np.sort(np.concatenate(produced)) if produced else np.empty(0, np.int64)
    return result


def closure(
    algebra: Algebra,
    seeds: TupleSet,
    *,
    step_budget: int | None = None,
    chunk_cells: int | None = None,
) -> TupleSet:
    """Least superset of the seeds closed under every operation, applied
    coordinatewise.  The seeds are not modified; the result inherits their
    dense/sparse representation.
    """
    if algebra.k != seeds.k:
        raise UniverseMismatchError(
            f"algebra universe {algebra.k} != tuple set universe {seeds.k}"
        )
    result = seeds.copy()
    if len(seeds) == 0:
        return result
    return _saturate(
        algebra,
        result,
        np.empty(0, np.int64),
        seeds.encodings(),
        STEP_BUDGET if step_budget is None else step_budget,
        _CHUNK_CELLS if chunk_cells is None else chunk_cells,
    )


def closure_extend(
    algebra: Algebra,
    closed: TupleSet,
    extra_encodings: Iterable[int],
    *,
    step_budget: int | None = None,
    chunk_cells: int | None = None,
) -> TupleSet:
    """Closure of closed | extras, assuming `closed` is already closed.

    Cheaper than re-closing from scratch: only combinations touching the
    added tuples are enumerated.
    """
    result = closed.copy()
    fresh = [e for e in extra_encodings if result.add_encoding(int(e))]
    if not fresh:
        return result
    return _saturate(
        algebra,
        result,
        closed.encodings(),
        np.array(sorted(fresh), dtype=np.int64),
        STEP_BUDGET if step_budget is None else step_budget,
        _CHUNK_CELLS if chunk_cells is None else chunk_cells,
    )
