"""Slow reference implementations the test suite checks the engine against.

Everything here works on plain python tuples and sets, rescans from
scratch every pass, and shares no code with the package internals.
"""

import itertools

import numpy as np

from genpow import OperationTable


def apply_op(op, column):
    index = 0
    for a in column:
        index = index * op.k + a
    return op.table[index]


def brute_closure(algebra, seeds):
    """Fixed point by full rescan; only usable for tiny powers."""
    current = set(seeds)
    if not algebra.operations or not current:
        return frozenset(current)
    width = len(next(iter(current)))
    changed = True
    while changed:
        changed = False
        snapshot = list(current)
        for op in algebra.operations:
            for args in itertools.product(snapshot, repeat=op.arity):
                image = tuple(
                    apply_op(op, [row[i] for row in args]) for i in range(width)
                )
                if image not in current:
                    current.add(image)
                    changed = True
    return frozenset(current)


def brute_equal_pair_tuples(k, m):
    out = set()
    for t in itertools.product(range(k), repeat=2 * m):
        if any(t[2 * i] == t[2 * i + 1] for i in range(m)):
            out.add(t)
    return out


def brute_switch_count(t):
    return sum(1 for i in range(len(t) - 1) if t[i] != t[i + 1])


def brute_switch_tuples(k, n, r):
    return {
        t
        for t in itertools.product(range(k), repeat=n)
        if brute_switch_count(t) <= r
    }


def brute_preserves(op, members):
    """Does op map tuples of members back into the member set?"""
    rows = list(members)
    if not rows:
        return True
    width = len(rows[0])
    for args in itertools.product(rows, repeat=op.arity):
        image = tuple(apply_op(op, [row[i] for row in args]) for i in range(width))
        if image not in members:
            return False
    return True


def numpy_preserves(op, member_tuples):
    """Exhaustive preservation check, vectorized over all argument choices.

    Same answer as brute_preserves; usable when the member count raised to
    the operation arity is large for python loops but fine as an array.
    """
    rows = sorted(member_tuples)
    if not rows:
        return True
    k = op.k
    arr = np.array(rows, dtype=np.int64)
    count, width = arr.shape
    index = None
    for pos in range(op.arity):
        shape = [1] * op.arity + [width]
        shape[pos] = count
        d = arr.reshape(shape)
        index = d if index is None else index * k + d
    images = np.asarray(op.table, dtype=np.int64)[index]
    weights = np.power(k, np.arange(width - 1, -1, -1), dtype=np.int64)
    encodings = (images * weights).sum(axis=-1)
    mask = np.zeros(k**width, dtype=bool)
    mask[(arr * weights).sum(axis=1)] = True
    return bool(mask[encodings].all())


def random_idempotent_binary(k, rng, name="f"):
    table = [rng.randrange(k) for _ in range(k * k)]
    for a in range(k):
        table[a * k + a] = a
    return OperationTable(name=name, arity=2, k=k, table=tuple(table))
