"""Integer partitions, plane partitions and the MacMahon function."""

import threading
from fractions import Fraction

from .series import QLaurent

PARTITION_ORACLE_MAX = 40
PLANE_PARTITION_ORACLE_MAX = 12

_table = [1]
_lock = threading.Lock()


def partition_count(k):
    """Number of partitions of k, by Euler's pentagonal-number recurrence."""
    if k < 0:
        raise ValueError("k must be non-negative")
    with _lock:
        while len(_table) <= k:
            n = len(_table)
            total = 0
            j = 1
            while True:
                g1 = j * (3 * j - 1) // 2
                if g1 > n:
                    break
                sign = 1 if j % 2 else -1
                total += sign * _table[n - g1]
                g2 = g1 + j
                if g2 <= n:
                    total += sign * _table[n - g2]
                j += 1
            _table.append(total)
        return _table[k]


def partition_count_oracle(k):
    """Count partitions of k by enumerating non-increasing summand lists."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k > PARTITION_ORACLE_MAX:
        raise ValueError(f"oracle is limited to k <= {PARTITION_ORACLE_MAX}")

    def walk(remaining, largest):
        if remaining == 0:
            return 1
        return sum(walk(remaining - part, part)
                   for part in range(min(remaining, largest), 0, -1))

    return walk(k, k)


def _partitions_below(total, bound):
    # partitions (as tuples) of exactly `total` whose i-th part is <= bound[i]
    def walk(i, remaining, cap, acc):
        if remaining == 0:
            yield tuple(acc)
            return
        if i >= len(bound):
            return
        for part in range(min(remaining, cap, bound[i]), 0, -1):
            acc.append(part)
            yield from walk(i + 1, remaining - part, part, acc)
            acc.pop()

    yield from walk(0, total, total, [])


def plane_partitions(n):
    """Yield plane partitions of n as tuples of rows (each row a partition)."""
    if n < 0:
        raise ValueError("n must be non-negative")

    def walk(remaining, prev):
        if remaining == 0:
            yield ()
            return
        for size in range(remaining, 0, -1):
            for row in _partitions_below(size, prev):
                for rest in walk(remaining - size, row):
                    yield (row,) + rest

    yield from walk(n, (n,) * max(n, 1))


def plane_partition_oracle(n):
    """Count plane partitions of n by exhaustive enumeration of monotone arrays."""
    if n > PLANE_PARTITION_ORACLE_MAX:
        raise ValueError(f"oracle is limited to n <= {PLANE_PARTITION_ORACLE_MAX}")
    return sum(1 for _ in plane_partitions(n))


def mcmahon_log(order, sign=1):
    """log M(sign*q) = sum_N sigma_2(N)/N (sign*q)^N, truncated at q^order."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    c = {}
    for n in range(1, order + 1):
        sigma2 = sum(d * d for d in range(1, n + 1) if n % d == 0)
        c[n] = Fraction(sigma2, n) * (sign ** n)
    return QLaurent(c, 0, order)


def mcmahon_series(order, sign=1):
    """M(sign*q) = prod_n (1 - (sign*q)^n)^(-n), exact to q^order."""
    if order < 1:
        raise ValueError("order must be positive")
    return mcmahon_log(order, sign).exp()
