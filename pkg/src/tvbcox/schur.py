"""Partition combinatorics: Schur dimensions, the Cauchy identity, gradings."""

from fractions import Fraction
from math import comb


def normalize_partition(parts):
    """Trim trailing zeros and validate weak decrease."""
    parts = list(parts)
    while parts and parts[-1] == 0:
        parts.pop()
    for a, b in zip(parts, parts[1:]):
        if a < b:
            raise ValueError(f"not weakly decreasing: {parts}")
    if parts and parts[-1] < 0:
        raise ValueError(f"negative part in partition: {parts}")
    return tuple(parts)


def partitions_bounded(d: int, max_rows: int):
    """All partitions of d with at most max_rows rows, reverse-lex order."""
    if d < 0:
        return []
    out = []

    def build(remaining, cap, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        if len(prefix) == max_rows:
            return
        for part in range(min(cap, remaining), 0, -1):
            prefix.append(part)
            build(remaining - part, part, prefix)
            prefix.pop()

    build(d, d, [])
    return out


def partition_weight(parts):
    return sum(parts)


def row_count(parts):
    return len(normalize_partition(parts))


def hook_length(parts, i: int, j: int) -> int:
    """Hook length of cell (i, j), 0-based, in the diagram of parts."""
    arm = parts[i] - j - 1
    leg = sum(1 for k in range(i + 1, len(parts)) if parts[k] > j)
    return arm + leg + 1


def schur_dim(parts, n: int) -> int:
    """dim of the Schur module S_parts(K^n) via the hook content formula.

    Zero when the partition has more rows than n.  The product of the
    contents over the product of the hooks is an integer; the division is
    done once at the end and checked.
    """
    parts = normalize_partition(parts)
    if len(parts) > n:
        return 0
    value = Fraction(1)
    for i, row in enumerate(parts):
        for j in range(row):
            value *= Fraction(n + j - i, hook_length(parts, i, j))
    if value.denominator != 1:
        raise AssertionError(f"hook content product not integral for {parts}, n={n}")
    return int(value)


def sym_power_dim(space_dim: int, d: int) -> int:
    """dim Sym^d of a space of the given dimension."""
    if d == 0:
        return 1
    return comb(space_dim + d - 1, d)


def cauchy_verify(d: int, e: int, v: int):
    """Check sum of dim S_l(K^e) * dim S_l(K^v) over l |- d against Sym^d(K^(e*v)).

    Returns (equal, lhs, rhs).
    """
    lhs = 0
    for parts in partitions_bounded(d, min(e, v)):
        lhs += schur_dim(parts, e) * schur_dim(parts, v)
    rhs = sym_power_dim(e * v, d)
    return lhs == rhs, lhs, rhs


def dual_weight(weight):
    """Dual of a GL weight: reverse the tuple and negate each entry."""
    weight = tuple(weight)
    for a, b in zip(weight, weight[1:]):
        if a < b:
            raise ValueError(f"not weakly decreasing: {weight}")
    return tuple(-x for x in reversed(weight))


def fundamental_weight(ell: int, r: int):
    """(1,...,1,0,...,0) with ell ones in length r."""
    if not 0 <= ell <= r:
        raise ValueError("need 0 <= ell <= r")
    return tuple(1 if i < ell else 0 for i in range(r))


def picard_degree(kind, n, size=None):
    """Bidegree of a Cox ring generator in Pic = Z x Z.

    Kinds: "x", "Y", "W", "W_tau", "P" (flag minor on size columns),
    "P0" (flag minor with the 0-column, size = |tau|).
    """
    if kind == "x":
        return (-1, 0)
    if kind == "Y":
        return (1, 1)
    if kind in ("W", "W_tau"):
        return (n + 1, n)
    if kind == "P":
        if size is None:
            raise ValueError("P needs the column-set size")
        return (size, size)
    if kind == "P0":
        if size is None:
            raise ValueError("P0 needs the column-set size")
        return (size + 1, size + 1)
    raise ValueError(f"unknown generator kind {kind!r}")


def cauchy_table(max_degree: int, e: int, v: int):
    """Rows (d, lhs, rhs, equal) for d = 0..max_degree."""
    rows = []
    for d in range(max_degree + 1):
        equal, lhs, rhs = cauchy_verify(d, e, v)
        rows.append((d, lhs, rhs, equal))
    return rows
