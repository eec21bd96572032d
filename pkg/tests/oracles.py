"""Independent brute-force oracles the tests check library results against.

These deliberately use different algorithms from the library: permutation
sums instead of cofactor expansion, minor enumeration instead of
elimination, tableau enumeration instead of hook contents, subset
enumeration instead of branch and bound.
"""

from fractions import Fraction
from itertools import combinations, permutations


def det_permutation_sum(rows):
    """Determinant as the signed sum over permutations."""
    n = len(rows)
    total = None
    for perm in permutations(range(n)):
        sign = _perm_sign(perm)
        term = rows[0][perm[0]]
        for i in range(1, n):
            term = term * rows[i][perm[i]]
        term = term * sign
        total = term if total is None else total + term
    return total


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def rank_by_minors(rows):
    """Largest k with some nonzero k x k minor, determinants over Fraction."""
    if not rows or not rows[0]:
        return 0
    nrows, ncols = len(rows), len(rows[0])
    for k in range(min(nrows, ncols), 0, -1):
        for rsel in combinations(range(nrows), k):
            for csel in combinations(range(ncols), k):
                minor = [[Fraction(rows[i][j]) for j in csel] for i in rsel]
                if det_permutation_sum(minor) != 0:
                    return k
    return 0


def monomial_dimension_brute(monomials, nvars):
    """Largest coordinate subspace avoiding every generator support."""
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in monomials]
    if any(not s for s in supports):
        return -1
    best = -1
    for size in range(nvars, -1, -1):
        for subset in combinations(range(nvars), size):
            s = set(subset)
            if all(not sup <= s for sup in supports):
                return size
    return best


def count_ssyt(shape, max_entry):
    """Semistandard Young tableaux of the given shape, entries in 1..max_entry."""
    shape = [r for r in shape if r]
    if not shape:
        return 1
    rows = len(shape)

    def fill(cells, idx, tableau):
        if idx == len(cells):
            return 1
        i, j = cells[idx]
        lo = 1
        if j > 0:
            lo = max(lo, tableau[(i, j - 1)])
        if i > 0:
            lo = max(lo, tableau[(i - 1, j)] + 1)
        total = 0
        for value in range(lo, max_entry + 1):
            tableau[(i, j)] = value
            total += fill(cells, idx + 1, tableau)
        tableau.pop((i, j), None)
        return total

    cells = [(i, j) for i in range(rows) for j in range(shape[i])]
    return fill(cells, 0, {})


def partitions_brute(d, max_rows):
    """All weakly decreasing tuples of positive parts summing to d."""
    found = set()

    def rec(remaining, cap, prefix):
        if remaining == 0:
            found.add(tuple(prefix))
            return
        if len(prefix) >= max_rows:
            return
        for part in range(1, min(cap, remaining) + 1):
            rec(remaining - part, part, prefix + [part])

    rec(d, d, [])
    return found
