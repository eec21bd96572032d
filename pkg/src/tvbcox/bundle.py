"""Toric vector bundles given by a matrix pair (M, D).

M is a d x s rational matrix whose rows generate the linear ideal of the
fiber data; D is an n x s integer matrix (the diagram) with one row per ray
of the fan.  The bundle rank is r = s - d.
"""

import math
from fractions import Fraction
from itertools import combinations

from .linalg import IntMatrix, RatMatrix, rational_rank


class BundleData:
    """The (M, D) pair with its basic sanity checks."""

    __slots__ = ("n", "s", "d", "m", "diagram", "label")

    def __init__(self, m, diagram, label=None):
        if diagram.cols != m.cols:
            raise ValueError("M and D must have the same number of columns")
        d = rational_rank(m)
        if d != m.rows:
            raise ValueError(f"M has rank {d}, expected full row rank {m.rows}")
        if d < 1:
            raise ValueError("M must have at least one row")
        if m.cols <= d:
            raise ValueError("need s > d so that the bundle rank s - d is positive")
        if diagram.rows < 1:
            raise ValueError("the diagram needs at least one row")
        self.n = diagram.rows
        self.s = m.cols
        self.d = d
        self.m = m
        self.diagram = diagram
        self.label = label

    @property
    def rank(self):
        return self.s - self.d

    def __repr__(self):
        tag = f" {self.label!r}" if self.label else ""
        return f"BundleData{tag}(n={self.n}, s={self.s}, d={self.d})"


class BundleClass:
    __slots__ = ("sparse", "uniform", "hypersurface", "rank")

    def __init__(self, sparse, uniform, hypersurface, rank):
        self.sparse = sparse
        self.uniform = uniform
        self.hypersurface = hypersurface
        self.rank = rank

    def as_dict(self):
        return {
            "sparse": self.sparse,
            "uniform": self.uniform,
            "hypersurface": self.hypersurface,
            "rank": self.rank,
        }

    def __repr__(self):
        return f"BundleClass({self.as_dict()})"


def common_minimal_columns(b, rays):
    """Columns where every row of D indexed by rays attains its row minimum."""
    rays = sorted(set(rays))
    if not rays:
        raise ValueError("the ray subset must be nonempty")
    if rays[0] < 1 or rays[-1] > b.n:
        raise ValueError(f"ray index out of range 1..{b.n}")
    common = set(range(1, b.s + 1))
    for i in rays:
        row = b.diagram.row(i - 1)
        low = min(row)
        common &= {j + 1 for j, x in enumerate(row) if x == low}
        if not common:
            break
    return common


def restricted_rank(b, rays):
    """Rank of M on the common-minimal column set (0 when that set is empty)."""
    cols = common_minimal_columns(b, rays)
    if not cols:
        return 0
    return rational_rank(b.m.column_submatrix([j - 1 for j in sorted(cols)]))


def _rank_table(b):
    """restricted_rank for every nonempty subset of rays, keyed by frozenset."""
    table = {}
    rays = list(range(1, b.n + 1))
    for size in range(1, b.n + 1):
        for subset in combinations(rays, size):
            table[frozenset(subset)] = restricted_rank(b, subset)
    return table


def is_complete_intersection(b, summands=1, _table=None):
    """Complete-intersection test for the bundle tensored with K^summands.

    The criterion quantifies over ray subsets A with |A| >= 2 and i in A:
    1 + l*m_{i} < |A| + l*m_A.  Singletons are excluded: for A = {i} the
    inequality degenerates to 1 + m < 1 + m, which is never true.
    """
    if summands < 1:
        raise ValueError("the number of summands must be at least 1")
    table = _table if _table is not None else _rank_table(b)
    for subset, m_a in table.items():
        if len(subset) < 2:
            continue
        for i in subset:
            m_i = table[frozenset((i,))]
            if not (1 + summands * m_i < len(subset) + summands * m_a):
                return False
    return True


def ci_stability(b, with_witness=False):
    """Largest l such that the l-fold sum is still a complete intersection.

    Computed two ways, which must agree: by incrementing l, and by the
    closed form min over (i, A) with m_{i} > m_A of
    ceil((|A|-1)/(m_{i}-m_A)) - 1.  Returns math.inf when no pair binds.
    """
    table = _rank_table(b)
    if not is_complete_intersection(b, 1, _table=table):
        raise ValueError("not a complete intersection at l = 1")
    best = math.inf
    witness = None
    for subset, m_a in table.items():
        if len(subset) < 2:
            continue
        for i in subset:
            m_i = table[frozenset((i,))]
            if m_i > m_a:
                bound = -((len(subset) - 1) // -(m_i - m_a)) - 1  # ceil - 1
                if bound < best:
                    best = bound
                    witness = (i, tuple(sorted(subset)))
    if best is not math.inf:
        # cross-check the closed form by direct iteration
        for ell in range(1, best + 1):
            if not is_complete_intersection(b, ell, _table=table):
                raise AssertionError(
                    f"closed form {best} disagrees with iteration at l = {ell}"
                )
        if is_complete_intersection(b, best + 1, _table=table):
            raise AssertionError(f"still CI at l = {best + 1}, closed form {best}")
    if with_witness:
        return best, witness
    return best


def uniform_sparse_stability(r: int, s: int) -> int:
    """CI-stability of a sparse uniform bundle with matroid U^s_r.

    The largest l with l < (s-1)/(s-r), i.e. ceil((s-1)/(s-r)) - 1.
    """
    if not 1 <= r < s:
        raise ValueError("need 1 <= r < s")
    return -((s - 1) // -(s - r)) - 1


def classify(b):
    sparse = all(
        sum(1 for x in b.diagram.row(i) if x != 0) <= 1 for i in range(b.n)
    )
    uniform = True
    cols = range(b.s)
    for subset in combinations(cols, b.d):
        sub = b.m.column_submatrix(subset)
        if rational_rank(sub) < b.d:
            uniform = False
            break
    hypersurface = b.d == 1 and b.s == b.rank + 1
    return BundleClass(sparse, uniform, hypersurface, b.rank)


def vandermonde_matrix(d: int, s: int):
    """d x s Vandermonde on nodes 1..s; all maximal minors are nonzero."""
    return RatMatrix(
        d, s, [Fraction(node**k) for k in range(d) for node in range(1, s + 1)]
    )


def tangent_bundle(n: int):
    """Tangent bundle of P^n: M the all-ones row, D the identity."""
    if n < 1:
        raise ValueError("n must be at least 1")
    m = RatMatrix(1, n + 1, [Fraction(1)] * (n + 1))
    return BundleData(m, IntMatrix.identity(n + 1), label=f"tangent(P^{n})")


def kaneyama_bundle(weights):
    """Sparse hypersurface bundle with diagonal diagram entries a_i > 0."""
    weights = list(weights)
    if any(a <= 0 for a in weights):
        raise ValueError("diagonal entries must be positive")
    s = len(weights)
    m = RatMatrix(1, s, [Fraction(1)] * s)
    return BundleData(m, IntMatrix.diagonal(weights), label="kaneyama")


def uniform_sparse_bundle(d, s, positions=None):
    """Uniform bundle with a sparse diagram.

    positions: one entry per diagram row, either None (zero row) or a
    (column, value) pair with value > 0 and 1-based column.  Defaults to the
    s x s identity.  M is the Vandermonde matrix, hence no vanishing minors.
    """
    if positions is None:
        positions = [(j, 1) for j in range(1, s + 1)]
    rows = []
    seen = set()
    for pos in positions:
        row = [0] * s
        if pos is not None:
            col, value = pos
            if not 1 <= col <= s:
                raise ValueError(f"column {col} out of range")
            if value <= 0:
                raise ValueError("sparse diagram entries must be positive")
            if col in seen:
                raise ValueError(f"two nonzero entries in column {col}")
            seen.add(col)
            row[col - 1] = value
        rows.append(row)
    return BundleData(
        vandermonde_matrix(d, s),
        IntMatrix.from_rows(rows),
        label=f"uniform-sparse(d={d}, s={s})",
    )


def make_bundle(kind, *args, **kwargs):
    builders = {
        "tangent": tangent_bundle,
        "kaneyama": kaneyama_bundle,
        "uniform_sparse": uniform_sparse_bundle,
    }
    if kind not in builders:
        raise ValueError(f"unknown bundle kind {kind!r}")
    return builders[kind](*args, **kwargs)


def example_514_bundle():
    """The rank-5 bundle over P^2 with the all-ones row and the 3x6 diagram."""
    m = RatMatrix(1, 6, [Fraction(1)] * 6)
    diagram = IntMatrix.from_rows(
        [
            [4, 0, 0, 1, 3, 2],
            [0, 4, 0, 2, 1, 3],
            [0, 0, 4, 3, 2, 1],
        ]
    )
    return BundleData(m, diagram, label="example-5.14")


def region_table(r_max: int, s_max: int):
    """Stability of sparse U^s_r bundles over the (r, s) grid.

    Returns (rows, boundary_lines): rows are (r, s, stability) and each
    boundary line l*(s - r) = s - 1 is reported as (l, slope, intercept)
    for s as a function of r.
    """
    if not (2 <= r_max < s_max):
        raise ValueError("need 2 <= r_max < s_max")
    rows = []
    max_stab = 1
    for r in range(1, r_max + 1):
        for s in range(r + 1, s_max + 1):
            stab = uniform_sparse_stability(r, s)
            max_stab = max(max_stab, stab)
            rows.append((r, s, stab))
    lines = []
    for ell in range(2, max_stab + 2):
        # l(s - r) = s - 1  <=>  s = (l r - 1)/(l - 1)
        lines.append((ell, Fraction(ell, ell - 1), Fraction(-1, ell - 1)))
    return rows, lines


def region_csv(rows):
    out = ["r,s,stability"]
    for r, s, stab in rows:
        out.append(f"{r},{s},{stab}")
    return "\n".join(out) + "\n"


def region_svg(rows, lines, cell=32, margin=40):
    """Scatter of the stability region with the boundary lines."""
    r_max = max(r for r, _, _ in rows)
    s_max = max(s for _, s, _ in rows)
    width = margin * 2 + cell * r_max
    height = margin * 2 + cell * s_max

    def x(r):
        return margin + cell * r

    def y(s):
        return height - margin - cell * s

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<line x1="{x(0)}" y1="{y(0)}" x2="{x(r_max)}" y2="{y(0)}" stroke="black"/>',
        f'<line x1="{x(0)}" y1="{y(0)}" x2="{x(0)}" y2="{y(s_max)}" stroke="black"/>',
    ]
    for ell, slope, intercept in lines:
        r0, r1 = 1, r_max
        s0 = slope * r0 + intercept
        s1 = slope * r1 + intercept
        parts.append(
            f'<line x1="{x(r0)}" y1="{y(float(s0))}" x2="{x(r1)}" y2="{y(float(s1))}" '
            f'stroke="gray" stroke-dasharray="4"/>'
            f'<text x="{x(r1) + 4}" y="{y(float(s1))}" font-size="10">l = {ell}</text>'
        )
    for r, s, stab in rows:
        parts.append(
            f'<circle cx="{x(r)}" cy="{y(s)}" r="3" fill="black"/>'
            f'<text x="{x(r) + 4}" y="{y(s) - 4}" font-size="8">{stab}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
