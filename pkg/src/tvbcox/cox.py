"""Cox ring presentations of P(T_n tensor K^m) and their verifications.

Everything here is specific to the tangent bundle of projective space:
the Euler relations, the degree-(n+1, n) determinantal generators, the
presentation map into the Laurent/polynomial target ring, the quiver-style
initial ideal, and the Plucker identification at n = 2.
"""

import time

from itertools import combinations

from . import poly
from .poly import (
    Ideal,
    LexOrder,
    PolyRing,
    RingMap,
    WeightOrder,
    grevlex,
    ideal_equal,
    is_groebner_basis,
    leading_monomials,
    monomial_dimension,
    ring_map_kernel,
    symbolic_det,
    weight_initial,
)
from .schur import picard_degree


def x_name(j):
    return f"x{j}"


def y_name(i, j):
    return f"Y{i}_{j}"


def t_name(j):
    return f"t{j}"


def yy_name(i, j):
    return f"y{i}_{j}"


def w_name(tau=None):
    if tau is None:
        return "W"
    return "W_" + "".join(str(i) for i in sorted(tau))


def presentation_ring(n, m):
    """Source ring K[x_j, Y_ij (, W-variables when m >= n)]."""
    names = [x_name(j) for j in range(n + 1)]
    names += [y_name(i, j) for i in range(1, m + 1) for j in range(n + 1)]
    if m == n:
        names.append(w_name())
    elif m > n:
        names += [w_name(tau) for tau in combinations(range(1, m + 1), n)]
    return PolyRing(names)


def phi_target_ring(n, m):
    names = [t_name(j) for j in range(n + 1)]
    names += [yy_name(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]
    return PolyRing(names)


def euler_generators(ring, n, m):
    """The m Euler relations f_i = sum_j x_j Y_ij."""
    gens = []
    for i in range(1, m + 1):
        f = ring.zero()
        for j in range(n + 1):
            f = f + ring.var(x_name(j)) * ring.var(y_name(i, j))
        gens.append(f)
    return gens


def euler_ideal(n, m):
    if n < 1 or m < 1:
        raise ValueError("need n, m >= 1")
    ring = PolyRing(
        [x_name(j) for j in range(n + 1)]
        + [y_name(i, j) for i in range(1, m + 1) for j in range(n + 1)]
    )
    return Ideal(ring, euler_generators(ring, n, m))


def det_forget_column(ring, n, j):
    """det of the n x n minor of [Y_ij] obtained by forgetting column j."""
    cols = [c for c in range(n + 1) if c != j]
    rows = [[ring.var(y_name(i, c)) for c in cols] for i in range(1, n + 1)]
    return symbolic_det(rows)


def build_phi(n: int, m: int):
    """The presentation map of the Cox ring of P(T_n tensor K^m).

    x_j -> t_j^-1, Y_i0 -> (-sum_j y_ij) t_0, Y_ij -> y_ij t_j, and for
    m >= n one determinantal generator per n-subset tau of rows:
    W_tau -> det[y(0, tau)] t_0...t_n.
    """
    if n < 1 or m < 1:
        raise ValueError("need n, m >= 1")
    source = presentation_ring(n, m)
    target = phi_target_ring(n, m)
    images = {}
    for j in range(n + 1):
        t = target.var(t_name(j))
        images[x_name(j)] = t ** (-1)
    for i in range(1, m + 1):
        col0 = target.zero()
        for j in range(1, n + 1):
            col0 = col0 - target.var(yy_name(i, j))
        images[y_name(i, 0)] = col0 * target.var(t_name(0))
        for j in range(1, n + 1):
            images[y_name(i, j)] = target.var(yy_name(i, j)) * target.var(t_name(j))
    if m >= n:
        t_all = target.one()
        for j in range(n + 1):
            t_all = t_all * target.var(t_name(j))
        for tau in combinations(range(1, m + 1), n):
            rows = [[target.var(yy_name(i, j)) for j in range(1, n + 1)] for i in tau]
            name = w_name() if m == n else w_name(tau)
            images[name] = symbolic_det(rows) * t_all
    return RingMap(source, target, images)


def solve_det_sign(n, j, phi):
    """The sign e with det Y(j) - e * x_j W in ker(phi), found symbolically."""
    ring = phi.source
    det = det_forget_column(ring, n, j)
    xw = ring.var(x_name(j)) * ring.var(w_name())
    image_det = phi(det)
    image_xw = phi(xw)
    if image_det - image_xw == 0:
        return 1
    if image_det + image_xw == 0:
        return -1
    raise AssertionError(f"no sign makes det Y({j}) - e*x_{j}*W vanish")


class PresentationSpec:
    """A presentation of the Cox ring: ring, generators, grading, map."""

    def __init__(self, n, m, ring, gens, degrees, phi):
        self.n = n
        self.m = m
        self.ring = ring
        self.gens = gens
        self.degrees = degrees  # variable name -> (Pic degree, Sym degree)
        self.phi = phi

    def ideal(self):
        return Ideal(self.ring, self.gens)

    def bidegree_of(self, f):
        """The common bidegree of f's terms; raises if not bihomogeneous."""
        seen = None
        for mono in f.terms:
            a = b = 0
            for idx, e in enumerate(mono):
                if e:
                    da, db = self.degrees[self.ring.names[idx]]
                    a += e * da
                    b += e * db
            if seen is None:
                seen = (a, b)
            elif seen != (a, b):
                raise ValueError("generator is not bihomogeneous")
        return seen

    def check_bihomogeneous(self):
        return [self.bidegree_of(g) for g in self.gens]

    def max_sym_degree(self):
        return max(d[1] for d in self.degrees.values())


def variable_degrees(n, m):
    degrees = {}
    for j in range(n + 1):
        degrees[x_name(j)] = picard_degree("x", n)
    for i in range(1, m + 1):
        for j in range(n + 1):
            degrees[y_name(i, j)] = picard_degree("Y", n)
    if m == n:
        degrees[w_name()] = picard_degree("W", n)
    elif m > n:
        for tau in combinations(range(1, m + 1), n):
            degrees[w_name(tau)] = picard_degree("W_tau", n)
    return degrees


def tangent_cox_ideal(n: int, m: int):
    """Presentation of the Cox ring of P(T_n tensor K^m) for 1 <= m <= n.

    m < n: the Euler relations alone (a complete intersection).
    m = n: Euler relations plus det Y(j) - e_j x_j W with signs solved
    against the presentation map.
    """
    if not 1 <= m <= n:
        raise ValueError("presentation is only produced for 1 <= m <= n")
    phi = build_phi(n, m)
    ring = phi.source
    gens = euler_generators(ring, n, m)
    if m == n:
        w = ring.var(w_name())
        for j in range(n + 1):
            sign = solve_det_sign(n, j, phi)
            gens.append(det_forget_column(ring, n, j) - sign * ring.var(x_name(j)) * w)
    return PresentationSpec(n, m, ring, gens, variable_degrees(n, m), phi)


def quiver_ideal(n: int):
    """Euler relations plus all maximal minors det Y(j), in the m = n ring."""
    if n < 2:
        raise ValueError("need n >= 2")
    ring = presentation_ring(n, n)
    gens = euler_generators(ring, n, n)
    for j in range(n + 1):
        gens.append(det_forget_column(ring, n, j))
    return Ideal(ring, gens)


def delta_weights(ring):
    """Weight vector of the degeneration: W-variables weigh 1, the rest 0."""
    return [1 if name.startswith("W") else 0 for name in ring.names]


def delta_order(ring):
    return WeightOrder(delta_weights(ring), grevlex(ring), minimize=True)


def delta_initial_ideal(ideal, **kw):
    """Initial ideal for the minimal-weight degeneration of the W-variables."""
    order = delta_order(ideal.ring)
    gb = ideal.groebner(order, **kw)
    w = delta_weights(ideal.ring)
    return Ideal(ideal.ring, [weight_initial(g, w) for g in gb])


KERNEL_DEFAULT_CAP = 2


def verify_kernel(n, allow_large=False, cache=None, max_degree=poly.DEFAULT_DEGREE_CAP):
    """Check that ker(phi) equals the tangent Cox ideal, by elimination.

    n = 2 by default; n = 3 only behind allow_large (it is near the desk
    scale boundary).  Returns a report dict.
    """
    if n > KERNEL_DEFAULT_CAP and not allow_large:
        raise poly.CapExceeded(
            f"kernel verification at n = {n} needs allow_large", size=n
        )
    start = time.monotonic()
    spec = tangent_cox_ideal(n, n)
    kernel = ring_map_kernel(spec.phi, max_degree=max_degree, cache=cache)
    t_kernel = time.monotonic() - start
    order = grevlex(spec.ring)
    start = time.monotonic()
    claimed = spec.ideal()
    equal = ideal_equal(kernel, claimed, order, cache=cache)
    t_compare = time.monotonic() - start
    return {
        "n": n,
        "kernel_generators": len(kernel.gens),
        "claimed_generators": len(claimed.gens),
        "kernel_gb_size": len(kernel.groebner(order, cache=cache)),
        "equal": equal,
        "seconds_elimination": round(t_kernel, 3),
        "seconds_compare": round(t_compare, 3),
    }


def initial_comparison(n, cache=None):
    """Check in_delta(ker phi) = quiver ideal and its zero-set dimension.

    The degeneration is flat here: the initial ideal's zero set has the
    same dimension as the kernel's, which is reported alongside.
    """
    spec = tangent_cox_ideal(n, n)
    kernel = ring_map_kernel(spec.phi, cache=cache)
    initial = delta_initial_ideal(kernel, cache=cache)
    quiver = quiver_ideal(n)
    order = grevlex(spec.ring)
    equal = ideal_equal(initial, quiver, order, cache=cache)
    dim = poly.zero_set_dimension(initial, order, cache=cache)
    generic_dim = poly.zero_set_dimension(kernel, order, cache=cache)
    return {
        "n": n,
        "equal": equal,
        "dimension": dim,
        "generic_dimension": generic_dim,
        "expected_dimension": n * n + n + 1,
    }


# ---------------------------------------------------------------------------
# the row-sum / minors lemma


def lemma_ring(n):
    return PolyRing([y_name(i, j) for i in range(1, n + 1) for j in range(n + 1)])


def row_completing_order(ring, n):
    """Lex order scanning each row left to right, column 0 last in its row.

    Significance: Y_11 > Y_12 > ... > Y_1n > Y_10 > Y_21 > ... > Y_n0.
    Under this order every top-row-sum has lead term in column 1 and every
    maximal minor leads with a diagonal-style term.
    """
    precedence = []
    for i in range(1, n + 1):
        for j in list(range(1, n + 1)) + [0]:
            precedence.append(ring.index[y_name(i, j)])
    return LexOrder(precedence)


def canonicalize_columns(n, subset):
    """Column permutation sending subset to {1..k}, fixing column 0.

    Returns (mapping old column -> new column).
    """
    subset = sorted(set(subset))
    if not subset:
        raise ValueError("subset must be nonempty")
    if subset[0] < 1 or subset[-1] > n:
        raise ValueError(f"column index out of range 1..{n}")
    rest = [j for j in range(1, n + 1) if j not in subset]
    mapping = {0: 0}
    for new, old in enumerate(subset, start=1):
        mapping[old] = new
    for new, old in enumerate(rest, start=len(subset) + 1):
        mapping[old] = new
    return mapping


def lemma_ideal(n, subset):
    """Row sums over the (canonicalized) subset plus all maximal minors.

    Returns (ideal, column permutation used).
    """
    mapping = canonicalize_columns(n, subset)
    k = len(set(subset))
    ring = lemma_ring(n)
    gens = []
    for i in range(1, n + 1):
        f = ring.zero()
        for j in range(1, k + 1):
            f = f + ring.var(y_name(i, j))
        gens.append(f)
    for j in range(n + 1):
        gens.append(det_forget_column(ring, n, j))
    return Ideal(ring, gens), mapping


def verify_lemma(n, subset):
    """Groebner property and zero-set dimension for the row-sum/minors ideal."""
    ideal, mapping = lemma_ideal(n, subset)
    order = row_completing_order(ideal.ring, n)
    gb_flag = is_groebner_basis(ideal.gens, order)
    lead = leading_monomials(ideal.gens, order)
    dim = monomial_dimension(lead, ideal.ring.nvars)
    return {
        "n": n,
        "subset": sorted(set(subset)),
        "column_permutation": mapping,
        "is_groebner_basis": gb_flag,
        "dimension": dim,
        "expected_dimension": n * n - 1,
    }


def minors_only_dimension(n):
    """Zero-set dimension of the ideal of all maximal minors of [Y_ij]."""
    ring = lemma_ring(n)
    gens = [det_forget_column(ring, n, j) for j in range(n + 1)]
    ideal = Ideal(ring, gens)
    return poly.zero_set_dimension(ideal, row_completing_order(ring, n))


# ---------------------------------------------------------------------------
# Plucker identification at n = 2


def plucker_ring(m):
    return PolyRing([f"p{i}{j}" for i, j in combinations(range(1, m + 1), 2)])


def plucker_quadrics(m, ring=None):
    """Three-term Grassmann quadrics of Gr(2, m), one per 4-subset."""
    ring = ring or plucker_ring(m)

    def p(i, j):
        return ring.var(f"p{i}{j}")

    gens = []
    for i, j, k, l in combinations(range(1, m + 1), 4):
        gens.append(p(i, j) * p(k, l) - p(i, k) * p(j, l) + p(i, l) * p(j, k))
    return Ideal(ring, gens)


def _quadric_shape(f, ring):
    """As a list of (coeff, frozenset of two variable indices); None if not
    a +-1-coefficient squarefree bilinear form."""
    shape = []
    for mono, c in f.terms.items():
        if abs(c) != 1:
            return None
        support = [i for i, e in enumerate(mono) if e]
        if len(support) != 2 or any(mono[i] != 1 for i in support):
            return None
        shape.append((int(c), frozenset(support)))
    return shape


def signed_variable_match(gens_a, ring_a, gens_b, ring_b):
    """Signed variable bijection carrying each source generator to +-1 times
    a distinct target generator.  Returns {source name: (target name, sign)}
    or None.
    """
    shapes_a = [_quadric_shape(g, ring_a) for g in gens_a]
    shapes_b = [_quadric_shape(g, ring_b) for g in gens_b]
    if any(s is None for s in shapes_a + shapes_b):
        raise ValueError("matching only supports +-1 squarefree quadrics")
    if len(shapes_a) != len(shapes_b) or ring_a.nvars != ring_b.nvars:
        return None

    var_map = {}      # source index -> target index
    used_targets = {}  # target index -> source index
    sign = {}         # source index -> +-1

    def assign(src, tgt, s):
        """Record src -> (tgt, s); return 'new'/'ok'/None (conflict)."""
        if src in var_map:
            return "ok" if (var_map[src] == tgt and sign[src] == s) else None
        if tgt in used_targets:
            return None
        var_map[src] = tgt
        used_targets[tgt] = src
        sign[src] = s
        return "new"

    def unassign(src):
        used_targets.pop(var_map.pop(src))
        sign.pop(src)

    def match_terms(shape, target, i, taken, rho):
        """Backtrack a term bijection for one generator pair; yields True
        with assignments in place, rolling back on resume."""
        if i == len(shape):
            yield True
            return
        c_src, pair_src = shape[i]
        a1, a2 = sorted(pair_src)
        for j, (c_tgt, pair_tgt) in enumerate(target):
            if j in taken:
                continue
            b1, b2 = sorted(pair_tgt)
            for ta, tb in ((b1, b2), (b2, b1)):
                for s1 in (1, -1):
                    for s2 in (1, -1):
                        if c_src * s1 * s2 * c_tgt != rho:
                            continue
                        r1 = assign(a1, ta, s1)
                        if r1 is None:
                            continue
                        r2 = assign(a2, tb, s2)
                        if r2 is None:
                            if r1 == "new":
                                unassign(a1)
                            continue
                        taken.add(j)
                        yield from match_terms(shape, target, i + 1, taken, rho)
                        taken.discard(j)
                        if r2 == "new":
                            unassign(a2)
                        if r1 == "new":
                            unassign(a1)

    def match_generator(pos, gen_used):
        if pos == len(shapes_a):
            return True
        shape = shapes_a[pos]
        for bi, target in enumerate(shapes_b):
            if bi in gen_used or len(target) != len(shape):
                continue
            gen_used.add(bi)
            for rho in (1, -1):
                for _ in match_terms(shape, target, 0, set(), rho):
                    if match_generator(pos + 1, gen_used):
                        return True
            gen_used.discard(bi)
        return False

    if not match_generator(0, set()):
        return None
    return {
        ring_a.names[src]: (ring_b.names[var_map[src]], sign[src])
        for src in var_map
    }


def apply_signed_match(f, match, target_ring):
    images = []
    for name in f.ring.names:
        tgt, s = match[name]
        images.append(target_ring.var(tgt) * s)
    return f.substitute(images)


def pluecker_match(cache=None):
    """Signed bijection from the m = n = 2 presentation onto Gr(2,5).

    Returns a report with the substitution; raises if none exists.
    """
    spec = tangent_cox_ideal(2, 2)
    target = plucker_quadrics(5)
    match = signed_variable_match(spec.gens, spec.ring, target.gens, target.ring)
    if match is None:
        return {"found": False}
    mapped = Ideal(target.ring, [apply_signed_match(g, match, target.ring) for g in spec.gens])
    order = grevlex(target.ring)
    equal = ideal_equal(mapped, target, order, cache=cache)
    return {
        "found": True,
        "ideal_equal": equal,
        "substitution": {src: f"{'-' if s < 0 else ''}{tgt}" for src, (tgt, s) in sorted(match.items())},
    }
