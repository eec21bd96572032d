"""Multivariate polynomials over Q with term orders, Buchberger, elimination.

Monomials are exponent tuples over a fixed variable table (PolyRing).
Exponents may be negative in plain arithmetic (Laurent monomials are needed
to evaluate ring maps like x_j -> t_j^-1); everything order-related
(division, Groebner bases) insists on the positive orthant.
"""

from fractions import Fraction


class CapExceeded(Exception):
    """A Buchberger run hit its degree or size cap."""

    def __init__(self, message, degree=None, size=None):
        super().__init__(message)
        self.degree = degree
        self.size = size


class PolyRing:
    """An ordered table of variable names; the home of Polynomial values."""

    __slots__ = ("names", "index")

    def __init__(self, names):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        self.names = names
        self.index = {name: i for i, name in enumerate(names)}

    @property
    def nvars(self):
        return len(self.names)

    def zero(self):
        return Polynomial(self, {})

    def const(self, c):
        c = Fraction(c)
        if c == 0:
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def one(self):
        return self.const(1)

    def var(self, name):
        i = self.index[name]
        exps = [0] * self.nvars
        exps[i] = 1
        return Polynomial(self, {tuple(exps): Fraction(1)})

    def gens(self):
        return tuple(self.var(name) for name in self.names)

    def monomial(self, exps, coeff=1):
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise ValueError("exponent vector length mismatch")
        c = Fraction(coeff)
        if c == 0:
            return self.zero()
        return Polynomial(self, {exps: c})

    def from_terms(self, terms):
        out = {}
        for exps, c in terms:
            exps = tuple(exps)
            c = Fraction(c)
            if c == 0:
                continue
            acc = out.get(exps, Fraction(0)) + c
            if acc == 0:
                out.pop(exps, None)
            else:
                out[exps] = acc
        return Polynomial(self, out)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"PolyRing({', '.join(self.names)})"


class Polynomial:
    """Map from exponent tuples to nonzero Fractions."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def _check_ring(self, other):
        if self.ring != other.ring:
            raise ValueError("polynomials from different rings")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        self._check_ring(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            acc = out.get(m, Fraction(0)) + c
            if acc == 0:
                out.pop(m, None)
            else:
                out[m] = acc
        return Polynomial(self.ring, out)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        return self.__add__(other.__neg__())

    def __rsub__(self, other):
        return self.__neg__().__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if c == 0:
                return self.ring.zero()
            return Polynomial(self.ring, {m: cf * c for m, cf in self.terms.items()})
        self._check_ring(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                acc = out.get(m, Fraction(0)) + c1 * c2
                if acc == 0:
                    out.pop(m, None)
                else:
                    out[m] = acc
        return Polynomial(self.ring, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k):
        if k < 0:
            if len(self.terms) == 1:
                m, c = next(iter(self.terms.items()))
                if abs(c) == 1:
                    inv = tuple(-e for e in m)
                    return Polynomial(self.ring, {inv: Fraction(c ** -1)}) ** (-k)
            raise ValueError("negative power of a non-unit")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        return isinstance(other, Polynomial) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.terms.items()))))

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def variables(self):
        """Indices of variables that actually occur."""
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(i)
        return used

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), Fraction(0))

    def leading_term(self, order):
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def monic(self, order):
        if not self.terms:
            return self
        _, c = self.leading_term(order)
        if c == 1:
            return self
        return self * (Fraction(1) / c)

    def sorted_terms(self, order):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def substitute(self, images):
        """Evaluate under variable -> Polynomial images (all in one target ring).

        Every occurring variable must be mapped.  Negative source exponents
        require the image to be an invertible monomial.
        """
        target = None
        for img in images:
            if img is not None:
                target = img.ring
                break
        if target is None:
            raise ValueError("no images given")
        result = target.const(0)
        for m, c in self.terms.items():
            part = target.const(c)
            for i, e in enumerate(m):
                if e == 0:
                    continue
                if images[i] is None:
                    raise ValueError(f"no image for variable {self.ring.names[i]}")
                part = part * images[i] ** e
            result = result + part
        return result

    def __repr__(self):
        return poly_to_text(self, None)


# ---------------------------------------------------------------------------
# term orders


class TermOrder:
    """Total order on monomials via a sort key; max(key) is the lead term."""

    name = "order"

    def key(self, exps):
        raise NotImplementedError

    def signature(self):
        """Stable text form, used in cache keys."""
        raise NotImplementedError


class LexOrder(TermOrder):
    """Lexicographic; perm lists variable indices, most significant first."""

    name = "lex"

    def __init__(self, perm):
        self.perm = tuple(perm)

    def key(self, exps):
        return tuple(exps[i] for i in self.perm)

    def signature(self):
        return f"lex({','.join(map(str, self.perm))})"


class GrevlexOrder(TermOrder):
    """Graded reverse lexicographic over a significance permutation."""

    name = "grevlex"

    def __init__(self, perm):
        self.perm = tuple(perm)
        self._rev = tuple(reversed(self.perm))

    def key(self, exps):
        return (sum(exps), tuple(-exps[i] for i in self._rev))

    def signature(self):
        return f"grevlex({','.join(map(str, self.perm))})"


class WeightOrder(TermOrder):
    """Weight vector first, then a tie-break order.

    minimize=True makes *low* weight lead; that is the convention needed for
    degeneration-style initial ideals where the weighted variables collapse.
    """

    name = "weight"

    def __init__(self, weights, tie_break, minimize=False):
        self.weights = tuple(Fraction(w) for w in weights)
        self.tie_break = tie_break
        self.minimize = minimize

    def weight_of(self, exps):
        return sum(w * e for w, e in zip(self.weights, exps))

    def key(self, exps):
        w = self.weight_of(exps)
        return ((-w if self.minimize else w), self.tie_break.key(exps))

    def signature(self):
        w = ",".join(str(x) for x in self.weights)
        return f"weight([{w}],min={self.minimize},{self.tie_break.signature()})"


class BlockOrder(TermOrder):
    """Concatenation of sub-orders on disjoint variable blocks.

    With the first block holding the variables to eliminate, this is an
    elimination order: any monomial meeting the first block beats every
    monomial that avoids it.
    """

    name = "block"

    def __init__(self, blocks):
        # blocks: list of (index tuple, order on vectors of that length)
        self.blocks = [(tuple(idx), order) for idx, order in blocks]

    def key(self, exps):
        return tuple(order.key(tuple(exps[i] for i in idx)) for idx, order in self.blocks)

    def signature(self):
        parts = ";".join(
            f"[{','.join(map(str, idx))}]{order.signature()}" for idx, order in self.blocks
        )
        return f"block({parts})"


def grevlex(ring):
    return GrevlexOrder(range(ring.nvars))


def lex(ring, names=None):
    if names is None:
        return LexOrder(range(ring.nvars))
    return LexOrder(ring.index[n] for n in names)


def elimination_order(ring, drop_names):
    """Block order with the dropped variables leading, grevlex inside blocks."""
    drop = [ring.index[n] for n in drop_names]
    keep = [i for i in range(ring.nvars) if i not in set(drop)]
    return BlockOrder(
        [(drop, GrevlexOrder(range(len(drop)))), (keep, GrevlexOrder(range(len(keep))))]
    )


# ---------------------------------------------------------------------------
# division and Buchberger


def _require_orthant(polys):
    for f in polys:
        for m in f.terms:
            if any(e < 0 for e in m):
                raise ValueError("Laurent exponents are not allowed here")


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def normal_form(f, gens, order):
    """Remainder of f under multivariate division by gens.

    Deterministic: the largest reducible term is always reduced against the
    first divisor (in list order) whose lead term divides it.
    """
    _require_orthant([f] + list(gens))
    divisors = [(g.leading_term(order), g) for g in gens if g]
    ring = f.ring
    work = dict(f.terms)
    remainder = {}
    while work:
        m = max(work, key=order.key)
        c = work.pop(m)
        for (lt, lc), g in divisors:
            if _divides(lt, m):
                factor = c / lc
                shift = _mono_div(m, lt)
                for gm, gc in g.terms.items():
                    if gm == lt:
                        continue
                    key = tuple(a + b for a, b in zip(gm, shift))
                    acc = work.get(key, Fraction(0)) - factor * gc
                    if acc == 0:
                        work.pop(key, None)
                    else:
                        work[key] = acc
                break
        else:
            remainder[m] = c
    return Polynomial(ring, remainder)


def s_polynomial(f, g, order):
    (lt_f, lc_f) = f.leading_term(order)
    (lt_g, lc_g) = g.leading_term(order)
    l = _mono_lcm(lt_f, lt_g)
    mf = f.ring.monomial(_mono_div(l, lt_f), Fraction(1) / lc_f)
    mg = f.ring.monomial(_mono_div(l, lt_g), Fraction(1) / lc_g)
    return mf * f - mg * g


def _gm_update(basis, lead, pairs, new_index):
    """Gebauer-Moeller pair update after appending basis[new_index]."""
    t = lead[new_index]
    fresh = []
    for i in range(new_index):
        fresh.append((i, new_index, _mono_lcm(lead[i], t)))
    # drop old pairs whose lcm is strictly covered by the new lead term
    kept = []
    for i, j, l in pairs:
        if (
            _divides(t, l)
            and _mono_lcm(lead[i], t) != l
            and _mono_lcm(lead[j], t) != l
        ):
            continue
        kept.append((i, j, l))
    # prune the fresh pairs among themselves (Gebauer-Moeller M and F)
    fresh.sort(key=lambda p: sum(p[2]))
    pruned = []
    for i, j, l in fresh:
        if any(_divides(l2, l) and l2 != l for _, _, l2 in pruned):
            continue
        if any(l2 == l for _, _, l2 in pruned):
            continue
        pruned.append((i, j, l))
    # Buchberger's first criterion: coprime lead terms
    pruned = [
        (i, j, l)
        for i, j, l in pruned
        if l != tuple(a + b for a, b in zip(lead[i], lead[j]))
    ]
    return kept + pruned


DEFAULT_DEGREE_CAP = 120
DEFAULT_BASIS_CAP = 4000


def buchberger(gens, order, max_degree=DEFAULT_DEGREE_CAP, max_basis=DEFAULT_BASIS_CAP):
    """Reduced Groebner basis of the ideal generated by gens.

    Raises CapExceeded (with the offending degree or size) instead of
    truncating when the pair queue escapes the configured caps.
    """
    _require_orthant(gens)
    basis = [g.monic(order) for g in gens if g]
    basis = _interreduce(basis, order)
    if not basis:
        return []
    lead = [g.leading_term(order)[0] for g in basis]
    pairs = []
    for k in range(1, len(basis)):
        pairs = _gm_update(basis, lead, pairs, k)
    while pairs:
        pairs.sort(key=lambda p: (sum(p[2]), order.key(p[2])), reverse=True)
        i, j, l = pairs.pop()
        if max_degree is not None and sum(l) > max_degree:
            raise CapExceeded(
                f"S-pair degree {sum(l)} exceeds cap {max_degree}", degree=sum(l)
            )
        s = s_polynomial(basis[i], basis[j], order)
        r = normal_form(s, basis, order)
        if r:
            if max_basis is not None and len(basis) >= max_basis:
                raise CapExceeded(
                    f"basis size {len(basis)} exceeds cap {max_basis}", size=len(basis)
                )
            basis.append(r.monic(order))
            lead.append(r.leading_term(order)[0])
            pairs = _gm_update(basis, lead, pairs, len(basis) - 1)
    return _reduce_basis(basis, order)


def _interreduce(polys, order):
    polys = [p for p in polys if p]
    changed = True
    while changed:
        changed = False
        for i in range(len(polys)):
            others = polys[:i] + polys[i + 1 :]
            r = normal_form(polys[i], others, order)
            if r != polys[i]:
                changed = True
                if r:
                    polys[i] = r.monic(order)
                else:
                    polys = others
                break
    return polys


def _reduce_basis(basis, order):
    """Minimalize and tail-reduce; the result is the canonical reduced GB."""
    items = sorted(
        ((g.leading_term(order)[0], g) for g in basis),
        key=lambda t: (sum(t[0]), order.key(t[0])),
    )
    minimal = []
    for lt, g in items:
        if any(_divides(lt2, lt) for lt2, _ in minimal):
            continue
        minimal.append((lt, g))
    polys = [g for _, g in minimal]
    reduced = []
    for i, g in enumerate(polys):
        others = polys[:i] + polys[i + 1 :]
        r = normal_form(g, others, order)
        if r:
            reduced.append(r.monic(order))
    reduced.sort(key=lambda g: order.key(g.leading_term(order)[0]))
    return reduced


def is_groebner_basis(gens, order):
    """True iff every S-pair of gens reduces to zero against gens."""
    gens = [g for g in gens if g]
    _require_orthant(gens)
    lead = [g.leading_term(order)[0] for g in gens]
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            l = _mono_lcm(lead[i], lead[j])
            if l == tuple(a + b for a, b in zip(lead[i], lead[j])):
                continue  # coprime lead terms always reduce to zero
            s = s_polynomial(gens[i], gens[j], order)
            if normal_form(s, gens, order):
                return False
    return True


# ---------------------------------------------------------------------------
# ideals


class Ideal:
    """Generator list plus per-order cached reduced Groebner bases."""

    def __init__(self, ring, gens):
        self.ring = ring
        self.gens = [g for g in gens if g]
        for g in self.gens:
            if g.ring != ring:
                raise ValueError("generator from the wrong ring")
        self._gb = {}

    def groebner(self, order, max_degree=DEFAULT_DEGREE_CAP, max_basis=DEFAULT_BASIS_CAP, cache=None):
        sig = order.signature()
        if sig not in self._gb:
            gb = None
            if cache is not None:
                gb = cache.load(self.ring, self.gens, order, max_degree, max_basis)
            if gb is None:
                gb = buchberger(self.gens, order, max_degree, max_basis)
                if cache is not None:
                    cache.store(self.ring, self.gens, order, max_degree, max_basis, gb)
            self._gb[sig] = gb
        return self._gb[sig]

    def contains(self, f, order=None, **kw):
        order = order or grevlex(self.ring)
        return not normal_form(f, self.groebner(order, **kw), order)

    def __repr__(self):
        return f"Ideal({len(self.gens)} gens in {self.ring!r})"


def ideal_equal(a, b, order=None, **kw):
    """Mutual membership of generators via reduced Groebner bases."""
    if a.ring != b.ring:
        raise ValueError("ideals in different rings")
    order = order or grevlex(a.ring)
    gb_a = a.groebner(order, **kw)
    gb_b = b.groebner(order, **kw)
    return all(not normal_form(g, gb_b, order) for g in a.gens) and all(
        not normal_form(g, gb_a, order) for g in b.gens
    )


def eliminate(ideal, drop_names, max_degree=DEFAULT_DEGREE_CAP, max_basis=DEFAULT_BASIS_CAP, cache=None):
    """Generators of ideal ∩ K[vars without drop_names].

    Pure polynomial elimination via a block order.  Callers that need
    Laurent inverses t^-1 must already have encoded them with auxiliary
    variables u and relations t*u - 1 (see ring_map_kernel).
    """
    drop = set(drop_names)
    unknown = drop - set(ideal.ring.names)
    if unknown:
        raise ValueError(f"unknown variables: {sorted(unknown)}")
    order = elimination_order(ideal.ring, sorted(drop, key=ideal.ring.index.get))
    gb = ideal.groebner(order, max_degree, max_basis, cache=cache)
    drop_idx = {ideal.ring.index[n] for n in drop}
    kept = [g for g in gb if not (g.variables() & drop_idx)]
    return Ideal(ideal.ring, kept)


def weight_initial(f, weights):
    """Sum of the terms of minimal weight (degeneration convention)."""
    if not f.terms:
        return f
    ws = [Fraction(w) for w in weights]
    weighted = [(sum(w * e for w, e in zip(ws, m)), m) for m in f.terms]
    wmin = min(w for w, _ in weighted)
    return Polynomial(f.ring, {m: f.terms[m] for w, m in weighted if w == wmin})


def monomial_dimension(monomials, nvars):
    """Dimension of the zero set of a monomial ideal.

    This is the largest |S| over variable subsets S such that no generator
    has support inside S; equivalently nvars minus the smallest hitting set
    of the supports.
    """
    supports = []
    for m in monomials:
        sup = frozenset(i for i, e in enumerate(m) if e)
        if not sup:
            return -1  # unit ideal: empty zero set
        supports.append(sup)
    # discard non-minimal supports
    supports = [
        s for s in set(supports) if not any(t < s for t in set(supports))
    ]
    if not supports:
        return nvars
    best = [len(set().union(*supports))]

    def search(remaining, chosen):
        if chosen >= best[0]:
            return
        if not remaining:
            best[0] = chosen
            return
        sup = min(remaining, key=len)
        for v in sorted(sup):
            rest = [s for s in remaining if v not in s]
            search(rest, chosen + 1)

    search(supports, 0)
    return nvars - best[0]


def leading_monomials(gens, order):
    return [g.leading_term(order)[0] for g in gens if g]


def zero_set_dimension(ideal, order=None, **kw):
    """Dimension of the zero set, via the initial ideal of a Groebner basis."""
    order = order or grevlex(ideal.ring)
    gb = ideal.groebner(order, **kw)
    return monomial_dimension(leading_monomials(gb, order), ideal.ring.nvars)


# ---------------------------------------------------------------------------
# symbolic determinants


DET_SIDE_CAP = 6


def symbolic_det(rows, side_cap=DET_SIDE_CAP):
    """Exact determinant of a square matrix of Polynomials.

    Standard alternating cofactor expansion along the first row.
    """
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not square")
    if n == 0:
        raise ValueError("empty matrix")
    if n > side_cap:
        raise ValueError(f"side {n} exceeds cap {side_cap}")
    if n == 1:
        return rows[0][0]
    ring = rows[0][0].ring
    result = ring.zero()
    for j in range(n):
        minor = [[rows[i][k] for k in range(n) if k != j] for i in range(1, n)]
        cofactor = symbolic_det(minor, side_cap)
        term = rows[0][j] * cofactor
        result = result + (term if j % 2 == 0 else -term)
    return result


# ---------------------------------------------------------------------------
# ring maps


class RingMap:
    """Assignment of each source variable to a target Polynomial.

    Images may be Laurent monomials (negative exponents); apply() expands
    symbolically.
    """

    def __init__(self, source, target, images):
        self.source = source
        self.target = target
        self.images = dict(images)
        missing = set(source.names) - set(self.images)
        if missing:
            raise ValueError(f"no image for {sorted(missing)}")
        for name, img in self.images.items():
            if img.ring != target:
                raise ValueError(f"image of {name} lives in the wrong ring")

    def __call__(self, f):
        if f.ring != self.source:
            raise ValueError("argument from the wrong ring")
        images = [self.images[name] for name in self.source.names]
        return f.substitute(images)


def transplant(f, target_ring, rename=None):
    """Copy f into target_ring, matching variables by (renamed) name."""
    rename = rename or {}
    mapping = []
    for name in f.ring.names:
        new = rename.get(name, name)
        mapping.append(target_ring.index[new] if new in target_ring.index else None)
    out = {}
    for m, c in f.terms.items():
        exps = [0] * target_ring.nvars
        for i, e in enumerate(m):
            if e == 0:
                continue
            if mapping[i] is None:
                raise ValueError(f"variable {f.ring.names[i]} missing from target ring")
            exps[mapping[i]] = e
        out[tuple(exps)] = c
    return Polynomial(target_ring, out)


def ring_map_kernel(phi, max_degree=DEFAULT_DEGREE_CAP, max_basis=DEFAULT_BASIS_CAP, cache=None):
    """Kernel of a ring map into a (Laurent) polynomial ring, by elimination.

    Builds the graph ideal in a combined ring.  A target variable t occurring
    with negative exponents needs an inverse; when some source variable maps
    to exactly t^-1 it doubles as the inverse (relation source*t - 1),
    otherwise an auxiliary u with relation t*u - 1 is appended.
    """
    src, tgt = phi.source, phi.target
    inverse_needed = set()
    for img in phi.images.values():
        for m in img.terms:
            for i, e in enumerate(m):
                if e < 0:
                    inverse_needed.add(i)
    # source variables whose image is exactly (coefficient 1) an inverse var
    inverse_carrier = {}
    for name, img in phi.images.items():
        if len(img.terms) == 1:
            m, c = next(iter(img.terms.items()))
            if c == 1 and sum(1 for e in m if e) == 1:
                i = next(i for i, e in enumerate(m) if e)
                if m[i] == -1 and i in inverse_needed and i not in inverse_carrier.values():
                    inverse_carrier[name] = i
    carried = set(inverse_carrier.values())
    aux = [f"_u{i}" for i in sorted(inverse_needed - carried)]
    combined = PolyRing(src.names + tgt.names + tuple(aux))

    def encode(img):
        # rewrite Laurent exponents through the carrier/aux variables
        out = {}
        for m, c in img.terms.items():
            exps = [0] * combined.nvars
            for i, e in enumerate(m):
                if e >= 0:
                    exps[combined.index[tgt.names[i]]] = e
                else:
                    if i in carried:
                        carrier = next(n for n, k in inverse_carrier.items() if k == i)
                        exps[combined.index[carrier]] = -e
                    else:
                        exps[combined.index[f"_u{i}"]] = -e
            out[tuple(exps)] = out.get(tuple(exps), Fraction(0)) + c
        return Polynomial(combined, {m: c for m, c in out.items() if c != 0})

    gens = []
    for name in src.names:
        v = combined.var(name)
        if name in inverse_carrier:
            t = combined.var(tgt.names[inverse_carrier[name]])
            gens.append(v * t - combined.one())
        else:
            gens.append(v - encode(phi.images[name]))
    for i in sorted(inverse_needed - carried):
        t = combined.var(tgt.names[i])
        u = combined.var(f"_u{i}")
        gens.append(t * u - combined.one())
    drop = list(tgt.names) + aux
    graph = Ideal(combined, gens)
    kernel = eliminate(graph, drop, max_degree, max_basis, cache=cache)
    return Ideal(src, [transplant(g, src) for g in kernel.gens])


# ---------------------------------------------------------------------------
# canonical text form


def poly_to_text(f, order=None):
    """Render with terms sorted by the order (grevlex when omitted)."""
    if not f.terms:
        return "0"
    order = order or grevlex(f.ring)
    parts = []
    for m, c in f.sorted_terms(order):
        factors = []
        for i, e in enumerate(m):
            if e == 0:
                continue
            name = f.ring.names[i]
            factors.append(name if e == 1 else f"{name}^{e}")
        mono = "*".join(factors)
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def poly_from_text(ring, text):
    """Parse the canonical text form back into a Polynomial."""
    s = text.strip()
    if s == "0":
        return ring.zero()
    # split into signed chunks at top level (no parentheses in this syntax)
    chunks = []
    sign = 1
    buf = []
    i = 0
    if s.startswith("-"):
        sign = -1
        i = 1
    elif s.startswith("+"):
        i = 1
    while i < len(s):
        ch = s[i]
        if ch in "+-" and i > 0 and s[i - 1] == " ":
            chunks.append((sign, "".join(buf).strip()))
            buf = []
            sign = 1 if ch == "+" else -1
        else:
            buf.append(ch)
        i += 1
    chunks.append((sign, "".join(buf).strip()))
    terms = []
    for sgn, chunk in chunks:
        if not chunk:
            raise ValueError(f"empty term in {text!r}")
        coeff = Fraction(sgn)
        exps = [0] * ring.nvars
        for factor in chunk.split("*"):
            factor = factor.strip()
            if not factor:
                raise ValueError(f"empty factor in {text!r}")
            if factor[0].isdigit():
                coeff *= Fraction(factor)
                continue
            if "^" in factor:
                name, _, power = factor.partition("^")
                e = int(power)
            else:
                name, e = factor, 1
            if name not in ring.index:
                raise ValueError(f"unknown variable {name!r}")
            exps[ring.index[name]] += e
        terms.append((tuple(exps), coeff))
    return ring.from_terms(terms)
