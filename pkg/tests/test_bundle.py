import math
import random
from itertools import combinations

import pytest

from tvbcox.bundle import (
    BundleData,
    ci_stability,
    classify,
    common_minimal_columns,
    example_514_bundle,
    is_complete_intersection,
    make_bundle,
    region_csv,
    region_svg,
    region_table,
    restricted_rank,
    tangent_bundle,
    uniform_sparse_bundle,
    uniform_sparse_stability,
)
from tvbcox.linalg import IntMatrix, RatMatrix


@pytest.fixture(scope="module")
def ex514():
    return example_514_bundle()


def test_common_minimal_columns_example(ex514):
    assert common_minimal_columns(ex514, [1]) == {2, 3}
    assert common_minimal_columns(ex514, [2]) == {1, 3}
    assert common_minimal_columns(ex514, [3]) == {1, 2}
    assert common_minimal_columns(ex514, [1, 2, 3]) == set()


def test_common_minimal_columns_tangent():
    t2 = tangent_bundle(2)
    assert common_minimal_columns(t2, [1]) == {2, 3}


def test_common_minimal_columns_errors(ex514):
    with pytest.raises(ValueError):
        common_minimal_columns(ex514, [])
    with pytest.raises(ValueError):
        common_minimal_columns(ex514, [4])


def test_restricted_rank_example(ex514):
    assert restricted_rank(ex514, [1, 2]) == 1
    assert restricted_rank(ex514, [1, 2, 3]) == 0
    assert restricted_rank(tangent_bundle(2), [1]) == 1


def test_complete_intersection_example(ex514):
    assert is_complete_intersection(ex514, 1)
    assert not is_complete_intersection(ex514, 2)
    assert is_complete_intersection(tangent_bundle(2), 1)
    with pytest.raises(ValueError):
        is_complete_intersection(ex514, 0)


def test_ci_monotone_in_summands(ex514):
    bundles = [ex514, tangent_bundle(3), uniform_sparse_bundle(2, 5)]
    for b in bundles:
        previous = True
        for ell in range(1, 8):
            current = is_complete_intersection(b, ell)
            assert previous or not current
            previous = current


def test_ci_stability_values(ex514):
    stab, witness = ci_stability(ex514, with_witness=True)
    assert stab == 1
    assert witness == (1, (1, 2, 3))
    for n in range(2, 7):
        assert ci_stability(tangent_bundle(n)) == n - 1
    assert ci_stability(uniform_sparse_bundle(2, 6)) == 2


def test_ci_stability_requires_ci():
    # disjoint minima with full single-ray rank: 1 + 2 < 2 + 0 already fails
    m = RatMatrix.from_rows([[1, 1, 1, 1], [1, 2, 3, 4]])
    d = IntMatrix.from_rows([[0, 0, 1, 1], [1, 1, 0, 0]])
    b = BundleData(m, d)
    assert not is_complete_intersection(b, 1)
    with pytest.raises(ValueError):
        ci_stability(b)


def test_ci_stability_infinite():
    # a single ray has no subsets of size two, so nothing ever binds
    b = BundleData(RatMatrix.from_rows([[1, 1]]), IntMatrix.from_rows([[0, 1]]))
    assert ci_stability(b) is math.inf


def test_uniform_sparse_stability_closed_form():
    assert uniform_sparse_stability(4, 6) == 2
    assert uniform_sparse_stability(2, 4) == 1
    for r in range(1, 9):
        assert uniform_sparse_stability(r, r + 1) == r - 1
    with pytest.raises(ValueError):
        uniform_sparse_stability(4, 4)


def test_uniform_sparse_matches_iteration():
    for d in range(1, 4):
        for s in range(d + 2, 9):
            b = uniform_sparse_bundle(d, s)
            assert ci_stability(b) == uniform_sparse_stability(s - d, s)


def test_uniform_sparse_closed_form_independent_of_placement():
    # one positive entry per row in distinct columns: any permutation and
    # any values give the same stability as the identity placement
    rng = random.Random(41)
    for _ in range(12):
        d = rng.randrange(1, 4)
        s = rng.randrange(d + 2, 9)
        cols = list(range(1, s + 1))
        rng.shuffle(cols)
        positions = [(c, rng.randrange(1, 5)) for c in cols]
        b = uniform_sparse_bundle(d, s, positions)
        assert ci_stability(b) == uniform_sparse_stability(s - d, s)


def test_classify_tangent():
    for n in (2, 3, 4):
        cls = classify(tangent_bundle(n))
        assert cls.sparse and cls.uniform and cls.hypersurface
        assert cls.rank == n
        assert ci_stability(tangent_bundle(n)) == cls.rank - 1


def test_classify_example(ex514):
    cls = classify(ex514)
    assert cls.uniform and cls.hypersurface and not cls.sparse
    assert cls.rank == 5


def test_classify_zero_row_counts_as_sparse():
    b = uniform_sparse_bundle(1, 3, positions=[None, (2, 5)])
    assert classify(b).sparse


def test_classify_non_uniform():
    m = RatMatrix.from_rows([[1, 0, 1], [0, 1, 0]])
    d = IntMatrix.from_rows([[1, 0, 0]])
    cls = classify(BundleData(m, d))
    assert not cls.uniform


def test_make_bundle_kinds():
    t2 = make_bundle("tangent", 2)
    assert t2.m.row_list() == [[1, 1, 1]]
    assert t2.diagram == IntMatrix.identity(3)
    k = make_bundle("kaneyama", [1, 1, 1])
    assert k.diagram == t2.diagram and k.m == t2.m
    us = make_bundle("uniform_sparse", 2, 6)
    cls = classify(us)
    assert cls.sparse and cls.uniform
    with pytest.raises(ValueError):
        make_bundle("kaneyama", [1, 0, 2])
    with pytest.raises(ValueError):
        make_bundle("uniform_sparse", 2, 4, positions=[(1, 1), (1, 2)])
    with pytest.raises(ValueError):
        make_bundle("mystery")


def test_rank_monotonicity_over_subsets(ex514):
    rng = random.Random(17)
    instances = [ex514, tangent_bundle(3), uniform_sparse_bundle(2, 6)]
    for _ in range(5):
        s = rng.randrange(4, 7)
        positions = [(j, rng.randrange(1, 4)) for j in range(1, s + 1)]
        instances.append(uniform_sparse_bundle(rng.randrange(1, 3), s, positions))
    for b in instances:
        rays = range(1, b.n + 1)
        for size_a in range(1, b.n + 1):
            for a_set in combinations(rays, size_a):
                cols_a = common_minimal_columns(b, a_set)
                m_a = restricted_rank(b, a_set)
                for size_b in range(1, size_a + 1):
                    for b_set in combinations(a_set, size_b):
                        assert cols_a <= common_minimal_columns(b, b_set)
                        assert m_a <= restricted_rank(b, b_set)


def test_region_table_values():
    rows, lines = region_table(12, 14)
    table = {(r, s): stab for r, s, stab in rows}
    assert table[(4, 6)] == 2
    assert table[(6, 8)] == 3
    # the whole circled family (2k, 2k + 2) sits on the l = k boundary strip
    for k in range(2, 7):
        assert table[(2 * k, 2 * k + 2)] == k
    for r in range(1, 13):
        assert table[(r, r + 1)] == r - 1
    assert lines and lines[0][0] == 2
    # boundary line: l(s - r) = s - 1 rewritten as s = slope*r + intercept
    ell, slope, intercept = lines[0]
    r = 5
    s = slope * r + intercept
    assert ell * (s - r) == s - 1


def test_region_csv_and_svg():
    rows, lines = region_table(4, 6)
    csv = region_csv(rows)
    assert csv.splitlines()[0] == "r,s,stability"
    assert "4,6,2" in csv
    svg = region_svg(rows, lines)
    assert svg.startswith("<svg") and "circle" in svg


def test_bundle_validation():
    with pytest.raises(ValueError):
        # M rank-deficient
        BundleData(
            RatMatrix.from_rows([[1, 1, 1], [2, 2, 2]]),
            IntMatrix.from_rows([[1, 0, 0]]),
        )
    with pytest.raises(ValueError):
        # no room for positive rank
        BundleData(RatMatrix.identity(2), IntMatrix.from_rows([[1, 0]]))
    with pytest.raises(ValueError):
        # column count mismatch
        BundleData(RatMatrix.from_rows([[1, 1]]), IntMatrix.from_rows([[1, 0, 0]]))
