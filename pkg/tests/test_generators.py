import pytest

from lincnf import build_formula, write_dimacs
from lincnf import generators as gen
from lincnf.classifier import classify, is_exact_linear, is_linear
from lincnf.errors import BudgetExhausted, InconsistentParameters, NotPrime
from lincnf.identities import identity_suite, ml_quadratic_check, parameters_to_size
from lincnf.xsat import brute_force_xsat

from conftest import FANO


def _is_isomorphic(f, g):
    """Brute-force hypergraph isomorphism for tiny formulas."""
    from itertools import permutations

    if (f.m, f.n) != (g.m, g.n):
        return False
    fv, gv = f.sorted_variables, g.sorted_variables
    target = sorted(sorted(c.variables) for c in g)
    for perm in permutations(gv):
        relabel = dict(zip(fv, perm))
        if sorted(sorted(relabel[x] for x in c.variables) for c in f) == target:
            return True
    return False


def test_projective_plane_q2_is_fano():
    f = gen.gen_projective_plane(2)
    r = classify(f)
    assert r.exact_linear and (r.k, r.l, r.d) == (3, 3, 0)
    assert _is_isomorphic(f, build_formula(FANO))


@pytest.mark.parametrize("q", [2, 3, 5, 7])
def test_projective_plane_parameters(q):
    f = gen.gen_projective_plane(q)
    r = classify(f)
    size = q * q + q + 1
    assert f.m == f.n == size
    assert (r.k, r.l, r.d) == (q + 1, q + 1, 0)
    assert is_exact_linear(f)
    assert f.m == 1 + (q + 1) * q  # m = 1 + k(l-1) + d with d = 0


def test_projective_plane_q4_not_prime():
    with pytest.raises(NotPrime):
        gen.gen_projective_plane(4)


def test_cycle_t2():
    f = gen.gen_cycle(2)
    assert f.to_lists() == [[1, 2], [2, 3], [3, 4], [1, 4]]
    assert classify(f).d == 1
    assert _is_isomorphic(f, build_formula([[1, 2], [3, 4], [1, 3], [2, 4]]))
    res = brute_force_xsat(f, collect_models=True)
    assert set(res.models) == {frozenset({1, 3}), frozenset({2, 4})}


def test_cycle_t3():
    f = gen.gen_cycle(3)
    r = classify(f)
    assert f.m == 6 and r.d == 3 and f.m == 1 + 2 * 1 + 3


def test_cycle_rejects_small_t():
    with pytest.raises(InconsistentParameters):
        gen.gen_cycle(1)


@pytest.mark.parametrize(
    "m, k, lists, models",
    [
        (3, 2, [[1, 2], [3, 4], [5, 6]], 8),
        (1, 3, [[1, 2, 3]], 3),
        (2, 1, [[1], [2]], 1),
    ],
)
def test_disjoint_blocks(m, k, lists, models):
    f = gen.gen_disjoint_blocks(m, k)
    assert f.to_lists() == lists
    r = classify(f)
    assert (r.k, r.l, r.d) == (k, 1, m - 1)
    assert brute_force_xsat(f).model_count == models == k ** m


def test_search_four_cycle():
    f = gen.gen_dlcnf_search(2, 2, 1)
    r = classify(f)
    assert (r.k, r.l, r.d) == (2, 2, 1)
    assert _is_isomorphic(f, build_formula([[1, 2], [3, 4], [1, 3], [2, 4]]))


def test_search_fano():
    f = gen.gen_dlcnf_search(3, 3, 0)
    assert _is_isomorphic(f, build_formula(FANO))
    assert f.clauses[0].literals == (1, 2, 3)


def test_search_inconsistent():
    with pytest.raises(InconsistentParameters):
        gen.gen_dlcnf_search(2, 3, 0)


def test_search_proves_nonexistence():
    # k=2, l=4, d=1: m=8, n=4, but a 2-clause linear formula on 4 variables has at most 6 clauses
    stats = gen.SearchStats()
    assert gen.gen_dlcnf_search(2, 4, 1, stats=stats) is None
    assert stats.exhausted


def test_search_budget_exhausted():
    with pytest.raises(BudgetExhausted):
        gen.gen_dlcnf_search(6, 3, 12, budget=50)


def test_search_seeded_is_deterministic_and_certified():
    a = gen.gen_dlcnf_search(4, 4, 4, budget=50_000, seed=1)
    b = gen.gen_dlcnf_search(4, 4, 4, budget=50_000, seed=1)
    assert write_dimacs(a) == write_dimacs(b)
    r = classify(a)
    assert (r.k, r.l, r.d) == (4, 4, 4)


def test_search_first_row_and_sorted_rows():
    for k, l, d in [(3, 2, 2), (3, 3, 2), (4, 3, 0), (2, 3, 1)]:
        f = gen.gen_dlcnf_search(k, l, d)
        rows = [c.literals for c in f]
        assert rows[0] == tuple(range(1, k + 1))
        assert rows == sorted(rows)
        p = parameters_to_size(k, l, d)
        assert (f.m, f.n) == (p.m, p.n)
        assert ml_quadratic_check(f.m, f.n, l, d)


def test_search_unit_clauses():
    # k = 1, l = 2, d = 2: m = 4 unit clauses, each variable repeated twice
    f = gen.gen_dlcnf_search(1, 2, 2)
    r = classify(f)
    assert (r.k, r.l, r.d) == (1, 2, 2) and f.to_lists() == [[1], [1], [2], [2]]


@pytest.mark.parametrize("seed", [0, 1, 2, 3])
def test_random_linear(seed):
    f = gen.gen_random_linear(5, 2, 2, seed)
    assert is_linear(f)
    g = gen.gen_random_linear(12, 2, 4, 7)
    assert is_linear(g) and all(r.holds for r in identity_suite(g))


def test_random_linear_single_variable():
    assert gen.gen_random_linear(1, 1, 1, 0).to_lists() == [[1]]


def test_random_linear_deterministic_and_capped():
    a = gen.gen_random_linear(20, 2, 4, 123, max_clauses=15)
    b = gen.gen_random_linear(20, 2, 4, 123, max_clauses=15)
    assert write_dimacs(a) == write_dimacs(b) and a.m <= 15


def test_random_linear_bad_range():
    with pytest.raises(InconsistentParameters):
        gen.gen_random_linear(3, 2, 4, 0)
