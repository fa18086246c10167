from functools import lru_cache

import pytest
from hypothesis import strategies as st

from lincnf import build_formula
from lincnf import generators as gen
from lincnf.errors import BudgetExhausted

FANO = [[1, 2, 3], [1, 4, 5], [1, 6, 7], [2, 4, 6], [2, 5, 7], [3, 4, 7], [3, 5, 6]]
CYCLE4 = [[1, 2], [3, 4], [1, 3], [2, 4]]
PATH = [[1, 2], [2, 3], [4, 5]]
TRIANGLE = [[1, 2], [2, 3], [1, 3]]


@pytest.fixture
def fano():
    return build_formula(FANO)


@pytest.fixture
def cycle4():
    return build_formula(CYCLE4)


@pytest.fixture
def path():
    return build_formula(PATH)


@lru_cache(maxsize=None)
def search_sweep(max_m=30, budget=2000):
    """(name, formula) for every (k <= 6, l <= 4, d) with m <= max_m found within budget."""
    out = []
    for l in range(1, 5):
        for k in range(1, 7):
            for d in range(0, max_m):
                m = 1 + k * (l - 1) + d
                if m > max_m or (k * m) % l:
                    continue
                try:
                    f = gen.gen_dlcnf_search(k, l, d, budget=budget)
                except BudgetExhausted:
                    continue
                if f is not None:
                    out.append((f"search-k{k}-l{l}-d{d}", f))
    return tuple(out)


@lru_cache(maxsize=None)
def _regular_fixtures():
    """Every generator family at acceptance sizes."""
    items = [(f"pg2-{q}", gen.gen_projective_plane(q)) for q in (2, 3)]
    items += [(f"cycle-{t}", gen.gen_cycle(t)) for t in range(2, 9)]
    items += [
        (f"blocks-{m}x{k}", gen.gen_disjoint_blocks(m, k))
        for m in range(1, 7)
        for k in range(1, 4)
    ]
    items += [("fano", build_formula(FANO)), ("cycle4", build_formula(CYCLE4)),
              ("triangle", build_formula(TRIANGLE))]
    items += search_sweep()
    return tuple(items)


def regular_fixtures(max_n=None):
    """Every generator family at acceptance sizes, plus the search sweep."""
    items = _regular_fixtures()
    if max_n is not None:
        items = tuple((name, f) for name, f in items if f.n <= max_n)
    return items


@st.composite
def clause_lists(draw, max_var=8, max_clauses=8, max_len=4, signed=True):
    """Raw clause lists with distinct variables per clause."""
    m = draw(st.integers(0, max_clauses))
    out = []
    for _ in range(m):
        vs = draw(st.lists(st.integers(1, max_var), min_size=1, max_size=max_len, unique=True))
        if signed:
            signs = draw(st.lists(st.booleans(), min_size=len(vs), max_size=len(vs)))
            vs = [v if s else -v for v, s in zip(vs, signs)]
        out.append(vs)
    return out


@st.composite
def linear_clause_lists(draw, **kw):
    """Clause lists filtered greedily down to a linear formula."""
    raw = draw(clause_lists(**kw))
    kept = []
    for c in raw:
        vs = {abs(x) for x in c}
        if all(len(vs & {abs(x) for x in o}) <= 1 for o in kept):
            kept.append(c)
    return kept
