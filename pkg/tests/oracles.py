"""Independent reference computations used to freeze expected values.

These deliberately avoid the package's own helpers: clauses are plain lists
of signed ints and everything is recomputed by direct enumeration.
"""

from fractions import Fraction
from itertools import combinations, product


def variables(clauses):
    return sorted({abs(x) for c in clauses for x in c})


def occurrences(clauses):
    return {x: sum(1 for c in clauses if x in {abs(y) for y in c}) for x in variables(clauses)}


def disjointedness(clauses):
    sets = [{abs(y) for y in c} for c in clauses]
    return [
        sum(1 for j in range(len(sets)) if j != i and not (sets[i] & sets[j]))
        for i in range(len(sets))
    ]


def independence(clauses):
    sets = [{abs(y) for y in c} for c in clauses]
    vs = variables(clauses)
    out = {}
    for x in vs:
        out[x] = sum(
            1 for y in vs if y != x and not any(x in s and y in s for s in sets)
        )
    return out


def means(clauses):
    occ = occurrences(clauses)
    m, n = len(clauses), len(occ)
    ks = [len(c) for c in clauses]
    return {
        "k": Fraction(sum(ks), m),
        "k2": Fraction(sum(k * k for k in ks), m),
        "l": Fraction(sum(occ.values()), n),
        "l2": Fraction(sum(v * v for v in occ.values()), n),
        "d": Fraction(sum(disjointedness(clauses)), m),
        "v": Fraction(sum(independence(clauses).values()), n),
    }


def xsat_models(clauses):
    """All x-models as sorted tuples of true variables, by product over {0,1}^n."""
    vs = variables(clauses)
    models = []
    for bits in product((0, 1), repeat=len(vs)):
        value = dict(zip(vs, bits))
        ok = all(
            sum(1 for lit in c if (value[abs(lit)] == 1) == (lit > 0)) == 1 for c in clauses
        )
        if ok:
            models.append(tuple(x for x in vs if value[x]))
    return sorted(models)


def is_linear(clauses):
    sets = [{abs(y) for y in c} for c in clauses]
    return all(len(a & b) <= 1 for a, b in combinations(sets, 2))
