"""Independent oracle: lcm of vertex denominators of the arrangement spanned by
lattice points of n*Delta^r, together with the reflection hyperplanes x_i = x_j
and the simplex facets, inside the simplex. Prints "r n hyperplanes lcm"."""
import itertools
import math
import sys

import sympy


def points(r, n):
    return [p for p in itertools.product(range(n + 1), repeat=r + 1) if sum(p) == n]


def spanned(r, n):
    found = set()
    for s in itertools.combinations(points(r, n), r):
        rows = [[a - b for a, b in zip(q, s[0])] for q in s[1:]] + [[1] * (r + 1)]
        m = sympy.Matrix(rows)
        if m.rank() < r:
            continue
        ns = m.nullspace()
        if len(ns) != 1:
            continue
        v = ns[0]
        den = sympy.ilcm(*[x.q for x in v])
        v = [int(x * den) for x in v]
        g = math.gcd(*v)
        v = [x // g for x in v]
        if next(x for x in v if x) < 0:
            v = [-x for x in v]
        found.add((tuple(v), sum(a * b for a, b in zip(v, s[0]))))
    return found


def reflections(r):
    out = set()
    for i, j in itertools.combinations(range(r + 1), 2):
        v = [0] * (r + 1)
        v[i], v[j] = 1, -1
        out.add((tuple(v), 0))
    return out


def denominator(r, n, hyperplanes):
    hs = list(hyperplanes) + [(tuple(int(i == j) for i in range(r + 1)), 0) for j in range(r + 1)]
    lcm = 1
    for s in itertools.combinations(hs, r):
        m = sympy.Matrix([list(h[0]) for h in s] + [[1] * (r + 1)])
        if m.det() == 0:
            continue
        x = m.LUsolve(sympy.Matrix([h[1] for h in s] + [n]))
        if all(xi >= 0 for xi in x):
            lcm = sympy.ilcm(lcm, *[sympy.Rational(xi).q for xi in x])
    return lcm


if __name__ == "__main__":
    for r, n in [tuple(map(int, a.split(","))) for a in sys.argv[1:]]:
        h = spanned(r, n)
        print(r, n, len(h), denominator(r, n, h | reflections(r)))
