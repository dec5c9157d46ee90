"""Independent reference computations used by the tests.

Nothing here touches the package's own normal-form code.
"""

from fractions import Fraction
from itertools import combinations, product
from math import gcd


def rational_rank(rows):
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return 0
    m, n = len(a), len(a[0])
    rank = 0
    for c in range(n):
        piv = next((i for i in range(rank, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(m):
            if i != rank and a[i][c] != 0:
                f = a[i][c] / a[rank][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def rational_det(rows):
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    assert det.denominator == 1
    return int(det)


def determinantal_divisor(rows, r):
    """gcd of all r x r minors (d_1 * ... * d_r for the Smith form)."""
    m, n = len(rows), len(rows[0]) if rows else 0
    g = 0
    for ri in combinations(range(m), r):
        for ci in combinations(range(n), r):
            g = gcd(g, rational_det([[rows[i][j] for j in ci] for i in ri]))
    return g


def torsion_by_residues(rows, limit=200_000):
    """Order of the torsion of Z^m / (column span) by counting residues.

    With N a multiple of the torsion exponent, Z^m / (L + N Z^m) has order
    N^(m-r) * |T|; the image of L mod N is built by additive closure of the
    columns.  Returns None when the closure would exceed ``limit``.
    """
    m = len(rows)
    n = len(rows[0]) if rows else 0
    r = rational_rank(rows)
    if r == 0:
        return 1
    N = determinantal_divisor(rows, r)
    if N == 1:
        return 1
    if N ** r > limit * N:
        return None
    cols = [tuple(rows[i][j] % N for i in range(m)) for j in range(n)]
    seen = {(0,) * m}
    frontier = list(seen)
    while frontier:
        nxt = []
        for v in frontier:
            for c in cols:
                w = tuple((x + y) % N for x, y in zip(v, c))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    total = N ** m // len(seen)  # |Z^m / (L + N Z^m)|
    assert total % N ** (m - r) == 0
    return total // N ** (m - r)


def brute_singular_points_hypersurface(f, variables, fld):
    """Points of P^n where f and all partials vanish, by plain iteration."""
    n = len(variables)
    out = set()
    partials = [f.partial(v) for v in variables]
    for vec in product(range(fld.q), repeat=n):
        if not any(vec):
            continue
        first = next(i for i, x in enumerate(vec) if x)
        if vec[first] != 1:
            continue
        env = dict(zip(variables, vec))
        if f.reduce_mod(fld.p).evaluate(fld, env) != 0:
            continue
        if all((not d.reduce_mod(fld.p).terms) or d.reduce_mod(fld.p).evaluate(fld, env) == 0
               for d in partials):
            out.add(vec)
    return out
