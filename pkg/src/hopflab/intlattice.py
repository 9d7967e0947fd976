"""Exact integer linear algebra on small lattices.

Row-style Hermite normal form, integer kernels, lattice membership and
LLL reduction. Matrices are plain lists of lists of Python ints; sizes in
this package are tiny (a handful of rows), so clarity wins over speed.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

IntMatrix = List[List[int]]


def exgcd(a: int, b: int):
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> IntMatrix:
    """Row Hermite normal form of the lattice spanned by ``rows``.

    Returns the nonzero rows only. Pivots (first nonzero entry of each row)
    are positive and strictly increase in column; entries above a pivot lie in
    ``[0, pivot)``. Two generating sets of the same lattice give the same output.
    """
    a = [[int(x) for x in r] for r in rows]
    if not a:
        return []
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        if r == len(a):
            break
        for i in range(r + 1, len(a)):
            if a[i][c] == 0:
                continue
            p, q = a[r][c], a[i][c]
            g, x, y = exgcd(p, q)
            u, v = p // g, q // g
            # [[x, y], [-v, u]] has determinant 1
            ra, rb = a[r], a[i]
            a[r] = [x * s + y * t for s, t in zip(ra, rb)]
            a[i] = [-v * s + u * t for s, t in zip(ra, rb)]
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-s for s in a[r]]
        piv = a[r][c]
        for i in range(r):
            f = a[i][c] // piv
            if f:
                a[i] = [s - f * t for s, t in zip(a[i], a[r])]
        r += 1
    return [row for row in a[:r] if any(row)]


def integer_kernel(matrix: Sequence[Sequence[int]], ncols: int | None = None) -> IntMatrix:
    """Basis (in HNF) of ``{x in Z^q : matrix @ x == 0}``."""
    m = [[int(x) for x in row] for row in matrix]
    q = len(m[0]) if m else ncols
    if q is None:
        raise ValueError("ncols is required for an empty matrix")
    p = len(m)
    # HNF of [A^T | I]: rows whose A^T part vanishes carry a kernel basis.
    aug = [[m[i][j] for i in range(p)] + [int(j == k) for k in range(q)] for j in range(q)]
    h = hermite_normal_form(aug)
    kernel = [row[p:] for row in h if not any(row[:p])]
    return hermite_normal_form(kernel)


def in_lattice(basis_hnf: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    """Membership of ``v`` in the Z-span of a basis already in Hermite normal form."""
    w = [int(x) for x in v]
    for row in basis_hnf:
        c = next(j for j, x in enumerate(row) if x)
        q, rem = divmod(w[c], row[c])
        if rem:
            return False
        if q:
            w = [s - q * t for s, t in zip(w, row)]
    return not any(w)


def rank(rows: Sequence[Sequence[int]]) -> int:
    return len(hermite_normal_form(rows))


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _gram_schmidt(b):
    n = len(b)
    bstar: list = []
    mu = [[Fraction(0)] * n for _ in range(n)]
    norms = []
    for i in range(n):
        v = [Fraction(x) for x in b[i]]
        for j in range(i):
            mu[i][j] = _dot(b[i], bstar[j]) / norms[j] if norms[j] else Fraction(0)
            v = [s - mu[i][j] * t for s, t in zip(v, bstar[j])]
        bstar.append(v)
        norms.append(_dot(v, v))
    return mu, norms


def lll_reduce(rows: Sequence[Sequence[int]], delta: Fraction = Fraction(99, 100)) -> IntMatrix:
    """LLL-reduce linearly independent integer rows (exact rational arithmetic)."""
    b = [[int(x) for x in r] for r in rows]
    n = len(b)
    if n <= 1:
        return b
    mu, norms = _gram_schmidt(b)
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = [s - q * t for s, t in zip(b[k], b[j])]
                for i in range(j):
                    mu[k][i] -= q * mu[j][i]
                mu[k][j] -= q
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            mu, norms = _gram_schmidt(b)
            k = max(k - 1, 1)
    return b
