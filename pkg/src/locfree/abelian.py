"""Exact integer matrix tools: Smith normal form, lattices, direct limits.

Matrices are tuples of tuples of Python ints; everything is exact.  The
Smith normal form records the unimodular transforms so D = U A V can be
re-verified by plain multiplication.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import RangeError


def matrix(rows):
    return tuple(tuple(int(x) for x in row) for row in rows)


def identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a, b):
    if a and b and len(a[0]) != len(b):
        raise RangeError("matrix dimensions do not match")
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(len(b)))
              for j in range(len(b[0]) if b else 0))
        for i in range(len(a)))


def mat_pow(m, n):
    result = identity(len(m))
    for _ in range(n):
        result = mat_mul(result, m)
    return result


def transpose(m):
    if not m:
        return ()
    return tuple(tuple(m[i][j] for i in range(len(m))) for j in range(len(m[0])))


def determinant(m):
    """Exact determinant by fraction-free Gaussian elimination (Bareiss)."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rational_rank(m):
    """Rank over the rationals."""
    if not m or not m[0]:
        return 0
    a = [[Fraction(x) for x in row] for row in m]
    rows, cols = len(a), len(a[0])
    rank = 0
    for col in range(cols):
        pivot = None
        for i in range(rank, rows):
            if a[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        inv = 1 / a[rank][col]
        a[rank] = [x * inv for x in a[rank]]
        for i in range(rows):
            if i != rank and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


@dataclass(frozen=True)
class SmithForm:
    """D = U A V with U, V unimodular and D diagonal with a divisibility chain."""

    d: tuple
    u: tuple
    v: tuple
    invariant_factors: tuple

    def verify(self, a):
        return mat_mul(mat_mul(self.u, a), self.v) == self.d


def smith_normal_form(a):
    """Smith normal form by integer row/column operations.

    Returns a SmithForm whose ``invariant_factors`` are the nonzero
    diagonal entries d1 | d2 | ... (all positive).
    """
    a = matrix(a)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [list(row) for row in a]
    u = [list(row) for row in identity(rows)]
    v = [list(row) for row in identity(cols)]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        m[dst] = [x + c * y for x, y in zip(m[dst], m[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, c):
        for row in m:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    def negate_row(i):
        m[i] = [-x for x in m[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(rows, cols):
        # move the smallest nonzero entry of the submatrix to (t, t)
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if m[i][j] != 0:
                    if pivot is None or abs(m[i][j]) < abs(m[pivot[0]][pivot[1]]):
                        pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            # Euclidean clearing of column t and row t; any remainder
            # becomes the new, strictly smaller pivot
            dirty = False
            for i in range(t + 1, rows):
                if m[i][t] != 0:
                    q = m[i][t] // m[t][t]
                    add_row(t, i, -q)
                    if m[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if m[t][j] != 0:
                    q = m[t][j] // m[t][t]
                    add_col(t, j, -q)
                    if m[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # pivot must divide every remaining entry, or the chain breaks
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if m[i][j] % m[t][t] != 0:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(bad, t, 1)
        if m[t][t] < 0:
            negate_row(t)
        t += 1

    d = matrix(m)
    factors = tuple(d[i][i] for i in range(t) if d[i][i] != 0)
    return SmithForm(d=d, u=matrix(u), v=matrix(v), invariant_factors=factors)


def cokernel_invariants(a, n_generators):
    """(free_rank, torsion) of Z^n modulo the rows of ``a``."""
    if not a:
        return n_generators, ()
    snf = smith_normal_form(a)
    factors = snf.invariant_factors
    free_rank = n_generators - len(factors)
    torsion = tuple(d for d in factors if d != 1)
    return free_rank, torsion


def column_lattice_basis(m):
    """Basis of the lattice spanned by the columns, via column reduction."""
    if not m or not m[0]:
        return ()
    rows = len(m)
    cols = [list(col) for col in transpose(m)]
    basis = []
    row = 0
    while cols and row < rows:
        live = [c for c in cols if any(c[row:])]
        if not live:
            break
        cols = live
        # reduce entries in this row by gcd-style column operations
        while True:
            nz = [c for c in cols if c[row] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda c: abs(c[row]))
            small = nz[0]
            for c in nz[1:]:
                q = c[row] // small[row]
                for i in range(rows):
                    c[i] -= q * small[i]
        pivot = next((c for c in cols if c[row] != 0), None)
        if pivot is not None:
            basis.append(tuple(pivot))
            cols = [c for c in cols if c is not pivot]
        row += 1
    return tuple(basis)


def gram_determinant(vectors):
    g = [[sum(x * y for x, y in zip(a, b)) for b in vectors] for a in vectors]
    return determinant(matrix(g))


@dataclass(frozen=True)
class DirectLimit:
    """Classification of the direct limit of Z^n under iterated M."""

    stable_rank: int
    dilation: int
    classification: str


def direct_limit(m):
    """Classify colim(Z^n --M--> Z^n --M--> ...).

    The rational column spaces of the powers of M descend and stabilize
    within n steps.  On the stable space M acts bijectively; the dilation
    is the index of M(L) in L for the stable integer image lattice L.
    Dilation 1 means the limit is free abelian of the stable rank;
    otherwise the limit is a strictly increasing union and not finitely
    generated.
    """
    m = matrix(m)
    n = len(m)
    if any(len(row) != n for row in m):
        raise RangeError("direct limit needs a square matrix")
    if n == 0:
        return DirectLimit(0, 1, "free abelian of rank 0")
    stable = mat_pow(m, n)
    rank = rational_rank(stable)
    if rank == 0:
        return DirectLimit(0, 1, "free abelian of rank 0")
    basis = column_lattice_basis(stable)
    image = tuple(tuple(sum(m[i][k] * b[k] for k in range(n)) for i in range(n))
                  for b in basis)
    g0 = gram_determinant(basis)
    g1 = gram_determinant(image)
    # index of M(L) in L: covolume ratio, an exact integer
    ratio = Fraction(g1, g0)
    if ratio.denominator != 1:
        raise RangeError("stable lattice image is not a sublattice")
    dilation = isqrt(ratio.numerator)
    if dilation * dilation != ratio.numerator:
        raise RangeError("covolume ratio is not a perfect square")
    if dilation == 1:
        text = f"free abelian of rank {rank}"
    else:
        text = f"rank-{rank} module with dilation {dilation} (not finitely generated)"
    return DirectLimit(stable_rank=rank, dilation=dilation, classification=text)
