"""Valuated matroids of integer matrices under the p-adic valuation.

The columns of a d x n integer matrix present n monomials in d
parameters.  Their algebraic relations form a binomial prime ideal, and
the valuated matroid can be read off directly from the matrix: circuits
are the minimal-support integer kernel vectors (valuated entrywise by
val_p), and basis values are the p-adic valuations of maximal minors.
This is both a standalone input mode and an independent oracle for the
elimination route.

All linear algebra is exact: fraction-free (Bareiss) determinants and
unimodular column reduction for kernel lattice bases, over unbounded
Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd

from algval.algmat import Matroid
from algval.ffpoly import INF, CircuitVector, Polynomial, PrimeField, p_adic_valuation
from algval.groebner import Ideal, saturate
from algval.valmat import Valuation


@dataclass(frozen=True)
class IntMatrix:
    """Exact-integer d x n matrix, rows as tuples."""

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(e) for e in row) for row in self.rows)
        if not rows or not rows[0]:
            raise ValueError("matrix needs at least one row and one column")
        if len({len(r) for r in rows}) != 1:
            raise ValueError("ragged rows")
        object.__setattr__(self, "rows", rows)

    @property
    def d(self):
        return len(self.rows)

    @property
    def n(self):
        return len(self.rows[0])

    def column(self, j):
        return tuple(row[j] for row in self.rows)

    def submatrix(self, row_indices, col_indices):
        return [[self.rows[i][j] for j in col_indices] for i in row_indices]


def bareiss_determinant(matrix) -> int:
    """Fraction-free determinant of a square integer matrix."""
    a = [list(row) for row in matrix]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
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


def integer_rank(matrix) -> int:
    """Rank of an integer matrix by fraction-free elimination with full
    pivot search."""
    a = [list(row) for row in matrix]
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    rank = 0
    prev = 1
    for col in range(cols):
        pivot = None
        for i in range(rank, rows):
            if a[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        for i in range(rank + 1, rows):
            for j in range(col + 1, cols):
                a[i][j] = (a[i][j] * a[rank][col] - a[i][col] * a[rank][j]) // prev
            a[i][col] = 0
        prev = a[rank][col]
        rank += 1
        if rank == rows:
            break
    return rank


def row_basis(matrix: IntMatrix):
    """First row subset, in order, spanning the row space."""
    chosen = []
    for i in range(matrix.d):
        candidate = chosen + [i]
        if integer_rank([matrix.rows[r] for r in candidate]) == len(candidate):
            chosen.append(i)
    return chosen


def kernel_basis(matrix: IntMatrix):
    """Basis of the integer kernel lattice, via unimodular column
    reduction (so the returned vectors span the full lattice, not a
    finite-index sublattice)."""
    d, n = matrix.d, matrix.n
    m = [list(row) for row in matrix.rows]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def combine(dst, src, q):
        # column_dst -= q * column_src, in both m and u
        for i in range(d):
            m[i][dst] -= q * m[i][src]
        for i in range(n):
            u[i][dst] -= q * u[i][src]

    fixed = 0
    for r in range(d):
        while True:
            live = [j for j in range(fixed, n) if m[r][j] != 0]
            if len(live) <= 1:
                break
            jmin = min(live, key=lambda j: (abs(m[r][j]), j))
            for j in live:
                if j != jmin:
                    combine(j, jmin, m[r][j] // m[r][jmin])
        live = [j for j in range(fixed, n) if m[r][j] != 0]
        if live:
            j = live[0]
            if j != fixed:
                for row in m:
                    row[fixed], row[j] = row[j], row[fixed]
                for row in u:
                    row[fixed], row[j] = row[j], row[fixed]
            fixed += 1
    return [tuple(u[i][j] for i in range(n)) for j in range(fixed, n)]


@dataclass(frozen=True)
class KernelCircuit:
    """Primitive integer kernel vector of minimal support; the first
    nonzero entry is positive."""

    vector: tuple
    support: frozenset

    def __post_init__(self):
        vector = tuple(int(v) for v in self.vector)
        object.__setattr__(self, "vector", vector)
        object.__setattr__(self, "support", frozenset(self.support))
        if self.support != {i for i, v in enumerate(vector) if v}:
            raise ValueError("support does not match the vector")
        if not self.support:
            raise ValueError("kernel circuit cannot be the zero vector")


def _primitive(vector):
    g = 0
    for v in vector:
        g = gcd(g, abs(v))
    vector = [v // g for v in vector]
    first = next(v for v in vector if v)
    if first < 0:
        vector = [-v for v in vector]
    return tuple(vector)


def integer_kernel_circuits(matrix: IntMatrix):
    """One primitive kernel vector per circuit of the column matroid.

    Candidate supports are found by exact rank; on each circuit the
    kernel line is produced by the cofactor rule: up to sign, entry j is
    the maximal minor obtained by deleting column j.
    """
    n = matrix.n
    found = []
    ranks = {frozenset(): 0}
    for size in range(1, n + 1):
        for combo in combinations(range(n), size):
            s = frozenset(combo)
            if any(c.support <= s for c in found):
                continue
            r = integer_rank(matrix.submatrix(range(matrix.d), combo))
            ranks[s] = r
            if r == size:
                continue
            # minimality is guaranteed: proper subsets were all independent
            cols = list(combo)
            sub = IntMatrix(tuple(
                tuple(matrix.rows[i][j] for j in cols) for i in range(matrix.d)
            ))
            rsel = row_basis(sub)
            vector = [0] * n
            for k, j in enumerate(cols):
                others = cols[:k] + cols[k + 1:]
                minor_val = bareiss_determinant(matrix.submatrix(rsel, others))
                vector[j] = (-1) ** k * minor_val
            vec = _primitive(vector)
            circuit = KernelCircuit(vec, s)
            if any(
                sum(matrix.rows[i][j] * vec[j] for j in range(n)) != 0
                for i in range(matrix.d)
            ):
                raise AssertionError(f"cofactor construction failed on {sorted(s)}")
            found.append(circuit)
    return found


def toric_valuated_circuit(circuit: KernelCircuit, p: int) -> CircuitVector:
    """Entrywise p-adic valuation of a kernel circuit (canonical: a
    primitive vector always has a unit entry somewhere)."""
    entries = [
        p_adic_valuation(abs(v), p) if v else INF for v in circuit.vector
    ]
    return CircuitVector(entries).canonical()


def default_variables(n):
    return tuple(f"x{i}" for i in range(1, n + 1))


def toric_ideal(matrix: IntMatrix, p: int) -> Ideal:
    """The prime binomial ideal of relations among the monomials with
    exponent columns from the matrix: lattice-basis binomials, saturated
    at the product of all variables."""
    field = PrimeField(p)
    vars = default_variables(matrix.n)
    basis = kernel_basis(matrix)
    if not basis:
        return Ideal(field, vars, ())
    gens = []
    for u in basis:
        plus = tuple(max(v, 0) for v in u)
        minus = tuple(-min(v, 0) for v in u)
        gens.append(Polynomial(field, vars, {plus: 1, minus: -1}))
    lattice = Ideal(field, vars, gens)
    return saturate(lattice, (1,) * matrix.n)


def determinant_valuation(matrix: IntMatrix, column_subset, p: int):
    """val_p of the maximal minor on a fixed row basis and the given
    columns; infinite when the columns are dependent.  The row-basis
    choice shifts all values by one constant, which the distinguished
    (min-0) normalization later removes."""
    r = integer_rank(matrix.rows)
    cols = sorted(column_subset)
    if len(cols) != r:
        raise ValueError(f"need exactly rank={r} columns, got {len(cols)}")
    rows = row_basis(matrix)
    det = bareiss_determinant(matrix.submatrix(rows, cols))
    if det == 0:
        return INF
    return p_adic_valuation(abs(det), p)


def linear_valuated_matroid(matrix: IntMatrix, p: int) -> Valuation:
    """Column bases valued by the p-adic valuation of their maximal
    minors, shifted to distinguished form."""
    r = integer_rank(matrix.rows)
    values = {}
    for combo in combinations(range(matrix.n), r):
        v = determinant_valuation(matrix, combo, p)
        if v != INF:
            values[frozenset(combo)] = v
    matroid = Matroid(matrix.n, values.keys())
    return Valuation(matroid, values)
