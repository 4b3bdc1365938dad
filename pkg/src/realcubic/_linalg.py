"""Small exact matrix helpers shared across the package.

Matrices are tuples of row tuples whose entries live in Z, Q, Z[w] or
Q(sqrt3); everything here only assumes the entries support ring
arithmetic (plus ``/`` where a field is required).  Nothing is numeric.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, TypeVar

T = TypeVar("T")

Matrix = tuple[tuple[T, ...], ...]


def freeze(rows: Sequence[Sequence[T]]) -> Matrix:
    return tuple(tuple(row) for row in rows)


def identity(n: int, one: T = 1, zero: T = 0) -> Matrix:
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col)), start=row[0] * 0) for col in bt)
        for row in a
    )


def mat_vec(a: Matrix, v: Sequence[T]) -> tuple[T, ...]:
    return tuple(sum((x * y for x, y in zip(row, v)), start=row[0] * 0) for row in a)


def mat_map(a: Matrix, f) -> Matrix:
    return tuple(tuple(f(x) for x in row) for row in a)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a: Matrix, c: T) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def trace(a: Matrix) -> T:
    return sum((a[i][i] for i in range(1, len(a))), start=a[0][0])


def mat_pow(a: Matrix, n: int) -> Matrix:
    if n < 0:
        raise ValueError("negative powers not supported")
    result = None
    base = a
    while n:
        if n & 1:
            result = base if result is None else mat_mul(result, base)
        base = mat_mul(base, base)
        n >>= 1
    return result if result is not None else identity(len(a), a[0][0] * 0 + 1, a[0][0] * 0)


def field_inverse(m: Matrix, one: T = 1) -> Matrix:
    """Invert a matrix over a field via Gauss-Jordan elimination."""
    n = len(m)
    zero = one * 0
    work = [list(row) + [one if i == j else zero for j in range(n)]
            for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col]), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        work[col], work[pivot] = work[pivot], work[col]
        inv = one / work[col][col]
        work[col] = [inv * x for x in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                c = work[r][col]
                work[r] = [x - c * y for x, y in zip(work[r], work[col])]
    return freeze([row[n:] for row in work])


def field_det(m: Matrix, one: T = 1) -> T:
    n = len(m)
    work = [list(row) for row in m]
    det = one
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col]), None)
        if pivot is None:
            return one * 0
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            det = -det
        det = det * work[col][col]
        inv = one / work[col][col]
        for r in range(col + 1, n):
            if work[r][col]:
                c = work[r][col] * inv
                work[r] = [x - c * y for x, y in zip(work[r], work[col])]
    return det


def int_det(m: Matrix) -> int:
    d = field_det(mat_map(m, Fraction))
    assert d.denominator == 1
    return int(d)


def symmetric_signature(gram: Matrix) -> tuple[int, int, int]:
    """Exact inertia (n_plus, n_minus, n_zero) of a rational symmetric matrix."""
    n = len(gram)
    m = [[Fraction(x) for x in row] for row in gram]
    plus = minus = zero = 0
    k = 0
    while k < n:
        pivot = next((i for i in range(k, n) if m[i][i]), None)
        if pivot is None:
            off = next(((i, j) for i in range(k, n) for j in range(i + 1, n)
                        if m[i][j]), None)
            if off is None:
                zero += n - k
                break
            i, j = off
            for t in range(n):
                m[i][t] += m[j][t]
            for t in range(n):
                m[t][i] += m[t][j]
            pivot = i
        if pivot != k:
            m[pivot], m[k] = m[k], m[pivot]
            for t in range(n):
                m[t][pivot], m[t][k] = m[t][k], m[t][pivot]
        d = m[k][k]
        if d > 0:
            plus += 1
        else:
            minus += 1
        for i in range(k + 1, n):
            if m[i][k]:
                c = m[i][k] / d
                for t in range(n):
                    m[i][t] -= c * m[k][t]
                for t in range(n):
                    m[t][i] -= c * m[t][k]
        k += 1
    return plus, minus, zero


def integer_kernel(a: Matrix) -> list[tuple[int, ...]]:
    """Basis of the saturated kernel {x in Z^n : a.x = 0}, via unimodular
    column operations."""
    rows = len(a)
    n = len(a[0]) if rows else 0
    m = [list(row) for row in a]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    active = list(range(n))
    for i in range(rows):
        while True:
            nz = [j for j in active if m[i][j]]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda j: abs(m[i][j]))
            j0 = nz[0]
            for j in nz[1:]:
                q = m[i][j] // m[i][j0]
                if q:
                    for r in range(rows):
                        m[r][j] -= q * m[r][j0]
                    for r in range(n):
                        v[r][j] -= q * v[r][j0]
        nz = [j for j in active if m[i][j]]
        if nz:
            active.remove(nz[0])
    return [tuple(v[r][j] for r in range(n)) for j in active]
