"""Vinberg's algorithm for the reflection subgroup of a hyperbolic lattice.

Starting from a controlling vector k of negative norm, batch 0 consists of
simple roots for the finite Weyl group of the roots orthogonal to k; later
batches sweep the remaining mirrors in order of the exact priority
(k.r)^2 / r^2 and keep the roots compatible with everything accepted so far,
until the chamber passes the combinatorial finite-volume test.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from . import _linalg
from .coxeter import CoxeterDiagram, diagram_isomorphisms, finite_volume_test
from .lattice import (EVector, Vector, ZForm, is_root, lambda_from_zcoords,
                      psi)

ROOT_NORMS = (1, 2, 3, 6)


class VinbergCapError(RuntimeError):
    """The batch cap was hit; the form may not be reflective."""


def _first_nonzero_sign(v: Sequence[int]) -> int:
    for c in v:
        if c:
            return 1 if c > 0 else -1
    return 0


class _LevelSets:
    """Exact enumeration of integer vectors with prescribed pairing against
    the controlling vector and prescribed norm."""

    def __init__(self, form: ZForm, k: Vector) -> None:
        self.form = form
        self.k = k
        n = form.dimension
        w = [form.ip(k, _basis(n, i)) for i in range(n)]
        self.w = w
        self.g = 0
        for c in w:
            self.g = _gcd(self.g, c)
        self.x0 = _solve_one(w, self.g)
        self.kernel = _linalg.integer_kernel((tuple(w),))
        # Gram data of the positive-definite complement
        self.a = [[form.ip(b1, b2) for b2 in self.kernel] for b1 in self.kernel]

    def vectors(self, value: int, q: int) -> list[Vector]:
        """All integer x with k.x = value and x.x = q, in lexicographic order."""
        if self.g == 0:
            if value != 0:
                return []
            scale = 0
        elif value % self.g:
            return []
        else:
            scale = value // self.g
        n = self.form.dimension
        x0 = tuple(scale * c for c in self.x0)
        const = self.form.norm(x0)
        lin = [2 * self.form.ip(x0, b) for b in self.kernel]
        out = []
        for c in _quadratic_solutions(self.a, lin, q - const):
            x = list(x0)
            for ci, b in zip(c, self.kernel):
                for i in range(n):
                    x[i] += ci * b[i]
            out.append(tuple(x))
        out.sort()
        return out


def _basis(n: int, i: int) -> Vector:
    return tuple(1 if j == i else 0 for j in range(n))


def _gcd(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def _solve_one(w: Sequence[int], g: int) -> Vector:
    """Some integer vector with w.x = g (g = gcd of the entries of w)."""
    n = len(w)
    if g == 0:
        return tuple(0 for _ in range(n))
    x = [0] * n
    cur_g = 0
    cur_x: list[int] = []
    for i, wi in enumerate(w):
        if not cur_g:
            if wi:
                cur_g = abs(wi)
                x = [0] * n
                x[i] = 1 if wi > 0 else -1
            continue
        if wi:
            new_g, s, t = _ext_gcd(cur_g, wi)
            x = [s * c for c in x]
            x[i] += t
            cur_g = new_g
    assert sum(wi * xi for wi, xi in zip(w, x)) == g
    return tuple(x)


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        qq = old_r // r
        old_r, r = r, old_r - qq * r
        old_s, s = s, old_s - qq * s
        old_t, t = t, old_t - qq * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _quadratic_solutions(a: list[list[int]], lin: list[int],
                         target: int) -> Iterator[tuple[int, ...]]:
    """Integer c with c^T a c + lin.c = target for positive-definite a.

    Shifting by w = a^-1 lin / 2 removes the linear term, after which the
    values (c + w)^T a (c + w) are enumerated with exact rational bounds
    from the LDL decomposition of a.
    """
    n = len(a)
    if n == 0:
        if target == 0:
            yield ()
        return
    mat = [[Fraction(x) for x in row] for row in a]
    if any(lin):
        inv = _linalg.field_inverse(_linalg.freeze(mat), Fraction(1))
        w = [sum(inv[i][j] * Fraction(lin[j], 2) for j in range(n))
             for i in range(n)]
        rem0 = Fraction(target) + sum(Fraction(lin[i], 2) * w[i] for i in range(n))
    else:
        w = [Fraction(0)] * n
        rem0 = Fraction(target)
    # LDL: (z)^T a (z) = sum_i d_i (z_i + sum_{j>i} u_ij z_j)^2
    d = [Fraction(0)] * n
    u = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = mat[i][i]
        if d[i] <= 0:
            raise ValueError("complement form is not positive definite")
        for j in range(i + 1, n):
            u[i][j] = mat[i][j] / d[i]
        for r in range(i + 1, n):
            for c2 in range(i + 1, n):
                mat[r][c2] -= mat[i][r] * mat[i][c2] / d[i]
    cvals = [0] * n

    def rec(i: int, rem: Fraction) -> Iterator[tuple[int, ...]]:
        if i < 0:
            if rem == 0:
                yield tuple(cvals)
            return
        if rem < 0:
            return
        s = w[i] + sum(u[i][j] * (cvals[j] + w[j]) for j in range(i + 1, n))
        for t in _square_range(s, rem / d[i]):
            term = d[i] * (t + s) ** 2
            if term <= rem:
                cvals[i] = t
                yield from rec(i - 1, rem - term)
        cvals[i] = 0

    yield from rec(n - 1, rem0)


def _square_range(s: Fraction, bound: Fraction) -> range:
    """Integers t with (t + s)^2 <= bound (bound >= 0)."""
    approx = float(bound) ** 0.5
    center = -float(s)
    lo = int(center - approx) - 2
    hi = int(center + approx) + 2
    while (lo + s) ** 2 > bound and lo <= hi:
        lo += 1
    while (hi + s) ** 2 > bound and hi >= lo:
        hi -= 1
    return range(lo, hi + 1)


@dataclass
class VinbergState:
    """Mutable state of one run of the algorithm."""

    form: ZForm
    k: Vector
    accepted: list[Vector] = field(default_factory=list)
    processed_priorities: list[Fraction] = field(default_factory=list)
    _levels: _LevelSets | None = None
    _heap: list[tuple[Fraction, int, int]] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.form.norm(self.k) >= 0:
            raise ValueError("controlling vector must have negative norm")
        self._levels = _LevelSets(self.form, self.k)
        self._heap = [(Fraction(1, q), 1, q) for q in ROOT_NORMS]
        heapq.heapify(self._heap)

    def diagram(self) -> CoxeterDiagram:
        return CoxeterDiagram.from_roots(self.form, self.accepted)


def seed_batch(form: ZForm, k: Vector) -> list[Vector]:
    """Simple roots of the finite Weyl group of the roots orthogonal to k.

    The positive roots are those whose first nonzero coordinate is positive
    (the limit of the functional (N^4, ..., N, 1)); the simple ones are the
    positive roots that are not sums of two positive roots.
    """
    levels = _LevelSets(form, k)
    roots: set[Vector] = set()
    for q in ROOT_NORMS:
        for x in levels.vectors(0, q):
            if is_root(form, x):
                roots.add(x)
    positive = {x for x in roots if _first_nonzero_sign(x) > 0}
    simple = []
    for r in positive:
        if not any(tuple(ri - si for ri, si in zip(r, s)) in positive
                   for s in positive if s != r):
            simple.append(r)
    simple.sort()
    return simple


def next_batch(state: VinbergState) -> list[Vector]:
    """Accept the compatible roots at the next unprocessed priority."""
    priority, m, q = heapq.heappop(state._heap)
    heapq.heappush(state._heap, (Fraction((m + 1) ** 2, q), m + 1, q))
    # merge any equal-priority classes into the same batch
    classes = [(m, q)]
    while state._heap[0][0] == priority:
        _, m2, q2 = heapq.heappop(state._heap)
        classes.append((m2, q2))
        heapq.heappush(state._heap, (Fraction((m2 + 1) ** 2, q2), m2 + 1, q2))
    state.processed_priorities.append(priority)
    candidates = []
    for mm, qq in classes:
        for x in state._levels.vectors(-mm, qq):
            if is_root(state.form, x):
                candidates.append(x)
    candidates.sort()
    batch = []
    for x in candidates:
        if all(state.form.ip(x, r) <= 0 for r in state.accepted) and \
                all(state.form.ip(x, r) <= 0 for r in batch):
            batch.append(x)
    state.accepted.extend(batch)
    return batch


def run(form: ZForm, k: Vector = (1, 0, 0, 0, 0),
        max_batches: int = 200) -> tuple[list[Vector], CoxeterDiagram]:
    """Run the algorithm until the chamber has finite volume."""
    if not form.is_hyperbolic():
        raise ValueError("form must have signature (n-1, 1)")
    state = VinbergState(form, tuple(k))
    state.accepted.extend(seed_batch(form, tuple(k)))
    for _ in range(max_batches):
        diagram = state.diagram()
        if finite_volume_test(diagram, dim=form.dimension - 1):
            return list(state.accepted), diagram
        next_batch(state)
    raise VinbergCapError(
        f"no finite-volume chamber within {max_batches} batches")


# Simple roots of the five standard chambers, in the coordinates of the
# fixed lattices (the last j coordinates carry a factor theta over Z[w]).
# The k-th entry is the root r_k of the chamber for psi(j).
STANDARD_CHAMBERS: dict[int, tuple[Vector, ...]] = {
    0: ((0, 1, -1, 0, 0), (0, 0, 1, -1, 0), (0, 0, 0, 1, -1), (0, 0, 0, 0, 1),
        (1, -1, -1, -1, 0)),
    1: ((0, 1, -1, 0, 0), (0, 0, 1, -1, 0), (0, 0, 0, 1, 0), (0, 0, 0, 0, 1),
        (1, 0, 0, 0, -1), (1, -1, -1, -1, 0), (3, -3, 0, 0, -1)),
    2: ((0, 1, -1, 0, 0), (0, 0, 1, 0, 0), (0, 0, 0, -1, 1), (0, 0, 0, 1, 0),
        (1, 0, 0, 0, -1), (1, -1, -1, 0, 0), (3, -3, 0, -1, -1)),
    3: ((0, 1, 0, 0, 0), (0, 0, 0, -1, 1), (0, 0, -1, 1, 0), (0, 0, 1, 0, 0),
        (1, 0, 0, 0, -1), (3, -3, 0, -1, -1), (3, -1, -1, -1, -1)),
    4: ((0, 0, 0, -1, 1), (0, 0, -1, 1, 0), (0, -1, 1, 0, 0), (0, 1, 0, 0, 0),
        (1, 0, 0, 0, -1), (3, -1, -1, -1, -1)),
}


def standard_chamber(j: int) -> list[Vector]:
    """Reference simple roots r_1, r_2, ... for the chamber of psi(j)."""
    return list(STANDARD_CHAMBERS[j])


def standard_chamber_lambda(j: int) -> list[EVector]:
    """The same roots as vectors over Z[w]."""
    return [lambda_from_zcoords(j, r) for r in STANDARD_CHAMBERS[j]]


def standard_diagram(j: int) -> CoxeterDiagram:
    roots = standard_chamber(j)
    return CoxeterDiagram.from_roots(psi(j), roots)


def chamber_isometry(form: ZForm, roots_a: Sequence[Vector],
                     roots_b: Sequence[Vector]) -> tuple[tuple[int, ...], ...] | None:
    """An integer form-isometry carrying one simple-root set onto the other
    (root by root, following some diagram isomorphism), or None."""
    d1 = CoxeterDiagram.from_roots(form, roots_a)
    d2 = CoxeterDiagram.from_roots(form, roots_b)
    for sigma in diagram_isomorphisms(d1, d2):
        mat = _isometry_from_matching(form, roots_a,
                                      [roots_b[sigma[i]] for i in range(len(roots_a))])
        if mat is not None:
            return mat
    return None


def _isometry_from_matching(form: ZForm, src: Sequence[Vector],
                            dst: Sequence[Vector]) -> tuple[tuple[int, ...], ...] | None:
    n = form.dimension
    cols = _independent_columns(src, n)
    if cols is None:
        return None
    v = tuple(tuple(Fraction(src[c][row]) for c in cols) for row in range(n))
    t = tuple(tuple(Fraction(dst[c][row]) for c in cols) for row in range(n))
    try:
        m = _linalg.mat_mul(t, _linalg.field_inverse(v, Fraction(1)))
    except ValueError:
        return None
    if any(x.denominator != 1 for row in m for x in row):
        return None
    mi = tuple(tuple(int(x) for x in row) for row in m)
    for s, dvec in zip(src, dst):
        if _linalg.mat_vec(mi, s) != tuple(dvec):
            return None
    gram = _linalg.freeze(form.gram)
    if _linalg.mat_mul(_linalg.transpose(mi), _linalg.mat_mul(gram, mi)) != gram:
        return None
    return mi


def _independent_columns(vectors: Sequence[Vector], n: int) -> list[int] | None:
    """Indices of n linearly independent vectors, by rational elimination."""
    chosen: list[int] = []
    rows: list[list[Fraction]] = []
    for idx, vec in enumerate(vectors):
        work = [Fraction(c) for c in vec]
        for row in sorted(rows, key=_leading_index):
            lead = _leading_index(row)
            if work[lead]:
                c = work[lead] / row[lead]
                work = [x - c * y for x, y in zip(work, row)]
        if any(work):
            rows.append(work)
            chosen.append(idx)
        if len(chosen) == n:
            return chosen
    return None


def _leading_index(row: list[Fraction]) -> int:
    return next(i for i, x in enumerate(row) if x)
