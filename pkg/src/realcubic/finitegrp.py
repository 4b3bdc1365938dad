"""Finite orthogonal group machinery over F_3.

Elements are 5x5 matrices preserving the quadratic form diag(2,1,1,1,1),
taken projectively (a matrix is identified with its negative; the canonical
representative scales the first nonzero entry to 1).  Closures are plain
breadth-first multiplication; the full projective orthogonal group has
order 51840.
"""

from __future__ import annotations

import itertools
from collections import Counter
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import involution as inv_mod
from .coxeter import diagram_automorphisms
from .lattice import psi
from .ring import Eisenstein, THETA, reduce_mod_theta
from .vinberg import (STANDARD_CHAMBERS, _isometry_from_matching,
                      standard_chamber_lambda, standard_diagram)

F3Matrix = tuple[tuple[int, ...], ...]

_Q = np.diag([2, 1, 1, 1, 1]).astype(np.int64)
_IDENT = np.eye(5, dtype=np.int64)
PO5_F3_ORDER = 51840


def _np(m: Sequence[Sequence[int]]) -> np.ndarray:
    return np.array(m, dtype=np.int64) % 3


def _tuples(m: np.ndarray) -> F3Matrix:
    return tuple(tuple(int(v) for v in row) for row in m)


def _key(m: np.ndarray) -> bytes:
    return m.astype(np.int8).tobytes()


def canonical(m: np.ndarray) -> np.ndarray:
    """Projective representative: first nonzero entry (row-major) equals 1."""
    flat = m.reshape(-1)
    first = flat[np.flatnonzero(flat)[0]]
    return (m * (1 if first == 1 else 2)) % 3


def _canonical_batch(arr: np.ndarray) -> np.ndarray:
    """Vectorized projective canonicalization of a stack of matrices."""
    n = len(arr)
    flat = arr.reshape(n, -1)
    first = flat[np.arange(n), (flat != 0).argmax(axis=1)]
    scale = np.where(first == 1, 1, 2).astype(arr.dtype)
    return (arr * scale[:, None, None]) % 3


def preserves_q(m: Sequence[Sequence[int]]) -> bool:
    a = _np(m)
    return bool(((a.T @ _Q @ a) % 3 == _Q % 3).all())


def _inverse(m: np.ndarray) -> np.ndarray:
    """Projective inverse, by powering up to the identity."""
    ident = canonical(_IDENT.copy())
    prev = ident
    power = canonical(m % 3)
    for _ in range(1000):
        if (power == ident).all():
            return prev
        prev, power = power, canonical(power @ m % 3)
    raise RuntimeError("element order out of range")


def reflection_in(v: Sequence[int]) -> F3Matrix:
    """The q-reflection x -> x - 2 q(x,v)/q(v) v, for q(v) != 0."""
    qv = inv_mod.q_value(v)
    if qv == 0:
        raise ValueError("cannot reflect in an isotropic vector")
    inv_qv = 1 if qv == 1 else 2
    cols = []
    for i in range(5):
        e = [1 if k == i else 0 for k in range(5)]
        c = (2 * inv_mod.q_pair(e, v) * inv_qv) % 3
        cols.append([(e[k] - c * v[k]) % 3 for k in range(5)])
    return tuple(tuple(cols[c][r] for c in range(5)) for r in range(5))


class GroupHandle:
    """A subgroup of PO(5, F_3), with its elements fully enumerated."""

    def __init__(self, generators: tuple[F3Matrix, ...],
                 elements: np.ndarray) -> None:
        self.generators = generators
        self._elements = elements  # (order, 5, 5), canonical, sorted
        self._keys = {_key(e) for e in elements}

    @property
    def order(self) -> int:
        return len(self._elements)

    def elements(self) -> np.ndarray:
        return self._elements

    def __contains__(self, m: Sequence[Sequence[int]]) -> bool:
        return _key(canonical(_np(m))) in self._keys

    @cached_property
    def element_orders(self) -> tuple[tuple[int, int], ...]:
        """Sorted (order, multiplicity) pairs, in the projective group."""
        arr = self._elements
        orders = np.zeros(len(arr), dtype=np.int64)
        cur = arr.copy()
        for k in range(1, 200):
            done = (cur == _IDENT).all(axis=(1, 2)) & (orders == 0)
            orders[done] = k
            if (orders > 0).all():
                break
            cur = _canonical_batch(np.einsum("nij,njk->nik", cur, arr) % 3)
        counts = Counter(int(o) for o in orders)
        return tuple(sorted(counts.items()))

    @cached_property
    def derived_subgroup(self) -> GroupHandle:
        """Normal closure of the commutators of the generators."""
        gens = [canonical(_np(g)) for g in self.generators]
        if not gens:
            return generate_group([])
        invs = [_inverse(g) for g in gens]
        sgens: dict[bytes, np.ndarray] = {}
        for (a, ai), (b, bi) in itertools.product(zip(gens, invs), repeat=2):
            c = canonical(a @ b @ ai @ bi % 3)
            sgens[_key(c)] = c
        while True:
            d = generate_group([_tuples(m) for m in sgens.values()], check=False)
            added = False
            for s in list(sgens.values()):
                for g, gi in zip(gens, invs):
                    t = canonical(g @ s @ gi % 3)
                    if _key(t) not in d._keys:
                        sgens[_key(t)] = t
                        added = True
            if not added:
                return d

    @cached_property
    def derived_series_orders(self) -> tuple[int, ...]:
        orders = [self.order]
        current = self
        while True:
            der = current.derived_subgroup
            if der.order == current.order:
                break
            orders.append(der.order)
            if der.order == 1:
                break
            current = der
        return tuple(orders)

    @cached_property
    def abelianization(self) -> tuple[int, ...]:
        """Invariant factors of G modulo its derived subgroup."""
        der = self.derived_subgroup
        if der.order == self.order:
            return ()
        gens = [canonical(_np(g)) for g in self.generators]
        reps: list[np.ndarray] = [canonical(_IDENT.copy())]

        def coset_of(x: np.ndarray) -> int | None:
            for i, r in enumerate(reps):
                if _key(canonical(_inverse(r) @ x % 3)) in der._keys:
                    return i
            return None

        frontier = [reps[0]]
        while frontier:
            r = frontier.pop()
            for g in gens:
                x = canonical(r @ g % 3)
                if coset_of(x) is None:
                    reps.append(x)
                    frontier.append(x)
        profile = Counter()
        for r in reps:
            k, cur = 1, r
            while coset_of(cur) != 0:
                cur = canonical(cur @ r % 3)
                k += 1
            profile[k] += 1
        return _abelian_invariants(len(reps), sorted(profile.items()))

    @cached_property
    def fingerprint(self) -> tuple:
        return (self.order, self.abelianization, self.derived_series_orders,
                self.element_orders)


def _abelian_invariants(order: int,
                        profile: list[tuple[int, int]]) -> tuple[int, ...]:
    """Invariant factors of an abelian group from its element-order profile
    (finite abelian groups are determined by their element orders)."""
    if order == 1:
        return ()
    for chain in _factor_chains(order):
        counts: Counter = Counter()
        for combo in itertools.product(*[range(d) for d in chain]):
            o = 1
            for c, d in zip(combo, chain):
                o = _lcm(o, d // _gcd(c, d) if c else 1)
            counts[o] += 1
        if sorted(counts.items()) == profile:
            return chain
    raise ValueError("order profile matches no abelian group")


def _factor_chains(order: int) -> Iterable[tuple[int, ...]]:
    """Ascending divisor chains d1 | d2 | ... | dk with product = order."""
    def rec(rem: int, floor_d: int) -> Iterable[tuple[int, ...]]:
        if rem == 1:
            yield ()
            return
        for d in range(max(2, floor_d), rem + 1):
            if rem % d == 0 and (floor_d <= 1 or d % floor_d == 0):
                for rest in rec(rem // d, d):
                    yield (d,) + rest

    yield from rec(order, 1)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _lcm(a: int, b: int) -> int:
    return a * b // _gcd(a, b)


def generate_group(gens: Sequence[F3Matrix], check: bool = True) -> GroupHandle:
    """Breadth-first closure of the generators."""
    if check:
        for g in gens:
            if not preserves_q(g):
                raise ValueError(f"generator does not preserve the form: {g}")
    ident = canonical(_IDENT.copy()).astype(np.int8)
    elements = {_key(ident): ident}
    if gens:
        garr = np.stack([canonical(_np(g)) for g in gens]).astype(np.int8)
        frontier = np.stack([ident])
        while len(frontier):
            fresh = []
            for chunk in np.array_split(frontier, 1 + len(frontier) // 4096):
                prods = np.einsum("fij,gjk->fgik", chunk, garr) % 3
                prods = _canonical_batch(prods.reshape(-1, 5, 5))
                for row in np.unique(prods.reshape(-1, 25), axis=0):
                    key = row.tobytes()
                    if key not in elements:
                        m = row.reshape(5, 5)
                        elements[key] = m
                        fresh.append(m)
            if not fresh:
                break
            frontier = np.stack(fresh)
    ordered = np.stack([elements[k] for k in sorted(elements)]).astype(np.int64)
    return GroupHandle(tuple(_tuples(_np(g)) for g in gens), ordered)


def minus_points() -> list[tuple[int, ...]]:
    """Projective points <v> with q(v) = 1; there are 36 of them."""
    points = []
    for coords in itertools.product(range(3), repeat=5):
        first = next((c for c in coords if c), 0)
        if first == 1 and inv_mod.q_value(coords) == 1:
            points.append(coords)
    return points


def full_projective_orthogonal_group() -> GroupHandle:
    """PO(V) of order 51840, generated by reflections.

    The reflections in the 36 norm-1 points generate all of PO(V); the 45
    norm-(-1) points only generate its simple index-2 subgroup (order 25920),
    so they are included here merely for good measure.
    """
    gens = [reflection_in(p) for p in minus_points()]
    return generate_group(gens)


def plus_reflection_group() -> GroupHandle:
    """Closure of the reflections in the 45 plus-points: the simple
    subgroup of index 2 (order 25920)."""
    return generate_group([reflection_in(p) for p in inv_mod.plus_points()])


# ---------------------------------------------------------------------------
# monodromy groups

def eckardt_root_reductions(j: int) -> list[tuple[int, ...]]:
    """Reductions mod theta of the norm-2 and norm-6 chamber roots; norm-6
    roots are divided by theta first."""
    form = psi(j)
    out = []
    for zroot, eroot in zip(STANDARD_CHAMBERS[j], standard_chamber_lambda(j)):
        q = form.norm(zroot)
        if q in (1, 3):
            continue
        vec = list(eroot)
        if q == 6:
            vec = [c.exact_div(THETA) for c in vec]
        out.append(tuple(reduce_mod_theta(c).value for c in vec))
    return out


def diagram_automorphism_f3(j: int) -> F3Matrix | None:
    """Reduction mod theta of the lattice isometry inducing the nontrivial
    chamber symmetry, when there is one."""
    diagram = standard_diagram(j)
    perms = [p for p in diagram_automorphisms(diagram)
             if p != tuple(range(diagram.n))]
    if not perms:
        return None
    sigma = perms[0]
    roots = STANDARD_CHAMBERS[j]
    mat = _isometry_from_matching(psi(j), roots,
                                  [roots[sigma[i]] for i in range(len(roots))])
    if mat is None:
        raise RuntimeError("diagram symmetry does not lift to the lattice")
    # transport from fixed-lattice coordinates to the Hermitian lattice:
    # conjugate by diag(1, ..., theta, ..., theta) with j trailing thetas
    f3 = [[0] * 5 for _ in range(5)]
    for r in range(5):
        for c in range(5):
            entry = Eisenstein(mat[r][c])
            if r >= 5 - j and c < 5 - j:
                entry = entry * THETA
            elif c >= 5 - j and r < 5 - j:
                entry = entry.exact_div(THETA)
            f3[r][c] = reduce_mod_theta(entry).value
    return tuple(tuple(row) for row in f3)


def monodromy_group(j: int) -> GroupHandle:
    """Image of the fundamental group of the j-th family on the lines:
    even products of the Eckardt-wall reflections, plus the diagram
    automorphism when the chamber has one."""
    arrs = [_np(reflection_in(v)) for v in eckardt_root_reductions(j)]
    gens: list[F3Matrix] = []
    for a, b in itertools.combinations(arrs, 2):
        gens.append(_tuples((a @ b) % 3))
    aut = diagram_automorphism_f3(j)
    if aut is not None:
        gens.append(aut)
    return generate_group(gens)


# ---------------------------------------------------------------------------
# identification

_KNOWN_GROUPS: list[tuple[str, int, tuple[int, ...] | None,
                          tuple[tuple[int, int], ...] | None]] = [
    ("trivial", 1, (), None),
    ("A5", 60, (), ((1, 1), (2, 15), (3, 20), (5, 24))),
    ("S3xS3", 36, (2, 2), ((1, 1), (2, 15), (3, 8), (6, 12))),
    ("(Z/2)^3:(Z/2)", 16, (2, 2, 2), ((1, 1), (2, 11), (4, 4))),
    ("S4", 24, (2,), ((1, 1), (2, 9), (3, 8), (4, 6))),
    ("S5", 120, (2,), ((1, 1), (2, 25), (3, 20), (4, 30), (5, 24), (6, 20))),
    # order 51840 pins the whole group PO(V), isomorphic to the E6 Weyl group
    ("W(E6)", 51840, None, None),
]


def identify_group(g: GroupHandle) -> str:
    """Match the fingerprint against the known targets; never guess."""
    for name, order, ab, orders in _KNOWN_GROUPS:
        if g.order != order:
            continue
        if ab is not None and g.abelianization != ab:
            continue
        if orders is not None and g.element_orders != orders:
            continue
        return name
    return f"unrecognized(order={g.order})"


# ---------------------------------------------------------------------------
# orbits

def orbits(g: GroupHandle,
           points: Sequence[tuple[int, ...]]) -> list[list[tuple[int, ...]]]:
    """Orbit decomposition of the projective action on points of PV."""
    gens = [[[int(v) for v in row] for row in gen] for gen in g.generators]
    remaining = set(points)
    out = []
    while remaining:
        start = min(remaining)
        orbit = {start}
        frontier = [start]
        while frontier:
            p = frontier.pop()
            for gen in gens:
                q = inv_mod.apply_f3(gen, p)
                if q not in orbit:
                    orbit.add(q)
                    frontier.append(q)
        out.append(sorted(orbit))
        remaining -= orbit
    return sorted(out, key=lambda o: (len(o), o[0]))


def base_orbits(g: GroupHandle,
                base_list: Sequence[frozenset]) -> list[list[frozenset]]:
    """Orbit decomposition on bases (five mutually orthogonal plus-points)."""
    gens = [[[int(v) for v in row] for row in gen] for gen in g.generators]
    remaining = {frozenset(b) for b in base_list}
    out = []
    while remaining:
        start = min(remaining, key=sorted)
        orbit = {start}
        frontier = [start]
        while frontier:
            b = frontier.pop()
            for gen in gens:
                image = frozenset(inv_mod.apply_f3(gen, p) for p in b)
                if image not in orbit:
                    orbit.add(image)
                    frontier.append(image)
        out.append(sorted(orbit, key=sorted))
        remaining -= orbit
    return sorted(out, key=len)
