"""Anti-involutions of the Hermitian lattice and their classification.

An anti-involution acts by x -> M . conj(x).  Reducing modulo theta kills the
conjugation, so the action descends to an F_3-linear involution of
V = (Z[w]^5)/theta, and the dimensions and determinants of its eigenspaces
separate the ten classes (five up to sign).  The fixed lattice of the j-th
standard class is Z^(5-j) + theta Z^j, whose Gram matrix is the form psi(j).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from sympy import Matrix as SymMatrix
from sympy.matrices.normalforms import smith_normal_form

from . import _linalg
from .lattice import (EVector, HERMITIAN, Vector, ZForm, in_three_dual,
                      is_primitive, is_root, lambda_from_zcoords, psi, reflect)
from .ring import Eisenstein, OMEGA, THETA, reduce_mod_theta

EMatrix = tuple[tuple[Eisenstein, ...], ...]

_J_SIGNS = (-1, 1, 1, 1, 1)


def _e(x: int) -> Eisenstein:
    return Eisenstein(x)


def _emat(rows: Sequence[Sequence[Eisenstein | int]]) -> EMatrix:
    return tuple(tuple(Eisenstein.coerce(x) for x in row) for row in rows)


def _conj_mat(m: EMatrix) -> EMatrix:
    return tuple(tuple(x.conj() for x in row) for row in m)


def _j_mat() -> EMatrix:
    return tuple(tuple(_e(_J_SIGNS[i]) if i == j else _e(0) for j in range(5))
                 for i in range(5))


def preserves_h(m: EMatrix) -> bool:
    """m^T . J . conj(m) = J, the isometry condition for both linear maps and
    the matrix part of anti-linear ones."""
    j = _j_mat()
    lhs = _linalg.mat_mul(_linalg.transpose(m), _linalg.mat_mul(j, _conj_mat(m)))
    return lhs == j


class InvolutionError(ValueError):
    """Input matrix is not a valid anti-involution of the lattice."""


@dataclass(frozen=True)
class InvolutionClass:
    j: int
    sign: int

    def __str__(self) -> str:
        return f"{'+' if self.sign > 0 else '-'}chi_{self.j}"


class AntiInvolution:
    """The anti-linear map x -> matrix . conj(x) on the Hermitian lattice."""

    def __init__(self, matrix: Sequence[Sequence[Eisenstein | int]]) -> None:
        m = _emat(matrix)
        if len(m) != 5 or any(len(row) != 5 for row in m):
            raise InvolutionError("only rank 5 is supported")
        if not preserves_h(m):
            raise InvolutionError("matrix does not preserve the Hermitian form")
        square = _linalg.mat_mul(m, _conj_mat(m))
        ident = _linalg.identity(5, _e(1), _e(0))
        if square == ident:
            self._square_sign = 1
        elif square == _linalg.mat_scale(ident, _e(-1)):
            self._square_sign = -1
        else:
            raise InvolutionError("map is not projectively involutive")
        self.matrix = m

    @property
    def is_involution(self) -> bool:
        """True when the map squares to the identity on the nose; unit
        rescalings do not change this."""
        return self._square_sign == 1

    def apply(self, x: Sequence[Eisenstein]) -> EVector:
        return _linalg.mat_vec(self.matrix, tuple(c.conj() for c in x))

    def scaled(self, unit: Eisenstein) -> AntiInvolution:
        return AntiInvolution(_linalg.mat_scale(self.matrix, unit))

    def negated(self) -> AntiInvolution:
        return self.scaled(_e(-1))

    def conjugated_by(self, g: EMatrix) -> AntiInvolution:
        """g . self . g^-1, using conj(g)^-1 = J g^T J for isometries g."""
        j = _j_mat()
        conj_g_inv = _linalg.mat_mul(j, _linalg.mat_mul(_linalg.transpose(g), j))
        return AntiInvolution(
            _linalg.mat_mul(g, _linalg.mat_mul(self.matrix, conj_g_inv)))

    def f3_matrix(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(reduce_mod_theta(x).value for x in row)
                     for row in self.matrix)


def standard_anti_involution(j: int) -> AntiInvolution:
    """Conjugation composed with negation of the last j coordinates."""
    if not 0 <= j <= 4:
        raise ValueError("standard classes are indexed by j = 0..4")
    diag = [1] * (5 - j) + [-1] * j
    return AntiInvolution(
        [[diag[i] if i == k else 0 for k in range(5)] for i in range(5)])


# ---------------------------------------------------------------------------
# F_3 quadratic space V

Q_DIAGONAL = (2, 1, 1, 1, 1)  # the Hermitian form reduced mod theta


def q_value(x: Sequence[int]) -> int:
    return sum(d * c * c for d, c in zip(Q_DIAGONAL, x)) % 3


def q_pair(x: Sequence[int], y: Sequence[int]) -> int:
    return sum(d * a * b for d, a, b in zip(Q_DIAGONAL, x, y)) % 3


def _f3_kernel(m: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Basis of the kernel of a matrix over F_3."""
    rows = [list(r) for r in m]
    n = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] % 3), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 if rows[r][c] % 3 == 1 else 2
        rows[r] = [(inv * x) % 3 for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % 3:
                f = rows[i][c] % 3
                rows[i] = [(x - f * y) % 3 for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    basis = []
    free = [c for c in range(n) if c not in pivots]
    for c in free:
        v = [0] * n
        v[c] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-rows[i][c]) % 3
        basis.append(tuple(v))
    return basis


def _f3_det(m: Sequence[Sequence[int]]) -> int:
    rows = [list(r) for r in m]
    n = len(rows)
    det = 1
    for c in range(n):
        pivot = next((i for i in range(c, n) if rows[i][c] % 3), None)
        if pivot is None:
            return 0
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            det = -det
        det = (det * rows[c][c]) % 3
        inv = 1 if rows[c][c] % 3 == 1 else 2
        for i in range(c + 1, n):
            if rows[i][c] % 3:
                f = (rows[i][c] * inv) % 3
                rows[i] = [(x - f * y) % 3 for x, y in zip(rows[i], rows[c])]
    return det % 3


@dataclass(frozen=True)
class EigenspaceInvariants:
    """Dimension and determinant class (+-1) of q on each eigenspace."""

    fixed_dim: int
    fixed_det: int
    negated_dim: int
    negated_det: int


def eigenspace_invariants(a: AntiInvolution) -> EigenspaceInvariants:
    if not a.is_involution:
        raise InvolutionError("no true involution in the unit orbit")
    m = a.f3_matrix()
    out = []
    for sign in (1, -1):
        rows = [[(m[i][k] - (sign if i == k else 0)) % 3 for k in range(5)]
                for i in range(5)]
        basis = _f3_kernel(rows)
        gram = [[q_pair(x, y) for y in basis] for x in basis]
        det = _f3_det(gram) if basis else 1
        if det == 0:
            raise InvolutionError("degenerate eigenspace")
        out.append((len(basis), 1 if det == 1 else -1))
    (fd, fdet), (nd, ndet) = out
    return EigenspaceInvariants(fd, fdet, nd, ndet)


def classify_anti_involution(a: AntiInvolution) -> InvolutionClass:
    """The unique class: the j-th plus class has negated space of dimension j
    with determinant +1 and fixed space of dimension 5-j with determinant -1;
    the minus class swaps the two."""
    inv = eigenspace_invariants(a)
    if inv.fixed_dim + inv.negated_dim != 5:
        raise InvolutionError("eigenspaces do not span V")
    plus = (inv.negated_det, inv.fixed_det) == (1, -1)
    minus = (inv.fixed_det, inv.negated_det) == (1, -1)
    if plus:
        return InvolutionClass(inv.negated_dim, 1)
    if minus:
        return InvolutionClass(inv.fixed_dim, -1)
    raise InvolutionError(f"invariants match no class: {inv}")


@dataclass(frozen=True)
class FixedLattice:
    basis: tuple[EVector, ...]
    gram: ZForm
    matches: int  # j with gram isometric to psi(j)


def fixed_lattice_gram(a: AntiInvolution) -> FixedLattice:
    """Gram matrix of the fixed lattice in a computed Z-basis; the standard
    classes get the basis making the Gram literally psi(j)."""
    if not a.is_involution:
        raise InvolutionError("fixed lattice needs a true involution")
    for j in range(5):
        if a.matrix == standard_anti_involution(j).matrix:
            basis = tuple(lambda_from_zcoords(j, _unit_vec(i)) for i in range(5))
            return FixedLattice(basis, psi(j), j)
    # split x = p + w q; the fixed-point equations are Z-linear in (p, q)
    ma = tuple(tuple(x.a for x in row) for row in a.matrix)
    mb = tuple(tuple(x.b for x in row) for row in a.matrix)
    top = [[(ma[i][k] - (1 if i == k else 0)) for k in range(5)] +
           [mb[i][k] - ma[i][k] for k in range(5)] for i in range(5)]
    bot = [[mb[i][k] for k in range(5)] +
           [-(ma[i][k] + (1 if i == k else 0)) for k in range(5)]
           for i in range(5)]
    kernel = _linalg.integer_kernel(_linalg.freeze(top + bot))
    if len(kernel) != 5:
        raise InvolutionError("fixed lattice does not have rank 5")
    basis = tuple(tuple(Eisenstein(v[i], v[5 + i]) for i in range(5))
                  for v in kernel)
    gram_entries = []
    for x in basis:
        row = []
        for y in basis:
            val = HERMITIAN.h(x, y)
            assert val.b == 0
            row.append(val.a)
        gram_entries.append(tuple(row))
    gram = ZForm(tuple(gram_entries))
    return FixedLattice(basis, gram, _match_psi(gram))


def _unit_vec(i: int) -> Vector:
    return tuple(1 if k == i else 0 for k in range(5))


def _match_psi(gram: ZForm) -> int:
    """Which psi(j) the lattice is isometric to, by signature, determinant
    and the number of elementary divisors divisible by 3."""
    if gram.signature != (4, 1):
        raise InvolutionError("fixed lattice has wrong signature")
    det = gram.determinant
    snf = smith_normal_form(SymMatrix([list(r) for r in gram.gram]))
    divisors = [abs(int(snf[i, i])) for i in range(5)]
    threes = sum(1 for d in divisors if d % 3 == 0)
    if det != -(3 ** threes) or any(d not in (1, 3) for d in divisors):
        raise InvolutionError(f"unexpected lattice invariants: det={det}")
    return threes


# ---------------------------------------------------------------------------
# discriminant geometry

@dataclass(frozen=True)
class G2System:
    """Six norm-2 and six norm-6 roots spanning a rank-2 sublattice."""

    roots: tuple[Vector, ...]

    @property
    def short_roots(self) -> tuple[Vector, ...]:
        return self.roots[:6]

    @property
    def long_roots(self) -> tuple[Vector, ...]:
        return self.roots[6:]


def discriminant_components(form: ZForm, bound: int = 3
                            ) -> tuple[list[Vector], list[G2System]]:
    """Norm-1/3 roots (3-dimensional discriminant pieces) and the rank-2
    root systems of norm-2/6 roots at angle pi/6 (2-dimensional pieces),
    with all coordinates bounded by the given box size."""
    n = form.dimension
    norm13: list[Vector] = []
    norm2: list[Vector] = []
    norm6: list[Vector] = []
    for coords in itertools.product(range(-bound, bound + 1), repeat=n):
        if _first_nonzero(coords) <= 0:
            continue
        if not is_root(form, coords):
            continue
        q = form.norm(coords)
        if q in (1, 3):
            norm13.append(coords)
        elif q == 2:
            norm2.append(coords)
        else:
            norm6.append(coords)
    systems: dict[frozenset, G2System] = {}
    for r in norm2:
        for s in norm6:
            c = 4 * form.ip(r, s) ** 2
            if c != 3 * form.norm(r) * form.norm(s):
                continue  # angle is pi/6 iff (r.s)^2 / (r^2 s^2) = 3/4
            sys = _generate_g2(form, r, s)
            key = frozenset(sys.roots)
            systems.setdefault(key, sys)
    return norm13, sorted(systems.values(), key=lambda s: s.roots)


def _generate_g2(form: ZForm, r: Vector, s: Vector) -> G2System:
    roots = {r, tuple(-x for x in r), s, tuple(-x for x in s)}
    frontier = list(roots)
    while frontier:
        v = frontier.pop()
        for w in list(roots):
            image = reflect(form, w, v)
            if image not in roots:
                roots.add(image)
                frontier.append(image)
    short = sorted(v for v in roots if form.norm(v) == 2)
    long = sorted(v for v in roots if form.norm(v) == 6)
    if len(short) != 6 or len(long) != 6:
        raise ValueError("pair does not generate a 12-root system")
    return G2System(tuple(short + long))


def _first_nonzero(v: Sequence[int]) -> int:
    for c in v:
        if c:
            return c
    return 0


# ---------------------------------------------------------------------------
# lines and tritangent planes over F_3

def plus_points() -> list[tuple[int, ...]]:
    """Projective points <v> with q(v) = -1; there are 45 of them."""
    points = []
    for coords in itertools.product(range(3), repeat=5):
        if _first_nonzero(coords) != 1:
            continue
        if q_value(coords) == 2:
            points.append(coords)
    return points


def bases() -> list[frozenset[tuple[int, ...]]]:
    """Sets of five mutually orthogonal plus-points; there are 27."""
    points = plus_points()
    ortho = {p: {q for q in points if q != p and q_pair(p, q) == 0}
             for p in points}
    out: list[frozenset] = []

    def extend(chosen: list, candidates: list) -> None:
        if len(chosen) == 5:
            out.append(frozenset(chosen))
            return
        for i, p in enumerate(candidates):
            keep = [q for q in candidates[i + 1:] if q in ortho[p]]
            if len(chosen) + 1 + len(keep) >= 5:
                extend(chosen + [p], keep)

    extend([], points)
    return out


def _project(v: Sequence[int]) -> tuple[int, ...]:
    v = tuple(c % 3 for c in v)
    if _first_nonzero(v) == 2:
        v = tuple((2 * c) % 3 for c in v)
    return v


def apply_f3(m: Sequence[Sequence[int]], v: Sequence[int]) -> tuple[int, ...]:
    return _project(tuple(sum(m[i][k] * v[k] for k in range(5)) % 3
                          for i in range(5)))


def count_real_lines_tritangents(cls: InvolutionClass) -> tuple[int, int]:
    """Real lines and tritangent planes of a surface in the given family.

    The surface side of the F_3 dictionary carries the negated involution;
    fixed plus-points count tritangent planes, setwise-fixed bases count
    lines.
    """
    if cls.sign != 1:
        raise ValueError("line counts are defined for the plus classes")
    mat = standard_anti_involution(cls.j).f3_matrix()
    act = [[(-x) % 3 for x in row] for row in mat]
    fixed_points = [p for p in plus_points() if apply_f3(act, p) == p]
    fixed_bases = 0
    for base in bases():
        if all(apply_f3(act, p) in base for p in base):
            fixed_bases += 1
    return fixed_bases, len(fixed_points)


# ---------------------------------------------------------------------------
# pseudorandom isometries of the Hermitian lattice

def random_isometry(rng: random.Random, length: int = 8) -> EMatrix:
    """A pseudorandom product of coordinate permutations, unit scalings and
    reflections, for conjugation-invariance checks."""
    gens = _isometry_generators()
    m = _linalg.identity(5, _e(1), _e(0))
    for _ in range(length):
        m = _linalg.mat_mul(m, rng.choice(gens))
    return m


def _isometry_generators() -> list[EMatrix]:
    gens: list[EMatrix] = []
    for i, k in ((1, 2), (2, 3), (3, 4)):
        perm = [[_e(1) if (r == c and r not in (i, k)) or (r, c) in ((i, k), (k, i))
                 else _e(0) for c in range(5)] for r in range(5)]
        gens.append(_emat(perm))
    for i in range(5):
        gens.append(_emat([[OMEGA if (r == c == i) else _e(1) if r == c else _e(0)
                            for c in range(5)] for r in range(5)]))
    for root in ((1, -1, -1, 0, 0), (1, 0, -1, -1, 0), (0, 1, -1, 0, 0),
                 (0, 0, 1, -1, 0), (0, 0, 0, 1, -1), (0, 1, 0, 0, -1)):
        vec = tuple(_e(c) for c in root)
        nrm = HERMITIAN.norm(vec)
        cols = []
        for i in range(5):
            basis = tuple(_e(1) if k == i else _e(0) for k in range(5))
            coef = HERMITIAN.h(basis, vec)
            scaled = tuple((2 * coef).exact_div(_e(nrm)) * v for v in vec)
            cols.append(tuple(b - s for b, s in zip(basis, scaled)))
        gens.append(tuple(tuple(cols[c][r] for c in range(5)) for r in range(5)))
    assert all(preserves_h(g) for g in gens)
    return gens
