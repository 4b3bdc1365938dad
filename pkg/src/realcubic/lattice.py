"""Integral quadratic forms of signature (4,1), the Hermitian lattice over
Z[w], roots and reflections.

The five standard forms are diag(-1, 1, ..., 3, ...) with j trailing 3's;
their lattices sit inside the Hermitian lattice as the fixed lattices of the
standard anti-involutions, with the last j coordinates scaled by theta.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import _linalg
from .ring import Eisenstein, THETA, eisenstein_gcd, theta_divide

Vector = tuple[int, ...]
EVector = tuple[Eisenstein, ...]

ROOT_NORMS = (1, 2, 3, 6)


@dataclass(frozen=True)
class ZForm:
    """A symmetric integer bilinear form on Z^n."""

    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.gram)
        if any(len(row) != n for row in self.gram):
            raise ValueError("gram matrix must be square")
        if any(self.gram[i][j] != self.gram[j][i] for i in range(n) for j in range(n)):
            raise ValueError("gram matrix must be symmetric")

    @property
    def dimension(self) -> int:
        return len(self.gram)

    @classmethod
    def diagonal(cls, entries: Sequence[int]) -> ZForm:
        n = len(entries)
        return cls(tuple(tuple(entries[i] if i == j else 0 for j in range(n))
                         for i in range(n)))

    def ip(self, x: Sequence[int], y: Sequence[int]) -> int:
        if len(x) != self.dimension or len(y) != self.dimension:
            raise ValueError("vector dimension mismatch")
        return sum(x[i] * self.gram[i][j] * y[j]
                   for i in range(self.dimension) for j in range(self.dimension))

    def norm(self, x: Sequence[int]) -> int:
        return self.ip(x, x)

    @cached_property
    def determinant(self) -> int:
        return _linalg.int_det(self.gram)

    @cached_property
    def signature(self) -> tuple[int, int]:
        plus, minus, zero = _linalg.symmetric_signature(self.gram)
        if zero:
            raise ValueError("form is degenerate")
        return plus, minus

    def is_hyperbolic(self) -> bool:
        """Signature (n-1, 1)."""
        return self.signature == (self.dimension - 1, 1)

    def to_json(self) -> dict:
        return {"dimension": self.dimension, "gram": [list(r) for r in self.gram]}

    @classmethod
    def from_json(cls, data: dict) -> ZForm:
        return cls(_linalg.freeze(data["gram"]))


def psi(j: int) -> ZForm:
    """The form diag(-1, 1, ..., 1, 3, ..., 3) with j threes, for j = 0..4."""
    if not 0 <= j <= 4:
        raise ValueError("psi forms are indexed by j = 0..4")
    return ZForm.diagonal([-1] + [1] * (4 - j) + [3] * j)


def is_primitive(x: Sequence[int]) -> bool:
    g = 0
    for c in x:
        g = math.gcd(g, c)
    return g == 1


def in_three_dual(form: ZForm, x: Sequence[int]) -> bool:
    """True when x pairs to a multiple of 3 with every lattice vector."""
    return all(form.ip(x, _basis(form.dimension, i)) % 3 == 0
               for i in range(form.dimension))


def _basis(n: int, i: int) -> Vector:
    return tuple(1 if k == i else 0 for k in range(n))


def is_root(form: ZForm, x: Sequence[int]) -> bool:
    """Primitive positive-norm vectors whose reflection preserves the lattice:
    norm 1 or 2 always; norm 3 or 6 exactly when x lies in 3*(dual lattice)."""
    if not is_primitive(x):
        return False
    n = form.norm(x)
    if n in (1, 2):
        return True
    if n in (3, 6):
        return in_three_dual(form, x)
    return False


def reflect(form: ZForm, r: Sequence[int], x: Sequence[int]) -> Vector:
    """Reflection of x in the mirror of r:  x - 2 (x.r)/(r.r) r."""
    rr = form.norm(r)
    if rr <= 0:
        raise ValueError("reflection requires a positive-norm vector")
    num = 2 * form.ip(x, r)
    if num % rr:
        raise ValueError("reflection does not preserve the lattice at this vector")
    c = num // rr
    return tuple(xi - c * ri for xi, ri in zip(x, r))


def reflection_matrix(form: ZForm, r: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Matrix of the reflection in r, acting on column vectors."""
    n = form.dimension
    cols = [reflect(form, r, _basis(n, i)) for i in range(n)]
    return tuple(tuple(cols[c][row] for c in range(n)) for row in range(n))


class HermitianLattice:
    """The rank-5 lattice over Z[w] with h(x,y) = -x0*conj(y0) + sum xi*conj(yi)."""

    rank = 5
    signs = (-1, 1, 1, 1, 1)

    def h(self, x: Sequence[Eisenstein], y: Sequence[Eisenstein]) -> Eisenstein:
        if len(x) != self.rank or len(y) != self.rank:
            raise ValueError("vector dimension mismatch")
        total = Eisenstein(0)
        for s, xi, yi in zip(self.signs, x, y):
            total = total + s * (xi * yi.conj())
        return total

    def norm(self, x: Sequence[Eisenstein]) -> int:
        v = self.h(x, x)
        assert v.b == 0, "h(x,x) must be a rational integer"
        return v.a

    def is_primitive(self, x: Sequence[Eisenstein]) -> bool:
        g = Eisenstein(0)
        for c in x:
            g = eisenstein_gcd(g, c)
        return g.is_unit()


HERMITIAN = HermitianLattice()


def inner_product(form: ZForm | HermitianLattice, x: Sequence, y: Sequence):
    """Bilinear (ZForm) or sesquilinear (Hermitian) evaluation."""
    if isinstance(form, ZForm):
        return form.ip(x, y)
    return form.h(x, y)


def lambda_from_zcoords(j: int, v: Sequence[int]) -> EVector:
    """Coordinates in the fixed lattice of the j-th standard anti-involution:
    scale the last j coordinates by theta."""
    n = len(v)
    return tuple(Eisenstein(c) if i < n - j else Eisenstein(c) * THETA
                 for i, c in enumerate(v))


def zcoords_from_lambda(j: int, w: Sequence[Eisenstein]) -> Vector:
    """Inverse of :func:`lambda_from_zcoords`; entries must land in Z."""
    n = len(w)
    out = []
    for i, c in enumerate(w):
        if i >= n - j:
            c = theta_divide(c)
        if c.b != 0:
            raise ValueError("vector is not in the fixed lattice")
        out.append(c.a)
    return tuple(out)


def evector_to_json(v: Sequence[Eisenstein]) -> list[list[int]]:
    return [[c.a, c.b] for c in v]


def evector_from_json(data: Sequence[Sequence[int]]) -> EVector:
    return tuple(Eisenstein(a, b) for a, b in data)


def form_to_json_str(form: ZForm) -> str:
    return json.dumps(form.to_json())
