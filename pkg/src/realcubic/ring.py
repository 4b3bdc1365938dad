"""Exact arithmetic in Z[w], Q(sqrt3) and F_3.

Here w is a primitive cube root of unity (w^2 + w + 1 = 0) and
theta = w - wbar = 1 + 2w satisfies theta^2 = -3.  Rational numbers are
plain ``fractions.Fraction``; this module adds the two quadratic rings
and the residue field F_3 together with the maps between them.
"""

from __future__ import annotations

from fractions import Fraction


class Eisenstein:
    """An element a + b*w of the ring Z[w]."""

    __slots__ = ("_a", "_b")

    def __init__(self, a: int, b: int = 0) -> None:
        self._a = a
        self._b = b

    @property
    def a(self) -> int:
        return self._a

    @property
    def b(self) -> int:
        return self._b

    def __repr__(self) -> str:
        return f"Eisenstein({self._a}, {self._b})"

    def __str__(self) -> str:
        if self._b == 0:
            return str(self._a)
        if self._a == 0:
            return f"{self._b}w"
        return f"{self._a}{self._b:+}w"

    @classmethod
    def coerce(cls, x: int | Eisenstein) -> Eisenstein:
        return x if isinstance(x, Eisenstein) else cls(x)

    def __hash__(self) -> int:
        return hash((self._a, self._b))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self._a == other and self._b == 0
        if isinstance(other, Eisenstein):
            return self._a == other._a and self._b == other._b
        return NotImplemented

    def __bool__(self) -> bool:
        return bool(self._a or self._b)

    def __neg__(self) -> Eisenstein:
        return Eisenstein(-self._a, -self._b)

    def __add__(self, other: int | Eisenstein) -> Eisenstein:
        o = self.coerce(other)
        return Eisenstein(self._a + o._a, self._b + o._b)

    __radd__ = __add__

    def __sub__(self, other: int | Eisenstein) -> Eisenstein:
        o = self.coerce(other)
        return Eisenstein(self._a - o._a, self._b - o._b)

    def __rsub__(self, other: int | Eisenstein) -> Eisenstein:
        return (-self) + other

    def __mul__(self, other: int | Eisenstein) -> Eisenstein:
        o = self.coerce(other)
        # (a + bw)(c + dw) with w^2 = -1 - w
        a, b, c, d = self._a, self._b, o._a, o._b
        return Eisenstein(a * c - b * d, a * d + b * c - b * d)

    __rmul__ = __mul__

    def conj(self) -> Eisenstein:
        """Complex conjugation: a + bw -> (a - b) - bw."""
        return Eisenstein(self._a - self._b, -self._b)

    @property
    def norm(self) -> int:
        """|x|^2 = x * conj(x) = a^2 - a*b + b^2, a non-negative integer."""
        return self._a * self._a - self._a * self._b + self._b * self._b

    def is_unit(self) -> bool:
        return self.norm == 1

    def divmod(self, other: int | Eisenstein) -> tuple[Eisenstein, Eisenstein]:
        """Nearest-quotient division; Z[w] is norm-Euclidean."""
        o = self.coerce(other)
        n = o.norm
        if n == 0:
            raise ZeroDivisionError("division by zero in Z[w]")
        p = self * o.conj()
        q = Eisenstein(_rounddiv(p._a, n), _rounddiv(p._b, n))
        return q, self - o * q

    def __mod__(self, other: int | Eisenstein) -> Eisenstein:
        return self.divmod(other)[1]

    def divides(self, other: int | Eisenstein) -> bool:
        return not self.coerce(other) % self

    def exact_div(self, other: int | Eisenstein) -> Eisenstein:
        """Return self / other, raising ValueError unless it is exact."""
        o = self.coerce(other)
        q, r = self.divmod(o)
        if r:
            raise ValueError(f"{self} is not divisible by {o} in Z[w]")
        return q

    def to_complex(self) -> complex:
        return self._a + self._b * complex(-0.5, 0.75 ** 0.5)


OMEGA = Eisenstein(0, 1)
THETA = Eisenstein(1, 2)
EISENSTEIN_UNITS = (
    Eisenstein(1, 0), Eisenstein(0, 1), Eisenstein(-1, -1),
    Eisenstein(-1, 0), Eisenstein(0, -1), Eisenstein(1, 1),
)


def eisenstein_gcd(x: Eisenstein, y: Eisenstein) -> Eisenstein:
    while y:
        x, y = y, x % y
    return x


def _rounddiv(a: int, b: int) -> int:
    """Round a/b to the nearest integer (ties toward +infinity)."""
    return (2 * a + b) // (2 * b)


class F3:
    """An element of the field with three elements."""

    __slots__ = ("_v",)

    def __init__(self, v: int) -> None:
        self._v = v % 3

    @property
    def value(self) -> int:
        return self._v

    def __repr__(self) -> str:
        return f"F3({self._v})"

    def __hash__(self) -> int:
        return hash(("F3", self._v))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self._v == other % 3
        if isinstance(other, F3):
            return self._v == other._v
        return NotImplemented

    def __bool__(self) -> bool:
        return self._v != 0

    def __neg__(self) -> F3:
        return F3(-self._v)

    def __add__(self, other: int | F3) -> F3:
        return F3(self._v + (other._v if isinstance(other, F3) else other))

    __radd__ = __add__

    def __sub__(self, other: int | F3) -> F3:
        return self + (-other if isinstance(other, F3) else F3(-other))

    def __mul__(self, other: int | F3) -> F3:
        return F3(self._v * (other._v if isinstance(other, F3) else other))

    __rmul__ = __mul__

    def inverse(self) -> F3:
        if self._v == 0:
            raise ZeroDivisionError("0 has no inverse in F_3")
        return self  # 1 and 2 are their own inverses mod 3

    def is_square(self) -> bool:
        """Squares in F_3 are {0, 1}; the square classes of F_3* are +-1."""
        return self._v != 2


def reduce_mod_theta(x: Eisenstein) -> F3:
    """The ring homomorphism Z[w] -> F_3 with kernel theta*Z[w]; w -> 1."""
    return F3(x.a + x.b)


def theta_divide(x: Eisenstein) -> Eisenstein:
    """Exact division by theta; raises ValueError when x is not in theta*Z[w]."""
    # 1/theta = -theta/3, so x/theta = -(x*theta)/3
    y = x * THETA
    if y.a % 3 or y.b % 3:
        raise ValueError(f"{x} is not divisible by theta")
    return Eisenstein(-(y.a // 3), -(y.b // 3))


class RootThree:
    """An element a + b*sqrt(3) of the field Q(sqrt3), with exact coefficients."""

    __slots__ = ("_a", "_b")

    def __init__(self, a: int | Fraction, b: int | Fraction = 0) -> None:
        self._a = Fraction(a)
        self._b = Fraction(b)

    @property
    def a(self) -> Fraction:
        return self._a

    @property
    def b(self) -> Fraction:
        return self._b

    def __repr__(self) -> str:
        return f"RootThree({self._a!r}, {self._b!r})"

    def __str__(self) -> str:
        if self._b == 0:
            return str(self._a)
        if self._a == 0:
            return f"{self._b}*sqrt3"
        sign = "+" if self._b > 0 else "-"
        return f"{self._a}{sign}{abs(self._b)}*sqrt3"

    @classmethod
    def coerce(cls, x: int | Fraction | RootThree) -> RootThree:
        return x if isinstance(x, RootThree) else cls(x)

    def __hash__(self) -> int:
        return hash((self._a, self._b))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self._a == other and self._b == 0
        if isinstance(other, RootThree):
            return self._a == other._a and self._b == other._b
        return NotImplemented

    def __bool__(self) -> bool:
        return bool(self._a or self._b)

    def __neg__(self) -> RootThree:
        return RootThree(-self._a, -self._b)

    def __add__(self, other: int | Fraction | RootThree) -> RootThree:
        o = self.coerce(other)
        return RootThree(self._a + o._a, self._b + o._b)

    __radd__ = __add__

    def __sub__(self, other: int | Fraction | RootThree) -> RootThree:
        o = self.coerce(other)
        return RootThree(self._a - o._a, self._b - o._b)

    def __rsub__(self, other: int | Fraction | RootThree) -> RootThree:
        return (-self) + other

    def __mul__(self, other: int | Fraction | RootThree) -> RootThree:
        o = self.coerce(other)
        a, b, c, d = self._a, self._b, o._a, o._b
        return RootThree(a * c + 3 * b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> RootThree:
        n = self.field_norm
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt3)")
        return RootThree(self._a / n, -self._b / n)

    def __truediv__(self, other: int | Fraction | RootThree) -> RootThree:
        return self * self.coerce(other).inverse()

    def __rtruediv__(self, other: int | Fraction | RootThree) -> RootThree:
        return self.coerce(other) * self.inverse()

    def conj(self) -> RootThree:
        """Galois conjugation: a + b*sqrt3 -> a - b*sqrt3."""
        return RootThree(self._a, -self._b)

    @property
    def field_norm(self) -> Fraction:
        return self._a * self._a - 3 * self._b * self._b

    def is_integral(self) -> bool:
        """True when both coefficients are rational integers (x in Z[sqrt3])."""
        return self._a.denominator == 1 and self._b.denominator == 1

    def is_rational(self) -> bool:
        return self._b == 0

    def sign(self) -> int:
        """Sign under the real embedding sqrt3 -> +1.732..., computed exactly."""
        a, b = self._a, self._b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 against 3 b^2
        big_a = a * a > 3 * b * b
        if a > 0:
            return 1 if big_a else -1
        return -1 if big_a else 1

    def __lt__(self, other: int | Fraction | RootThree) -> bool:
        return (self - other).sign() < 0

    def __gt__(self, other: int | Fraction | RootThree) -> bool:
        return (self - other).sign() > 0

    def __le__(self, other: int | Fraction | RootThree) -> bool:
        return (self - other).sign() <= 0

    def __ge__(self, other: int | Fraction | RootThree) -> bool:
        return (self - other).sign() >= 0

    def __float__(self) -> float:
        return float(self._a) + float(self._b) * 3.0 ** 0.5


SQRT3 = RootThree(0, 1)


def galois_conjugate(x: RootThree) -> RootThree:
    """The non-identity automorphism of Q(sqrt3)."""
    return x.conj()
