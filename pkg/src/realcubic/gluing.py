"""Gluing eight chambers into the polyhedron Q over Z[sqrt3], the side
pairings, the group presentation and the nonarithmeticity certificate.

The five standard chambers are transported into a single copy of real
hyperbolic 4-space preserving the form diag(-1,1,1,1,1); concretely every
theta in the fixed-lattice coordinates becomes -sqrt(3).  After discarding
the fourteen interior walls along which the chambers are glued, the
remaining thirty-six roots fall into ten parallelism classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import _linalg
from .coxeter import (Bond, CoxeterDiagram, Presentation, classify_diagram_walls,
                      diagram_automorphisms)
from .lattice import Vector
from .ring import Eisenstein, RootThree, SQRT3, galois_conjugate
from .vinberg import STANDARD_CHAMBERS

R3Vector = tuple[RootThree, ...]

_J_SIGNS = (-1, 1, 1, 1, 1)

CHAMBER_NAMES = ("P0", "P1", "P2", "P3", "P4", "P0'", "P3'", "P4'")

# walls discarded when assembling Q: the seven interior gluings
GLUED_WALL_PAIRS = (
    (("P0", 4), ("P1", 4)),
    (("P0'", 4), ("P1", 7)),
    (("P1", 3), ("P2", 4)),
    (("P2", 2), ("P3", 4)),
    (("P2", 6), ("P3'", 4)),
    (("P3", 1), ("P4", 4)),
    (("P3'", 1), ("P4'", 4)),
)

# which retained wall pins each letter of Q
_WALL_ANCHORS = {
    "A": ("P3", 7), "B": ("P4", 6), "C": ("P0", 5), "D": ("P2", 7),
    "E": ("P0", 1), "E'": ("P1", 5), "D'": ("P0", 3), "C'": ("P0", 2),
    "B'": ("P4'", 6), "A'": ("P3'", 7),
}

WALL_ORDER = ("A", "B", "C", "D", "E", "E'", "D'", "C'", "B'", "A'")


class GluingError(RuntimeError):
    """A wall coincidence or side-pairing verification failed."""


def _rt(x: int | Fraction | RootThree) -> RootThree:
    return RootThree.coerce(x)


def ip3(x: Sequence[RootThree], y: Sequence[RootThree]) -> RootThree:
    total = RootThree(0)
    for s, a, b in zip(_J_SIGNS, x, y):
        total = total + s * (a * b)
    return total


def norm3(x: Sequence[RootThree]) -> RootThree:
    return ip3(x, x)


def sqrt3_root(j: int, zroot: Vector) -> R3Vector:
    """Transport a fixed-lattice root into the glued coordinates: the last j
    coordinates pick up a factor -sqrt(3)."""
    n = len(zroot)
    return tuple(RootThree(c) if i < n - j else RootThree(0, -c)
                 for i, c in enumerate(zroot))


class RealQuadMatrix:
    """A 5x5 matrix over Q(sqrt3), usually preserving diag(-1,1,1,1,1)."""

    def __init__(self, rows: Sequence[Sequence[int | Fraction | RootThree]]) -> None:
        self.rows = tuple(tuple(_rt(x) for x in row) for row in rows)
        if len(self.rows) != 5 or any(len(r) != 5 for r in self.rows):
            raise ValueError("expected a 5x5 matrix")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RealQuadMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"RealQuadMatrix({[[str(x) for x in row] for row in self.rows]})"

    def __matmul__(self, other: RealQuadMatrix) -> RealQuadMatrix:
        return RealQuadMatrix(_linalg.mat_mul(self.rows, other.rows))

    def apply(self, v: Sequence[RootThree]) -> R3Vector:
        return _linalg.mat_vec(self.rows, tuple(_rt(x) for x in v))

    @property
    def trace(self) -> RootThree:
        return _linalg.trace(self.rows)

    def power(self, n: int) -> RealQuadMatrix:
        return RealQuadMatrix(_linalg.mat_pow(self.rows, n))

    def transpose(self) -> RealQuadMatrix:
        return RealQuadMatrix(_linalg.transpose(self.rows))

    def galois(self) -> RealQuadMatrix:
        """Entrywise Galois conjugation sqrt3 -> -sqrt3."""
        return RealQuadMatrix(_linalg.mat_map(self.rows, galois_conjugate))

    def preserves_form(self) -> bool:
        j = _j_matrix()
        lhs = _linalg.mat_mul(_linalg.transpose(self.rows),
                              _linalg.mat_mul(j, self.rows))
        return lhs == j

    def is_integral(self) -> bool:
        return all(x.is_integral() for row in self.rows for x in row)

    @classmethod
    def identity(cls) -> RealQuadMatrix:
        return cls([[1 if i == k else 0 for k in range(5)] for i in range(5)])


def _j_matrix() -> tuple[tuple[RootThree, ...], ...]:
    return tuple(tuple(_rt(_J_SIGNS[i]) if i == k else _rt(0) for k in range(5))
                 for i in range(5))


def reflection_sqrt3(root: R3Vector) -> RealQuadMatrix:
    """Reflection x -> x - 2 (x.r)/(r.r) r over Q(sqrt3)."""
    n = norm3(root)
    cols = []
    for i in range(5):
        e = tuple(_rt(1 if k == i else 0) for k in range(5))
        c = (2 * ip3(e, root)) / n
        cols.append(tuple(b - c * r for b, r in zip(e, root)))
    return RealQuadMatrix([[cols[c][r] for c in range(5)] for r in range(5)])


def angle_label_sqrt3(r: R3Vector, s: R3Vector) -> Bond:
    """Exact analogue of the integral angle label over Q(sqrt3)."""
    c = (ip3(r, s) * ip3(r, s)) / (norm3(r) * norm3(s))
    for value, label in ((RootThree(0), Bond.ORTHOGONAL),
                         (RootThree(Fraction(1, 4)), Bond.SINGLE),
                         (RootThree(Fraction(1, 2)), Bond.DOUBLE),
                         (RootThree(Fraction(3, 4)), Bond.TRIPLE),
                         (RootThree(1), Bond.PARALLEL)):
        if c == value:
            return label
    if c > RootThree(1):
        return Bond.ULTRAPARALLEL
    raise GluingError(f"non-Coxeter angle between glued walls: {c}")


# ---------------------------------------------------------------------------
# side pairings

class SidePairingError(GluingError):
    """Constraints are inconsistent, underdetermined, or give a bad matrix."""


def solve_side_pairing(constraints: Sequence[tuple[Sequence, Sequence]]
                       ) -> RealQuadMatrix:
    """The unique form-preserving matrix with M v = w for all (v, w) given.

    Needs five linearly independent source vectors; the solution is checked
    against every constraint, against the form, and for Z[sqrt3] entries.
    """
    sources = [tuple(_rt(x) for x in v) for v, _ in constraints]
    targets = [tuple(_rt(x) for x in w) for _, w in constraints]
    idx = _independent_five(sources)
    if idx is None:
        raise SidePairingError("constraints do not determine the map "
                               "(fewer than five independent sources)")
    v = tuple(tuple(sources[c][row] for c in idx) for row in range(5))
    t = tuple(tuple(targets[c][row] for c in idx) for row in range(5))
    try:
        m = RealQuadMatrix(_linalg.mat_mul(t, _linalg.field_inverse(v, _rt(1))))
    except ValueError as exc:
        raise SidePairingError(str(exc)) from exc
    for src, dst in zip(sources, targets):
        if m.apply(src) != dst:
            raise SidePairingError("constraint set is inconsistent")
    if not m.preserves_form():
        raise SidePairingError("solution does not preserve the form")
    if not m.is_integral():
        raise SidePairingError("solution is not integral over Z[sqrt3]")
    return m


def _independent_five(vectors: Sequence[R3Vector]) -> list[int] | None:
    chosen: list[int] = []
    rows: list[list[RootThree]] = []
    for i, vec in enumerate(vectors):
        work = list(vec)
        for row in sorted(rows, key=_lead):
            lead = _lead(row)
            if work[lead]:
                c = work[lead] / row[lead]
                work = [x - c * y for x, y in zip(work, row)]
        if any(work):
            rows.append(work)
            chosen.append(i)
        if len(chosen) == 5:
            return chosen
    return None


def _lead(row: list[RootThree]) -> int:
    return next(i for i, x in enumerate(row) if x)


# ---------------------------------------------------------------------------
# chambers

@dataclass(frozen=True)
class ChamberSet:
    """Simple roots of the eight glued chambers, plus the symmetry S."""

    roots: dict[str, tuple[R3Vector, ...]]
    symmetry: RealQuadMatrix

    def wall(self, chamber: str, k: int) -> R3Vector:
        return self.roots[chamber][k - 1]


def diagram_symmetry_matrix() -> RealQuadMatrix:
    """The isometry realizing the order-2 symmetry of the type-1 chamber,
    solved from the node permutation of its diagram."""
    from .vinberg import standard_diagram

    roots = [sqrt3_root(1, r) for r in STANDARD_CHAMBERS[1]]
    d = standard_diagram(1)
    sigma = next(p for p in diagram_automorphisms(d)
                 if p != tuple(range(d.n)))
    constraints = [(roots[i], roots[sigma[i]]) for i in range(len(roots))]
    m = solve_side_pairing(constraints)
    if (m @ m) != RealQuadMatrix.identity():
        raise GluingError("chamber symmetry is not an involution")
    return m


def build_chambers() -> ChamberSet:
    """Transport the five standard chambers and their mirror images into the
    glued coordinates, checking every wall coincidence."""
    s = diagram_symmetry_matrix()
    roots: dict[str, tuple[R3Vector, ...]] = {}
    for j in range(5):
        roots[f"P{j}"] = tuple(sqrt3_root(j, r) for r in STANDARD_CHAMBERS[j])
    for j in (0, 3, 4):
        roots[f"P{j}'"] = tuple(s.apply(r) for r in roots[f"P{j}"])
    chambers = ChamberSet(roots, s)
    for (cham_a, k_a), (cham_b, k_b) in GLUED_WALL_PAIRS:
        _check_coincidence(chambers, cham_a, k_a, cham_b, k_b)
    return chambers


def _check_coincidence(chambers: ChamberSet, cham_a: str, k_a: int,
                       cham_b: str, k_b: int) -> None:
    """The two walls must span the same hyperplane with opposite
    co-orientations, and carry identical wall patterns."""
    ra = chambers.wall(cham_a, k_a)
    rb = chambers.wall(cham_b, k_b)
    scale = _parallel_scale(ra, rb)
    if scale is None or scale.sign() >= 0:
        raise GluingError(
            f"walls {cham_a}:{k_a} and {cham_b}:{k_b} are not opposite-parallel")
    proj_a = _projected_wall_set(chambers, cham_a, k_a)
    proj_b = _projected_wall_set(chambers, cham_b, k_b)
    if not _same_direction_sets(proj_a, proj_b):
        raise GluingError(
            f"wall patterns of {cham_a}:{k_a} and {cham_b}:{k_b} differ")


def _parallel_scale(u: R3Vector, v: R3Vector) -> RootThree | None:
    """c with v = c u, or None."""
    for i in range(5):
        for k in range(i + 1, 5):
            if u[i] * v[k] != u[k] * v[i]:
                return None
    lead = next((i for i, x in enumerate(u) if x), None)
    if lead is None or not v[lead]:
        return None
    return v[lead] / u[lead]


def _projected_wall_set(chambers: ChamberSet, cham: str, k: int) -> list[R3Vector]:
    """Projections into wall k of the roots of the other walls meeting it."""
    walls = chambers.roots[cham]
    r = walls[k - 1]
    nr = norm3(r)
    out = []
    for i, w in enumerate(walls):
        if i == k - 1:
            continue
        if not angle_label_sqrt3(r, w).meets:
            continue
        c = ip3(w, r) / nr
        out.append(tuple(wi - c * ri for wi, ri in zip(w, r)))
    return out


def _same_direction_sets(xs: list[R3Vector], ys: list[R3Vector]) -> bool:
    """Set equality up to positive scaling."""
    if len(xs) != len(ys):
        return False
    unmatched = list(ys)
    for x in xs:
        hit = next((y for y in unmatched
                    if (s := _parallel_scale(x, y)) is not None and s.sign() > 0),
                   None)
        if hit is None:
            return False
        unmatched.remove(hit)
    return True


# ---------------------------------------------------------------------------
# the polyhedron Q

@dataclass(frozen=True)
class Wall:
    name: str
    root: R3Vector
    norm: int
    carries: tuple[str, ...]  # which chamber walls lie inside this wall of Q


@dataclass(frozen=True)
class GluedPolyhedron:
    walls: tuple[Wall, ...]
    diagram: CoxeterDiagram
    chambers: ChamberSet

    def wall(self, name: str) -> Wall:
        return next(w for w in self.walls if w.name == name)

    def root(self, name: str) -> R3Vector:
        return self.wall(name).root

    def reflection(self, name: str) -> RealQuadMatrix:
        return reflection_sqrt3(self.root(name))


def assemble_q(chambers: ChamberSet | None = None) -> GluedPolyhedron:
    """Collect the 36 retained chamber walls, merge parallels, and normalize
    to norm 1 (discriminant walls) or 2 (the rest)."""
    if chambers is None:
        chambers = build_chambers()
    discarded = {pair for pairs in GLUED_WALL_PAIRS for pair in pairs}
    retained: list[tuple[str, R3Vector]] = []
    for cham in CHAMBER_NAMES:
        for k in range(1, len(chambers.roots[cham]) + 1):
            if (cham, k) in discarded:
                continue
            label = f"{cham[:2]}{k}" + ("'" if cham.endswith("'") else "")
            retained.append((label, chambers.wall(cham, k)))
    if len(retained) != 36:
        raise GluingError(f"expected 36 retained walls, found {len(retained)}")
    classes: list[tuple[R3Vector, list[str]]] = []
    for label, root in retained:
        root = _normalize_root(root)
        for i, (rep, labels) in enumerate(classes):
            scale = _parallel_scale(rep, root)
            if scale is not None:
                if scale != RootThree(1):
                    raise GluingError(
                        f"wall {label} is a non-unit multiple of {labels[0]}")
                labels.append(label)
                break
        else:
            classes.append((root, [label]))
    if len(classes) != 10:
        raise GluingError(f"expected 10 walls after merging, got {len(classes)}")
    by_anchor = {}
    for letter, (cham, k) in _WALL_ANCHORS.items():
        anchor = f"{cham[:2]}{k}" + ("'" if cham.endswith("'") else "")
        match = next((i for i, (_, labels) in enumerate(classes)
                      if anchor in labels), None)
        if match is None:
            raise GluingError(f"anchor wall {anchor} not found for {letter}")
        by_anchor[letter] = match
    if len(set(by_anchor.values())) != 10:
        raise GluingError("wall letters do not separate the classes")
    walls = []
    for letter in WALL_ORDER:
        root, labels = classes[by_anchor[letter]]
        n = norm3(root)
        walls.append(Wall(letter, root, int(n.a), tuple(sorted(labels))))
    diagram = _diagram_from_walls(walls)
    return GluedPolyhedron(tuple(walls), diagram, chambers)


def _normalize_root(root: R3Vector) -> R3Vector:
    n = norm3(root)
    if not n.is_rational() or n.a not in (1, 2, 3, 6):
        raise GluingError(f"unexpected wall norm {n}")
    if n.a in (3, 6):
        inv_sqrt3 = RootThree(0, Fraction(1, 3))  # 1/sqrt3
        root = tuple(inv_sqrt3 * x for x in root)
    return root


def _diagram_from_walls(walls: list[Wall]) -> CoxeterDiagram:
    bonds = []
    for i in range(len(walls)):
        for k in range(i + 1, len(walls)):
            lab = angle_label_sqrt3(walls[i].root, walls[k].root)
            if lab is not Bond.ORTHOGONAL:
                bonds.append((i, k, lab))
    return CoxeterDiagram(tuple(w.norm for w in walls), tuple(bonds),
                          tuple(w.name for w in walls))


# ---------------------------------------------------------------------------
# pairings of the discriminant walls

def side_pairing_tau(q: GluedPolyhedron) -> RealQuadMatrix:
    """The pairing carrying wall A onto wall B: it reverses the co-orientation
    of A, fixes E', D', C' and moves D to E."""
    constraints = [
        (q.root("A"), tuple(-x for x in q.root("B"))),
        (q.root("E'"), q.root("E'")),
        (q.root("D'"), q.root("D'")),
        (q.root("C'"), q.root("C'")),
        (q.root("D"), q.root("E")),
    ]
    return solve_side_pairing(constraints)


def side_pairing_tau_prime(q: GluedPolyhedron) -> RealQuadMatrix:
    s = q.chambers.symmetry
    return s @ side_pairing_tau(q) @ s


# ---------------------------------------------------------------------------
# Poincare conditions

@dataclass(frozen=True)
class PoincareReport:
    eckardt_angles_ok: bool
    discriminant_disjoint_ok: bool
    discriminant_orthogonal_ok: bool
    pairing_ok: bool
    pairing_prime_ok: bool
    completeness: str
    failures: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.failures


ECKARDT_WALLS = ("C", "D", "E", "E'", "D'", "C'")
DISCRIMINANT_WALLS = ("A", "B", "B'", "A'")


def verify_poincare(q: GluedPolyhedron,
                    tau: RealQuadMatrix | None = None,
                    tau_prime: RealQuadMatrix | None = None) -> PoincareReport:
    """Check the side-pairing conditions wall by wall; completeness is
    inherited from the ambient complete orbifold rather than re-proved."""
    failures = []
    tau = tau if tau is not None else side_pairing_tau(q)
    tau_prime = tau_prime if tau_prime is not None else side_pairing_tau_prime(q)

    angles_ok = True
    for i, a in enumerate(ECKARDT_WALLS):
        for b in ECKARDT_WALLS[i + 1:]:
            try:
                angle_label_sqrt3(q.root(a), q.root(b))
            except GluingError:
                # meeting walls must subtend pi over an integer; disjoint
                # (parallel or ultraparallel) pairs impose no condition
                angles_ok = False
                failures.append(f"walls {a},{b} meet at a non-Coxeter angle")

    disjoint_ok = True
    for i, a in enumerate(DISCRIMINANT_WALLS):
        for b in DISCRIMINANT_WALLS[i + 1:]:
            if angle_label_sqrt3(q.root(a), q.root(b)).meets:
                disjoint_ok = False
                failures.append(f"discriminant walls {a},{b} intersect")

    ortho_ok = True
    for a in DISCRIMINANT_WALLS:
        for b in ECKARDT_WALLS:
            lab = angle_label_sqrt3(q.root(a), q.root(b))
            if lab.meets and lab is not Bond.ORTHOGONAL:
                ortho_ok = False
                failures.append(f"discriminant wall {a} meets {b} non-orthogonally")

    pairing_ok = _check_pairing(q, tau, "A", "B", failures)
    pairing_prime_ok = _check_pairing(q, tau_prime, "A'", "B'", failures)

    return PoincareReport(angles_ok, disjoint_ok, ortho_ok, pairing_ok,
                          pairing_prime_ok,
                          "inherited from the complete quotient orbifold",
                          tuple(failures))


def _check_pairing(q: GluedPolyhedron, tau: RealQuadMatrix, a: str, b: str,
                   failures: list[str]) -> bool:
    ok = True
    if not tau.preserves_form() or not tau.is_integral():
        ok = False
        failures.append(f"pairing {a}->{b} is not an integral isometry")
    image = tau.apply(q.root(a))
    if image != tuple(-x for x in q.root(b)):
        ok = False
        failures.append(f"pairing does not carry {a} onto {b} reversing sides")
    # wall-incidence pattern: walls meeting a must map onto walls meeting b
    meets_a = [w.name for w in q.walls if w.name != a
               and angle_label_sqrt3(q.root(a), w.root).meets]
    meets_b = {w.name for w in q.walls if w.name != b
               and angle_label_sqrt3(q.root(b), w.root).meets}
    mapped = set()
    for name in meets_a:
        img = tau.apply(q.root(name))
        hit = next((w.name for w in q.walls
                    if (s := _parallel_scale(w.root, img)) is not None
                    and s.sign() > 0), None)
        if hit is None:
            ok = False
            failures.append(f"pairing sends wall {name} outside the polyhedron")
        else:
            mapped.add(hit)
    if mapped != meets_b:
        ok = False
        failures.append(f"pairing mismatches the wall pattern around {a}/{b}")
    return ok


# ---------------------------------------------------------------------------
# presentation

def presentation_pgamma_r(q: GluedPolyhedron) -> tuple[Presentation, Presentation]:
    """Presentations of the stable-moduli orbifold group and of its index-2
    subgroup (the latter omits the symmetry generator)."""
    names = list(ECKARDT_WALLS)
    gens = tuple(names) + ("tau", "tau'", "S")
    rels: list[tuple[str, ...]] = []
    for g in names:
        rels.append((g, g))
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            m = angle_label_sqrt3(q.root(a), q.root(b)).m
            if m is not None:
                rels.append((a, b) * m)
    half_count = len(rels)
    for x in ("C'", "D'", "E'"):
        rels.append(("tau", x, "~tau", x))
    rels.append(("tau", "D", "~tau", "E"))
    for x in ("C", "D", "E"):
        rels.append(("tau'", x, "~tau'", x))
    rels.append(("tau'", "D'", "~tau'", "E'"))
    half = Presentation(tuple(names) + ("tau", "tau'"), tuple(rels))
    rels_full = list(rels)
    rels_full.append(("S", "S"))
    for x, xp in (("C", "C'"), ("D", "D'"), ("E", "E'")):
        rels_full.append(("S", x, "S", xp))
    rels_full.append(("S", "tau", "S", "~tau'"))
    full = Presentation(gens, tuple(rels_full))
    return full, half


# ---------------------------------------------------------------------------
# nonarithmeticity

@dataclass(frozen=True)
class Certificate:
    tr_gamma: RootThree
    tr_gamma_sq: RootThree
    tr_ad: RootThree
    trace_field: str
    galois_form_signature: tuple[int, int]
    verdict: str

    def to_json(self) -> dict:
        def pair(x: RootThree) -> list:
            return [_frac_json(x.a), _frac_json(x.b)]

        return {
            "schema": 1,
            "ring": "Z[sqrt3]",
            "traces": {
                "tr_gamma": pair(self.tr_gamma),
                "tr_gamma_sq": pair(self.tr_gamma_sq),
                "tr_ad": pair(self.tr_ad),
            },
            "trace_field": self.trace_field,
            "galois_form_signature": list(self.galois_form_signature),
            "verdict": self.verdict,
        }


def _frac_json(x: Fraction) -> int | str:
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def adjoint_trace(m: RealQuadMatrix) -> RootThree:
    """Trace in the adjoint representation of O(4,1): the exterior square,
    so Tr Ad = ((Tr m)^2 - Tr m^2) / 2."""
    t = m.trace
    t2 = (m @ m).trace
    return (t * t - t2) / 2


def _galois_form_signature() -> tuple[int, int]:
    # the form has rational entries, so its Galois conjugate is itself
    return (4, 1)


def nonarithmeticity_certificate(q: GluedPolyhedron | None = None) -> Certificate:
    """Certificate built from the element (R_C R_D' R_E')^2: its adjoint trace
    is irrational, so the trace field is the full Q(sqrt3), while the Galois
    conjugate of the preserved form stays indefinite."""
    if q is None:
        q = assemble_q()
    gens = {name: q.reflection(name) for name in ECKARDT_WALLS}
    gens["tau"] = side_pairing_tau(q)
    gens["tau'"] = side_pairing_tau_prime(q)
    gens["S"] = q.chambers.symmetry
    for name, g in gens.items():
        if not g.preserves_form():
            raise GluingError(f"generator {name} does not preserve the form")
        if not g.is_integral():
            raise GluingError(f"generator {name} is not integral over Z[sqrt3]")
    gamma = (gens["C"] @ gens["D'"] @ gens["E'"]).power(2)
    tr = gamma.trace
    tr2 = (gamma @ gamma).trace
    tr_ad = (tr * tr - tr2) / 2
    field = "Q(sqrt3)" if not tr_ad.is_rational() else "Q"
    if field == "Q(sqrt3)":
        verdict = "nonarithmetic"
    else:
        verdict = "arithmetic (trace field rational, form defined over Q)"
    return Certificate(tr, tr2, tr_ad, field, _galois_form_signature(), verdict)


def certificate_for_generators(gens: Sequence[RealQuadMatrix],
                               max_word_length: int = 3) -> Certificate:
    """Trace-field certificate for any integral generating set: scan short
    words for an irrational adjoint trace."""
    for i, g in enumerate(gens):
        if not g.preserves_form():
            raise GluingError(f"generator {i} does not preserve the form")
        if not g.is_integral():
            raise GluingError(f"generator {i} is not integral over Z[sqrt3]")
    words = [RealQuadMatrix.identity()]
    gamma = RealQuadMatrix.identity()
    found = False
    for _ in range(max_word_length):
        words = [w @ g for w in words for g in gens]
        for w in words:
            gamma = w
            if not adjoint_trace(w).is_rational():
                found = True
                break
        if found:
            break
    tr = gamma.trace
    tr2 = (gamma @ gamma).trace
    tr_ad = (tr * tr - tr2) / 2
    field = "Q(sqrt3)" if not tr_ad.is_rational() else "Q"
    if field == "Q(sqrt3)":
        verdict = "nonarithmetic"
    else:
        verdict = "arithmetic (trace field rational, form defined over Q)"
    return Certificate(tr, tr2, tr_ad, field, _galois_form_signature(), verdict)


# ---------------------------------------------------------------------------
# the Hermitian isometry matching the two leftover discriminant walls

GAMMA_LEMMA_MATRIX: tuple[tuple[Eisenstein, ...], ...] = tuple(
    tuple(Eisenstein(a, b) for a, b in row) for row in (
        (((10, 6)), ((4, 2)), ((1, -4)), ((1, -4)), ((1, -4))),
        (((2, -2)), ((1, 0)), ((-2, -2)), ((-2, -2)), ((-2, -2))),
        (((1, -4)), ((0, -2)), ((-2, -2)), ((-3, -2)), ((-3, -2))),
        (((1, -4)), ((0, -2)), ((-3, -2)), ((-2, -2)), ((-3, -2))),
        (((1, -4)), ((0, -2)), ((-3, -2)), ((-3, -2)), ((-2, -2))),
    ))


def verify_gamma_lemma() -> dict[str, bool]:
    """The Eisenstein matrix carrying the type-3 chamber wall 7 onto the
    type-4 chamber wall 6: it preserves h and satisfies the five root
    conditions that pin it down."""
    from . import involution as inv_mod
    from .lattice import HERMITIAN
    from .ring import THETA
    from .vinberg import standard_chamber_lambda

    g = GAMMA_LEMMA_MATRIX
    checks = {}
    checks["preserves_h"] = inv_mod.preserves_h(g)
    c3 = standard_chamber_lambda(3)
    c4 = standard_chamber_lambda(4)

    def act(v):
        return _linalg.mat_vec(g, tuple(v))

    theta_r37 = tuple(THETA * c for c in c3[6])
    checks["theta_r37_to_r46"] = act(theta_r37) == tuple(c4[5])
    for src, dst, name in ((c3[4], c4[4], "r35_to_r45"),
                           (c3[1], c4[0], "r32_to_r41"),
                           (c3[2], c4[1], "r33_to_r42"),
                           (c3[5], c4[2], "r36_to_r43")):
        checks[name] = act(tuple(src)) == tuple(dst)
    return checks
