"""Coxeter diagram analytics.

Diagrams carry a root norm on each node and an angle label on each pair of
nodes.  On top of that sit finite-type recognition, the finite-volume
criterion for hyperbolic chambers, the orbifold Euler characteristic,
wall classification, diagram automorphisms and group presentations.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from sympy import Matrix as SymMatrix
from sympy.matrices.normalforms import smith_normal_form

from .lattice import ZForm


class Bond(enum.Enum):
    """Angle between two chamber walls."""

    ORTHOGONAL = 2
    SINGLE = 3       # pi/3
    DOUBLE = 4       # pi/4
    TRIPLE = 6       # pi/6
    PARALLEL = "parallel"
    ULTRAPARALLEL = "ultraparallel"

    @property
    def m(self) -> int | None:
        """Coxeter exponent for walls meeting at pi/m, else None."""
        return self.value if isinstance(self.value, int) else None

    @property
    def meets(self) -> bool:
        return self.m is not None


class AngleError(ValueError):
    """A pair of roots subtends an angle outside the Coxeter list."""


def angle_label(form: ZForm, r: Sequence[int], s: Sequence[int]) -> Bond:
    """Label for the pair of mirrors of r and s from c = (r.s)^2 / (r^2 s^2)."""
    c = Fraction(form.ip(r, s) ** 2, form.norm(r) * form.norm(s))
    table = {
        Fraction(0): Bond.ORTHOGONAL,
        Fraction(1, 4): Bond.SINGLE,
        Fraction(1, 2): Bond.DOUBLE,
        Fraction(3, 4): Bond.TRIPLE,
        Fraction(1): Bond.PARALLEL,
    }
    if c in table:
        return table[c]
    if c > 1:
        return Bond.ULTRAPARALLEL
    raise AngleError(f"non-Coxeter angle: (r.s)^2/(r^2 s^2) = {c}")


@dataclass(frozen=True)
class CoxeterDiagram:
    """Nodes with root norms, and a symmetric bond label per node pair."""

    norms: tuple[int, ...]
    bonds: tuple[tuple[int, int, Bond], ...]
    names: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.names:
            object.__setattr__(
                self, "names", tuple(f"r{i + 1}" for i in range(len(self.norms))))
        if len(self.names) != len(self.norms):
            raise ValueError("names and norms must have equal length")

    @property
    def n(self) -> int:
        return len(self.norms)

    @classmethod
    def from_roots(cls, form: ZForm, roots: Sequence[Sequence[int]],
                   names: Sequence[str] = ()) -> CoxeterDiagram:
        norms = tuple(form.norm(r) for r in roots)
        bonds = []
        for i, j in combinations(range(len(roots)), 2):
            lab = angle_label(form, roots[i], roots[j])
            if lab is not Bond.ORTHOGONAL:
                bonds.append((i, j, lab))
        return cls(norms, tuple(bonds), tuple(names))

    def bond(self, i: int, j: int) -> Bond:
        if i == j:
            raise ValueError("no bond from a node to itself")
        a, b = min(i, j), max(i, j)
        for x, y, lab in self.bonds:
            if (x, y) == (a, b):
                return lab
        return Bond.ORTHOGONAL

    def _bond_map(self) -> dict[tuple[int, int], Bond]:
        return {(a, b): lab for a, b, lab in self.bonds}

    def subdiagram(self, nodes: Sequence[int]) -> CoxeterDiagram:
        nodes = list(nodes)
        pos = {v: k for k, v in enumerate(nodes)}
        bonds = tuple(
            (min(pos[a], pos[b]), max(pos[a], pos[b]), lab)
            for a, b, lab in self.bonds if a in pos and b in pos)
        return CoxeterDiagram(tuple(self.norms[v] for v in nodes), bonds,
                              tuple(self.names[v] for v in nodes))

    def neighbors(self, i: int) -> list[int]:
        """Nodes joined to i by any non-orthogonal bond."""
        out = []
        for a, b, _ in self.bonds:
            if a == i:
                out.append(b)
            elif b == i:
                out.append(a)
        return sorted(out)

    def components(self) -> list[list[int]]:
        seen: set[int] = set()
        comps = []
        for start in range(self.n):
            if start in seen:
                continue
            comp, stack = [], [start]
            seen.add(start)
            while stack:
                u = stack.pop()
                comp.append(u)
                for v in self.neighbors(u):
                    if v not in seen:
                        seen.add(v)
                        stack.append(v)
            comps.append(sorted(comp))
        return comps

    def dot(self, graph_name: str = "diagram") -> str:
        """Graphviz export; node peripheries encode the root norm, edge styles
        the angle (single/double/triple bond, bold parallel, dashed
        ultraparallel)."""
        peripheries = {1: 1, 2: 2, 3: 3, 6: 4}
        lines = [f"graph {graph_name} {{"]
        lines.append('  // peripheries 1,2,3,4 <-> root norm 1,2,3,6')
        for i, (name, norm) in enumerate(zip(self.names, self.norms)):
            lines.append(
                f'  n{i} [label="{name}" shape=circle '
                f'peripheries={peripheries.get(norm, 1)}]; // norm {norm}')
        style = {
            Bond.SINGLE: "",
            Bond.DOUBLE: ' [color="black:black"]',
            Bond.TRIPLE: ' [color="black:black:black"]',
            Bond.PARALLEL: " [style=bold]",
            Bond.ULTRAPARALLEL: " [style=dashed]",
        }
        for a, b, lab in sorted(self.bonds, key=lambda t: (t[0], t[1])):
            lines.append(f"  n{a} -- n{b}{style[lab]};")
        lines.append("}")
        return "\n".join(lines)


@dataclass(frozen=True)
class FiniteType:
    """Multiset of irreducible finite Coxeter components."""

    components: tuple[tuple[str, int], ...]

    def __str__(self) -> str:
        if not self.components:
            return "1"
        return " x ".join(f"{fam}{rank}" for fam, rank in self.components)

    @property
    def order(self) -> int:
        return math.prod(_component_order(fam, rank)
                         for fam, rank in self.components)


def _component_order(family: str, rank: int) -> int:
    if family == "A":
        return math.factorial(rank + 1)
    if family == "B":
        return 2 ** rank * math.factorial(rank)
    if family == "D":
        return 2 ** (rank - 1) * math.factorial(rank)
    if family == "G":
        return 12
    if family == "F":
        return 1152
    if family == "E":
        return {6: 51840, 7: 2903040, 8: 696729600}[rank]
    raise ValueError(f"unknown family {family}")


def weyl_order(t: FiniteType) -> int:
    return t.order


def _classify_finite_component(d: CoxeterDiagram, comp: list[int]):
    """(family, rank) of one connected component, or None if not finite."""
    n = len(comp)
    if n == 1:
        return ("A", 1)
    bonds = [(a, b, d.bond(a, b)) for a, b in combinations(comp, 2)
             if d.bond(a, b) is not Bond.ORTHOGONAL]
    if any(lab.m is None for _, _, lab in bonds):
        return None
    if len(bonds) != n - 1:
        return None  # a cycle is affine at best
    deg = {v: 0 for v in comp}
    for a, b, _ in bonds:
        deg[a] += 1
        deg[b] += 1
    heavy = sorted(lab.m for _, _, lab in bonds if lab.m > 3)
    branch = [v for v in comp if deg[v] == 3]
    if any(deg[v] > 3 for v in comp) or len(branch) > 1:
        return None
    if branch:
        if heavy:
            return None
        lens = sorted(_branch_lengths(d, comp, branch[0]))
        if lens[:2] == [1, 1]:
            return ("D", n)
        if lens == [1, 2, 2]:
            return ("E", 6)
        if lens == [1, 2, 3]:
            return ("E", 7)
        if lens == [1, 2, 4]:
            return ("E", 8)
        return None
    # path
    if not heavy:
        return ("A", n)
    if heavy == [4]:
        a, b, _ = next(x for x in bonds if x[2] is Bond.DOUBLE)
        if deg[a] == 1 or deg[b] == 1:
            return ("B", n)
        if n == 4:
            return ("F", 4)
        return None
    if heavy == [6] and n == 2:
        return ("G", 2)
    return None


def _branch_lengths(d: CoxeterDiagram, comp: list[int], center: int) -> list[int]:
    lens = []
    for start in d.neighbors(center):
        if start not in comp:
            continue
        length, prev, cur = 1, center, start
        while True:
            nxt = [v for v in d.neighbors(cur) if v in comp and v != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        lens.append(length)
    return lens


def finite_type(d: CoxeterDiagram) -> FiniteType | None:
    """Finite Coxeter type of the diagram, or None if any component is
    infinite."""
    comps = []
    for comp in d.components():
        t = _classify_finite_component(d, comp)
        if t is None:
            return None
        comps.append(t)
    return FiniteType(tuple(sorted(comps)))


def _classify_affine_component(d: CoxeterDiagram, comp: list[int]) -> int | None:
    """Rank (nodes - 1) if the component is an affine diagram, else None."""
    n = len(comp)
    bonds = [(a, b, d.bond(a, b)) for a, b in combinations(comp, 2)
             if d.bond(a, b) is not Bond.ORTHOGONAL]
    if any(lab is Bond.ULTRAPARALLEL for _, _, lab in bonds):
        return None
    if any(lab is Bond.PARALLEL for _, _, lab in bonds):
        # the only affine diagram with an infinite bond is the rank-1 one
        if n == 2:
            return 1
        return None
    if n < 3:
        return None
    deg = {v: 0 for v in comp}
    for a, b, _ in bonds:
        deg[a] += 1
        deg[b] += 1
    ms = sorted(lab.m for _, _, lab in bonds)
    if len(bonds) == n:
        # cycle of single bonds: affine A
        if all(m == 3 for m in ms) and all(deg[v] == 2 for v in comp):
            return n - 1
        return None
    if len(bonds) != n - 1:
        return None
    deg4 = [v for v in comp if deg[v] == 4]
    deg3 = [v for v in comp if deg[v] == 3]
    if deg4:
        # affine D_4: a star of four single bonds
        if n == 5 and len(deg4) == 1 and all(m == 3 for m in ms):
            return 4
        return None
    if len(deg3) == 2:
        # affine D_k: forks at both ends of a single-bond path
        if all(m == 3 for m in ms) and all(
                sum(1 for u in d.neighbors(v) if u in comp and deg[u] == 1) == 2
                for v in deg3):
            return n - 1
        return None
    if len(deg3) == 1:
        center = deg3[0]
        lens = sorted(_branch_lengths(d, comp, center))
        if all(m == 3 for m in ms):
            if lens == [2, 2, 2]:
                return 6  # affine E_6
            if lens == [1, 3, 3]:
                return 7  # affine E_7
            if lens == [1, 2, 5]:
                return 8  # affine E_8
            return None
        # affine B_k: fork with two single leaves, double bond at the far end
        if sorted(m for m in ms if m > 3) == [4] and lens[:2] == [1, 1]:
            far_double_ok = _double_at_path_end(d, comp, center, deg)
            if far_double_ok:
                return n - 1
        return None
    # path
    heavy = [(a, b, lab) for a, b, lab in bonds if lab.m > 3]
    ends = [v for v in comp if deg[v] == 1]
    if len(ends) != 2:
        return None
    if sorted(lab.m for _, _, lab in heavy) == [4, 4]:
        # affine C_k: double bonds at both ends
        if all(_is_end_bond(a, b, deg) for a, b, _ in heavy):
            return n - 1
        return None
    if sorted(lab.m for _, _, lab in heavy) == [6] and n == 3:
        return 2  # affine G_2
    if sorted(lab.m for _, _, lab in heavy) == [4] and n == 5:
        # affine F_4: path with the double bond separating 3 + 2 nodes
        a, b, _ = heavy[0]
        if deg[a] == 2 and deg[b] == 2 and not _is_end_bond(a, b, deg):
            sides = _path_split(d, comp, (a, b))
            if sides and sorted(sides) == [2, 3]:
                return 4
        return None
    return None


def _is_end_bond(a: int, b: int, deg: dict[int, int]) -> bool:
    return deg[a] == 1 or deg[b] == 1


def _double_at_path_end(d: CoxeterDiagram, comp: list[int], center: int,
                        deg: dict[int, int]) -> bool:
    """For type affine B: the unique double bond must join the two nodes
    furthest along the long branch."""
    double = [(a, b) for a, b in combinations(comp, 2)
              if d.bond(a, b) is Bond.DOUBLE]
    if len(double) != 1:
        return False
    a, b = double[0]
    end = a if deg[a] == 1 else b if deg[b] == 1 else None
    return end is not None and end != center


def _path_split(d: CoxeterDiagram, comp: list[int],
                cut: tuple[int, int]) -> list[int] | None:
    """Node counts of the two pieces of a path after removing one edge."""
    a, b = cut
    seen = {b}
    stack = [a]
    seen.add(a)
    while stack:
        u = stack.pop()
        for v in d.neighbors(u):
            if v in comp and v not in seen and {u, v} != {a, b}:
                seen.add(v)
                stack.append(v)
    side_a = len(seen) - 1
    return [side_a, len(comp) - side_a]


def parabolic_rank(d: CoxeterDiagram) -> int | None:
    """Total affine rank when every component is affine, else None."""
    total = 0
    for comp in d.components():
        r = _classify_affine_component(d, comp)
        if r is None:
            return None
        total += r
    return total


def euler_characteristic(d: CoxeterDiagram) -> Fraction:
    """1 + sum over nonempty finite-type subdiagrams E of (-1)^|E| / |W(E)|."""
    return 1 + sum(euler_characteristic_terms(d).values(), start=Fraction(0))


def euler_characteristic_terms(d: CoxeterDiagram) -> dict[int, Fraction]:
    """Contribution of the size-k subdiagrams for each k >= 1."""
    terms: dict[int, Fraction] = {}
    for k in range(1, d.n + 1):
        total = Fraction(0)
        for nodes in combinations(range(d.n), k):
            t = finite_type(d.subdiagram(nodes))
            if t is not None:
                total += Fraction((-1) ** k, t.order)
        terms[k] = total
    return terms


def volume_from_chi(chi: Fraction, n: int = 4) -> float:
    """Hyperbolic volume 2^n pi^(n/2) (n/2)! / n! * |chi| for even n."""
    if n % 2:
        raise ValueError("volume formula requires even dimension")
    const = 2 ** n * math.pi ** (n // 2) * math.factorial(n // 2) / math.factorial(n)
    return const * abs(float(chi.numerator) / float(chi.denominator))


def finite_volume_test(d: CoxeterDiagram, dim: int = 4) -> bool:
    """Combinatorial finite-volume criterion for a chamber in H^dim: every
    elliptic subdiagram of rank dim-1 extends to exactly two subdiagrams that
    are elliptic of rank dim or parabolic of rank dim-1, and at least one
    vertex (finite or ideal) exists."""
    nodes = range(d.n)
    vertex_exists = False
    edges = []
    for sub in combinations(nodes, dim - 1):
        if finite_type(d.subdiagram(sub)) is not None:
            edges.append(frozenset(sub))
    elliptic_dim = set()
    for sub in combinations(nodes, dim):
        if finite_type(d.subdiagram(sub)) is not None:
            elliptic_dim.add(frozenset(sub))
            vertex_exists = True
    parabolic = set()
    for k in range(dim, d.n + 1):
        for sub in combinations(nodes, k):
            if parabolic_rank(d.subdiagram(sub)) == dim - 1:
                parabolic.add(frozenset(sub))
                vertex_exists = True
    if not vertex_exists:
        return False
    for s in edges:
        count = sum(1 for t in elliptic_dim if s < t)
        count += sum(1 for t in parabolic if s < t)
        if count != 2:
            return False
    return bool(edges)


@dataclass(frozen=True)
class WallClassification:
    """Discriminant versus Eckardt walls, plus the flagged triple bonds."""

    discriminant: tuple[int, ...]
    eckardt: tuple[int, ...]
    triple_bonds: tuple[tuple[int, int], ...]


def classify_walls(form: ZForm, roots: Sequence[Sequence[int]],
                   names: Sequence[str] = ()) -> WallClassification:
    """Walls over singular surfaces have root norm 1 or 3; every triple bond
    (between norms 2 and 6) marks a codimension-2 singular face."""
    d = CoxeterDiagram.from_roots(form, roots, names)
    return classify_diagram_walls(d)


def classify_diagram_walls(d: CoxeterDiagram) -> WallClassification:
    disc = tuple(i for i, q in enumerate(d.norms) if q in (1, 3))
    eck = tuple(i for i, q in enumerate(d.norms) if q in (2, 6))
    triples = tuple((a, b) for a, b, lab in d.bonds if lab is Bond.TRIPLE)
    for a, b in triples:
        if {d.norms[a], d.norms[b]} != {2, 6}:
            raise ValueError("triple bond not between norms 2 and 6")
    return WallClassification(disc, eck, triples)


@dataclass(frozen=True)
class Presentation:
    """Group presentation; a relation is a word in the generators equal to 1.

    A letter "~x" stands for the inverse of the generator "x".
    """

    generators: tuple[str, ...]
    relations: tuple[tuple[str, ...], ...]

    def __post_init__(self) -> None:
        gens = set(self.generators)
        for rel in self.relations:
            if not {letter.lstrip("~") for letter in rel} <= gens:
                raise ValueError(f"relation {rel} uses unknown generators")

    def abelianization(self) -> tuple[int, ...]:
        """Invariant factors of the abelianized group (0 marks a free factor);
        trivial factors are dropped."""
        if not self.generators:
            return ()
        index = {g: i for i, g in enumerate(self.generators)}
        rows = []
        for rel in self.relations:
            row = [0] * len(self.generators)
            for letter in rel:
                if letter.startswith("~"):
                    row[index[letter[1:]]] -= 1
                else:
                    row[index[letter]] += 1
            rows.append(row)
        if not rows:
            return (0,) * len(self.generators)
        snf = smith_normal_form(SymMatrix(rows))
        divisors = [int(snf[i, i]) for i in range(min(snf.shape))]
        rank_deficit = len(self.generators) - sum(1 for x in divisors if x)
        out = [abs(x) for x in divisors if x and abs(x) != 1]
        return tuple(sorted(out) + [0] * rank_deficit)


def coxeter_presentation(d: CoxeterDiagram) -> Presentation:
    """Standard Coxeter presentation of the chamber's reflection group."""
    gens = d.names
    rels = [(g, g) for g in gens]
    for i, j in combinations(range(d.n), 2):
        m = d.bond(i, j).m
        if m is not None:
            rels.append((gens[i], gens[j]) * m)
    return Presentation(tuple(gens), tuple(rels))


def pi1_presentation(d: CoxeterDiagram,
                     walls: WallClassification | None = None) -> Presentation:
    """Presentation of the chamber group with the discriminant-wall generators
    deleted, together with every relation involving them and every relation
    coming from a triple bond."""
    if walls is None:
        walls = classify_diagram_walls(d)
    keep = set(walls.eckardt)
    gens = tuple(d.names[i] for i in sorted(keep))
    rels = [(g, g) for g in gens]
    triple = {frozenset(t) for t in walls.triple_bonds}
    for i, j in combinations(sorted(keep), 2):
        if frozenset((i, j)) in triple:
            continue
        m = d.bond(i, j).m
        if m is not None:
            rels.append((d.names[i], d.names[j]) * m)
    return Presentation(gens, tuple(rels))


def diagram_automorphisms(d: CoxeterDiagram) -> list[tuple[int, ...]]:
    """All node permutations preserving norms and bond labels."""
    return _diagram_maps(d, d)


def diagram_isomorphisms(d1: CoxeterDiagram, d2: CoxeterDiagram) -> list[tuple[int, ...]]:
    return _diagram_maps(d1, d2)


def is_isomorphic(d1: CoxeterDiagram, d2: CoxeterDiagram) -> bool:
    return bool(_diagram_maps(d1, d2, first_only=True))


def _diagram_maps(d1: CoxeterDiagram, d2: CoxeterDiagram,
                  first_only: bool = False) -> list[tuple[int, ...]]:
    if d1.n != d2.n or sorted(d1.norms) != sorted(d2.norms):
        return []

    def sig(d: CoxeterDiagram, i: int):
        around = sorted((d.bond(i, j).name, d.norms[j])
                        for j in range(d.n) if j != i and
                        d.bond(i, j) is not Bond.ORTHOGONAL)
        return (d.norms[i], tuple(around))

    sig1 = [sig(d1, i) for i in range(d1.n)]
    sig2 = [sig(d2, i) for i in range(d2.n)]
    if sorted(sig1) != sorted(sig2):
        return []
    candidates = [[j for j in range(d2.n) if sig2[j] == sig1[i]]
                  for i in range(d1.n)]
    results: list[tuple[int, ...]] = []
    perm = [-1] * d1.n
    used = [False] * d2.n

    def extend(i: int) -> bool:
        if i == d1.n:
            results.append(tuple(perm))
            return first_only
        for j in candidates[i]:
            if used[j]:
                continue
            if all(d1.bond(k, i) is d2.bond(perm[k], j) for k in range(i)):
                perm[i] = j
                used[j] = True
                if extend(i + 1):
                    return True
                used[j] = False
                perm[i] = -1
        return False

    extend(0)
    return results
