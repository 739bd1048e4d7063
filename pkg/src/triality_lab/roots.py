"""The D4 root system in the L1..L4 basis and the triality weight map."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import linalg
from .errors import NotAPermutation, NotARoot

HALF = Fraction(1, 2)

Weight = tuple  # four Fractions, coordinates in L1..L4

SIMPLE_NAMES = ("A", "B", "C", "Y")


def weight(*coords) -> Weight:
    return tuple(Fraction(c) for c in coords)


SIMPLE_ROOTS = {
    "A": weight(1, -1, 0, 0),
    "B": weight(0, 0, 1, -1),
    "C": weight(0, 0, 1, 1),
    "Y": weight(0, 1, -1, 0),
}


@dataclass(frozen=True)
class RootSystemD4:
    roots: tuple
    simple: tuple = tuple(SIMPLE_ROOTS[n] for n in SIMPLE_NAMES)

    @classmethod
    def build(cls) -> RootSystemD4:
        roots = []
        for i, j in combinations(range(4), 2):
            for si in (1, -1):
                for sj in (1, -1):
                    v = [0] * 4
                    v[i], v[j] = si, sj
                    roots.append(weight(*v))
        return cls(tuple(sorted(roots, reverse=True)))

    def positive_roots(self) -> list:
        return [r for r in self.roots if all(c >= 0 for c in simple_root_coordinates(r))]


@dataclass(frozen=True)
class WeightMap:
    matrix: tuple

    def __call__(self, w: Weight) -> Weight:
        return tuple(Fraction(x) for x in linalg.matvec(self.matrix, w))

    def power(self, k: int) -> WeightMap:
        return WeightMap(tuple(tuple(r) for r in linalg.mat_pow(self.matrix, k)))

    def is_identity(self) -> bool:
        return [list(r) for r in self.matrix] == linalg.identity(4)


def triality_weight_map() -> WeightMap:
    m = (
        (HALF, HALF, HALF, -HALF),
        (HALF, HALF, -HALF, HALF),
        (HALF, -HALF, HALF, HALF),
        (HALF, -HALF, -HALF, -HALF),
    )
    return WeightMap(m)


def simple_root_coordinates(root: Weight) -> tuple:
    """Integer coefficients of ``root`` over (A, B, C, Y)."""
    root = tuple(Fraction(c) for c in root)
    if sorted(abs(c) for c in root) != [0, 0, 1, 1]:
        raise NotARoot(f"{root} is not a root of D4")
    cols = linalg.transpose([SIMPLE_ROOTS[n] for n in SIMPLE_NAMES])
    sol = linalg.solve(cols, list(root))
    if sol is None or any(Fraction(c).denominator != 1 for c in sol):
        raise NotARoot(f"{root} is not an integral combination of simple roots")
    return tuple(int(c) for c in sol)


def root_label(root: Weight) -> str:
    """Word in simple roots: ABC2Y means A+B+C+2Y; negatives get a leading '-'."""
    coords = simple_root_coordinates(root)
    sgn = ""
    if all(c <= 0 for c in coords):
        sgn, coords = "-", tuple(-c for c in coords)
    out = ""
    for n, c in zip(SIMPLE_NAMES, coords):
        if c == 1:
            out += n
        elif c > 1:
            out += f"{c}{n}"
    return sgn + out


def root_from_label(label: str) -> Weight:
    neg = label.startswith("-")
    body = label[1:] if neg else label
    coeffs = dict.fromkeys(SIMPLE_NAMES, 0)
    k = 0
    while k < len(body):
        num = ""
        while body[k].isdigit():
            num += body[k]
            k += 1
        name = body[k]
        if name not in coeffs:
            raise NotARoot(f"bad root label {label!r}")
        coeffs[name] += int(num or 1)
        k += 1
    v = [Fraction(0)] * 4
    for n, c in coeffs.items():
        for i in range(4):
            v[i] += c * SIMPLE_ROOTS[n][i]
    if neg:
        v = [-x for x in v]
    simple_root_coordinates(tuple(v))
    return tuple(v)


@dataclass(frozen=True)
class OrbitDecomposition:
    fixed: tuple
    free: tuple  # each a 3-tuple (r, m(r), m^2(r))


def orbit_decomposition(system: RootSystemD4, m: WeightMap) -> OrbitDecomposition:
    roots = set(system.roots)
    if {m(r) for r in roots} != roots:
        raise NotAPermutation("the map does not permute the root system")
    positive = system.positive_roots()
    pos_set = set(positive)
    fixed, free, seen = [], [], set()
    for r in positive:
        if r in seen:
            continue
        orbit = [r]
        x = m(r)
        while x != r:
            orbit.append(x)
            x = m(x)
        seen.update(orbit)
        if len(orbit) == 1:
            fixed.append(r)
        else:
            if not set(orbit) <= pos_set:
                raise NotAPermutation("the map does not preserve positivity")
            free.append(tuple(orbit))
    return OrbitDecomposition(tuple(fixed), tuple(free))


# the positive-root table in display order
POSITIVE_ROOT_TABLE = ("A", "AY", "ABY", "ACY", "ABCY", "ABC2Y", "Y", "BY", "CY", "BCY", "B", "C")


def orbits_in_table_order(system: RootSystemD4 | None = None, m: WeightMap | None = None) -> OrbitDecomposition:
    """Orbits labelled and ordered as in the table: generators A, AY, ABY."""
    system = system or RootSystemD4.build()
    m = m or triality_weight_map()
    dec = orbit_decomposition(system, m)
    order = {root_from_label(lbl): k for k, lbl in enumerate(POSITIVE_ROOT_TABLE)}
    fixed = tuple(sorted(dec.fixed, key=order.__getitem__))
    free = []
    for orb in dec.free:
        start = min(range(len(orb)), key=lambda k: order[orb[k]])
        free.append(orb[start:] + orb[:start])
    free.sort(key=lambda o: order[o[0]])
    return OrbitDecomposition(fixed, tuple(free))


def _in_spin_lattice(v) -> bool:
    dens = {Fraction(c).denominator for c in v}
    return dens == {1} or dens == {2}


def _in_so_lattice(v) -> bool:
    return all(Fraction(c).denominator == 1 for c in v)


def lattice_check(m: WeightMap) -> dict:
    unit = [tuple(Fraction(int(i == j)) for j in range(4)) for i in range(4)]
    spin_gens = unit + [(HALF,) * 4]
    return {
        "preserves_SO_lattice": all(_in_so_lattice(m(g)) for g in unit),
        "preserves_Spin_lattice": all(_in_spin_lattice(m(g)) for g in spin_gens),
    }


def preserves_inner_product(m: WeightMap) -> bool:
    mt = linalg.transpose(m.matrix)
    return linalg.matmul(mt, [list(r) for r in m.matrix]) == linalg.identity(4)


def restrict_to_fixed_torus(root: Weight) -> tuple:
    """Coefficients (of t2, t3) of a root on the torus (t2+t3, t2, t3, 0)."""
    l1, l2, l3, l4 = root
    return (int(l1 + l2), int(l1 + l3))
