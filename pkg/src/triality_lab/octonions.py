"""Octonion and split-octonion products built from a trilinear form.

Vectors are length-8 lists of Fractions.  The Euclidean model uses the basis
e0..e7 (unit e0); the split model uses e1..e8 stored at positions 0..7, with
unit v0 = e4 - e5.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from . import linalg
from .errors import DegenerateRestriction, NotFound
from .lie import AlgebraElement
from .poly import MultiPoly

EUCLID = "euclid"
SPLIT = "split"


def unit_vector(k: int, n: int = 8) -> list:
    return [Fraction(int(i == k)) for i in range(n)]


def _vec(coords) -> tuple:
    return tuple(Fraction(c) for c in coords)


def _dot(u, v):
    return sum((a * b for a, b in zip(u, v) if a and b), Fraction(0))


@dataclass(frozen=True)
class TrilinearForm:
    """Sum of coefficient * (f1 ^ f2 ^ f3) for covectors f1, f2, f3."""

    terms: tuple  # ((f1, f2, f3), coefficient)
    name: str = ""

    @classmethod
    def from_triples(cls, triples, offset: int, name: str = "") -> TrilinearForm:
        """Build from (i, j, k, coeff); index i refers to position i - offset.

        An index may also be a tuple of indices, meaning the sum of those
        dual vectors (so (4, 5) stands for e4* + e5*).
        """
        terms = []
        for i, j, k, c in triples:
            covs = []
            for idx in (i, j, k):
                parts = idx if isinstance(idx, tuple) else (idx,)
                f = [Fraction(0)] * 8
                for p in parts:
                    f[p - offset] += 1
                covs.append(tuple(f))
            terms.append((tuple(covs), Fraction(c)))
        return cls(tuple(terms), name)

    def scaled(self, k) -> TrilinearForm:
        return TrilinearForm(tuple((covs, c * k) for covs, c in self.terms), self.name)

    def determinant_sum(self, a, b, c):
        """Direct evaluation: sum of coefficient * det(f_r(v_s))."""
        total = Fraction(0)
        for (f1, f2, f3), coeff in self.terms:
            (p, q, r), (s, t, u), (v, w, z) = ([_dot(f, x) for x in (a, b, c)] for f in (f1, f2, f3))
            total += coeff * (p * (t * z - u * w) - q * (s * z - u * v) + r * (s * w - t * v))
        return total

    @cached_property
    def tensor(self) -> tuple:
        """Nonzero components ((i, j, k), value) on the coordinate basis."""
        e = [unit_vector(k) for k in range(8)]
        out = []
        for i, j, k in product(range(8), repeat=3):
            if len({i, j, k}) == 3:
                val = self.determinant_sum(e[i], e[j], e[k])
                if val:
                    out.append(((i, j, k), val))
        return tuple(out)

    def __call__(self, a, b, c):
        total = Fraction(0)
        for (i, j, k), t in self.tensor:
            x = a[i]
            if x:
                y = b[j]
                if y:
                    z = c[k]
                    if z:
                        total += t * x * y * z
        return total


@dataclass(frozen=True)
class QuadraticSpace:
    """Quadratic form N(x) = x^T G x with polar form B(u, v) = u^T G v."""

    gram: tuple
    unit: tuple
    complement: tuple
    kind: str = EUCLID

    def __post_init__(self):
        g = self.gram
        if any(g[i][j] != g[j][i] for i in range(8) for j in range(8)):
            raise ValueError("Gram matrix must be symmetric")
        if self.norm(self.unit) == 0:
            raise DegenerateRestriction("the unit vector is isotropic")

    def polar(self, u, v):
        return _dot(u, linalg.matvec(self.gram, v))

    def norm(self, u):
        return self.polar(u, u)

    def real_part(self, x):
        return self.polar(x, self.unit) / self.norm(self.unit)

    def imaginary_part(self, x):
        r = self.real_part(x)
        return [a - r * u for a, u in zip(x, self.unit)]


@dataclass(frozen=True)
class ProductTable:
    """c[i][j] is the coordinate vector of e_i * e_j."""

    c: tuple
    space: QuadraticSpace
    labels: tuple

    def multiply(self, a: Sequence, b: Sequence) -> list:
        out = [Fraction(0)] * 8
        for i, ai in enumerate(a):
            if not ai:
                continue
            row = self.c[i]
            for j, bj in enumerate(b):
                if not bj:
                    continue
                s = ai * bj
                for k, v in enumerate(row[j]):
                    if v:
                        out[k] += s * v
        return out

    def norm(self, a):
        return self.space.norm(a)

    def with_entry(self, i: int, j: int, k: int, value) -> ProductTable:
        c = [[list(v) for v in row] for row in self.c]
        c[i][j][k] = Fraction(value)
        return ProductTable(tuple(tuple(tuple(v) for v in row) for row in c), self.space, self.labels)

    def format_vector(self, v) -> str:
        parts = []
        for coeff, lbl in zip(v, self.labels):
            if not coeff:
                continue
            mag = abs(coeff)
            body = lbl if mag == 1 else f"{mag}*{lbl}"
            parts.append(("-" if coeff < 0 else "+") + body)
        if not parts:
            return "0"
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s

    def text(self) -> str:
        lines = []
        for i in range(8):
            lines.append(" ".join(self.format_vector(self.c[i][j]) for j in range(8)))
        return "\n".join(lines)


def build_product(form: TrilinearForm, space: QuadraticSpace, labels: Sequence[str] | None = None) -> ProductTable:
    comp = [list(v) for v in space.complement]
    g = [[space.polar(u, v) for v in comp] for u in comp]
    if linalg.det(g) == 0:
        raise DegenerateRestriction("polar form is singular on the complement")
    n_unit = space.norm(space.unit)

    def imag_product(a, b):
        # coordinates y of Im(ab) in the complement basis: G y = (omega(c_l, a, b))_l
        rhs = [form(cl, a, b) for cl in comp]
        y = linalg.solve(g, rhs)
        im = [Fraction(0)] * 8
        for yk, ck in zip(y, comp):
            if yk:
                for t in range(8):
                    im[t] += yk * ck[t]
        real = -space.polar(a, b) / n_unit
        return [x + real * u for x, u in zip(im, space.unit)]

    def full_product(x, z):
        rx, rz = space.real_part(x), space.real_part(z)
        ix, iz = space.imaginary_part(x), space.imaginary_part(z)
        out = imag_product(ix, iz)
        for t in range(8):
            out[t] += rx * rz * space.unit[t] + rx * iz[t] + rz * ix[t]
        return out

    basis = [unit_vector(k) for k in range(8)]
    c = tuple(tuple(tuple(full_product(basis[i], basis[j])) for j in range(8)) for i in range(8))
    if labels is None:
        labels = tuple(f"e{k}" for k in range(8)) if space.kind == EUCLID else tuple(f"e{k}" for k in range(1, 9))
    return ProductTable(c, space, tuple(labels))


# -- the two concrete models ---------------------------------------------------

OMEGA_TRIPLES = ((1, 2, 6), (1, 3, 4), (1, 5, 7), (2, 3, 7), (2, 4, 5), (3, 5, 6), (4, 6, 7))

SPLIT_OMEGA_TRIPLES = (
    (1, 6, 7, 2),
    (2, 3, 8, 2),
    (2, (4, 5), 7, 1),
    (1, (4, 5), 8, -1),
    (3, (4, 5), 6, 1),
)


def omega(flip_e4: bool = False) -> TrilinearForm:
    triples = [(i, j, k, -1 if flip_e4 and 4 in (i, j, k) else 1) for i, j, k in OMEGA_TRIPLES]
    return TrilinearForm.from_triples(triples, offset=0, name="omega-flipped" if flip_e4 else "omega")


def split_omega() -> TrilinearForm:
    return TrilinearForm.from_triples(SPLIT_OMEGA_TRIPLES, offset=1, name="split-omega")


def euclidean_space() -> QuadraticSpace:
    gram = tuple(tuple(Fraction(int(i == j)) for j in range(8)) for i in range(8))
    return QuadraticSpace(gram, _vec(unit_vector(0)), tuple(_vec(unit_vector(k)) for k in range(1, 8)), EUCLID)


def split_space() -> QuadraticSpace:
    """N = -(x1x8 + x2x7 + x3x6 + x4x5), so that N(e4 - e5) = 1."""
    gram = tuple(tuple(Fraction(-1, 2) if i + j == 7 else Fraction(0) for j in range(8)) for i in range(8))
    unit = _vec([0, 0, 0, 1, -1, 0, 0, 0])
    e = [unit_vector(k) for k in range(8)]
    comp = [e[0], e[1], e[2], [a + b for a, b in zip(e[3], e[4])], e[5], e[6], e[7]]
    return QuadraticSpace(gram, unit, tuple(_vec(v) for v in comp), SPLIT)


def euclidean_table(flip_e4: bool = False) -> ProductTable:
    return build_product(omega(flip_e4), euclidean_space())


# the split form is fixed only up to scale; with N(v0) = 1 this is
# the unique positive factor that makes N multiplicative
SPLIT_NORMALIZATION = Fraction(1, 4)


def split_table(scale=SPLIT_NORMALIZATION) -> ProductTable:
    return build_product(split_omega().scaled(scale), split_space())


def table_for(form: str, flip_e4: bool = False) -> ProductTable:
    if form == EUCLID:
        return euclidean_table(flip_e4)
    if form == SPLIT:
        return split_table()
    raise ValueError(f"unknown octonion form {form!r}")


# -- checks ----------------------------------------------------------------------


def composition_polynomial(t: ProductTable) -> MultiPoly:
    """N(ab) - N(a)N(b) in the 16 coordinates of a and b."""
    names = [f"a{k}" for k in range(8)] + [f"b{k}" for k in range(8)]
    av = [MultiPoly.var(n, names) for n in names[:8]]
    bv = [MultiPoly.var(n, names) for n in names[8:]]
    zero = MultiPoly(names, {})
    prod_vec = [zero] * 8
    for i, j in product(range(8), repeat=2):
        cij = t.c[i][j]
        if any(cij):
            ab = av[i] * bv[j]
            for k, v in enumerate(cij):
                if v:
                    prod_vec[k] = prod_vec[k] + ab * v
    g = t.space.gram

    def quad(vec):
        acc = zero
        for k, l in product(range(8), repeat=2):
            if g[k][l]:
                acc = acc + vec[k] * vec[l] * g[k][l]
        return acc

    return quad(prod_vec) - quad(av) * quad(bv)


def composition_check(t: ProductTable) -> bool:
    return composition_polynomial(t).is_zero()


def alternativity_failures(t: ProductTable, samples: int = 100, seed: int = 0, bound: int = 5) -> list:
    rng = random.Random(seed)

    def rand_vec():
        return [Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(8)]

    bad = []
    for _ in range(samples):
        a, b = rand_vec(), rand_vec()
        aa = t.multiply(a, a)
        left = t.multiply(a, t.multiply(a, b)) == t.multiply(aa, b)
        right = t.multiply(t.multiply(b, a), a) == t.multiply(b, aa)
        if not (left and right):
            bad.append((a, b))
    return bad


def fano_triples(t: ProductTable) -> list:
    """Triples (i, j, k) with e_i e_j = +e_k among imaginary units, or raise."""
    unit = list(t.space.unit)
    if unit != unit_vector(0):
        raise ValueError("Fano structure is read off the Euclidean table only")
    out = []
    for i, j in combinations(range(1, 8), 2):
        v = t.c[i][j]
        nz = [k for k in range(8) if v[k]]
        if len(nz) != 1 or nz[0] == 0 or abs(v[nz[0]]) != 1:
            raise ValueError(f"e{i}e{j} is not a signed imaginary unit")
        k = nz[0]
        if v[k] > 0:
            out.append((i, j, k))
        else:
            out.append((j, i, k))
    return out


def derivation_check(x: AlgebraElement, form: TrilinearForm, space: QuadraticSpace) -> bool:
    if any(x.act(list(space.unit))):
        return False
    comp = [list(v) for v in space.complement]
    images = [x.act(v) for v in comp]
    for p, q, r in combinations(range(7), 3):
        a, b, c = comp[p], comp[q], comp[r]
        xa, xb, xc = images[p], images[q], images[r]
        if form(xa, b, c) + form(a, xb, c) + form(a, b, xc) != 0:
            return False
    return True


def zero_divisor_witness(t: ProductTable) -> tuple:
    """Nonzero a, b with ab = 0, searched among sums and differences of basis vectors."""
    cands = [unit_vector(k) for k in range(8)]
    for i, j in combinations(range(8), 2):
        for s in (1, -1):
            cands.append([a + s * b for a, b in zip(unit_vector(i), unit_vector(j))])
    for a in cands:
        if t.norm(a) != 0:
            continue
        for b in cands:
            if not any(t.multiply(a, b)):
                return a, b
    raise NotFound("no zero divisor among the candidates")
