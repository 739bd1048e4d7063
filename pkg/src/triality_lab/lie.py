"""so(8), so(4,4) and their order-three triality automorphisms.

Compact elements are antisymmetric 8x8 matrices indexed 0..7.  Split
elements are 8x8 matrices indexed 1..8 in the display convention,
antisymmetric with respect to the antidiagonal:
``m[i][j] == -m[9-j][9-i]`` (stored 0-based as ``m[i][j] == -m[7-j][7-i]``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Sequence

from . import linalg
from .errors import DimensionMismatch, FormMismatch, NotAnAutomorphism, NotClosed

COMPACT = "compact"
SPLIT = "split"
FORMS = (COMPACT, SPLIT)

HALF = Fraction(1, 2)

# acts on column quadruples
CARTAN_BLOCK = (
    (-HALF, -HALF, -HALF, -HALF),
    (HALF, HALF, -HALF, -HALF),
    (HALF, -HALF, HALF, -HALF),
    (HALF, -HALF, -HALF, HALF),
)

# same matrix acts on the upper half of the split torus (t1..t4)
TORUS_MAP = (
    (HALF, HALF, HALF, -HALF),
    (HALF, HALF, -HALF, HALF),
    (HALF, -HALF, HALF, HALF),
    (HALF, -HALF, -HALF, -HALF),
)


def _compact_positions():
    return [(i, j) for i in range(8) for j in range(i + 1, 8)]


def _split_positions():
    return [(i, j) for i in range(8) for j in range(8) if i + j <= 6]


POSITIONS = {COMPACT: _compact_positions(), SPLIT: _split_positions()}
POSITION_INDEX = {form: {p: k for k, p in enumerate(ps)} for form, ps in POSITIONS.items()}


def _partner(form: str, i: int, j: int):
    """Matrix slot tied to (i, j) by the skew condition, with the sign -1."""
    if form == COMPACT:
        return j, i
    return 7 - j, 7 - i


@dataclass(frozen=True)
class AlgebraElement:
    form: str
    matrix: tuple

    def __post_init__(self):
        if self.form not in FORMS:
            raise FormMismatch(f"unknown form {self.form!r}")
        m = self.matrix
        if len(m) != 8 or any(len(r) != 8 for r in m):
            raise DimensionMismatch("algebra elements are 8x8")
        for i in range(8):
            for j in range(8):
                pi, pj = _partner(self.form, i, j)
                if m[i][j] != -m[pi][pj]:
                    raise ValueError(f"not in the {self.form} orthogonal algebra at ({i},{j})")

    @classmethod
    def from_rows(cls, form: str, rows) -> AlgebraElement:
        return cls(form, tuple(tuple(Fraction(x) for x in r) for r in rows))

    @classmethod
    def from_coords(cls, form: str, coords: Sequence) -> AlgebraElement:
        if len(coords) != 28:
            raise DimensionMismatch("expected 28 coordinates")
        m = [[Fraction(0)] * 8 for _ in range(8)]
        for (i, j), v in zip(POSITIONS[form], coords):
            v = Fraction(v)
            m[i][j] = v
            pi, pj = _partner(form, i, j)
            m[pi][pj] = -v
        return cls(form, tuple(tuple(r) for r in m))

    @classmethod
    def zero(cls, form: str) -> AlgebraElement:
        return cls.from_coords(form, [0] * 28)

    def coords(self) -> list:
        return [self.matrix[i][j] for i, j in POSITIONS[self.form]]

    def entry(self, i: int, j: int):
        return self.matrix[i][j]

    def bracket(self, other: AlgebraElement) -> AlgebraElement:
        if other.form != self.form:
            raise FormMismatch("bracket of elements from different algebras")
        xy = linalg.matmul(self.matrix, other.matrix)
        yx = linalg.matmul(other.matrix, self.matrix)
        return AlgebraElement(self.form, tuple(tuple(Fraction(a - b) for a, b in zip(r, s)) for r, s in zip(xy, yx)))

    def __add__(self, other):
        return AlgebraElement.from_coords(self.form, [a + b for a, b in zip(self.coords(), other.coords())])

    def __sub__(self, other):
        return AlgebraElement.from_coords(self.form, [a - b for a, b in zip(self.coords(), other.coords())])

    def scale(self, s) -> AlgebraElement:
        return AlgebraElement.from_coords(self.form, [a * s for a in self.coords()])

    def is_zero(self) -> bool:
        return not any(self.coords())

    def act(self, v: Sequence) -> list:
        return linalg.matvec(self.matrix, v)


def basis(form: str) -> list:
    out = []
    for k in range(28):
        c = [0] * 28
        c[k] = 1
        out.append(AlgebraElement.from_coords(form, c))
    return out


# -- compact triality -------------------------------------------------------


def _mod7(k: int) -> int:
    return (k - 1) % 7 + 1


def cartan_quadruples() -> list:
    """The seven quadruples of matrix slots, one per i in 1..7."""
    quads = []
    for i in range(1, 8):
        quads.append(
            (
                (0, i),
                (_mod7(i + 1), _mod7(i + 5)),
                (_mod7(i + 4), _mod7(i + 6)),
                (_mod7(i + 2), _mod7(i + 3)),
            )
        )
    return quads


def cartan_triality(x: AlgebraElement) -> AlgebraElement:
    if x.form != COMPACT:
        raise FormMismatch("cartan_triality acts on the compact form")
    m = [[Fraction(0)] * 8 for _ in range(8)]
    for quad in cartan_quadruples():
        q = [x.matrix[i][j] for i, j in quad]
        for row, (i, j) in zip(CARTAN_BLOCK, quad):
            v = sum((c * a for c, a in zip(row, q)), Fraction(0))
            m[i][j] = v
            m[j][i] = -v
    return AlgebraElement(COMPACT, tuple(tuple(r) for r in m))


# -- split triality ---------------------------------------------------------

# output slot -> (sign, input slot), 1-based, strictly above the antidiagonal
SPLIT_UPPER = {
    (1, 2): (1, (3, 4)),
    (1, 3): (-1, (2, 4)),
    (1, 4): (1, (2, 6)),
    (1, 5): (1, (1, 4)),
    (1, 6): (1, (1, 6)),
    (1, 7): (1, (1, 7)),
    (2, 1): (1, (4, 3)),
    (2, 3): (1, (2, 3)),
    (2, 4): (1, (2, 5)),
    (2, 5): (-1, (1, 3)),
    (2, 6): (1, (1, 5)),
    (3, 1): (-1, (4, 2)),
    (3, 2): (1, (3, 2)),
    (3, 4): (1, (3, 5)),
    (3, 5): (1, (1, 2)),
    (4, 1): (1, (6, 2)),
    (4, 2): (1, (5, 2)),
    (4, 3): (1, (5, 3)),
    (5, 1): (1, (4, 1)),
    (5, 2): (-1, (3, 1)),
    (5, 3): (1, (2, 1)),
    (6, 1): (1, (6, 1)),
    (6, 2): (1, (5, 1)),
    (7, 1): (1, (7, 1)),
}

# lower half as a lookup table; redundant given the skew condition, kept to cross-check
SPLIT_LOWER_DISPLAY = {
    (2, 8): (-1, (1, 7)),
    (3, 7): (-1, (1, 5)),
    (3, 8): (-1, (1, 6)),
    (4, 6): (-1, (1, 2)),
    (4, 7): (1, (1, 3)),
    (4, 8): (-1, (1, 4)),
    (5, 6): (-1, (3, 5)),
    (5, 7): (-1, (2, 5)),
    (5, 8): (-1, (2, 6)),
    (6, 4): (-1, (2, 1)),
    (6, 5): (-1, (5, 3)),
    (6, 7): (-1, (2, 3)),
    (6, 8): (1, (2, 4)),
    (7, 3): (-1, (5, 1)),
    (7, 4): (1, (3, 1)),
    (7, 5): (-1, (5, 2)),
    (7, 6): (-1, (3, 2)),
    (7, 8): (-1, (3, 4)),
    (8, 2): (-1, (7, 1)),
    (8, 3): (-1, (6, 1)),
    (8, 4): (-1, (4, 1)),
    (8, 5): (-1, (6, 2)),
    (8, 6): (1, (4, 2)),
    (8, 7): (-1, (4, 3)),
}


def split_triality(x: AlgebraElement) -> AlgebraElement:
    if x.form != SPLIT:
        raise FormMismatch("split_triality acts on so(4,4)")
    src = x.matrix
    m = [[Fraction(0)] * 8 for _ in range(8)]
    for (i, j), (sgn, (p, q)) in SPLIT_UPPER.items():
        v = sgn * src[p - 1][q - 1]
        m[i - 1][j - 1] = v
        m[8 - j][8 - i] = -v
    t = [src[k][k] for k in range(4)]
    for k, row in enumerate(TORUS_MAP):
        v = sum((c * a for c, a in zip(row, t)), Fraction(0))
        m[k][k] = v
        m[7 - k][7 - k] = -v
    return AlgebraElement(SPLIT, tuple(tuple(r) for r in m))


# -- linear maps on the 28-dimensional algebra -------------------------------


@dataclass(frozen=True)
class LinearEndo28:
    """Columns are images of the coordinate basis vectors."""

    form: str
    matrix: tuple = field(repr=False)

    @classmethod
    def from_map(cls, form: str, fn: Callable[[AlgebraElement], AlgebraElement]) -> LinearEndo28:
        cols = [fn(b).coords() for b in basis(form)]
        return cls(form, tuple(tuple(r) for r in linalg.transpose(cols)))

    @classmethod
    def identity(cls, form: str) -> LinearEndo28:
        return cls(form, tuple(tuple(Fraction(x) for x in r) for r in linalg.identity(28)))

    def apply(self, x: AlgebraElement) -> AlgebraElement:
        if x.form != self.form:
            raise FormMismatch("map and element live in different algebras")
        return AlgebraElement.from_coords(self.form, linalg.matvec(self.matrix, x.coords()))

    def trace(self):
        return linalg.trace(self.matrix)


def cartan_endo() -> LinearEndo28:
    return LinearEndo28.from_map(COMPACT, cartan_triality)


def split_endo() -> LinearEndo28:
    return LinearEndo28.from_map(SPLIT, split_triality)


@dataclass(frozen=True)
class AutomorphismReport:
    form: str
    order: int | None
    order_three: bool
    preserves_bracket: bool
    pairs_checked: int
    failures: tuple = ()

    @property
    def ok(self) -> bool:
        return self.order_three and self.preserves_bracket


def _map_order(m, limit: int = 12):
    ident = linalg.identity(len(m))
    power = [list(r) for r in m]
    for k in range(1, limit + 1):
        if power == ident:
            return k
        power = linalg.matmul(power, m)
    return None


def check_automorphism(endo: LinearEndo28, form: str | None = None) -> AutomorphismReport:
    form = form or endo.form
    if form != endo.form:
        raise FormMismatch(f"map is defined on {endo.form}, not {form}")
    if len(endo.matrix) != 28 or any(len(r) != 28 for r in endo.matrix):
        raise DimensionMismatch("expected a 28x28 map")
    order = _map_order(endo.matrix)
    els = basis(form)
    images = [endo.apply(b) for b in els]
    failures = []
    pairs = 0
    for i, j in combinations(range(28), 2):
        pairs += 1
        lhs = endo.apply(els[i].bracket(els[j]))
        rhs = images[i].bracket(images[j])
        if lhs != rhs:
            failures.append((i, j))
    return AutomorphismReport(form, order, order == 3, not failures, pairs, tuple(failures[:5]))


# -- fixed subalgebra -------------------------------------------------------


@dataclass(frozen=True)
class Subalgebra:
    form: str
    basis: tuple

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def coords(self) -> list:
        return [b.coords() for b in self.basis]

    def contains(self, x: AlgebraElement) -> bool:
        return linalg.in_span(self.coords(), x.coords())

    def express(self, x: AlgebraElement):
        """Coordinates of ``x`` in this basis, or None if outside the span."""
        cols = linalg.transpose(self.coords())
        return linalg.solve(cols, x.coords())

    def is_closed(self) -> bool:
        rows = self.coords()
        rows += [a.bracket(b).coords() for a, b in combinations(self.basis, 2)]
        return linalg.rank(rows) == linalg.rank(self.coords())


def fixed_subalgebra(endo: LinearEndo28, verify: bool = True) -> Subalgebra:
    if verify and not check_automorphism(endo).preserves_bracket:
        raise NotAnAutomorphism("map does not preserve the bracket")
    diff = linalg.mat_sub(endo.matrix, linalg.identity(28))
    kernel = linalg.kernel_basis(diff, 28, one=Fraction(1))
    sub = Subalgebra(endo.form, tuple(AlgebraElement.from_coords(endo.form, v) for v in kernel))
    if not sub.is_closed():
        raise NotClosed("fixed points are not bracket-closed")
    return sub


# -- the noncompact G2 schema -----------------------------------------------

G2_PARAMS = ("t2", "t3") + tuple(f"a{k}" for k in range(1, 13))

# rows of the fixed-point schema; each entry is a list of (sign, parameter)
_G2_ROWS = [
    ["t2+t3", "a1", "-a2", "a3", "a3", "a4", "a5", "0"],
    ["a6", "t2", "a7", "a2", "a2", "a3", "0", "-a5"],
    ["-a8", "a9", "t3", "a1", "a1", "0", "-a3", "-a4"],
    ["a10", "a8", "a6", "0", "0", "-a1", "-a2", "-a3"],
    ["a10", "a8", "a6", "0", "0", "-a1", "-a2", "-a3"],
    ["a11", "a10", "0", "-a6", "-a6", "-t3", "-a7", "a2"],
    ["a12", "0", "-a10", "-a8", "-a8", "-a9", "-t2", "-a1"],
    ["0", "-a12", "-a11", "-a10", "-a10", "a8", "-a6", "-t2-t3"],
]


def _parse_entry(text: str) -> dict:
    out: dict = {}
    if text == "0":
        return out
    t = text if text[0] in "+-" else "+" + text
    k = 0
    while k < len(t):
        sgn = 1 if t[k] == "+" else -1
        k += 1
        start = k
        while k < len(t) and t[k] not in "+-":
            k += 1
        out[t[start:k]] = out.get(t[start:k], 0) + sgn
    return out


def g2_schema_matrix(values: dict) -> list:
    """Evaluate the fixed-point schema at parameter values."""
    m = []
    for row in _G2_ROWS:
        m.append([sum((Fraction(s) * Fraction(values.get(p, 0)) for p, s in _parse_entry(e).items()), Fraction(0)) for e in row])
    return m


def g2_schema_basis() -> list:
    """One matrix per schema parameter (that parameter 1, the rest 0)."""
    return [g2_schema_matrix({p: 1}) for p in G2_PARAMS]


def g2_pattern_match(s: Subalgebra) -> bool:
    if s.form != SPLIT or s.dimension != 14:
        return False
    schema = []
    for rows in g2_schema_basis():
        try:
            schema.append(AlgebraElement.from_rows(SPLIT, rows).coords())
        except ValueError:
            return False
    if linalg.rank(schema) != 14:
        return False
    return linalg.same_span(schema, s.coords())


# -- root decomposition -----------------------------------------------------


@dataclass(frozen=True)
class RootSpace:
    root: tuple  # integer functional (coefficient of t2, coefficient of t3)
    dimension: int

    def label(self) -> str:
        p, q = self.root
        return format_functional(p, q)


def format_functional(p: int, q: int) -> str:
    parts = []
    for c, name in ((p, "t2"), (q, "t3")):
        if c == 0:
            continue
        mag = "" if abs(c) == 1 else str(abs(c))
        sgn = "-" if c < 0 else "+"
        parts.append((sgn, mag + name))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sgn, body in parts[1:]:
        out += sgn + body
    return out


def cartan_elements() -> tuple:
    h2 = AlgebraElement.from_rows(SPLIT, g2_schema_matrix({"t2": 1}))
    h3 = AlgebraElement.from_rows(SPLIT, g2_schema_matrix({"t3": 1}))
    return h2, h3


def _ad_matrix(s: Subalgebra, h: AlgebraElement) -> list:
    cols = []
    for b in s.basis:
        c = s.express(h.bracket(b))
        if c is None:
            raise NotClosed("ad(h) leaves the subalgebra")
        cols.append(c)
    return linalg.transpose(cols)


def root_decomposition(s: Subalgebra, bound: int = 3) -> list:
    """Joint eigenspaces of ad(t2), ad(t3) on ``s``; roots as (c2, c3)."""
    if not s.is_closed():
        raise NotClosed("root decomposition of a non-subalgebra")
    h2, h3 = cartan_elements()
    if not (s.contains(h2) and s.contains(h3)):
        raise NotClosed("the diagonal torus is not inside the subalgebra")
    ad2, ad3 = _ad_matrix(s, h2), _ad_matrix(s, h3)
    n = s.dimension
    ident = linalg.identity(n)
    spaces = []
    for p, q in product(range(-bound, bound + 1), repeat=2):
        stacked = linalg.mat_sub(ad2, linalg.mat_scale(ident, p)) + linalg.mat_sub(ad3, linalg.mat_scale(ident, q))
        k = n - linalg.rank(stacked)
        if k:
            spaces.append(RootSpace((p, q), k))
    return spaces


def trace_form_on_cartan() -> list:
    h = cartan_elements()
    return [[linalg.trace(linalg.matmul(a.matrix, b.matrix)) for b in h] for a in h]


def root_length_squared(root: tuple) -> Fraction:
    """Dual squared length of a functional on the torus under tr(XY)."""
    g = trace_form_on_cartan()
    det = g[0][0] * g[1][1] - g[0][1] * g[1][0]
    inv = [[g[1][1] / det, -g[0][1] / det], [-g[1][0] / det, g[0][0] / det]]
    p, q = root
    return Fraction(p * p * inv[0][0] + p * q * (inv[0][1] + inv[1][0]) + q * q * inv[1][1])


def endo_for(form: str) -> LinearEndo28:
    if form == COMPACT:
        return cartan_endo()
    if form == SPLIT:
        return split_endo()
    raise FormMismatch(f"unknown form {form!r}")
