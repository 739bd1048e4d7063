"""The D4- germ x^3 - 3xy^2: deformation, morsification, Milnor data,
the Z3 quotient and the bifurcation set."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import linalg
from .charclasses import generator_monomials, isotypic_decomposition
from .charclasses import action_matrix as cohomology_action
from .elimination import poly_gcd, resultant, roots_in_qsqrt3, same_up_to_constant, squarefree_part
from .errors import ActionNotPreserving, EliminationCollapse, NotIsolated, SingularFiber, ZeroParameter
from .poly import MultiPoly, gens
from .scalars import QSqrt3, SQRT3, as_rational, sign

HALF = Fraction(1, 2)

DEFORM_VARS = ("x", "y", "a", "b", "c", "d")
DEFORM_WEIGHTS = (1, 1, 1, 2, 2, 3)


def germ() -> MultiPoly:
    x, y = gens("x y")
    return x**3 - 3 * x * y**2


def deformation() -> MultiPoly:
    x, y, a, b, c, d = gens(DEFORM_VARS, DEFORM_WEIGHTS)
    return x**3 - 3 * x * y**2 + a * (x**2 + y**2) + b * x + c * y + d


def rotation_matrix() -> tuple:
    """Rotation by 120 degrees over Q(sqrt3)."""
    h = SQRT3 * HALF
    return ((QSqrt3(-HALF), -h), (h, QSqrt3(-HALF)))


def rotate_point(p, k: int = 1) -> tuple:
    r = rotation_matrix()
    x, y = p
    for _ in range(k):
        x, y = r[0][0] * x + r[0][1] * y, r[1][0] * x + r[1][1] * y
    return (x, y)


def rotation_bindings(pairs, vars) -> dict:
    """Bindings rotating each (u, v) pair of variables by 120 degrees."""
    r = rotation_matrix()
    out = {}
    for u, v in pairs:
        pu, pv = MultiPoly.var(u, vars), MultiPoly.var(v, vars)
        out[u] = pu * r[0][0] + pv * r[0][1]
        out[v] = pu * r[1][0] + pv * r[1][1]
    return out


def rotate_poly(p: MultiPoly, pairs=(("x", "y"),)) -> MultiPoly:
    pairs = [pr for pr in pairs if pr[0] in p.vars or pr[1] in p.vars]
    if not pairs:
        return p
    return p.subs(rotation_bindings(pairs, p.vars)).with_vars(p.vars, p.weights)


def symmetry_check(f: MultiPoly, pairs=(("x", "y"), ("b", "c"))) -> bool:
    return rotate_poly(f, pairs) == f


# -- local algebra ------------------------------------------------------------------


def _monomials_of_weight(k: int, weights) -> list:
    n = len(weights)
    out = []

    def rec(i, rest, acc):
        if i == n:
            if rest == 0:
                out.append(tuple(acc))
            return
        w = weights[i]
        for e in range(rest // w + 1):
            rec(i + 1, rest - e * w, acc + [e])

    rec(0, k, [])
    return sorted(out, key=lambda e: (sum(e), e), reverse=True)


@dataclass(frozen=True)
class LocalAlgebra:
    dimension: int
    basis: tuple  # monomials (exponent tuples), one per quotient dimension
    vars: tuple
    dims_by_degree: tuple

    def basis_polys(self) -> list:
        return [MultiPoly(self.vars, {m: 1}) for m in self.basis]


def _jacobian_span(partials, weights, k):
    rows = []
    for g in partials:
        if g.is_zero():
            continue
        dg = g.weighted_degree()
        if dg > k:
            continue
        for m in _monomials_of_weight(k - dg, weights):
            prod = g * MultiPoly(g.vars, {m: 1}, g.weights)
            rows.append(prod)
    return rows


def local_algebra(f: MultiPoly, weights=None) -> LocalAlgebra:
    """Jacobian quotient of a quasi-homogeneous germ, degree by degree."""
    vars = f.used_vars() or f.vars
    weights = tuple(weights) if weights is not None else tuple(1 for _ in vars)
    f = f.with_vars(vars, weights)
    if not f.is_weighted_homogeneous():
        raise NotIsolated("germ is not quasi-homogeneous for the given weights")
    big_d = f.weighted_degree()
    partials = [f.diff(v) for v in vars]
    socle = sum(big_d - 2 * w for w in weights)
    window = max(max(weights), 2)
    bound = max(socle, 0) + window
    basis, dims = [], []
    zero_run = 0
    k = 0
    while True:
        monos = _monomials_of_weight(k, weights)
        span = _jacobian_span(partials, weights, k)
        rows = [[p.terms.get(m, 0) for m in monos] for p in span]
        r = linalg.rank(rows) if rows else 0
        dk = len(monos) - r
        dims.append(dk)
        chosen = []
        if dk:
            cur = list(rows)
            for m in reversed(monos):
                cand = cur + [[int(x == m) for x in monos]]
                if linalg.rank(cand) > r + len(chosen):
                    chosen.append(m)
                    cur = cand
                if len(chosen) == dk:
                    break
        basis.extend(sorted(chosen))
        zero_run = zero_run + 1 if dk == 0 else 0
        if k > socle and zero_run >= window:
            break
        if k > bound + window:
            raise NotIsolated("quotient does not vanish in high degree")
        k += 1
    return LocalAlgebra(len(basis), tuple(basis), tuple(vars), tuple(dims))


def spans_local_algebra(f: MultiPoly, elements, weights=None) -> bool:
    """Do ``elements`` span the Jacobian quotient (graded pieces checked separately)?"""
    la = local_algebra(f, weights)
    vars = la.vars
    weights = tuple(weights) if weights is not None else tuple(1 for _ in vars)
    f = f.with_vars(vars, weights)
    partials = [f.diff(v) for v in vars]
    by_degree: dict = {}
    for el in elements:
        el = el.with_vars(vars, weights)
        by_degree.setdefault(el.weighted_degree(), []).append(el)
    total = 0
    for k, dk in enumerate(la.dims_by_degree):
        if not dk:
            continue
        monos = _monomials_of_weight(k, weights)
        span = _jacobian_span(partials, weights, k)
        base = [[p.terms.get(m, 0) for m in monos] for p in span]
        extra = [[p.terms.get(m, 0) for m in monos] for p in by_degree.get(k, [])]
        gained = (linalg.rank(base + extra) if base + extra else 0) - (linalg.rank(base) if base else 0)
        if gained != dk:
            return False
        total += gained
    return total == la.dimension


def n_lines_germ(n: int) -> MultiPoly:
    """n distinct rational lines through the origin: prod_k (x - k y)."""
    x, y = gens("x y")
    out = MultiPoly.const(1, ("x", "y"))
    for k in range(n):
        out = out * (x - k * y)
    return out


# -- morsification ------------------------------------------------------------------


def morsification(a) -> MultiPoly:
    x, y = gens("x y")
    a = Fraction(a)
    return x**3 - 3 * x * y**2 + 3 * a * (x**2 + y**2) - 4 * a**3


def morsification_factored(a, repeated_factor: bool = False) -> MultiPoly:
    """(x - a)(x - r3 y + 2a)(x + r3 y + 2a); ``repeated_factor`` uses the middle factor twice."""
    x, y = gens("x y")
    a = Fraction(a)
    f1 = x - a
    f2 = x - y * SQRT3 + 2 * a
    f3 = f2 if repeated_factor else x + y * SQRT3 + 2 * a
    return f1 * f2 * f3


@dataclass(frozen=True)
class CriticalPoint:
    label: str
    x: QSqrt3
    y: QSqrt3
    value: QSqrt3
    hessian_det: QSqrt3
    hessian_trace: QSqrt3
    morse_type: str

    def point(self) -> tuple:
        return (self.x, self.y)


def _morse_type(det, tr) -> str:
    sd = sign(det)
    if sd == 0:
        return "degenerate"
    if sd < 0:
        return "saddle"
    return "min" if sign(tr) > 0 else "max"


def critical_points(f: MultiPoly) -> list:
    """Critical points of a plane polynomial with rational x-coordinates and y in Q(sqrt3)."""
    f = f.with_vars(("x", "y"))
    fx, fy = f.diff("x"), f.diff("y")
    res = resultant(fx, fy, "y")
    if res.is_zero():
        raise EliminationCollapse("gradient components share a factor")
    out = []
    for x0 in roots_in_qsqrt3(res, "x"):
        if not x0.is_rational():
            raise NotImplementedError("irrational x-coordinate")
        gx = fx.subs({"x": x0.r})
        gy = fy.subs({"x": x0.r})
        g = poly_gcd(gx, gy) if not gx.is_zero() and not gy.is_zero() else (gy if gx.is_zero() else gx)
        if g.is_zero() or g.is_constant():
            continue
        for y0 in roots_in_qsqrt3(g.with_vars(("y",)), "y"):
            out.append((x0, y0))
    return out


def _hessian(f: MultiPoly):
    fxx, fxy, fyy = f.diff("x").diff("x"), f.diff("x").diff("y"), f.diff("y").diff("y")
    return fxx, fxy, fyy


def morsification_data(a) -> list:
    a = Fraction(a)
    if a == 0:
        raise ZeroParameter("a = 0 collapses the critical points")
    f = morsification(a)
    fxx, fxy, fyy = _hessian(f)
    expected = {
        "Y": (QSqrt3(0), QSqrt3(0)),
        "A": (QSqrt3(-2 * a), QSqrt3(0)),
        "B": (QSqrt3(a), QSqrt3(0, -a)),
        "C": (QSqrt3(a), QSqrt3(0, a)),
    }
    names = {v: k for k, v in expected.items()}
    out = []
    for x0, y0 in critical_points(f):
        pt = {"x": x0, "y": y0}
        h11, h12, h22 = (QSqrt3(0) + h.evaluate(pt) for h in (fxx, fxy, fyy))
        det = h11 * h22 - h12 * h12
        tr = h11 + h22
        label = names.get((x0, y0), "?")
        out.append(CriticalPoint(label, x0, y0, QSqrt3(0) + f.evaluate(pt), det, tr, _morse_type(det, tr)))
    order = "YABC?"
    return sorted(out, key=lambda p: (order.index(p.label), p.x.r, p.y.s))


def rotation_permutation(points) -> dict:
    """label -> label of the rotated point."""
    by_pt = {p.point(): p.label for p in points}
    out = {}
    for p in points:
        q = rotate_point(p.point())
        out[p.label] = by_pt.get(q)
    return out


# -- intersection forms ---------------------------------------------------------------


@dataclass(frozen=True)
class IntersectionForm:
    labels: tuple
    matrix: tuple
    action: tuple | None = None  # action[i] = index of the image of basis vector i

    def __post_init__(self):
        m = self.matrix
        n = len(self.labels)
        if len(m) != n or any(len(r) != n for r in m):
            raise ValueError("form size does not match labels")
        if any(m[i][j] != m[j][i] for i in range(n) for j in range(n)):
            raise ValueError("intersection form must be symmetric")


def d4_form(edge_sign: int = 1) -> IntersectionForm:
    """Stabilized D4: self-intersections -2, Y meets A, B, C, which are mutually orthogonal."""
    labels = ("A", "B", "C", "Y")
    m = [[Fraction(0)] * 4 for _ in range(4)]
    for i in range(4):
        m[i][i] = Fraction(-2)
    for i in range(3):
        m[i][3] = m[3][i] = Fraction(edge_sign)
    return IntersectionForm(labels, tuple(tuple(r) for r in m), (1, 2, 0, 3))


def _cycles(perm) -> list:
    seen, out = set(), []
    for i in range(len(perm)):
        if i in seen:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = perm[j]
        out.append(cyc)
    return out


def quotient_intersection_form(form: IntersectionForm, action=None) -> IntersectionForm:
    perm = tuple(action if action is not None else (form.action or range(len(form.labels))))
    n = len(form.labels)
    if sorted(perm) != list(range(n)):
        raise ActionNotPreserving("action is not a permutation of the basis")
    m = form.matrix
    if any(m[perm[i]][perm[j]] != m[i][j] for i in range(n) for j in range(n)):
        raise ActionNotPreserving("action does not preserve the form")
    orbits = _cycles(perm)
    order = 1
    for cyc in orbits:
        order = order * len(cyc) // gcd(order, len(cyc))
    q = [[sum((m[i][j] for i in u for j in v), Fraction(0)) / order for v in orbits] for u in orbits]
    labels = tuple("+".join(form.labels[i] for i in cyc) for cyc in orbits)
    return IntersectionForm(labels, tuple(tuple(r) for r in q))


def cartan_matrix(form: IntersectionForm) -> list:
    """A_ij = 2<a_i, a_j>/<a_j, a_j> for the negated form, with basis signs chosen
    so that off-diagonal entries are non-positive (tree-shaped diagrams)."""
    g = [[-x for x in r] for r in form.matrix]
    n = len(g)
    signs = [0] * n
    for start in range(n):
        if signs[start]:
            continue
        signs[start] = 1
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and g[i][j] and not signs[j]:
                    signs[j] = -signs[i] if signs[i] * g[i][j] > 0 else signs[i]
                    stack.append(j)
    g = [[signs[i] * signs[j] * g[i][j] for j in range(n)] for i in range(n)]
    return [[Fraction(2 * g[i][j]) / g[j][j] for j in range(n)] for i in range(n)]


def is_negative_definite(m) -> bool:
    n = len(m)
    for k in range(1, n + 1):
        minor = linalg.det([list(r[:k]) for r in m[:k]])
        if (minor > 0) != (k % 2 == 0) or minor == 0:
            return False
    return True


# -- invariant ring ----------------------------------------------------------------


@dataclass(frozen=True)
class InvariantRingReport:
    du_val: MultiPoly
    diagram: MultiPoly
    invariant: dict

    @property
    def ok(self) -> bool:
        return self.du_val.is_zero() and self.diagram.is_zero() and all(self.invariant.values())


def invariant_ring_checks() -> InvariantRingReport:
    x, y = gens("x y")
    f = x**3 - 3 * x * y**2
    u, v, w = f, y**3 - 3 * x**2 * y, x**2 + y**2
    du_val = u**2 + v**2 - w**3
    diagram = (w**3 - v**2) - f**2
    inv = {name: rotate_poly(p) == p for name, p in (("u", u), ("v", v), ("w", w))}
    return InvariantRingReport(du_val, diagram, inv)


# -- the quotient cubic family ------------------------------------------------------


@dataclass(frozen=True)
class CubicInvariants:
    a: Fraction
    d: Fraction
    A: Fraction
    B: Fraction
    c4: Fraction
    c6: Fraction
    discriminant: Fraction
    j: Fraction | None

    @property
    def singular(self) -> bool:
        return self.discriminant == 0


def quotient_cubic_invariants(a, d, strict: bool = True) -> CubicInvariants:
    """Invariants of v^2 = w^3 - (a w + d)^2 after the shift w -> w + a^2/3."""
    a, d = Fraction(a), Fraction(d)
    (w,) = gens("w")
    rhs = w**3 - (a * w + d) ** 2
    shifted = rhs.subs({"w": w + a * a / 3}).with_vars(("w",))
    coeffs = shifted.coeffs_in("w")
    if 2 in coeffs:
        raise ArithmeticError("shift failed to remove the quadratic term")
    big_a = Fraction(coeffs[1].constant_value()) if 1 in coeffs else Fraction(0)
    big_b = Fraction(coeffs[0].constant_value()) if 0 in coeffs else Fraction(0)
    c4 = -48 * big_a
    c6 = -864 * big_b
    disc = -16 * (4 * big_a**3 + 27 * big_b**2)
    j = c4**3 / disc if disc else None
    out = CubicInvariants(a, d, big_a, big_b, c4, c6, disc, j)
    if disc == 0 and strict:
        raise SingularFiber(f"singular fiber at a={a}, d={d}", discriminant=disc)
    return out


# -- bifurcation set ---------------------------------------------------------------


def _bif_system():
    x, y, a, b, c = gens("x y a b c")
    f = x**3 - 3 * x * y**2 + a * (x**2 + y**2) + b * x + c * y
    fx, fy = f.diff("x"), f.diff("y")
    hess = fx.diff("x") * fy.diff("y") - fx.diff("y") ** 2
    return fx, fy, hess


def _eliminate(fx, fy, hess, first: str, second: str) -> MultiPoly:
    r1 = resultant(fx, fy, first)
    r2 = resultant(fx, hess, first)
    if r1.is_zero() or r2.is_zero():
        raise EliminationCollapse(f"resultant in {first} vanished")
    out = resultant(r1, r2, second)
    if out.is_zero():
        raise EliminationCollapse(f"resultant in {second} vanished")
    return out


@dataclass(frozen=True)
class Bifurcation:
    raw: MultiPoly
    order: tuple
    squarefree: MultiPoly
    squarefree_invariant: bool
    core: MultiPoly
    core_invariant: bool
    extraneous: MultiPoly = field(repr=False, default=None)

    def evaluate(self, a, b, c):
        return self.raw.evaluate({"a": a, "b": b, "c": c})


def _rotate_bc(p: MultiPoly, k: int = 1) -> MultiPoly:
    for _ in range(k):
        p = rotate_poly(p, (("b", "c"),))
    return p


def _rationalize(p: MultiPoly) -> MultiPoly:
    return p.map_coeffs(lambda c: as_rational(c) if isinstance(c, QSqrt3) else c)


def bifurcation_polynomial() -> MultiPoly:
    return bifurcation().raw


def bifurcation() -> Bifurcation:
    fx, fy, hess = _bif_system()
    try:
        raw, order = _eliminate(fx, fy, hess, "x", "y"), ("x", "y")
    except EliminationCollapse:
        raw, order = _eliminate(fx, fy, hess, "y", "x"), ("y", "x")
    raw = raw.with_vars(("a", "b", "c"))
    sqf = squarefree_part(raw)
    sqf_inv = same_up_to_constant(_rotate_bc(sqf), sqf)
    # the largest factor shared with both rotated copies
    core = poly_gcd(poly_gcd(sqf, _rotate_bc(sqf)), _rotate_bc(sqf, 2))
    core = _rationalize(core.with_vars(("a", "b", "c")))
    core_inv = same_up_to_constant(_rotate_bc(core), core)
    extraneous = sqf.exact_div(core) if not core.is_constant() else sqf
    return Bifurcation(raw, order, sqf, sqf_inv, core, core_inv, extraneous)


def deltoid_points(a=1, circle_points=None) -> list:
    """Parameters (b, c) with a degenerate critical point, for fixed a.

    A critical point (x, y) of F is degenerate when 36(x^2 + y^2) = 4a^2;
    rational points on that circle give rational (b, c).
    """
    a = Fraction(a)
    rad = a / 3
    if circle_points is None:
        circle_points = [(1, 0), (-1, 0), (Fraction(3, 5), Fraction(4, 5))]
    out = []
    for ux, uy in circle_points:
        x, y = rad * Fraction(ux), rad * Fraction(uy)
        b = -(3 * x * x - 3 * y * y + 2 * a * x)
        c = 6 * x * y - 2 * a * y
        out.append((b, c, (x, y)))
    return out


def on_bifurcation_set(p: MultiPoly, a, b, c) -> bool:
    return p.evaluate({"a": Fraction(a), "b": Fraction(b), "c": Fraction(c)}) == 0


# -- n lines ---------------------------------------------------------------------


@dataclass(frozen=True)
class NLines:
    n: int
    milnor: int
    genus: int
    punctures: int
    euler_characteristic: int


def n_lines_quotient_genus(n: int, check_milnor: bool = True) -> NLines:
    if n < 3:
        raise ValueError("need n >= 3")
    mu = (n - 1) ** 2
    if check_milnor:
        mu_la = local_algebra(n_lines_germ(n)).dimension
        if mu_la != mu:
            raise ArithmeticError(f"local algebra gives {mu_la}, expected {mu}")
    if (1 - mu) % n:
        raise ArithmeticError("Euler characteristic of the quotient is not an integer")
    chi = (1 - mu) // n
    punctures = 1 if n % 2 else 2
    twice_g = 2 - punctures - chi
    if twice_g % 2:
        raise ArithmeticError("non-integral genus")
    return NLines(n, mu, twice_g // 2, punctures, chi)


# -- graded comparison with cohomology ------------------------------------------------


def _series(degrees, order: int) -> list:
    coeffs = [0] * (order + 1)
    coeffs[0] = 1
    for d in degrees:
        for k in range(d, order + 1):
            coeffs[k] += coeffs[k - d]
    return coeffs


def cohomology_series(order: int = 12) -> list:
    """Dimensions of H^{4k}(BSO(8); Q), counted from generator monomials."""
    return [len(generator_monomials(4 * k)) for k in range(order + 1)]


def _indecomposable_trace(degree: int):
    """Trace of the triality action on indecomposables in one degree."""
    monos = generator_monomials(degree)
    a = cohomology_action(degree)
    idx = [i for i, m in enumerate(monos) if sum(m) == 1]
    return sum((a[i][i] for i in idx), Fraction(0)), len(idx)


@dataclass(frozen=True)
class RepresentationComparison:
    parameter_degrees: tuple
    cohomology_degrees: tuple
    parameter_traces: dict
    cohomology_traces: dict
    series_match: bool

    @property
    def ok(self) -> bool:
        return (
            sorted(self.parameter_degrees) == sorted(self.cohomology_degrees)
            and self.parameter_traces == self.cohomology_traces
            and self.series_match
        )


def representation_comparison(degree_d: int = 3, order: int = 12) -> RepresentationComparison:
    param_degrees = (1, 2, 2, degree_d)
    r = rotation_matrix()
    rot_trace = r[0][0] + r[1][1]
    ptraces: dict = {}
    for deg, tr in ((1, 1), (2, rot_trace), (degree_d, 1)):
        ptraces[deg] = ptraces.get(deg, 0) + tr
    ptraces = {k: as_rational(v) if isinstance(v, QSqrt3) else Fraction(v) for k, v in ptraces.items()}
    cdegrees = []
    ctraces = {}
    for deg in (4, 8, 12):
        tr, dim = _indecomposable_trace(deg)
        cdegrees += [deg // 4] * dim
        ctraces[deg // 4] = tr
    series = _series(param_degrees, order) == cohomology_series(order)
    return RepresentationComparison(param_degrees, tuple(cdegrees), ptraces, ctraces, series)


def degree8_nontrivial_trace():
    """Trace of triality on span{e, phi e}, from the rational isotypic data."""
    iso = isotypic_decomposition(8)
    basis = [list(v) for v in iso.nontrivial]
    a = [list(r) for r in iso.action]
    images = [linalg.matvec(a, v) for v in basis]
    cols = linalg.transpose(basis)
    coords = [linalg.solve(cols, im) for im in images]
    return sum((coords[i][i] for i in range(len(basis))), Fraction(0))

