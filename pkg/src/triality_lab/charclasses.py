"""Characteristic classes of BSO(8) and the triality action on them.

Classes are polynomials in p1, p2, p3, e (cohomological degrees 4, 8, 12, 8).
They are expanded into weight polynomials in L1..L4 and rewritten back by
solving a small exact linear system in each degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

from . import linalg
from .errors import BadReduction, NoSolution, NotInvariant
from .poly import MultiPoly, parse_poly
from .roots import WeightMap, triality_weight_map
from .scalars import GF, reduce_mod

GEN_VARS = ("p1", "p2", "p3", "e")
GEN_WEIGHTS = (4, 8, 12, 8)
L_VARS = ("L1", "L2", "L3", "L4")


def char_class(text: str) -> MultiPoly:
    return parse_poly(text, GEN_VARS, GEN_WEIGHTS)


def generator(name: str) -> MultiPoly:
    return MultiPoly.var(name, GEN_VARS, GEN_WEIGHTS)


def _lvars():
    return [MultiPoly.var(v, L_VARS) for v in L_VARS]


def _elementary(values, k):
    total = MultiPoly(L_VARS, {})
    for combo in combinations(values, k):
        term = MultiPoly.const(1, L_VARS)
        for x in combo:
            term = term * x
        total = total + term
    return total


@lru_cache(maxsize=1)
def _generator_images() -> dict:
    ls = _lvars()
    sq = [x * x for x in ls]
    return {
        "p1": _elementary(sq, 1),
        "p2": _elementary(sq, 2),
        "p3": _elementary(sq, 3),
        "e": ls[0] * ls[1] * ls[2] * ls[3],
    }


def to_weights(c: MultiPoly) -> MultiPoly:
    c = c.with_vars(GEN_VARS, GEN_WEIGHTS) if c.vars != GEN_VARS else c
    return c.subs(_generator_images()).with_vars(L_VARS)


# -- Weyl group of D4 ------------------------------------------------------------


def weyl_generators() -> list:
    """Bindings for adjacent transpositions and the double sign change on L3, L4."""
    ls = _lvars()
    gens = []
    for i in range(3):
        b = dict(zip(L_VARS, ls))
        b[L_VARS[i]], b[L_VARS[i + 1]] = ls[i + 1], ls[i]
        gens.append(b)
    b = dict(zip(L_VARS, ls))
    b["L3"], b["L4"] = -ls[2], -ls[3]
    gens.append(b)
    return gens


def is_weyl_invariant(w: MultiPoly) -> bool:
    w = w.with_vars(L_VARS)
    return all(w.subs(g).with_vars(L_VARS) == w for g in weyl_generators())


# -- rewriting ---------------------------------------------------------------------


def generator_monomials(degree: int) -> list:
    """Exponent vectors over (p1, p2, p3, e) of the given cohomological degree, lex descending."""
    out = []
    for a in range(degree // 4 + 1):
        for b in range(degree // 8 + 1):
            for c in range(degree // 12 + 1):
                for d in range(degree // 8 + 1):
                    if 4 * a + 8 * b + 12 * c + 8 * d == degree:
                        out.append((a, b, c, d))
    return sorted(out, reverse=True)


def _monomial(exps) -> MultiPoly:
    return MultiPoly(GEN_VARS, {tuple(exps): 1}, GEN_WEIGHTS)


@lru_cache(maxsize=None)
def _expanded_monomials(degree: int) -> tuple:
    return tuple(to_weights(_monomial(m)) for m in generator_monomials(degree))


def _solve_degree(w: MultiPoly, degree: int) -> MultiPoly:
    monos = generator_monomials(degree)
    images = _expanded_monomials(degree)
    keys = sorted({k for img in images for k in img.terms} | set(w.terms), reverse=True)
    a = [[img.terms.get(k, 0) for img in images] for k in keys]
    b = [w.terms.get(k, 0) for k in keys]
    x = linalg.solve(a, b) if monos else None
    if x is None:
        raise NoSolution(f"weight polynomial of degree {degree} is not in the span of generator monomials")
    return MultiPoly(GEN_VARS, {m: Fraction(c) for m, c in zip(monos, x)}, GEN_WEIGHTS)


def from_weights(w: MultiPoly) -> MultiPoly:
    w = w.with_vars(L_VARS)
    if not is_weyl_invariant(w):
        raise NotInvariant("weight polynomial is moved by the Weyl group")
    result = MultiPoly(GEN_VARS, {}, GEN_WEIGHTS)
    for d in sorted({sum(e) for e in w.terms}):
        part = w.homogeneous_part(d)
        if d == 0:
            result = result + MultiPoly.const(part.constant_value(), GEN_VARS, GEN_WEIGHTS)
            continue
        if d % 2:
            raise NoSolution("odd-degree weight polynomial")
        result = result + _solve_degree(part, 2 * d)
    return result


def weight_substitution(m: WeightMap | None = None) -> dict:
    """L_i -> sum_j M[j][i] L_j: the functional L_i composed with the torus map."""
    m = m or triality_weight_map()
    ls = _lvars()
    out = {}
    for i, v in enumerate(L_VARS):
        acc = MultiPoly(L_VARS, {})
        for j in range(4):
            if m.matrix[j][i]:
                acc = acc + ls[j] * m.matrix[j][i]
        out[v] = acc
    return out


def triality_pullback(c: MultiPoly, m: WeightMap | None = None) -> MultiPoly:
    w = to_weights(c)
    return from_weights(w.subs(weight_substitution(m)).with_vars(L_VARS))


def generator_images() -> dict:
    return {g: triality_pullback(generator(g)) for g in GEN_VARS}


# -- Euler classes of the spin representations -------------------------------------


def _half_weight_product(signs) -> MultiPoly:
    ls = _lvars()
    out = MultiPoly.const(1, L_VARS)
    for row in signs:
        f = MultiPoly(L_VARS, {})
        for s, x in zip(row, ls):
            f = f + x * s
        out = out * f * Fraction(1, 2)
    return out


EULER_PLUS_SIGNS = ((1, 1, 1, 1), (1, 1, -1, -1), (1, -1, 1, -1), (-1, 1, 1, -1))
EULER_MINUS_SIGNS = ((1, 1, 1, -1), (1, 1, -1, 1), (1, -1, 1, 1), (1, -1, -1, -1))


def euler_plus_weights() -> MultiPoly:
    return _half_weight_product(EULER_PLUS_SIGNS)


def euler_minus_weights() -> MultiPoly:
    return _half_weight_product(EULER_MINUS_SIGNS)


EULER_PLUS_CLASS = "-1/2*e-1/16*p1^2+1/4*p2"
EULER_MINUS_CLASS = "-1/2*e+1/16*p1^2-1/4*p2"


@dataclass(frozen=True)
class EulerSignVerdict:
    product: MultiPoly
    reference: MultiPoly
    sign: int  # +1 if the product equals the reference class, -1 if its negative, 0 otherwise

    @property
    def matches(self) -> bool:
        return self.sign == 1


def euler_minus_sign_verdict() -> EulerSignVerdict:
    product = from_weights(euler_minus_weights())
    reference = char_class(EULER_MINUS_CLASS)
    if product == reference:
        sign = 1
    elif product == -reference:
        sign = -1
    else:
        sign = 0
    return EulerSignVerdict(product, reference, sign)


def euler_orbit_sum() -> MultiPoly:
    """to_weights(e) + to_weights(phi e) + to_weights(phi^2 e)."""
    e = generator("e")
    pe = triality_pullback(e)
    ppe = triality_pullback(pe)
    return to_weights(e) + to_weights(pe) + to_weights(ppe)


# -- isotypic pieces --------------------------------------------------------------


def action_matrix(degree: int) -> list:
    """Columns are coordinates of phi(monomial) in the lex-descending monomial basis."""
    monos = generator_monomials(degree)
    cols = []
    for m in monos:
        img = triality_pullback(_monomial(m))
        cols.append([img.terms.get(k, Fraction(0)) for k in monos])
    return linalg.transpose(cols) if cols else []


def reduce_matrix(a, p: int) -> list:
    try:
        return [[reduce_mod(x, p) for x in row] for row in a]
    except ZeroDivisionError as exc:
        raise BadReduction(str(exc)) from None


def _column_space(a, one) -> list:
    if not a:
        return []
    red, _ = linalg.rref(linalg.transpose(a))
    return [list(r) for r in red]


@dataclass(frozen=True)
class Isotypic:
    degree: int
    field: str
    monomials: tuple
    action: tuple
    fixed: tuple
    nontrivial: tuple

    def as_classes(self, vectors) -> list:
        out = []
        for v in vectors:
            terms = {m: c for m, c in zip(self.monomials, v)}
            out.append(MultiPoly(GEN_VARS, terms, GEN_WEIGHTS))
        return out

    def fixed_classes(self) -> list:
        return self.as_classes(self.fixed)

    def nontrivial_classes(self) -> list:
        return self.as_classes(self.nontrivial)

    def trace(self):
        return linalg.trace(self.action)


def isotypic_decomposition(degree: int, field: str = "Q") -> Isotypic:
    monos = generator_monomials(degree)
    a = action_matrix(degree)
    if field == "Q":
        one = Fraction(1)
    elif field == "F3":
        a = reduce_matrix(a, 3)
        one = GF(1, 3)
    else:
        raise ValueError(f"unsupported field {field!r}")
    n = len(monos)
    diff = linalg.mat_sub(a, linalg.identity(n, one)) if n else []
    fixed = linalg.kernel_basis(diff, n, one=one) if n else []
    nontriv = _column_space(diff, one) if n else []
    return Isotypic(degree, field, tuple(monos), tuple(tuple(r) for r in a), tuple(map(tuple, fixed)), tuple(map(tuple, nontriv)))


# -- the F3 complement question ---------------------------------------------------


def _vectors(n: int, p: int):
    for coords in product(range(p), repeat=n):
        yield [GF(c, p) for c in coords]


def _subspaces(n: int, k: int, p: int) -> list:
    """All k-dimensional subspaces of F_p^n as reduced echelon bases."""
    seen = set()
    out = []
    nonzero = [v for v in _vectors(n, p) if any(v)]
    for combo in combinations(nonzero, k):
        if linalg.rank([list(v) for v in combo]) != k:
            continue
        red, _ = linalg.rref([list(v) for v in combo])
        key = tuple(tuple(x.value for x in r) for r in red)
        if key not in seen:
            seen.add(key)
            out.append(red)
    return out


def invariant_complement(a, w, p: int = 3):
    """An invariant complement of span(w) under the matrix a over F_p, or None.

    Candidates are enumerated exhaustively, so this is only for tiny spaces.
    """
    n = len(a)
    wrank = linalg.rank([list(v) for v in w])
    k = n - wrank
    if k == 0:
        return []
    for basis in _subspaces(n, k, p):
        if linalg.rank([list(v) for v in w] + basis) != n:
            continue
        if all(linalg.in_span(basis, linalg.matvec(a, v)) for v in basis):
            return basis
    return None


def euler_span(degree: int, field: str = "Q") -> list:
    """span{e, phi e} in degree 8, multiplied by powers of p1 in higher degrees."""
    if degree < 8 or degree % 4:
        raise ValueError("the Euler span lives in degrees 8, 12, 16, ...")
    monos = generator_monomials(degree)
    p1k = generator("p1") ** ((degree - 8) // 4)
    e = generator("e")
    vecs = []
    for c in (e, triality_pullback(e)):
        c = c * p1k
        vecs.append([c.terms.get(m, Fraction(0)) for m in monos])
    if field == "F3":
        vecs = reduce_matrix(vecs, 3)
    return vecs


def f3_complement_check(degree: int = 8, action=None) -> bool:
    """True iff span{e, phi e} (times a power of p1) has no invariant complement mod 3."""
    a = action if action is not None else reduce_matrix(action_matrix(degree), 3)
    w = euler_span(degree, "F3")
    return invariant_complement(a, w, 3) is None


def q_complement(degree: int = 8):
    """Over Q the complement exists: the fixed space of the action (averaging)."""
    iso = isotypic_decomposition(degree, "Q")
    w = euler_span(degree, "Q")
    basis = [list(v) for v in iso.fixed]
    if linalg.rank([list(v) for v in w] + basis) != len(iso.monomials):
        return None
    return basis


# -- F2 -------------------------------------------------------------------------

F2_BASIS = ("w4^2", "w8", "w8+")


def f2_triality_action() -> list:
    """Columns: images of w4^2, w8, w8+ in that basis."""
    one, zero = GF(1, 2), GF(0, 2)
    cols = [
        [one, zero, zero],
        [zero, zero, one],
        [zero, one, one],
    ]
    return linalg.transpose(cols)


def f2_checks() -> dict:
    m = f2_triality_action()
    ident = linalg.identity(3, GF(1, 2))
    m2 = linalg.matmul(m, m)
    m3 = linalg.matmul(m2, m)
    w8 = [GF(0, 2), GF(1, 2), GF(0, 2)]
    block = [row[1:] for row in m[1:]]
    block2 = linalg.matmul(block, block)
    cyclo = linalg.mat_add(linalg.mat_add(block2, block), linalg.identity(2, GF(1, 2)))
    orbit_sum = [a + b + c for a, b, c in zip(w8, linalg.matvec(m, w8), linalg.matvec(m2, w8))]
    return {
        "order_three": m3 == ident and m != ident,
        "fixes_w4sq": linalg.matvec(m, [GF(1, 2), GF(0, 2), GF(0, 2)]) == [1, 0, 0],
        "phi_w8": linalg.matvec(m, w8) == [0, 0, 1],
        "phi2_w8": linalg.matvec(m2, w8) == [0, 1, 1],
        "block_cyclotomic": all(not x for row in cyclo for x in row),
        "euler_relation_mod2": not any(orbit_sum),
    }


QUILLEN_VARS = ("w1", "w2", "w3", "w4", "w5", "w6", "w7", "w8", "w8p")
SQ1_W2 = "w1*w2+w3"
SQ2SQ1_W2 = "w1^3*w2+w1*w2^2+w1^2*w3+w2*w3+w1*w4+w5"


def _f2poly(text: str) -> MultiPoly:
    return parse_poly(text, QUILLEN_VARS, field=2)


@dataclass(frozen=True)
class QuillenReduction:
    sq1: MultiPoly
    sq2sq1: MultiPoly
    ideal: tuple
    free_generators: tuple


def _reduce_mod_vars(p: MultiPoly, killed) -> MultiPoly:
    return p.subs({v: 0 for v in killed}).with_vars(QUILLEN_VARS)


def quillen_reduction() -> QuillenReduction:
    sq1 = _reduce_mod_vars(_f2poly(SQ1_W2), ["w1"])
    sq21 = _reduce_mod_vars(_f2poly(SQ2SQ1_W2), ["w1"])
    ideal = [_f2poly("w2")]
    for g in (sq1, sq21):
        ideal.append(_reduce_mod_vars(g, ["w2"]))
    killed = set()
    for g in ideal:
        used = g.used_vars()
        if len(g) != 1 or len(used) != 1 or g.degree() != 1:
            raise NoSolution(f"ideal generator {g} is not a single generator")
        killed.add(used[0])
    free = tuple(v for v in QUILLEN_VARS[1:] if v not in killed)
    return QuillenReduction(sq1, sq21, tuple(ideal), free)
