"""Registry of named verification checks.

Each check returns a :class:`CheckReport`.  Expected values quoted here are
the statements under verification; they are never fed back into the
computations.
"""

from __future__ import annotations

import fnmatch
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import charclasses as cc
from . import lie, octonions, roots, singularity
from .errors import NotFound, UnknownSelector
from .linalg import same_span
from .poly import MultiPoly, gens
from .scalars import format_scalar, is_scalar

PASS, FAIL, RECORDED = "pass", "fail", "recorded"
DEFAULT_SEED = 20240601


def seed() -> int:
    return int(os.environ.get("TRIALITY_LAB_SEED", DEFAULT_SEED))


def to_text(x):
    if isinstance(x, (bool, int)) or x is None:
        return x
    if is_scalar(x):
        return format_scalar(x)
    if isinstance(x, MultiPoly):
        return str(x)
    if isinstance(x, dict):
        return {str(k): to_text(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_text(v) for v in x]
    return x if isinstance(x, (int, str)) else str(x)


@dataclass
class CheckReport:
    id: str
    status: str
    details: dict = field(default_factory=dict)
    counterexample: object = None

    def to_json(self) -> dict:
        out = {"id": self.id, "status": self.status, "details": to_text(self.details)}
        if self.counterexample is not None:
            out["counterexample"] = to_text(self.counterexample)
        return out

    def text(self) -> str:
        line = f"{self.status.upper():8s} {self.id}"
        for k, v in to_text(self.details).items():
            line += f"\n    {k}: {v}"
        if self.counterexample is not None:
            line += f"\n    counterexample: {to_text(self.counterexample)}"
        return line


def _report(cid: str, conditions: dict, details: dict, counterexample=None) -> CheckReport:
    failed = [k for k, ok in conditions.items() if not ok]
    details = dict(details)
    details["conditions"] = {k: bool(v) for k, v in conditions.items()}
    if failed and counterexample is None:
        counterexample = {"failed": failed}
    return CheckReport(cid, FAIL if failed else PASS, details, counterexample if failed else None)


REGISTRY: list = []


def register(cid: str):
    def deco(fn: Callable[[], CheckReport]):
        REGISTRY.append((cid, fn))
        return fn

    return deco


def check_ids() -> list:
    return [cid for cid, _ in REGISTRY]


def select(pattern: str) -> list:
    chosen = [(cid, fn) for cid, fn in REGISTRY if fnmatch.fnmatchcase(cid, pattern)]
    if not chosen:
        raise UnknownSelector(f"no check matches {pattern!r}")
    return chosen


def run_checks(pattern: str = "*") -> list:
    return [fn() for _, fn in select(pattern)]


# -- Lie algebras -------------------------------------------------------------


def _lie_report(form: str) -> tuple:
    endo = lie.endo_for(form)
    rep = lie.check_automorphism(endo)
    fixed = lie.fixed_subalgebra(endo, verify=False)
    conds = {
        "order_three": rep.order_three,
        "preserves_bracket": rep.preserves_bracket,
        "fixed_dimension_14": fixed.dimension == 14,
        "fixed_closed": fixed.is_closed(),
    }
    details = {"order": rep.order, "pairs_checked": rep.pairs_checked, "fixed_dimension": fixed.dimension, "trace": endo.trace()}
    return conds, details, fixed, rep


@register("lie.compact")
def check_lie_compact() -> CheckReport:
    conds, details, fixed, rep = _lie_report(lie.COMPACT)
    form, space = octonions.omega(), octonions.euclidean_space()
    conds["fixed_are_omega_derivations"] = all(octonions.derivation_check(b, form, space) for b in fixed.basis)
    return _report("lie.compact", conds, details, rep.failures or None)


@register("lie.split")
def check_lie_split() -> CheckReport:
    conds, details, fixed, rep = _lie_report(lie.SPLIT)
    conds["g2_schema"] = lie.g2_pattern_match(fixed)
    spaces = lie.root_decomposition(fixed)
    found = {s.root: s.dimension for s in spaces}
    long_pos = {(1, -1), (1, 2), (2, 1)}
    short_pos = {(0, 1), (1, 0), (1, 1)}
    expected = {r: 1 for r in long_pos | short_pos}
    expected.update({(-p, -q): 1 for p, q in long_pos | short_pos})
    expected[(0, 0)] = 2
    conds["root_spaces"] = found == expected
    lens = {r: lie.root_length_squared(r) for r in long_pos | short_pos}
    conds["length_ratio_3"] = all(lens[lr] == 3 * lens[sr] for lr in long_pos for sr in short_pos)
    details["roots"] = {lie.format_functional(*r): d for r, d in sorted(found.items(), reverse=True)}
    details["long_squared_length"] = lens[(1, -1)]
    details["short_squared_length"] = lens[(0, 1)]
    return _report("lie.split", conds, details, rep.failures or None)


# -- octonions ----------------------------------------------------------------


@register("octonion.euclid")
def check_octonion_euclid() -> CheckReport:
    flipped = octonions.euclidean_table(flip_e4=True)
    unflipped = octonions.euclidean_table(flip_e4=False)
    conds = {
        "e1e2_is_e6": unflipped.c[1][2] == tuple(octonions.unit_vector(6)),
        "composition_flipped": octonions.composition_check(flipped),
        "alternative_flipped": not octonions.alternativity_failures(flipped, 100, seed()),
        "fano_structure": len(octonions.fano_triples(flipped)) == 21,
    }
    try:
        octonions.zero_divisor_witness(flipped)
        conds["no_zero_divisors"] = False
    except NotFound:
        conds["no_zero_divisors"] = True
    details = {"composition_unflipped": octonions.composition_check(unflipped)}
    return _report("octonion.euclid", conds, details)


@register("octonion.split")
def check_octonion_split() -> CheckReport:
    t = octonions.split_table()
    a, b = octonions.zero_divisor_witness(t)
    fixed = lie.fixed_subalgebra(lie.split_endo(), verify=False)
    conds = {
        "composition": octonions.composition_check(t),
        "alternative": not octonions.alternativity_failures(t, 100, seed()),
        "zero_divisor": not any(t.multiply(a, b)) and any(a) and any(b),
        "fixed_are_derivations": all(
            octonions.derivation_check(x, octonions.split_omega(), octonions.split_space()) for x in fixed.basis
        ),
    }
    details = {"normalization": octonions.SPLIT_NORMALIZATION, "witness": [t.format_vector(a), t.format_vector(b)]}
    return _report("octonion.split", conds, details)


# -- weight lattice --------------------------------------------------------------


@register("roots.weight-map")
def check_weight_map() -> CheckReport:
    m = roots.triality_weight_map()
    s = roots.SIMPLE_ROOTS
    lat = roots.lattice_check(m)
    conds = {
        "order_three": m.power(3).is_identity() and not m.is_identity(),
        "A_to_C": m(s["A"]) == s["C"],
        "C_to_B": m(s["C"]) == s["B"],
        "B_to_A": m(s["B"]) == s["A"],
        "Y_fixed": m(s["Y"]) == s["Y"],
        "orthogonal": roots.preserves_inner_product(m),
        "spin_lattice": lat["preserves_Spin_lattice"],
        "not_so_lattice": not lat["preserves_SO_lattice"],
    }
    return _report("roots.weight-map", conds, {"lattice": lat})


@register("roots.orbits")
def check_orbits() -> CheckReport:
    dec = roots.orbits_in_table_order()
    fixed = [roots.root_label(r) for r in dec.fixed]
    free = [[roots.root_label(r) for r in o] for o in dec.free]
    conds = {
        "fixed": set(fixed) == {"Y", "ABCY", "ABC2Y"},
        "generators": [o[0] for o in free] == ["A", "AY", "ABY"],
        "orbit_of_A": free[0] == ["A", "C", "B"],
        "twelve_positive": len(fixed) + sum(len(o) for o in free) == 12,
    }
    return _report("roots.orbits", conds, {"fixed": fixed, "free": free})


# -- characteristic classes -------------------------------------------------------

EXPECTED_IMAGES = {
    "p1": "p1",
    "p2": "-3*e+3/8*p1^2-1/2*p2",
    "p3": "-1/2*e*p1+1/16*p1^3-1/4*p1*p2+p3",
    "e": "-1/2*e-1/16*p1^2+1/4*p2",
}


@register("charclass.theorem1")
def check_generator_images() -> CheckReport:
    images = cc.generator_images()
    conds = {f"phi({g})": images[g] == cc.char_class(EXPECTED_IMAGES[g]) for g in cc.GEN_VARS}
    cube = {g: cc.triality_pullback(cc.triality_pullback(images[g])) == cc.generator(g) for g in cc.GEN_VARS}
    conds["order_three"] = all(cube.values())
    return _report("charclass.theorem1", conds, {f"phi({g})": images[g] for g in cc.GEN_VARS})


@register("charclass.euler")
def check_euler() -> CheckReport:
    plus = cc.from_weights(cc.euler_plus_weights())
    conds = {
        "orbit_sum_zero": cc.euler_orbit_sum().is_zero(),
        "e_plus_class": plus == cc.char_class(cc.EULER_PLUS_CLASS),
        "e_plus_is_phi_e": plus == cc.triality_pullback(cc.generator("e")),
    }
    return _report("charclass.euler", conds, {"e(S+)": plus})


@register("charclass.euler-minus-sign")
def check_euler_minus_sign() -> CheckReport:
    v = cc.euler_minus_sign_verdict()
    relation = (cc.to_weights(cc.generator("e")) + cc.euler_plus_weights() + cc.euler_minus_weights()).is_zero()
    details = {"product": v.product, "reference": v.reference, "sign": v.sign, "relation_with_product": relation}
    return CheckReport("charclass.euler-minus-sign", RECORDED if v.sign else FAIL, details, None if v.sign else v.product)


@register("charclass.isotypic")
def check_isotypic() -> CheckReport:
    d4, d8, d12 = (cc.isotypic_decomposition(d) for d in (4, 8, 12))

    def vecs(iso, texts):
        out = []
        for t in texts:
            p = cc.char_class(t)
            out.append([p.terms.get(m, Fraction(0)) for m in iso.monomials])
        return out

    e = cc.generator("e")
    phi_e = cc.triality_pullback(e)
    conds = {
        "deg4_fixed_p1": same_span([list(v) for v in d4.fixed], vecs(d4, ["p1"])) and not d4.nontrivial,
        "deg8_fixed_p1sq": same_span([list(v) for v in d8.fixed], vecs(d8, ["p1^2"])),
        "deg8_nontrivial_euler": same_span(
            [list(v) for v in d8.nontrivial], [[c.terms.get(m, Fraction(0)) for m in d8.monomials] for c in (e, phi_e)]
        ),
        "deg12_fixed": same_span([list(v) for v in d12.fixed], vecs(d12, ["p1^3", "p3-1/6*p1*p2"])),
        "deg12_fixed_dim_2": len(d12.fixed) == 2,
    }
    details = {
        "deg8_fixed": d8.fixed_classes(),
        "deg8_nontrivial": d8.nontrivial_classes(),
        "deg12_fixed": d12.fixed_classes(),
    }
    return _report("charclass.isotypic", conds, details)


@register("charclass.traces")
def check_traces() -> CheckReport:
    """Traces against the Z3 character relation trace = f - (n - f)/2."""
    conds, details = {}, {}
    for d in (4, 8, 12):
        iso = cc.isotypic_decomposition(d)
        n, f = len(iso.monomials), len(iso.fixed)
        tr = iso.trace()
        details[f"deg{d}"] = {"dim": n, "fixed": f, "trace": tr}
        conds[f"deg{d}_character"] = tr == f - Fraction(n - f, 2)
    conds["deg8_trace_0"] = details["deg8"]["trace"] == 0
    return _report("charclass.traces", conds, details)


@register("charclass.f2")
def check_f2() -> CheckReport:
    res = cc.f2_checks()
    return _report("charclass.f2", res, {"matrix": cc.f2_triality_action()})


@register("charclass.quillen")
def check_quillen() -> CheckReport:
    q = cc.quillen_reduction()
    conds = {
        "sq1": str(q.sq1) == "w3",
        "ideal": sorted(str(g) for g in q.ideal) == ["w2", "w3", "w5"],
        "free": q.free_generators == ("w4", "w6", "w7", "w8", "w8p"),
    }
    return _report("charclass.quillen", conds, {"sq1_at_w1_0": q.sq1, "sq2sq1_at_w1_0": q.sq2sq1, "free": q.free_generators})


def _f3_report(cid: str, degree: int) -> CheckReport:
    a = cc.reduce_matrix(cc.action_matrix(degree), 3)
    w = cc.euler_span(degree, "F3")
    comp = cc.invariant_complement(a, w, 3)
    details = {"degree": degree, "monomials": [str(cc._monomial(m)) for m in cc.generator_monomials(degree)]}
    conds = {"no_invariant_complement": comp is None}
    counter = None
    if comp is not None:
        counter = {"invariant_complement": [[format_scalar(x.value) for x in v] for v in comp]}
    return _report(cid, conds, details, counter)


@register("charclass.f3")
def check_f3() -> CheckReport:
    return _f3_report("charclass.f3", 8)


@register("charclass.f3-deg12")
def check_f3_deg12() -> CheckReport:
    return _f3_report("charclass.f3-deg12", 12)


# -- singularity ------------------------------------------------------------------


@register("sing.symmetry")
def check_symmetry() -> CheckReport:
    conds = {
        "deformation": singularity.symmetry_check(singularity.deformation()),
        "germ": singularity.symmetry_check(singularity.germ()),
    }
    return _report("sing.symmetry", conds, {})


@register("sing.milnor")
def check_milnor() -> CheckReport:
    x, y = gens("x y")
    la = singularity.local_algebra(singularity.germ())
    conds = {
        "mu_4": la.dimension == 4,
        "basis_1_x_y_r2": singularity.spans_local_algebra(singularity.germ(), [x**0, x, y, x**2 + y**2]),
    }
    mus = {n: singularity.local_algebra(singularity.n_lines_germ(n)).dimension for n in range(3, 9)}
    conds["n_lines"] = all(mus[n] == (n - 1) ** 2 for n in mus)
    return _report("sing.milnor", conds, {"mu": la.dimension, "n_lines_mu": mus})


@register("sing.morsify")
def check_morsify() -> CheckReport:
    pts = singularity.morsification_data(1)
    by = {p.label: p for p in pts}
    conds = {
        "four_points": sorted(by) == ["A", "B", "C", "Y"] and len(pts) == 4,
        "Y_min_value_-4": by["Y"].morse_type == "min" and by["Y"].value == -4,
        "saddles_at_0": all(by[k].morse_type == "saddle" and by[k].value == 0 for k in "ABC"),
        "rotation": singularity.rotation_permutation(pts) == {"Y": "Y", "A": "B", "B": "C", "C": "A"},
        "factorization": singularity.morsification(1) == singularity.morsification_factored(1),
    }
    details = {p.label: {"point": [p.x, p.y], "value": p.value, "type": p.morse_type} for p in pts}
    details["repeated_factor_matches"] = singularity.morsification(1) == singularity.morsification_factored(1, True)
    return _report("sing.morsify", conds, details)


@register("sing.quotient-form")
def check_quotient_form() -> CheckReport:
    q = singularity.quotient_intersection_form(singularity.d4_form())
    cm = singularity.cartan_matrix(q)
    g2 = [[2, -3], [-1, 2]]
    conds = {
        "form": [list(r) for r in q.matrix] == [[-2, 1], [1, Fraction(-2, 3)]],
        "cartan_g2": cm == g2,
        "negative_definite": singularity.is_negative_definite(q.matrix),
        "other_edge_sign": singularity.cartan_matrix(singularity.quotient_intersection_form(singularity.d4_form(-1))) == g2,
    }
    return _report("sing.quotient-form", conds, {"labels": q.labels, "form": q.matrix, "cartan": cm})


@register("sing.invariant-ring")
def check_invariant_ring() -> CheckReport:
    r = singularity.invariant_ring_checks()
    conds = {"u2+v2-w3": r.du_val.is_zero(), "g(w,v)=f^2": r.diagram.is_zero(), "uvw_invariant": all(r.invariant.values())}
    return _report("sing.invariant-ring", conds, {})


@register("sing.cubic")
def check_cubic() -> CheckReport:
    q = singularity.quotient_cubic_invariants
    line = [q(0, d).j for d in (1, 2, Fraction(1, 3), -5)]
    g1, g2 = q(1, 1), q(1, 2)
    conds = {
        "j_zero_on_a0": all(j == 0 for j in line),
        "nodal_at_1_0": q(1, 0, strict=False).discriminant == 0,
        "nontrivial_family": g1.j != g2.j,
        "c4c6_identity": all(1728 * x.discriminant == x.c4**3 - x.c6**2 for x in (g1, g2)),
    }
    return _report("sing.cubic", conds, {"j(1,1)": g1.j, "j(1,2)": g2.j})


@register("sing.bifurcation")
def check_bifurcation() -> CheckReport:
    bif = singularity.bifurcation()
    deltoid = singularity.deltoid_points(1)
    members = [singularity.on_bifurcation_set(bif.raw, 1, b, c) for b, c, _ in deltoid]
    conds = {
        "B(1,-1,0)=0": bif.evaluate(1, -1, 0) == 0,
        "B(0,0,0)=0": bif.evaluate(0, 0, 0) == 0,
        "invariant_or_fallback": bif.squarefree_invariant or (all(members) and bif.core_invariant),
    }
    details = {
        "order": bif.order,
        "raw_terms": len(bif.raw),
        "raw_degree": bif.raw.degree(),
        "squarefree_invariant": bif.squarefree_invariant,
        "invariant_core": bif.core,
        "deltoid_points": [[b, c] for b, c, _ in deltoid],
        "deltoid_members": members,
    }
    return _report("sing.bifurcation", conds, details)


@register("sing.n-lines")
def check_n_lines() -> CheckReport:
    got = {n: singularity.n_lines_quotient_genus(n) for n in (3, 4, 5)}
    want = {3: (1, 1), 4: (1, 2), 5: (2, 1)}
    conds = {f"n={n}": (got[n].genus, got[n].punctures) == want[n] for n in want}
    return _report("sing.n-lines", conds, {n: [g.milnor, g.genus, g.punctures] for n, g in got.items()})


@register("sing.representation")
def check_representation() -> CheckReport:
    r = singularity.representation_comparison()
    control = singularity.representation_comparison(degree_d=4)
    conds = {"match": r.ok, "control_rejected": not control.ok}
    details = {"degrees": r.parameter_degrees, "parameter_traces": r.parameter_traces, "cohomology_traces": r.cohomology_traces}
    return _report("sing.representation", conds, details)
