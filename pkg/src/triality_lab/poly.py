"""Sparse multivariate polynomials with exact coefficients.

A polynomial is a map from exponent tuples (one slot per declared variable)
to nonzero scalars.  Binary operations between polynomials over different
variable lists first align both onto the union of the lists.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import NotExactDivision
from .scalars import GF, QSqrt3, format_scalar, is_scalar, parse_scalar

__all__ = ["MultiPoly", "parse_poly", "gens"]


def _div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return a / b


class MultiPoly:
    __slots__ = ("vars", "_terms", "weights", "_hash")

    def __init__(
        self,
        vars: Sequence[str],
        terms: Mapping[tuple, object] | None = None,
        weights: Sequence[int] | None = None,
    ):
        self.vars = tuple(vars)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"repeated variable in {self.vars}")
        n = len(self.vars)
        clean = {}
        if terms:
            for exps, c in terms.items():
                exps = tuple(exps)
                if len(exps) != n:
                    raise ValueError(f"exponent vector {exps} does not match {self.vars}")
                if c:
                    clean[exps] = c
        self._terms = clean
        self.weights = tuple(weights) if weights is not None else (1,) * n
        if len(self.weights) != n:
            raise ValueError("weights do not match variables")
        self._hash = None

    # -- constructors -------------------------------------------------

    @classmethod
    def const(cls, c, vars: Sequence[str] = (), weights=None) -> MultiPoly:
        return cls(vars, {(0,) * len(vars): c}, weights)

    @classmethod
    def var(cls, name: str, vars: Sequence[str] | None = None, weights=None) -> MultiPoly:
        vars = tuple(vars) if vars is not None else (name,)
        exps = tuple(1 if v == name else 0 for v in vars)
        return cls(vars, {exps: 1}, weights)

    @classmethod
    def coerce(cls, x, vars: Sequence[str] = ()) -> MultiPoly:
        if isinstance(x, MultiPoly):
            return x
        if is_scalar(x):
            return cls.const(x, vars)
        raise TypeError(f"cannot make a polynomial from {x!r}")

    # -- structure ----------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self):
        """The scalar value if constant (0 for the zero polynomial)."""
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        for c in self._terms.values():
            return c
        return 0

    def with_vars(self, vars: Sequence[str], weights=None) -> MultiPoly:
        """Re-express over a variable list containing every variable in use."""
        vars = tuple(vars)
        if vars == self.vars and weights is None:
            return self
        idx = {v: i for i, v in enumerate(vars)}
        wmap = dict(zip(self.vars, self.weights))
        if weights is None:
            weights = tuple(wmap.get(v, 1) for v in vars)
        out = {}
        for exps, c in self._terms.items():
            new = [0] * len(vars)
            for v, e in zip(self.vars, exps):
                if e:
                    if v not in idx:
                        raise ValueError(f"variable {v} in use but not in {vars}")
                    new[idx[v]] = e
            out[tuple(new)] = c
        return MultiPoly(vars, out, weights)

    def with_weights(self, weights: Mapping[str, int] | Sequence[int]) -> MultiPoly:
        if isinstance(weights, Mapping):
            weights = tuple(weights.get(v, 1) for v in self.vars)
        return MultiPoly(self.vars, self._terms, weights)

    def used_vars(self) -> tuple:
        used = [False] * len(self.vars)
        for exps in self._terms:
            for i, e in enumerate(exps):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(self.vars, used) if u)

    def _align(self, other: MultiPoly):
        if self.vars == other.vars:
            return self, other
        vars = list(self.vars)
        vars += [v for v in other.vars if v not in self.vars]
        wmap = dict(zip(other.vars, other.weights))
        wmap.update(zip(self.vars, self.weights))
        weights = tuple(wmap[v] for v in vars)
        return self.with_vars(vars, weights), other.with_vars(vars, weights)

    # -- arithmetic ---------------------------------------------------

    def _lift(self, other):
        if isinstance(other, MultiPoly):
            return self._align(other)
        if is_scalar(other):
            return self, MultiPoly.const(other, self.vars, self.weights)
        return None

    def __add__(self, other):
        pair = self._lift(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        out = dict(a._terms)
        for exps, c in b._terms.items():
            s = out.get(exps)
            s = c if s is None else s + c
            if s:
                out[exps] = s
            else:
                out.pop(exps, None)
        return MultiPoly(a.vars, out, a.weights)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self._terms.items()}, self.weights)

    def __sub__(self, other):
        pair = self._lift(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other):
        pair = self._lift(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b + (-a)

    def __mul__(self, other):
        if is_scalar(other):
            if not other:
                return MultiPoly(self.vars, {}, self.weights)
            return MultiPoly(self.vars, {e: c * other for e, c in self._terms.items()}, self.weights)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self._align(other)
        out: dict = {}
        for ea, ca in a._terms.items():
            for eb, cb in b._terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                c = ca * cb
                s = out.get(e)
                out[e] = c if s is None else s + c
        return MultiPoly(a.vars, out, a.weights)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        if is_scalar(other):
            return MultiPoly(self.vars, {e: _div(c, other) for e, c in self._terms.items()}, self.weights)
        if isinstance(other, MultiPoly):
            return self.exact_div(other)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.const(1, self.vars, self.weights)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            a, b = self._align(other)
            return a._terms == b._terms
        if is_scalar(other):
            if not other:
                return not self._terms
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            used = self.used_vars()
            p = self.with_vars(sorted(used), weights=(1,) * len(used)) if used != self.vars else self
            self._hash = hash(frozenset(p._terms.items()) | {tuple(p.vars)})
        return self._hash

    # -- degrees ------------------------------------------------------

    def _index(self, var: str) -> int:
        try:
            return self.vars.index(var)
        except ValueError:
            return -1

    def degree(self, var: str | None = None) -> int:
        """Degree in ``var`` (total degree if omitted); -1 for zero."""
        if not self._terms:
            return -1
        if var is None:
            return max(sum(e) for e in self._terms)
        i = self._index(var)
        if i < 0:
            return 0
        return max(e[i] for e in self._terms)

    def weighted_degree(self) -> int:
        if not self._terms:
            return -1
        return max(self.term_weight(e) for e in self._terms)

    def term_weight(self, exps) -> int:
        return sum(e * w for e, w in zip(exps, self.weights))

    def is_weighted_homogeneous(self) -> bool:
        return len({self.term_weight(e) for e in self._terms}) <= 1

    def homogeneous_part(self, d: int) -> MultiPoly:
        return MultiPoly(
            self.vars, {e: c for e, c in self._terms.items() if self.term_weight(e) == d}, self.weights
        )

    # -- ordering and printing ----------------------------------------

    @staticmethod
    def _order_key(exps):
        return (sum(exps), exps)

    def sorted_terms(self) -> list:
        """Terms in descending graded-lex order."""
        return sorted(self._terms.items(), key=lambda t: self._order_key(t[0]), reverse=True)

    def leading_term(self):
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self._terms, key=self._order_key)
        return exps, self._terms[exps]

    def leading_coefficient(self):
        return self.leading_term()[1]

    def monic(self) -> MultiPoly:
        if not self._terms:
            return self
        return self / self.leading_coefficient()

    def _monomial_str(self, exps) -> str:
        parts = []
        for v, e in zip(self.vars, exps):
            if e == 1:
                parts.append(v)
            elif e > 1:
                parts.append(f"{v}^{e}")
        return "*".join(parts)

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for i, (exps, c) in enumerate(self.sorted_terms()):
            mono = self._monomial_str(exps)
            cs = format_scalar(c)
            compound = isinstance(c, QSqrt3) and c.r != 0 and c.s != 0
            if compound:
                body = f"({cs})" if mono else cs
                neg = False
            else:
                neg = cs.startswith("-")
                if neg:
                    cs = cs[1:]
                body = cs
            if mono:
                if compound:
                    body = f"{body}*{mono}"
                elif cs == "1":
                    body = mono
                else:
                    body = f"{cs}*{mono}"
            if i == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append(("-" if neg else "+") + body)
        return "".join(out)

    def __repr__(self):
        return f"MultiPoly({self.vars}, {str(self)!r})"

    # -- calculus and substitution ------------------------------------

    def diff(self, var: str) -> MultiPoly:
        i = self._index(var)
        if i < 0:
            return MultiPoly(self.vars, {}, self.weights)
        out = {}
        for exps, c in self._terms.items():
            e = exps[i]
            if e:
                new = list(exps)
                new[i] = e - 1
                out[tuple(new)] = c * e
        return MultiPoly(self.vars, out, self.weights)

    def subs(self, bindings: Mapping[str, object]) -> MultiPoly:
        """Simultaneously replace variables by polynomials or scalars.

        Variables not mentioned stay.  The result lives over the unbound
        variables followed by any new variables the bindings bring in.
        """
        bound = {v: bindings[v] for v in self.vars if v in bindings}
        if not bound:
            return self
        keep = [v for v in self.vars if v not in bound]
        wmap = dict(zip(self.vars, self.weights))
        new_vars = list(keep)
        for b in bound.values():
            if isinstance(b, MultiPoly):
                for v, w in zip(b.vars, b.weights):
                    if v not in new_vars:
                        new_vars.append(v)
                        wmap.setdefault(v, w)
        weights = tuple(wmap.get(v, 1) for v in new_vars)
        images = {}
        for i, v in enumerate(self.vars):
            if v in bound:
                images[i] = MultiPoly.coerce(bound[v], new_vars).with_vars(new_vars, weights)
            else:
                images[i] = MultiPoly.var(v, new_vars, weights)
        powers: dict = {}

        def power(i, e):
            key = (i, e)
            if key not in powers:
                powers[key] = images[i] ** e
            return powers[key]

        acc: dict = {}
        for exps, c in self._terms.items():
            term = MultiPoly.const(c, new_vars, weights)
            for i, e in enumerate(exps):
                if e:
                    term = term * power(i, e)
            for k, v in term._terms.items():
                s = acc.get(k)
                acc[k] = v if s is None else s + v
        return MultiPoly(new_vars, acc, weights)

    def evaluate(self, point: Mapping[str, object]):
        """Evaluate at a point; every used variable must be bound to a scalar."""
        total = 0
        for exps, c in self._terms.items():
            term = c
            for v, e in zip(self.vars, exps):
                if e:
                    term = term * point[v] ** e
            total = total + term
        return total

    def map_coeffs(self, fn) -> MultiPoly:
        return MultiPoly(self.vars, {e: fn(c) for e, c in self._terms.items()}, self.weights)

    def coefficient(self, monomial: Mapping[str, int]):
        exps = tuple(monomial.get(v, 0) for v in self.vars)
        return self._terms.get(exps, 0)

    def coeffs_in(self, var: str) -> dict:
        """Split as a univariate polynomial in ``var``: power -> coefficient poly."""
        i = self._index(var)
        if i < 0:
            return {0: self} if self._terms else {}
        out: dict = {}
        for exps, c in self._terms.items():
            e = exps[i]
            rest = list(exps)
            rest[i] = 0
            out.setdefault(e, {})[tuple(rest)] = c
        return {e: MultiPoly(self.vars, t, self.weights) for e, t in out.items()}

    # -- exact division -----------------------------------------------

    def exact_div(self, other: MultiPoly) -> MultiPoly:
        """Quotient of an exact division; raises NotExactDivision otherwise."""
        if not isinstance(other, MultiPoly):
            other = MultiPoly.coerce(other, self.vars)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        a, b = self._align(other)
        if b.is_constant():
            return a / b.constant_value()
        lt_e, lt_c = b.leading_term()
        bterms = [(e, c) for e, c in b._terms.items() if e != lt_e]
        rem = dict(a._terms)
        heap = [(-sum(e), tuple(-x for x in e)) for e in rem]
        heapq.heapify(heap)
        quot = {}
        while heap:
            _, neg = heapq.heappop(heap)
            re_ = tuple(-x for x in neg)
            rc = rem.pop(re_, None)
            if rc is None or not rc:
                continue
            qe = tuple(x - y for x, y in zip(re_, lt_e))
            if any(x < 0 for x in qe):
                raise NotExactDivision(f"{self} is not divisible by {other}")
            qc = _div(rc, lt_c)
            quot[qe] = qc
            for be, bc in bterms:
                e = tuple(x + y for x, y in zip(qe, be))
                old = rem.get(e)
                if old is None:
                    rem[e] = -qc * bc
                    heapq.heappush(heap, (-sum(e), tuple(-x for x in e)))
                else:
                    rem[e] = old - qc * bc
        return MultiPoly(a.vars, quot, a.weights)


def gens(names: str | Iterable[str], weights=None) -> tuple:
    """Generators over a shared variable list, e.g. ``x, y = gens("x y")``."""
    if isinstance(names, str):
        names = names.replace(",", " ").split()
    names = tuple(names)
    return tuple(MultiPoly.var(n, names, weights) for n in names)


def _split_top(text: str) -> list:
    """Split at top-level + and - signs (outside parentheses)."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > start and text[i - 1] not in "*^/":
            parts.append(text[start:i])
            start = i
    parts.append(text[start:])
    return [p for p in parts if p]


def parse_poly(text: str, vars: Sequence[str], weights=None, field: int | None = None) -> MultiPoly:
    """Parse the canonical text format (``3/8*p1^2-1/2*p2-3*e``).

    ``field`` set to 2 or 3 reads integer coefficients into that prime field.
    """
    vars = tuple(vars)
    t = text.replace(" ", "")
    if t == "0":
        return MultiPoly(vars, {}, weights)
    idx = {v: i for i, v in enumerate(vars)}
    out: dict = {}
    for term in _split_top(t):
        neg = term.startswith("-")
        if term[0] in "+-":
            term = term[1:]
        coeff = 1
        exps = [0] * len(vars)
        if term.startswith("("):
            close = term.index(")")
            coeff = parse_scalar(term[1:close])
            term = term[close + 1 :].lstrip("*")
        factors = [f for f in term.split("*") if f] if term else []
        # a bare r3 factor belongs to the coefficient
        scalar_bits = []
        for f in factors:
            name, _, e = f.partition("^")
            if name in idx:
                exps[idx[name]] += int(e) if e else 1
            else:
                scalar_bits.append(f)
        if scalar_bits:
            coeff = coeff * parse_scalar("*".join(scalar_bits))
        if field is not None:
            coeff = GF(int(Fraction(coeff)), field)
        if neg:
            coeff = -coeff
        key = tuple(exps)
        out[key] = out.get(key, 0) + coeff
    return MultiPoly(vars, out, weights)
