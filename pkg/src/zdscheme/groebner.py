"""Groebner bases, normal forms, residue fields and vanishing ideals.

The vanishing ideal of a finite point configuration is computed by a
Moeller-style evaluation algorithm run over the dehomogenized coordinates:
candidate monomials are visited in increasing term order, each one either
contributes a new standard monomial (its germ vector is independent) or a
new reduced basis element (the dependency gives the tail).  Because the term
order is degree-compatible, homogenizing the affine basis yields the reduced
basis of the homogeneous vanishing ideal.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from .errors import InternalCheckError, PreconditionError
from .linalg import Vec
from .poly import (DegRevLex, Poly, Term, affine_order, projective_names,
                   projective_order, term_degree, term_div, term_divides,
                   term_lcm, term_mul)


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis: monic generators, sorted by leading term,
    no generator term divisible by another generator's leading term."""

    generators: tuple[Poly, ...]
    order: DegRevLex
    reduced: bool = True

    @property
    def leading_terms(self) -> tuple[Term, ...]:
        return tuple(g.leading_term(self.order) for g in self.generators)

    def __iter__(self):
        return iter(self.generators)

    def contains_constant(self) -> bool:
        return any(g.degree() == 0 for g in self.generators)


def normal_form(f: Poly, gens, order: DegRevLex) -> Poly:
    """Full reduction of f modulo the generators (K-linear in f; the result
    has no term divisible by any generator's leading term)."""
    if isinstance(gens, GroebnerBasis):
        gens = gens.generators
    gens = [g for g in gens if not g.is_zero()]
    lts = [(g.leading_term(order), g.leading_coeff(order), g) for g in gens]
    remainder: dict[Term, Fraction] = {}
    work = dict(f.terms)
    while work:
        t = max(work, key=order.key)
        c = work.pop(t)
        if not c:
            continue
        for lt, lc, g in lts:
            if term_divides(lt, t):
                factor = c / lc
                shift = term_div(t, lt)
                for s, cs in g.terms.items():
                    if s == lt:
                        continue
                    u = term_mul(s, shift)
                    work[u] = work.get(u, Fraction(0)) - factor * cs
                break
        else:
            remainder[t] = remainder.get(t, Fraction(0)) + c
    return Poly(f.names, remainder)


def s_polynomial(f: Poly, g: Poly, order: DegRevLex) -> Poly:
    lf, lg = f.leading_term(order), g.leading_term(order)
    lcm = term_lcm(lf, lg)
    return (f.mul_term(term_div(lcm, lf), 1 / f.leading_coeff(order))
            - g.mul_term(term_div(lcm, lg), 1 / g.leading_coeff(order)))


def _interreduce(gens: list[Poly], order: DegRevLex) -> list[Poly]:
    gens = [g.monic(order) for g in gens if not g.is_zero()]
    # drop generators whose leading term another one divides
    kept: list[Poly] = []
    for g in sorted(gens, key=lambda p: order.key(p.leading_term(order))):
        lt = g.leading_term(order)
        if not any(term_divides(k.leading_term(order), lt) for k in kept):
            kept.append(g)
    changed = True
    while changed:
        changed = False
        for i, g in enumerate(kept):
            others = kept[:i] + kept[i + 1:]
            r = normal_form(g, others, order).monic(order)
            if r != g:
                if r.is_zero():
                    kept.pop(i)
                else:
                    kept[i] = r
                changed = True
                break
    return sorted(kept, key=lambda p: order.key(p.leading_term(order)))


def buchberger(gens, order: DegRevLex) -> GroebnerBasis:
    """Reduced Groebner basis by Buchberger's algorithm (normal pair
    selection, coprime-criterion pruning); deterministic for fixed input."""
    basis = [g.monic(order) for g in gens if not g.is_zero()]
    if not basis:
        raise PreconditionError("cannot take a Groebner basis of the zero ideal")

    def pair_key(i, j):
        lcm = term_lcm(basis[i].leading_term(order), basis[j].leading_term(order))
        return (term_degree(lcm), order.key(lcm), i, j)

    pairs = [(pair_key(i, j), i, j)
             for i in range(len(basis)) for j in range(i + 1, len(basis))]
    heapq.heapify(pairs)
    while pairs:
        _, i, j = heapq.heappop(pairs)
        lf = basis[i].leading_term(order)
        lg = basis[j].leading_term(order)
        if term_lcm(lf, lg) == term_mul(lf, lg):  # coprime leading terms
            continue
        r = normal_form(s_polynomial(basis[i], basis[j], order), basis, order)
        if not r.is_zero():
            basis.append(r.monic(order))
            k = len(basis) - 1
            for m in range(k):
                heapq.heappush(pairs, (pair_key(m, k), m, k))
    return GroebnerBasis(tuple(_interreduce(basis, order)), order)


def quotient_hilbert_function(gb: GroebnerBasis, up_to: int) -> list[int]:
    """dim of the degree-i part of P/ideal for i = 0..up_to, counted as
    degree-i monomials outside the leading term ideal."""
    nvars = len(gb.generators[0].names)
    lts = gb.leading_terms
    values = []
    for d in range(up_to + 1):
        count = 0
        for mono in _monomials_of_degree(nvars, d):
            if not any(term_divides(lt, mono) for lt in lts):
                count += 1
        values.append(count)
    return values


def _monomials_of_degree(nvars: int, d: int):
    if nvars == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _monomials_of_degree(nvars - 1, d - first):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# residue fields
# ---------------------------------------------------------------------------

@dataclass
class ResidueField:
    """Presentation of the residue field at a point: a monomial basis of the
    quotient by the point's (dehomogenized) maximal ideal, the multiplication
    table on that basis, and the field trace of each basis element."""

    gb: GroebnerBasis
    basis: tuple[Term, ...]
    mult_table: tuple[tuple[Vec, ...], ...]
    traces: Vec
    var_coords: tuple[Vec, ...]
    source: dict = field(default_factory=dict)

    @property
    def kappa(self) -> int:
        return len(self.basis)

    @property
    def is_rational(self) -> bool:
        return self.kappa == 1

    @property
    def names(self):
        return self.gb.generators[0].names

    def coords(self, p: Poly) -> Vec:
        """Coordinate vector of p modulo the maximal ideal."""
        nf = normal_form(p, self.gb, self.gb.order)
        pos = {t: i for i, t in enumerate(self.basis)}
        out = [Fraction(0)] * self.kappa
        for t, c in nf.terms.items():
            out[pos[t]] = c
        return tuple(out)

    def multiply(self, a: Vec, b: Vec) -> Vec:
        out = [Fraction(0)] * self.kappa
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if not bj:
                    continue
                prod = self.mult_table[i][j]
                c = ai * bj
                for k, pk in enumerate(prod):
                    if pk:
                        out[k] += c * pk
        return tuple(out)

    def trace_of(self, a: Vec) -> Fraction:
        return sum((ai * ti for ai, ti in zip(a, self.traces)), Fraction(0))

    def gram(self) -> list[list[Fraction]]:
        """Matrix of the trace form Tr(b_i * b_j) on the monomial basis."""
        k = self.kappa
        out = [[Fraction(0)] * k for _ in range(k)]
        for i in range(k):
            for j in range(k):
                out[i][j] = self.trace_of(self.mult_table[i][j])
        return out

    def key(self) -> tuple:
        """Canonical identity of the point (reduced bases are unique)."""
        return tuple((g.names, tuple(sorted(g.terms.items())))
                     for g in self.gb.generators)


def _standard_monomials(gb: GroebnerBasis) -> list[Term]:
    nvars = len(gb.generators[0].names)
    lts = gb.leading_terms
    caps = []
    for v in range(nvars):
        cap = None
        for lt in lts:
            if all(e == 0 for i, e in enumerate(lt) if i != v):
                cap = lt[v] if cap is None else min(cap, lt[v])
        if cap is None:
            raise PreconditionError(
                "ideal is not zero-dimensional: no pure power of "
                f"{gb.generators[0].names[v]} among the leading terms")
        caps.append(cap)
    monos = []
    for expo in itertools.product(*(range(c) for c in caps)):
        if not any(term_divides(lt, expo) for lt in lts):
            monos.append(tuple(expo))
    return gb.order.sorted_terms(monos, reverse=False)


def _minimal_polynomial(theta: Vec, fld: ResidueField) -> list[Fraction]:
    """Monic minimal polynomial of the element with coordinate vector theta,
    as ascending coefficients."""
    from .linalg import Span
    powers = [fld.coords(Poly.const(fld.names, 1))]
    span = Span.from_vectors(powers, fld.kappa)
    current = powers[0]
    while True:
        current = fld.multiply(current, theta)
        if span.contains(current):
            break
        powers.append(current)
        span = span + Span.from_vectors([current], fld.kappa)
    from .linalg import solve
    cols = [[powers[i][c] for i in range(len(powers))] for c in range(fld.kappa)]
    sol = solve(cols, list(current))
    if sol is None:
        raise InternalCheckError("minimal polynomial solve failed")
    return [-s for s in sol] + [Fraction(1)]


def _is_irreducible(coeffs: list[Fraction]) -> bool:
    t = sympy.Symbol("t")
    return sympy.Poly(list(reversed([sympy.Rational(c) for c in coeffs])),
                      t, domain="QQ").is_irreducible


def residue_field(gens, *, source: dict | None = None,
                  certify: bool = True) -> ResidueField:
    """Build the residue-field presentation of a maximal ideal given by
    dehomogenized generators.

    The quotient must be a field; this is certified by finding a primitive
    element whose minimal polynomial has full degree and is irreducible over
    the rationals (always possible for a field in characteristic zero).
    """
    gens = list(gens)
    if not gens:
        raise PreconditionError("empty generator list for a point ideal")
    nvars = len(gens[0].names)
    order = affine_order(nvars)
    gb = buchberger(gens, order)
    if gb.contains_constant():
        raise PreconditionError("point ideal is the unit ideal")
    basis = tuple(_standard_monomials(gb))
    kappa = len(basis)
    pos = {t: i for i, t in enumerate(basis)}

    def coords_of(p: Poly) -> Vec:
        nf = normal_form(p, gb, order)
        out = [Fraction(0)] * kappa
        for t, c in nf.terms.items():
            out[pos[t]] = c
        return tuple(out)

    table = []
    for i, bi in enumerate(basis):
        row = []
        for j, bj in enumerate(basis):
            row.append(coords_of(Poly.monomial(gens[0].names, term_mul(bi, bj))))
        table.append(tuple(row))
    # trace of multiplication by b_i read off the table columns
    traces = tuple(sum((table[i][l][l] for l in range(kappa)), Fraction(0))
                   for i in range(kappa))
    var_coords = tuple(coords_of(Poly.variable(gens[0].names, v))
                       for v in range(nvars))
    fld = ResidueField(gb=gb, basis=basis, mult_table=tuple(table),
                       traces=traces, var_coords=var_coords,
                       source=source or {})
    if certify and kappa > 1:
        _certify_field(fld)
    return fld


def _certify_field(fld: ResidueField) -> None:
    nvars = len(fld.names)
    kappa = fld.kappa
    candidates = []
    for v in range(nvars):
        candidates.append(fld.var_coords[v])
    for c in range(1, 4 * kappa * kappa + 8):
        theta = [Fraction(0)] * kappa
        weight = 1
        for v in range(nvars):
            for k in range(kappa):
                theta[k] += weight * fld.var_coords[v][k]
            weight *= c
        candidates.append(tuple(theta))
    for theta in candidates:
        mp = _minimal_polynomial(theta, fld)
        if len(mp) - 1 == kappa:
            if _is_irreducible(mp):
                return
            raise PreconditionError(
                "point ideal is not maximal: the quotient has zero divisors "
                "(reducible minimal polynomial of a generating element)")
    raise PreconditionError(
        "could not certify that the point ideal is maximal: no primitive "
        "element found; the quotient is most likely not a field")


def rational_point_field(coords, names) -> ResidueField:
    """Residue field kappa = Q of a rational point with the given
    dehomogenized coordinates."""
    gens = [Poly.variable(names, i) - Poly.const(names, c)
            for i, c in enumerate(coords)]
    src = {"coords": [Fraction(c) for c in coords]}
    return residue_field(gens, source=src, certify=False)


# ---------------------------------------------------------------------------
# vanishing ideals of point configurations
# ---------------------------------------------------------------------------

@dataclass
class EvaluationData:
    """Everything the Moeller pass learns about a configuration: the affine
    reduced basis, the standard monomials with their germ vectors, and the
    homogenized reduced basis."""

    affine_gb: GroebnerBasis
    homog_gb: GroebnerBasis
    std_terms: tuple[Term, ...]
    std_germs: tuple[Vec, ...]
    var_germs: tuple[Vec, ...]
    blocks: tuple[tuple[int, int], ...]  # (offset, kappa) per point


def _block_product(points, blocks, a: Vec, b: Vec) -> Vec:
    out: list[Fraction] = []
    for fld, (off, kap) in zip(points, blocks):
        out.extend(fld.multiply(a[off:off + kap], b[off:off + kap]))
    return tuple(out)


class _IncrementalBasis:
    """Maintains an echelonized copy of a growing vector list and expresses
    new vectors as combinations of the originals."""

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: list[tuple[Vec, int, dict[int, Fraction]]] = []
        self.count = 0

    def express(self, v: Vec):
        x = list(v)
        used: dict[int, Fraction] = {}
        for row, piv, combo in self.rows:
            c = x[piv]
            if c:
                for j in range(self.dim):
                    if row[j]:
                        x[j] -= c * row[j]
                for k, ck in combo.items():
                    used[k] = used.get(k, Fraction(0)) + c * ck
        return tuple(x), used

    def add(self, v: Vec, residual: Vec, used: dict[int, Fraction]):
        piv = next(i for i, c in enumerate(residual) if c)
        inv = 1 / residual[piv]
        row = tuple(c * inv for c in residual)
        combo = {k: -ck * inv for k, ck in used.items()}
        combo[self.count] = inv
        self.rows.append((row, piv, combo))
        self.count += 1


def evaluation_ideal(points, n: int) -> EvaluationData:
    """Moeller pass over all candidate monomials in x1..xn; callers must
    have checked that the points are pairwise distinct."""
    order = affine_order(n)
    names = points[0].names if points else None
    blocks = []
    off = 0
    for fld in points:
        blocks.append((off, fld.kappa))
        off += fld.kappa
    dim = off
    var_germs = []
    for v in range(n):
        vec: list[Fraction] = []
        for fld, (o, k) in zip(points, blocks):
            vec.extend(fld.var_coords[v])
        var_germs.append(tuple(vec))

    one = []
    for fld in points:
        unit = [Fraction(0)] * fld.kappa
        unit[fld.basis.index(tuple([0] * n))] = Fraction(1)
        one.extend(unit)
    one = tuple(one)

    solver = _IncrementalBasis(dim)
    std_terms: list[Term] = []
    std_germs: list[Vec] = []
    gb_polys: list[Poly] = []
    lts: list[Term] = []

    start = tuple([0] * n)
    pending: dict[Term, Vec] = {start: one}
    heap = [(order.key(start), start)]
    while heap:
        _, t = heapq.heappop(heap)
        germ = pending.pop(t)
        if any(term_divides(lt, t) for lt in lts):
            continue
        residual, used = solver.express(germ)
        if any(residual):
            solver.add(germ, residual, used)
            std_terms.append(t)
            std_germs.append(germ)
            for v in range(n):
                child = term_mul(t, tuple(int(i == v) for i in range(n)))
                if child in pending:
                    continue
                if any(term_divides(lt, child) for lt in lts):
                    continue
                pending[child] = _block_product(points, blocks, germ, var_germs[v])
                heapq.heappush(heap, (order.key(child), child))
        else:
            terms = {t: Fraction(1)}
            for k, ck in used.items():
                if ck:
                    terms[std_terms[k]] = -ck
            gb_polys.append(Poly(names, terms))
            lts.append(t)

    if len(std_terms) != dim:
        raise InternalCheckError(
            "evaluation basis did not reach the configuration degree; "
            "point ideals are not pairwise comaximal")
    affine = GroebnerBasis(tuple(sorted(
        gb_polys, key=lambda p: order.key(p.leading_term(order)))), order)
    homog_order = projective_order(n)
    hnames = projective_names(n)
    homog = GroebnerBasis(tuple(sorted(
        (g.homogenize(0, names=hnames) for g in affine.generators),
        key=lambda p: homog_order.key(p.leading_term(homog_order)))), homog_order)
    return EvaluationData(affine_gb=affine, homog_gb=homog,
                          std_terms=tuple(std_terms), std_germs=tuple(std_germs),
                          var_germs=tuple(var_germs), blocks=tuple(blocks))


def vanishing_ideal(points, n: int) -> GroebnerBasis:
    """Reduced basis of the homogeneous (saturated) vanishing ideal of the
    configuration; raises on duplicate points."""
    seen = {}
    for i, fld in enumerate(points):
        k = fld.key()
        if k in seen:
            raise PreconditionError(f"duplicate points at positions {seen[k]} and {i}")
        seen[k] = i
    return evaluation_ideal(points, n).homog_gb
