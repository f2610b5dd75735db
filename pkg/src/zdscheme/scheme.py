"""The central model: a reduced zero-dimensional subscheme of P^n over Q.

A scheme is a list of pairwise distinct closed points, each presented by its
residue field.  All invariants are read off germ vectors: the degree-i part
of the coordinate ring embeds into the product of the residue fields by
taking the value of (the dehomogenization of) an element at every point, and
multiplication by the distinguished linear form x0 leaves germ vectors
unchanged.  The degree-i image is spanned by the germs of the standard
monomials of degree <= i, which is what makes every graded computation a
finite exact linear-algebra problem.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, InternalCheckError, PreconditionError
from .groebner import (EvaluationData, GroebnerBasis, ResidueField,
                       evaluation_ideal, rational_point_field, residue_field)
from .linalg import Span, Vec, solve
from .poly import (Poly, affine_names, format_rational, parse_poly,
                   parse_rational, projective_names, term_degree)


@dataclass(frozen=True)
class HilbertFunction:
    """Values on 0..regularity; constant afterwards, zero in negative
    degrees."""

    values: tuple[int, ...]
    constant: int
    regularity: int

    def __call__(self, i: int) -> int:
        if i < 0:
            return 0
        if i >= self.regularity:
            return self.constant
        return self.values[i]

    def delta(self, i: int) -> int:
        return self(i) - self(i - 1)

    def as_list(self, up_to: int | None = None) -> list[int]:
        hi = self.regularity if up_to is None else up_to
        return [self(i) for i in range(hi + 1)]


class ZeroDimScheme:
    """A built configuration; immutable once constructed."""

    def __init__(self, n: int, points: list[ResidueField], data: EvaluationData):
        self.n = n
        self.points = tuple(points)
        self.blocks = data.blocks
        self.degree = sum(f.kappa for f in points)
        self.affine_gb = data.affine_gb
        self.gb = data.homog_gb
        self.std_terms = data.std_terms
        self.std_degrees = tuple(term_degree(t) for t in data.std_terms)
        self.std_germs = data.std_germs
        self.var_germs = data.var_germs
        self.one_germ = data.std_germs[0]
        self.r = max(self.std_degrees)
        counts = [0] * (self.r + 1)
        for d in self.std_degrees:
            counts[d] += 1
        values = []
        total = 0
        for c in counts:
            total += c
            values.append(total)
        self.hilbert = HilbertFunction(tuple(values), self.degree, self.r)
        self._spans: dict[int, Span] = {}
        self._anns: dict[int, tuple[Vec, ...]] = {}
        self._verify()

    def _verify(self) -> None:
        hf = self.hilbert
        if hf(0) != 1:
            raise InternalCheckError("HF(0) != 1")
        for i in range(1, self.r + 1):
            if not hf(i) > hf(i - 1):
                raise InternalCheckError("Hilbert function not strictly increasing")
        if hf(self.r) != self.degree:
            raise InternalCheckError("Hilbert function does not reach the degree")

    # -- basic views ---------------------------------------------------------

    @property
    def s(self) -> int:
        return len(self.points)

    @property
    def is_rational(self) -> bool:
        return all(f.is_rational for f in self.points)

    @property
    def affine_vars(self):
        return affine_names(self.n)

    @property
    def proj_vars(self):
        return projective_names(self.n)

    def hf(self, i: int) -> int:
        return self.hilbert(i)

    def block_slice(self, j: int) -> slice:
        off, kap = self.blocks[j]
        return slice(off, off + kap)

    # -- germ space machinery --------------------------------------------------

    def germ_basis(self, i: int) -> list[Vec]:
        """Germ vectors of the standard monomials of degree <= i (a basis of
        the degree-i germ space)."""
        if i < 0:
            return []
        return [g for g, d in zip(self.std_germs, self.std_degrees) if d <= i]

    def evaluation_matrix(self, i: int) -> list[list[Fraction]]:
        """Matrix of the degree-i evaluation map: one row per residue-field
        coordinate, one column per degree-i basis monomial."""
        cols = self.germ_basis(i)
        return [[col[r] for col in cols] for r in range(self.degree)]

    def span(self, i: int) -> Span:
        """The degree-i germ space V_i inside Q^degree."""
        if i < 0:
            return Span(self.degree)
        i = min(i, self.r)
        if i not in self._spans:
            self._spans[i] = Span.from_vectors(self.germ_basis(i), self.degree)
        return self._spans[i]

    def ann(self, i: int) -> tuple[Vec, ...]:
        """Rows annihilating V_i: w lies in V_i iff ann(i) @ w = 0."""
        if i >= self.r:
            return ()
        key = max(i, -1)
        if key not in self._anns:
            self._anns[key] = tuple(self.span(key).annihilator())
        return self._anns[key]

    def product(self, a: Vec, b: Vec) -> Vec:
        """Componentwise product in the product of the residue fields."""
        out: list[Fraction] = []
        for fld, (off, kap) in zip(self.points, self.blocks):
            out.extend(fld.multiply(a[off:off + kap], b[off:off + kap]))
        return tuple(out)

    def block_vector(self, j: int, coords: Vec) -> Vec:
        """Embed residue-field coordinates at point j into the product."""
        out = [Fraction(0)] * self.degree
        off, kap = self.blocks[j]
        for k in range(kap):
            out[off + k] = Fraction(coords[k])
        return tuple(out)

    def germ(self, p: Poly) -> Vec:
        """Germ vector of a polynomial (class representative); homogeneous
        input is dehomogenized first."""
        if p.names == self.proj_vars:
            p = p.dehomogenize(0)
        elif p.names != self.affine_vars:
            raise ValueError("polynomial in unexpected variables")
        out: list[Fraction] = []
        for fld in self.points:
            if fld.is_rational and "coords" in fld.source:
                out.append(p.evaluate(fld.source["coords"]))
            else:
                out.extend(fld.coords(p))
        return tuple(out)

    def lift(self, v: Vec, degree: int) -> Poly:
        """The unique degree-`degree` element with germ vector v (inverse of
        the evaluation injection); requires v in V_degree."""
        rows = self.evaluation_matrix(degree)
        sol = solve(rows, list(v))
        if sol is None or not self.span(degree).contains(v):
            raise ValueError("germ vector is not realized in this degree")
        terms = {}
        idx = 0
        for t, d, _ in zip(self.std_terms, self.std_degrees, self.std_germs):
            if d <= degree:
                c = sol[idx]
                idx += 1
                if c:
                    terms[(degree - d,) + t] = c
        return Poly(self.proj_vars, terms)

    def basis_monomials(self, i: int) -> list[Poly]:
        """Homogeneous monomial basis of the degree-i component (standard
        monomials padded by powers of X0)."""
        out = []
        for t, d in zip(self.std_terms, self.std_degrees):
            if d <= i:
                out.append(Poly.monomial(self.proj_vars, (i - d,) + t))
        return out

    def kx0_basis(self) -> list[tuple[Poly, int]]:
        """The module basis over K[x0]: standard monomials with their
        degrees, ascending in the term order."""
        return [(Poly.monomial(self.affine_vars, t), d)
                for t, d in zip(self.std_terms, self.std_degrees)]

    # -- derived configurations ------------------------------------------------

    def subscheme(self, keep) -> "ZeroDimScheme":
        keep = sorted(keep)
        if not keep:
            raise PreconditionError("a scheme needs at least one point")
        pts = [self.points[j] for j in keep]
        return ZeroDimScheme(self.n, pts, evaluation_ideal(pts, self.n))

    def remove_point(self, j: int) -> "ZeroDimScheme":
        if self.s < 2:
            raise PreconditionError("cannot remove the only point")
        if not 0 <= j < self.s:
            raise PreconditionError(f"point index {j} out of range")
        return self.subscheme([k for k in range(self.s) if k != j])

    # -- reporting ---------------------------------------------------------------

    def point_echo(self) -> list[dict]:
        out = []
        for fld in self.points:
            if "coords" in fld.source:
                coords = fld.source["coords"]
                out.append({"coords": ["1"] + [format_rational(c) for c in coords],
                            "kappa": fld.kappa})
            else:
                gens = fld.source.get("maximal_ideal")
                if gens is None:
                    gens = [g.format(fld.gb.order) for g in fld.gb.generators]
                out.append({"maximal_ideal": list(gens), "kappa": fld.kappa})
        return out

    def __repr__(self):
        return (f"ZeroDimScheme(n={self.n}, points={self.s}, "
                f"degree={self.degree}, r={self.r})")


def build_scheme(points: list[ResidueField], n: int) -> ZeroDimScheme:
    """Assemble a scheme from residue-field presentations; checks pairwise
    distinctness and basic Hilbert-function sanity."""
    if not points:
        raise PreconditionError("a scheme needs at least one point")
    seen: dict = {}
    for i, fld in enumerate(points):
        k = fld.key()
        if k in seen:
            raise PreconditionError(
                f"duplicate points at positions {seen[k]} and {i}")
        seen[k] = i
    return ZeroDimScheme(n, list(points), evaluation_ideal(points, n))


def scheme_from_rational_points(coords_list, n: int | None = None) -> ZeroDimScheme:
    """Build from affine coordinate tuples of rational points."""
    coords_list = [tuple(Fraction(c) for c in cs) for cs in coords_list]
    if n is None:
        n = len(coords_list[0])
    names = affine_names(n)
    pts = [rational_point_field(cs, names) for cs in coords_list]
    return build_scheme(pts, n)


def parse_scheme(obj: dict) -> ZeroDimScheme:
    """Parse the JSON scheme format:
    {"n": 2, "points": [{"coords": ["1","2","0"]},
                        {"maximal_ideal": ["x1^2+3", "x2"]}]}
    Coordinates are rationals as strings; the first coordinate must be
    nonzero (no point may lie on the hyperplane at infinity) and is
    normalized to 1.
    """
    if not isinstance(obj, dict):
        raise InputError("scheme file must contain a JSON object")
    try:
        n = int(obj["n"])
        raw_points = obj["points"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError("scheme object needs integer 'n' and a 'points' list") from exc
    if n < 1:
        raise InputError("ambient dimension must be >= 1")
    if not isinstance(raw_points, list) or not raw_points:
        raise InputError("'points' must be a non-empty list")
    names = affine_names(n)
    fields = []
    for k, spec in enumerate(raw_points):
        if not isinstance(spec, dict):
            raise InputError(f"point {k}: expected an object")
        if "coords" in spec:
            strs = spec["coords"]
            if len(strs) != n + 1:
                raise InputError(f"point {k}: expected {n + 1} coordinates")
            coords = [parse_rational(c) for c in strs]
            if coords[0] == 0:
                raise PreconditionError(
                    f"point {k} lies on the hyperplane at infinity")
            affine = [c / coords[0] for c in coords[1:]]
            fields.append(rational_point_field(affine, names))
        elif "maximal_ideal" in spec:
            gens = [parse_poly(s, names) for s in spec["maximal_ideal"]]
            fld = residue_field(gens, source={"maximal_ideal": list(spec["maximal_ideal"])})
            fields.append(fld)
        else:
            raise InputError(f"point {k}: need 'coords' or 'maximal_ideal'")
    return build_scheme(fields, n)


def load_scheme(path: str) -> ZeroDimScheme:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read scheme file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in scheme file: {exc}") from exc
    return parse_scheme(obj)
