"""Lie algebras given by structure equations (de^1, ..., de^n).

Includes the text parser for the tuple notation, the Chevalley-Eilenberg
differential, nilpotency and derivation machinery, and rank-one metric
solvable extensions.  The bracket convention is de^k(X,Y) = -e^k([X,Y]).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg, scalars
from .exterior import (DimensionMismatchError, InnerProduct, KForm, Vector,
                       render_form, wedge)
from .scalars import Polynomial, Scalar, is_zero


class StructureParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__("%s (at position %d)" % (message, position))
        self.position = position


class JacobiError(ValueError):
    pass


class NotDerivationError(ValueError):
    pass


class LieAlgebra:
    """dim + the coframe differentials; d extends as an anti-derivation."""

    __slots__ = ("dim", "d_coframe", "name", "_constants")

    def __init__(self, dim: int, d_coframe: Sequence[KForm],
                 name: Optional[str] = None, check: bool = True,
                 tol: float = 1e-9):
        d_coframe = tuple(d_coframe)
        if len(d_coframe) != dim:
            raise DimensionMismatchError("need one de^k per coframe element")
        for f in d_coframe:
            if f.dim != dim or (f.degree != 2 and f.coeffs):
                raise DimensionMismatchError("each de^k must be a 2-form")
        norm = tuple(f if f.degree == 2 else KForm.zero(dim, 2)
                     for f in d_coframe)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "d_coframe", norm)
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "_constants", None)
        if check:
            bad = self.jacobi_defect(tol=tol if self.is_float_ring() else 0.0)
            if bad is not None:
                k, defect = bad
                raise JacobiError(
                    "d^2 e^%d = %s is nonzero; structure equations violate "
                    "the Jacobi identity" % (k, render_form(defect)))

    # -- ring and validity -------------------------------------------------
    def is_float_ring(self) -> bool:
        return any(isinstance(c, float)
                   for f in self.d_coframe for c in f.coeffs.values())

    def is_polynomial_ring(self) -> bool:
        return any(isinstance(c, Polynomial)
                   for f in self.d_coframe for c in f.coeffs.values())

    def jacobi_defect(self, tol: float = 0.0):
        for k, f in enumerate(self.d_coframe, start=1):
            dd = self.d(f)
            if not dd.is_zero(tol):
                return k, dd
        return None

    # -- Chevalley-Eilenberg differential -----------------------------------
    def d(self, a: KForm) -> KForm:
        """Anti-derivation extension of the coframe differentials."""
        if a.dim != self.dim:
            raise DimensionMismatchError("form does not live on this algebra")
        if a.degree == 0:
            return KForm.zero(self.dim, 1)
        out = KForm.zero(self.dim, a.degree + 1)
        for idx, c in a.coeffs.items():
            for pos, i in enumerate(idx):
                di = self.d_coframe[i - 1]
                if not di.coeffs:
                    continue
                left = KForm.monomial(self.dim, idx[:pos])
                right = KForm.monomial(self.dim, idx[pos + 1:])
                term = wedge(wedge(left, di), right)
                sign = c if pos % 2 == 0 else -c
                out = out + sign * term
        return out

    # -- structure constants and brackets -----------------------------------
    @property
    def structure_constants(self):
        """c[k][i][j] with [e_i, e_j] = sum_k c^k_ij e_k (0-based indices)."""
        if self._constants is None:
            n = self.dim
            c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
            for k in range(n):
                for (i, j), coeff in self.d_coframe[k].coeffs.items():
                    c[k][i - 1][j - 1] = -coeff
                    c[k][j - 1][i - 1] = coeff
            object.__setattr__(self, "_constants", c)
        return self._constants

    def bracket_basis(self, i: int, j: int) -> Vector:
        """[e_i, e_j] for 1-based basis indices."""
        c = self.structure_constants
        return Vector(self.dim,
                      tuple(c[k][i - 1][j - 1] for k in range(self.dim)))

    def bracket(self, x: Vector, y: Vector) -> Vector:
        c = self.structure_constants
        n = self.dim
        comps = []
        for k in range(n):
            total: Scalar = Fraction(0)
            for i in range(n):
                xi = x.components[i]
                if is_zero(xi):
                    continue
                for j in range(n):
                    yj = y.components[j]
                    if is_zero(yj) or is_zero(c[k][i][j]):
                        continue
                    total = total + c[k][i][j] * xi * yj
            comps.append(total)
        return Vector(n, tuple(comps))

    def rename(self, name: str) -> "LieAlgebra":
        return LieAlgebra(self.dim, self.d_coframe, name=name, check=False)

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.dim == other.dim and all(
            a == b for a, b in zip(self.d_coframe, other.d_coframe))

    def __repr__(self):
        label = self.name or "LieAlgebra"
        return "%s%s" % (label, render_structure_equations(self))


@dataclass(frozen=True)
class Derivation:
    """Matrix D with D[x,y] = [Dx,y] + [x,Dy] on the given algebra."""

    matrix: linalg.Matrix

    @classmethod
    def checked(cls, algebra: LieAlgebra, matrix, tol: float = 1e-9) -> "Derivation":
        matrix = linalg.mat(matrix)
        if not is_derivation(algebra, matrix, tol=tol):
            raise NotDerivationError("matrix fails the derivation identity")
        return cls(matrix)


@dataclass(frozen=True)
class MetricLieAlgebra:
    algebra: LieAlgebra
    metric: InnerProduct

    def __post_init__(self):
        if self.metric.dim != self.algebra.dim:
            raise DimensionMismatchError("metric dimension != algebra dimension")

    @classmethod
    def euclidean(cls, algebra: LieAlgebra) -> "MetricLieAlgebra":
        return cls(algebra, InnerProduct.euclidean(algebra.dim))


# ---------------------------------------------------------------------------
# parsing and rendering
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<mono>e\d+)
  | (?P<number>\d+\.\d*|\.\d+|\d+)
  | (?P<symbol>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/(),])
""", re.VERBOSE)


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise StructureParseError("unexpected character %r" % text[pos], pos)
        if m.lastgroup != "ws":
            tokens.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _FormParser:
    """Sums of coefficient-times-monomial terms over one of the rings."""

    def __init__(self, tokens, dim: int):
        self.tokens = tokens
        self.i = 0
        self.dim = dim

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, val, pos = self.next()
        if kind != "op" or val != op:
            raise StructureParseError("expected %r, found %r" % (op, val), pos)

    def parse_number(self):
        kind, val, pos = self.next()
        if kind != "number":
            raise StructureParseError("expected a number, found %r" % val, pos)
        if "." in val:
            return float(val)
        value = Fraction(int(val))
        kind, nxt, _ = self.peek()
        if kind == "op" and nxt == "/":
            self.next()
            kind, den, dpos = self.next()
            if kind != "number" or "." in den:
                raise StructureParseError("expected an integer denominator", dpos)
            if int(den) == 0:
                raise StructureParseError("zero denominator", dpos)
            value = value / int(den)
        return value

    def parse_term(self):
        """Returns (coefficient, index tuple or None for a pure scalar)."""
        coeff: Scalar = Fraction(1)
        idx = None
        saw_factor = False
        while True:
            kind, val, pos = self.peek()
            if kind == "number":
                num = self.parse_number()
                if isinstance(num, float):
                    coeff = scalars.as_float(coeff) * num \
                        if not isinstance(coeff, Polynomial) else None
                    if coeff is None:
                        raise StructureParseError(
                            "decimal coefficients cannot mix with symbols", pos)
                else:
                    coeff = coeff * num
                saw_factor = True
            elif kind == "symbol":
                self.next()
                if isinstance(coeff, float):
                    raise StructureParseError(
                        "decimal coefficients cannot mix with symbols", pos)
                coeff = coeff * Polynomial.variable(val)
                saw_factor = True
            elif kind == "mono":
                self.next()
                if idx is not None:
                    raise StructureParseError("two coframe monomials in one term",
                                              pos)
                digits = val[1:]
                idx = tuple(int(ch) for ch in digits)
                for i in idx:
                    if i < 1 or i > self.dim:
                        raise StructureParseError(
                            "coframe index %d out of range 1..%d" % (i, self.dim),
                            pos)
                saw_factor = True
            elif kind == "op" and val == "*":
                self.next()
                continue
            else:
                break
        if not saw_factor:
            kind, val, pos = self.peek()
            raise StructureParseError("expected a term, found %r" % val, pos)
        return coeff, idx

    def parse_form(self, degree_hint: Optional[int] = None) -> KForm:
        terms: List[Tuple[Scalar, Optional[Tuple[int, ...]]]] = []
        sign = 1
        kind, val, pos = self.peek()
        if kind == "op" and val in "+-":
            self.next()
            sign = -1 if val == "-" else 1
        while True:
            coeff, idx = self.parse_term()
            terms.append((sign * coeff if sign < 0 else coeff, idx))
            kind, val, pos = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                sign = -1 if val == "-" else 1
                continue
            break
        real_terms = [(c, i) for c, i in terms if i is not None]
        scalar_terms = [(c, i) for c, i in terms if i is None]
        for c, _ in scalar_terms:
            if not is_zero(c):
                raise StructureParseError(
                    "standalone nonzero scalar in a form expression", pos)
        if not real_terms:
            degree = degree_hint if degree_hint is not None else 2
            return KForm.zero(self.dim, degree)
        degree = len(real_terms[0][1])
        if any(len(i) != degree for _, i in real_terms):
            raise StructureParseError("mixed degrees in one form", pos)
        return KForm.from_terms(self.dim, degree,
                                *[(c,) + i for c, i in real_terms])


def parse_form(text: str, dim: int, degree: Optional[int] = None) -> KForm:
    """Parse a single form, e.g. ``e12+e34-e56`` or ``1/2*e17``."""
    parser = _FormParser(_tokenize(text), dim)
    form = parser.parse_form(degree_hint=degree)
    kind, val, pos = parser.peek()
    if kind != "end":
        raise StructureParseError("trailing input %r" % val, pos)
    if degree is not None and form.degree != degree and form.coeffs:
        raise StructureParseError("expected a %d-form" % degree, 0)
    return form


def parse_structure_equations(text: str, name: Optional[str] = None,
                              check: bool = True) -> LieAlgebra:
    """Parse the tuple notation, e.g. ``(0,0,0,0,e13-e24,e14+e23)``.

    The k-th entry is de^k.  Coefficients may be rationals ``p/q``,
    decimals, or the symbolic names accepted by the polynomial ring.
    Raises on syntax errors (with position) and on Jacobi violations.
    """
    stripped = text.strip()
    # split at top level commas after validating the outer parentheses
    if not stripped.startswith("(") or not stripped.endswith(")"):
        raise StructureParseError("structure equations must be parenthesized", 0)
    inner = stripped[1:-1]
    pieces = [p for p in inner.split(",")]
    dim = len(pieces)
    if dim < 1 or dim > 8:
        raise StructureParseError("supported dimensions are 1..8", 0)
    forms = []
    offset = 1
    for piece in pieces:
        if not piece.strip():
            raise StructureParseError("empty structure-equation entry", offset)
        try:
            forms.append(parse_form(piece, dim, degree=2))
        except StructureParseError as exc:
            raise StructureParseError(str(exc).rsplit(" (at position", 1)[0],
                                      offset + exc.position) from None
        offset += len(piece) + 1
    return LieAlgebra(dim, forms, name=name, check=check)


def render_structure_equations(algebra: LieAlgebra) -> str:
    return "(%s)" % ",".join(render_form(f) for f in algebra.d_coframe)


# ---------------------------------------------------------------------------
# nilpotency, derivations, extensions
# ---------------------------------------------------------------------------

def _span_rank(vectors: List[Tuple[Scalar, ...]], tol: float):
    """Reduce a spanning set to a basis (rows of the rref)."""
    if not vectors:
        return []
    rows, pivots = linalg.rref([list(v) for v in vectors], tol=tol)
    return [tuple(rows[r]) for r in range(len(pivots))]


def is_nilpotent(algebra: LieAlgebra, tol: float = 1e-9):
    """(True, step) when the lower central series vanishes, else (False, None)."""
    if algebra.is_polynomial_ring():
        raise ValueError("nilpotency over the polynomial ring is not decided "
                         "here; specialize the symbols first")
    use_tol = tol if algebra.is_float_ring() else 0.0
    n = algebra.dim
    current = [Vector.basis(n, i).components for i in range(1, n + 1)]
    step = 0
    prev_dim = len(current)
    while True:
        step += 1
        nxt = []
        for i in range(1, n + 1):
            ei = Vector.basis(n, i)
            for v in current:
                w = algebra.bracket(ei, Vector(n, v))
                if any(not is_zero(c, use_tol) for c in w.components):
                    nxt.append(w.components)
        basis = _span_rank(nxt, use_tol)
        if not basis:
            return True, step
        if len(basis) >= prev_dim:
            return False, None
        prev_dim = len(basis)
        current = basis


def is_derivation(algebra: LieAlgebra, matrix, tol: float = 1e-9) -> bool:
    matrix = linalg.mat(matrix)
    n = algebra.dim
    use_tol = tol if algebra.is_float_ring() or any(
        isinstance(x, float) for row in matrix for x in row) else 0.0
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            lhs = _apply(matrix, algebra.bracket_basis(i, j))
            rhs1 = algebra.bracket(_col_vector(matrix, i), Vector.basis(n, j))
            rhs2 = algebra.bracket(Vector.basis(n, i), _col_vector(matrix, j))
            for a, b, c in zip(lhs.components, rhs1.components, rhs2.components):
                if not is_zero(a - b - c, use_tol):
                    return False
    return True


def _apply(matrix: linalg.Matrix, v: Vector) -> Vector:
    return Vector(v.dim, linalg.mat_vec(matrix, v.components))


def _col_vector(matrix: linalg.Matrix, j: int) -> Vector:
    n = len(matrix)
    return Vector(n, tuple(matrix[i][j - 1] for i in range(n)))


def derivation_space(algebra: LieAlgebra, tol: float = 1e-10) -> List[linalg.Matrix]:
    """Basis of the space of derivations, as n x n matrices.

    Solves D[e_i,e_j] = [De_i,e_j] + [e_i,De_j] as a linear system in the
    n^2 entries of D; exact over the rational ring, SVD over floats.
    """
    n = algebra.dim
    c = algebra.structure_constants
    rows = []
    float_ring = algebra.is_float_ring()
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                # coefficient of D[p][q] in equation (i,j,k)
                row = [Fraction(0)] * (n * n)
                for m in range(n):
                    row[k * n + m] += c[m][i][j]          # D[k][m] c^m_ij
                for p in range(n):
                    row[p * n + i] -= c[k][p][j]          # -c^k_pj D[p][i]
                for q in range(n):
                    row[q * n + j] -= c[k][i][q]          # -c^k_iq D[q][j]
                rows.append(row)
    if float_ring:
        import numpy as np
        a = np.array([[scalars.as_float(x) for x in row] for row in rows])
        kernel = linalg.nullspace_float(a, tol=tol)
        out = []
        for v in kernel:
            out.append(tuple(tuple(float(v[p * n + q]) for q in range(n))
                             for p in range(n)))
        return out
    kernel = linalg.nullspace(linalg.mat(rows))
    out = []
    for v in kernel:
        out.append(tuple(tuple(v[p * n + q] for q in range(n))
                         for p in range(n)))
    return out


def rank_one_extension(metric_algebra: MetricLieAlgebra, matrix,
                       tol: float = 1e-9, name: Optional[str] = None
                       ) -> MetricLieAlgebra:
    """Adjoin a unit direction H acting on the old algebra by a derivation.

    The new coframe satisfies de^k = old de^k + (sum_q D_kq e^q) ^ e^(n+1)
    and de^(n+1) = 0; the metric extends orthogonally with |H| = 1.
    """
    algebra = metric_algebra.algebra
    matrix = linalg.mat(matrix)
    if not is_derivation(algebra, matrix, tol=tol):
        raise NotDerivationError("extension requires a derivation")
    n = algebra.dim
    new_dim = n + 1
    new_coframe = []
    for k in range(n):
        lifted = KForm(new_dim, 2, dict(algebra.d_coframe[k].coeffs))
        extra = {}
        for q in range(n):
            dkq = matrix[k][q]
            if not is_zero(dkq):
                extra[(q + 1, new_dim)] = dkq
        new_coframe.append(lifted + KForm(new_dim, 2, extra))
    new_coframe.append(KForm.zero(new_dim, 2))
    g = metric_algebra.metric.matrix
    rows = [list(g[i]) + [Fraction(0)] for i in range(n)]
    rows.append([Fraction(0)] * n + [Fraction(1)])
    return MetricLieAlgebra(
        LieAlgebra(new_dim, new_coframe, name=name, tol=tol),
        InnerProduct(rows))


def restrict(algebra: LieAlgebra, m: int, name: Optional[str] = None) -> LieAlgebra:
    """Sub-coframe algebra on the first m directions (terms beyond m dropped)."""
    forms = []
    for k in range(m):
        kept = {idx: c for idx, c in algebra.d_coframe[k].coeffs.items()
                if all(i <= m for i in idx)}
        forms.append(KForm(m, 2, kept))
    return LieAlgebra(m, forms, name=name)


def specialize(algebra: LieAlgebra, assignment: Dict[str, Fraction],
               name: Optional[str] = None) -> LieAlgebra:
    """Substitute rational values for the symbols of a polynomial-ring algebra."""
    def conv(c: Scalar) -> Scalar:
        if isinstance(c, Polynomial):
            return c.evaluate(assignment)
        return c
    forms = [f.map_coeffs(conv) for f in algebra.d_coframe]
    return LieAlgebra(algebra.dim, forms, name=name)


def to_float_algebra(algebra: LieAlgebra) -> LieAlgebra:
    forms = [f.to_float() for f in algebra.d_coframe]
    return LieAlgebra(algebra.dim, forms, name=algebra.name, check=False)
