"""Alternating forms on an oriented n-dimensional space (n <= 8).

Forms are stored sparsely as maps from strictly increasing multi-indices
(1-based) to scalars.  Everything here is a pure function of immutable
values: wedge, contraction, induced inner products, Hodge star and the
codifferential relative to a supplied differential operator.
"""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from . import linalg, scalars
from .scalars import Polynomial, Scalar, coerce, is_zero

Index = Tuple[int, ...]


class DimensionMismatchError(ValueError):
    pass


class DegreeError(ValueError):
    pass


def _check_index(idx: Index, dim: int) -> None:
    if any(i < 1 or i > dim for i in idx):
        raise ValueError("index %r out of range 1..%d" % (idx, dim))
    if any(a >= b for a, b in zip(idx, idx[1:])):
        raise ValueError("multi-index %r is not strictly increasing" % (idx,))


def sort_index(idx: Sequence[int]) -> Tuple[int, Index]:
    """Sort a multi-index, returning (sign, sorted tuple); sign 0 on repeats."""
    idx = list(idx)
    sign = 1
    # insertion sort, counting transpositions; fine for length <= 8
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(idx, idx[1:]):
        if a == b:
            return 0, tuple(idx)
    return sign, tuple(idx)


def merge_sign(a: Index, b: Index) -> Tuple[int, Optional[Index]]:
    """Sign of e^a ^ e^b relative to the merged increasing index."""
    if set(a) & set(b):
        return 0, None
    inversions = 0
    for x in a:
        # count entries of b smaller than x
        inversions += bisect_left(b, x)
    merged = tuple(sorted(a + b))
    return (-1 if inversions % 2 else 1), merged


class KForm:
    """A k-form; coefficients live in one of the scalar rings."""

    __slots__ = ("dim", "degree", "coeffs")

    def __init__(self, dim: int, degree: int,
                 coeffs: Optional[Mapping[Sequence[int], Scalar]] = None):
        if not 0 <= degree:
            raise DegreeError("negative degree")
        clean: Dict[Index, Scalar] = {}
        if coeffs:
            if degree > dim:
                raise DegreeError(
                    "a %d-form on a %d-dim space can only be zero" % (degree, dim))
            for idx, c in coeffs.items():
                idx = tuple(idx)
                if len(idx) != degree:
                    raise DegreeError("index %r has wrong length for degree %d"
                                      % (idx, degree))
                _check_index(idx, dim)
                c = coerce(c)
                if not is_zero(c):
                    clean[idx] = c
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", clean)

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, dim: int, degree: int) -> "KForm":
        f = cls.__new__(cls)
        object.__setattr__(f, "dim", dim)
        object.__setattr__(f, "degree", degree)
        object.__setattr__(f, "coeffs", {})
        return f

    @classmethod
    def monomial(cls, dim: int, idx: Sequence[int], coeff=1) -> "KForm":
        sign, sidx = sort_index(idx)
        if sign == 0:
            return cls.zero(dim, len(idx))
        return cls(dim, len(sidx), {sidx: coerce(coeff) * sign})

    @classmethod
    def from_terms(cls, dim: int, degree: int, *terms) -> "KForm":
        """Build from (coeff, indices...) tuples, e.g. (1, 1, 2, 3)."""
        acc: Dict[Index, Scalar] = {}
        for t in terms:
            coeff, idx = t[0], tuple(t[1:])
            sign, sidx = sort_index(idx)
            if sign == 0:
                continue
            val = acc.get(sidx, Fraction(0)) + coerce(coeff) * sign
            acc[sidx] = val
        return cls(dim, degree, acc)

    # -- basic structure ---------------------------------------------------
    def is_zero(self, tol: float = 0.0) -> bool:
        return all(is_zero(c, tol) for c in self.coeffs.values())

    def __bool__(self):
        return not self.is_zero()

    def __getitem__(self, idx: Sequence[int]) -> Scalar:
        sign, sidx = sort_index(idx)
        if sign == 0:
            return Fraction(0)
        c = self.coeffs.get(sidx, Fraction(0))
        return c * sign

    def items(self):
        return sorted(self.coeffs.items())

    def map_coeffs(self, f: Callable[[Scalar], Scalar]) -> "KForm":
        return KForm(self.dim, self.degree,
                     {i: f(c) for i, c in self.coeffs.items()})

    def to_float(self) -> "KForm":
        return self.map_coeffs(scalars.as_float)

    # -- linear operations -------------------------------------------------
    def _require_same_shape(self, other: "KForm") -> None:
        if self.dim != other.dim:
            raise DimensionMismatchError("forms on different dimensions")
        if self.degree != other.degree:
            raise DegreeError("forms of different degrees")

    def __add__(self, other: "KForm") -> "KForm":
        if not isinstance(other, KForm):
            return NotImplemented
        self._require_same_shape(other)
        acc = dict(self.coeffs)
        for i, c in other.coeffs.items():
            s = acc.get(i, Fraction(0)) + c
            if is_zero(s):
                acc.pop(i, None)
            else:
                acc[i] = s
        out = KForm.zero(self.dim, self.degree)
        object.__setattr__(out, "coeffs", acc)
        return out

    def __neg__(self) -> "KForm":
        return self.map_coeffs(lambda c: -c)

    def __sub__(self, other: "KForm") -> "KForm":
        if not isinstance(other, KForm):
            return NotImplemented
        return self + (-other)

    def __rmul__(self, s) -> "KForm":
        s = coerce(s)
        return KForm(self.dim, self.degree,
                     {i: s * c for i, c in self.coeffs.items()})

    __mul__ = __rmul__

    def __eq__(self, other):
        if not isinstance(other, KForm):
            return NotImplemented
        return (self.dim == other.dim and self.degree == other.degree
                and (self - other).is_zero())

    def __hash__(self):
        return hash((self.dim, self.degree, frozenset(self.coeffs.items())))

    def approx_eq(self, other: "KForm", tol: float = 1e-10) -> bool:
        self._require_same_shape(other)
        return (self - other).is_zero(tol)

    def wedge(self, other: "KForm") -> "KForm":
        return wedge(self, other)

    def __repr__(self):
        return "KForm(%d, %d, %s)" % (self.dim, self.degree, render_form(self))


@dataclass(frozen=True)
class Vector:
    dim: int
    components: Tuple[Scalar, ...]

    def __post_init__(self):
        object.__setattr__(self, "components",
                           tuple(coerce(c) for c in self.components))
        if len(self.components) != self.dim:
            raise DimensionMismatchError("component count != dim")

    @classmethod
    def basis(cls, dim: int, i: int) -> "Vector":
        return cls(dim, tuple(Fraction(1 if j == i else 0)
                              for j in range(1, dim + 1)))


class InnerProduct:
    """Symmetric positive-definite bilinear form on vectors."""

    __slots__ = ("matrix", "_inverse")

    def __init__(self, matrix):
        self.matrix = linalg.mat(matrix)
        n = len(self.matrix)
        if any(len(row) != n for row in self.matrix):
            raise ValueError("metric matrix must be square")
        if not linalg.is_symmetric(self.matrix, tol=0.0 if not self._has_float()
                                   else 1e-12):
            raise ValueError("metric matrix must be symmetric")
        self._inverse = None

    def _has_float(self) -> bool:
        return any(isinstance(x, float) for row in self.matrix for x in row)

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @classmethod
    def euclidean(cls, n: int) -> "InnerProduct":
        return cls(linalg.identity(n))

    @classmethod
    def diagonal(cls, entries) -> "InnerProduct":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)]
                    for i in range(n)])

    @property
    def inverse(self) -> linalg.Matrix:
        if self._inverse is None:
            self._inverse = linalg.inverse(self.matrix)
        return self._inverse

    def is_diagonal(self) -> bool:
        n = self.dim
        return all(is_zero(self.matrix[i][j])
                   for i in range(n) for j in range(n) if i != j)

    def is_identity(self) -> bool:
        n = self.dim
        return self.is_diagonal() and all(
            scalars.eq(self.matrix[i][i], Fraction(1)) for i in range(n))

    def is_positive_definite(self, tol: float = 0.0) -> bool:
        return linalg.is_positive_definite(self.matrix, tol)

    def pair(self, x: Vector, y: Vector) -> Scalar:
        total: Scalar = Fraction(0)
        for i, xi in enumerate(x.components):
            if is_zero(xi):
                continue
            for j, yj in enumerate(y.components):
                if is_zero(yj):
                    continue
                total = total + xi * self.matrix[i][j] * yj
        return total

    def to_float(self) -> "InnerProduct":
        return InnerProduct([[scalars.as_float(x) for x in row]
                             for row in self.matrix])

    def __eq__(self, other):
        if not isinstance(other, InnerProduct):
            return NotImplemented
        if self.dim != other.dim:
            return False
        return all(scalars.eq(a, b) for ra, rb in zip(self.matrix, other.matrix)
                   for a, b in zip(ra, rb))

    def __repr__(self):
        return "InnerProduct(%r)" % (self.matrix,)


@dataclass(frozen=True)
class Orientation:
    """Oriented volume: one nonzero top-degree term.

    A negative coefficient denotes the orientation opposite to the
    coframe order; induced volumes of 3-forms in dimension 7 genuinely
    come with either sign.
    """

    volume: KForm

    def __post_init__(self):
        vol = self.volume
        if vol.degree != vol.dim or len(vol.coeffs) != 1:
            raise ValueError("orientation needs exactly one top-degree term")
        c = next(iter(vol.coeffs.values()))
        if isinstance(c, Polynomial):
            raise ValueError("orientation coefficient must be numeric")
        if is_zero(c):
            raise ValueError("orientation coefficient must be nonzero")

    @classmethod
    def standard(cls, dim: int) -> "Orientation":
        return cls(KForm(dim, dim, {tuple(range(1, dim + 1)): Fraction(1)}))

    @classmethod
    def reversed(cls, dim: int) -> "Orientation":
        return cls(KForm(dim, dim, {tuple(range(1, dim + 1)): Fraction(-1)}))

    @property
    def dim(self) -> int:
        return self.volume.dim

    @property
    def coefficient(self) -> Scalar:
        return next(iter(self.volume.coeffs.values()))

    @property
    def sign(self) -> int:
        return 1 if self.coefficient > 0 else -1


def wedge(a: KForm, b: KForm) -> KForm:
    """Graded-commutative product; zero when degrees overflow the dimension."""
    if a.dim != b.dim:
        raise DimensionMismatchError("wedge of forms on different dimensions")
    deg = a.degree + b.degree
    if deg > a.dim:
        return KForm.zero(a.dim, deg)
    acc: Dict[Index, Scalar] = {}
    for ia, ca in a.coeffs.items():
        for ib, cb in b.coeffs.items():
            sign, merged = merge_sign(ia, ib)
            if sign == 0:
                continue
            val = acc.get(merged, Fraction(0)) + (ca * cb) * sign
            if is_zero(val):
                acc.pop(merged, None)
            else:
                acc[merged] = val
    return KForm(a.dim, deg, acc)


def wedge_all(*forms: KForm) -> KForm:
    out = forms[0]
    for f in forms[1:]:
        out = wedge(out, f)
    return out


def contract(x: Vector, a: KForm) -> KForm:
    """Interior product i_x; an anti-derivation lowering the degree by one."""
    if x.dim != a.dim:
        raise DimensionMismatchError("vector and form dimensions differ")
    if a.degree < 1:
        raise DegreeError("cannot contract a 0-form")
    acc: Dict[Index, Scalar] = {}
    for idx, c in a.coeffs.items():
        for pos, i in enumerate(idx):
            xi = x.components[i - 1]
            if is_zero(xi):
                continue
            rest = idx[:pos] + idx[pos + 1:]
            term = (xi * c) if pos % 2 == 0 else -(xi * c)
            val = acc.get(rest, Fraction(0)) + term
            if is_zero(val):
                acc.pop(rest, None)
            else:
                acc[rest] = val
    return KForm(a.dim, a.degree - 1, acc)


def contract_basis(i: int, a: KForm) -> KForm:
    return contract(Vector.basis(a.dim, i), a)


def form_inner(a: KForm, b: KForm, g: InnerProduct) -> Scalar:
    """Inner product on k-forms induced by g.

    Monomials of an orthonormal coframe are orthonormal; in general the
    Gram entries are minors of the inverse metric.
    """
    if a.dim != b.dim or a.dim != g.dim:
        raise DimensionMismatchError("dimension mismatch in form_inner")
    if a.degree != b.degree:
        raise DegreeError("inner product needs equal degrees")
    if a.degree == 0:
        ca = a.coeffs.get((), Fraction(0))
        cb = b.coeffs.get((), Fraction(0))
        return ca * cb
    ginv = g.inverse
    total: Scalar = Fraction(0)
    if g.is_diagonal():
        for idx, ca in a.coeffs.items():
            cb = b.coeffs.get(idx)
            if cb is None:
                continue
            w: Scalar = Fraction(1)
            for i in idx:
                w = w * ginv[i - 1][i - 1]
            total = total + ca * cb * w
        return total
    for ia, ca in a.coeffs.items():
        for ib, cb in b.coeffs.items():
            gram = linalg.submatrix_det(ginv, [i - 1 for i in ia],
                                        [j - 1 for j in ib])
            if is_zero(gram):
                continue
            total = total + ca * cb * gram
    return total


def form_norm_sq(a: KForm, g: InnerProduct) -> Scalar:
    return form_inner(a, a, g)


def complement_sign(idx: Index, dim: int) -> Tuple[int, Index]:
    """Complementary index and the sign of e^idx ^ e^comp = sign * vol."""
    comp = tuple(i for i in range(1, dim + 1) if i not in idx)
    sign, merged = merge_sign(idx, comp)
    return sign, comp


def metric_volume(g: InnerProduct, orient: Orientation) -> KForm:
    """The g-volume form in the given orientation; exact when det g is square."""
    d = linalg.det(g.matrix)
    v = scalars.ssqrt(d)
    if orient.sign < 0:
        v = -v
    n = g.dim
    return KForm(n, n, {tuple(range(1, n + 1)): v})


def hodge_star(a: KForm, g: InnerProduct, orient: Orientation) -> KForm:
    """Hodge dual fixed by a ^ *b = <a,b> dV for the oriented g-volume dV."""
    n = a.dim
    if g.dim != n or orient.dim != n:
        raise DimensionMismatchError("dimension mismatch in hodge_star")
    k = a.degree
    vol_coeff = next(iter(metric_volume(g, orient).coeffs.values()))
    ginv = g.inverse
    diag = g.is_diagonal()
    acc: Dict[Index, Scalar] = {}
    if diag:
        for idx, c in a.coeffs.items():
            w: Scalar = Fraction(1)
            for i in idx:
                w = w * ginv[i - 1][i - 1]
            sign, comp = complement_sign(idx, n)
            val = (c * w * vol_coeff) * sign
            if not is_zero(val):
                acc[comp] = acc.get(comp, Fraction(0)) + val
        return KForm(n, n - k, acc)
    for idx_l in combinations(range(1, n + 1), k):
        inner: Scalar = Fraction(0)
        for idx_j, c in a.coeffs.items():
            gram = linalg.submatrix_det(ginv, [i - 1 for i in idx_l],
                                        [j - 1 for j in idx_j])
            if not is_zero(gram):
                inner = inner + c * gram
        if is_zero(inner):
            continue
        sign, comp = complement_sign(idx_l, n)
        val = (inner * vol_coeff) * sign
        acc[comp] = acc.get(comp, Fraction(0)) + val
    return KForm(n, n - k, acc)


def codifferential(a: KForm, d: Callable[[KForm], KForm], g: InnerProduct,
                   orient: Orientation) -> KForm:
    """Adjoint of d: (-1)^(n(k+1)+1) * d * on k-forms.

    The sign makes the scalar-curvature identities close on the worked
    rank-one extension; see the conventions notes in the README.
    """
    n, k = a.dim, a.degree
    if k == 0:
        return KForm.zero(n, 0)
    sign = -1 if (n * (k + 1) + 1) % 2 else 1
    out = hodge_star(d(hodge_star(a, g, orient)), g, orient)
    return sign * out


def basis_indices(dim: int, degree: int) -> List[Index]:
    return list(combinations(range(1, dim + 1), degree))


def form_to_vec(a: KForm, indices: Optional[List[Index]] = None) -> List[Scalar]:
    if indices is None:
        indices = basis_indices(a.dim, a.degree)
    return [a.coeffs.get(i, Fraction(0)) for i in indices]


def vec_to_form(dim: int, degree: int, vec: Sequence[Scalar],
                indices: Optional[List[Index]] = None) -> KForm:
    if indices is None:
        indices = basis_indices(dim, degree)
    return KForm(dim, degree, dict(zip(indices, vec)))


def render_form(a: KForm, mul: str = "*") -> str:
    """Text in coframe notation, e.g. ``e123 + e145`` or ``1/2*e17``."""
    if a.degree == 0:
        c = a.coeffs.get((), Fraction(0))
        return scalars.render_scalar(c)
    if not a.coeffs:
        return "0"
    parts = []
    for idx, c in a.items():
        body = "e" + "".join(str(i) for i in idx)
        if isinstance(c, Polynomial):
            mono = None
            if len(c.terms) == 1:
                (m, q), = c.terms.items()
                if q == 1 and len(m) == 1 and m[0][1] == 1:
                    mono = m[0][0]
                elif q == -1 and len(m) == 1 and m[0][1] == 1:
                    mono = m[0][0]
                    parts.append(("-", "%s%s%s" % (mono, mul, body)))
                    continue
            if mono is not None:
                parts.append(("+", "%s%s%s" % (mono, mul, body)))
            else:
                parts.append(("+", "(%s)%s%s" % (c, mul, body)))
            continue
        neg = c < 0
        mag = -c if neg else c
        if scalars.eq(mag, Fraction(1)) and not isinstance(mag, float):
            frag = body
        else:
            frag = "%s%s%s" % (scalars.render_scalar(mag), mul, body)
        parts.append(("-" if neg else "+", frag))
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, frag in parts[1:]:
        text += "%s%s" % (sign, frag)
    return text
