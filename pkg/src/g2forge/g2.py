"""Positive 3-forms in dimension seven: induced metric, type decomposition,
intrinsic torsion, curvature formulas and the product construction from a
coupled pair on a six-dimensional factor.

Torsion forms are extracted by orthogonal projection onto the irreducible
pieces of the 4- and 5-form decompositions, then validated by exact
reconstruction of d(phi) and d(*phi).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from . import linalg, scalars
from .exterior import (InnerProduct, KForm, Orientation, basis_indices,
                       codifferential, contract_basis, form_inner, form_to_vec,
                       hodge_star, vec_to_form, wedge)
from .liealg import LieAlgebra, MetricLieAlgebra, restrict
from .scalars import Polynomial, Scalar, is_zero
from .stable_forms import StablePair, coupling_constant


class NotPositiveError(ValueError):
    """The 3-form does not induce a positive-definite metric."""


class TorsionInconsistencyError(RuntimeError):
    """The torsion systems failed to close; conventions or input are broken."""


class MetricMismatchError(ValueError):
    pass


CLASS_PARALLEL = "parallel"
CLASS_CALIBRATED = "calibrated"
CLASS_LCC = "locally_conformal_calibrated"
CLASS_LCP = "locally_conformal_parallel"
CLASS_GENERIC = "generic"


@dataclass(frozen=True)
class G2Structure:
    """Metric data of a positive 3-form.

    ``volume`` is the g-volume in the standard coframe orientation (the
    convention under which the published torsion values are stated);
    ``orientation_sign`` records whether the form itself induces that
    orientation (+1) or the reversed one (-1).
    """

    phi: KForm
    metric: InnerProduct
    volume: Orientation
    star_phi: KForm
    orientation_sign: int = 1

    def is_float_ring(self) -> bool:
        return any(isinstance(c, float) for c in self.phi.coeffs.values())


@dataclass(frozen=True)
class TorsionForms:
    tau0: Scalar
    tau1: KForm
    tau2: KForm
    tau3: KForm
    class_label: str


@dataclass(frozen=True)
class StarRicci:
    matrix: linalg.Matrix
    trace: Scalar
    star_einstein: bool
    symmetric: bool


def b_form(phi: KForm) -> linalg.Matrix:
    """B(X,Y) = (1/6) i_X phi ^ i_Y phi ^ phi, in units of e^{1..7}."""
    if phi.dim != 7 or phi.degree != 3:
        raise ValueError("b_form expects a 3-form in dimension 7")
    top = tuple(range(1, 8))
    contractions = [contract_basis(i, phi) for i in range(1, 8)]
    rows = []
    for i in range(7):
        row = []
        for j in range(7):
            if j < i:
                row.append(rows[j][i])
                continue
            w = wedge(wedge(contractions[i], contractions[j]), phi)
            row.append(w.coeffs.get(top, Fraction(0)) / 6)
        rows.append(row)
    return linalg.mat(rows)


def metric_from_phi(phi: KForm, tol: float = 1e-12) -> G2Structure:
    """Extract (g, dV, *phi) from a positive 3-form.

    g = B det(B)^(-1/9) in the reference coframe; the defining relation
    g(X,Y) dV = (1/6) i_X phi ^ i_Y phi ^ phi is then verified exactly.
    """
    b = b_form(phi)
    float_ring = any(isinstance(c, float) for c in phi.coeffs.values())
    det_b = linalg.det(b)
    if isinstance(det_b, Polynomial):
        if not det_b.is_constant():
            raise NotPositiveError("symbolic 3-forms are not supported here")
        det_b = det_b.constant_value()
    if is_zero(det_b, tol if float_ring else 0.0):
        raise NotPositiveError("degenerate 3-form: det B = 0")
    # det B = v^9 with v of either sign: the form picks its own orientation
    v = scalars.snth_root(det_b, 9)
    sign = 1 if (v > 0 if not isinstance(v, float) else v > 0.0) else -1
    g_rows = tuple(tuple(x / v for x in row) for row in b)
    metric = InnerProduct(g_rows)
    if not metric.is_positive_definite(tol if float_ring else 0.0):
        raise NotPositiveError("B form is not positive definite")
    abs_v = v if sign > 0 else -v
    volume = Orientation(KForm(7, 7, {tuple(range(1, 8)): abs_v}))
    # defining relation, checked on all 49 basis pairs: g * v == B with the
    # signed volume coefficient
    use_tol = tol if float_ring else 0.0
    for i in range(7):
        for j in range(7):
            if not is_zero(g_rows[i][j] * v - b[i][j], use_tol):
                raise TorsionInconsistencyError("metric extraction failed "
                                                "the defining relation")
    star = hodge_star(phi, metric, volume)
    return G2Structure(phi=phi, metric=metric, volume=volume, star_phi=star,
                       orientation_sign=sign)


# ---------------------------------------------------------------------------
# projections onto irreducible pieces
# ---------------------------------------------------------------------------

def _gram_project(target: KForm, basis: List[KForm], g: InnerProduct,
                  tol: float) -> Tuple[KForm, List[Scalar]]:
    """g-orthogonal projection of target onto span(basis)."""
    gram = [[form_inner(a, b, g) for b in basis] for a in basis]
    rhs = [form_inner(a, target, g) for a in basis]
    float_ring = any(isinstance(x, float) for row in gram for x in row) or \
        any(isinstance(x, float) for x in rhs)
    if float_ring:
        import numpy as np
        a = np.array([[scalars.as_float(x) for x in row] for row in gram])
        b = np.array([scalars.as_float(x) for x in rhs])
        x, _ = linalg.lstsq(a, b)
        coeffs: List[Scalar] = [float(c) for c in x]
    else:
        sol = linalg.solve(linalg.mat(gram), rhs)
        if sol is None:
            raise TorsionInconsistencyError("projection system is singular")
        coeffs = list(sol)
    out = KForm.zero(target.dim, target.degree)
    for c, f in zip(coeffs, basis):
        out = out + c * f
    return out, coeffs


def two_form_components(a: KForm, s: G2Structure, tol: float = 1e-10
                        ) -> Dict[str, KForm]:
    """Split a 2-form into the 7- and 14-dimensional pieces.

    The 7-part is spanned by contractions i_X phi; the 14-part is the
    g-orthogonal complement and wedges to zero against *phi.
    """
    if a.degree != 2:
        raise ValueError("expected a 2-form")
    basis7 = [contract_basis(i, s.phi) for i in range(1, 8)]
    use_tol = tol if s.is_float_ring() else 0.0
    p7, _ = _gram_project(a, basis7, s.metric, use_tol)
    p14 = a - p7
    if not wedge(p14, s.star_phi).is_zero(max(use_tol, tol if s.is_float_ring() else 0.0)):
        raise TorsionInconsistencyError("14-part failed its defining relation")
    return {"7": p7, "14": p14}


def three_form_components(a: KForm, s: G2Structure, tol: float = 1e-10
                          ) -> Dict[str, KForm]:
    """Split a 3-form into the 1-, 7- and 27-dimensional pieces."""
    if a.degree != 3:
        raise ValueError("expected a 3-form")
    g = s.metric
    use_tol = tol if s.is_float_ring() else 0.0
    phi_norm = form_inner(s.phi, s.phi, g)
    p1 = (form_inner(a, s.phi, g) / phi_norm) * s.phi
    basis7 = [contract_basis(i, s.star_phi) for i in range(1, 8)]
    p7, _ = _gram_project(a, basis7, g, use_tol)
    p27 = a - p1 - p7
    if not wedge(p27, s.phi).is_zero(use_tol) or \
            not wedge(p27, s.star_phi).is_zero(use_tol):
        raise TorsionInconsistencyError("27-part failed its defining relations")
    return {"1": p1, "7": p7, "27": p27}


def type_project(a: KForm, s: G2Structure, tol: float = 1e-10) -> Dict[str, KForm]:
    if a.degree == 2:
        return two_form_components(a, s, tol)
    if a.degree == 3:
        return three_form_components(a, s, tol)
    raise ValueError("type projection supports degrees 2 and 3")


def two_form_14_basis(s: G2Structure, tol: float = 1e-10) -> List[KForm]:
    """Exact basis of the 14-dimensional piece: kernel of beta ^ *phi."""
    idx2 = basis_indices(7, 2)
    idx6 = basis_indices(7, 6)
    rows = []
    for i6 in idx6:
        row = []
        for i2 in idx2:
            w = wedge(KForm(7, 2, {i2: Fraction(1)}), s.star_phi)
            row.append(w.coeffs.get(i6, Fraction(0)))
        rows.append(row)
    float_ring = s.is_float_ring()
    if float_ring:
        import numpy as np
        a = np.array([[scalars.as_float(x) for x in row] for row in rows])
        kernel = linalg.nullspace_float(a, tol=tol)
        return [vec_to_form(7, 2, [float(x) for x in v], idx2) for v in kernel]
    kernel = linalg.nullspace(linalg.mat(rows))
    return [vec_to_form(7, 2, v, idx2) for v in kernel]


# ---------------------------------------------------------------------------
# torsion
# ---------------------------------------------------------------------------

def torsion_forms(algebra: LieAlgebra, phi: KForm,
                  structure: Optional[G2Structure] = None,
                  tol: float = 1e-10) -> TorsionForms:
    """Unique (tau0, tau1, tau2, tau3) with

        d phi   = tau0 * (*phi) + 3 tau1 ^ phi + *tau3,
        d *phi  = 4 tau1 ^ (*phi) + tau2 ^ phi,

    where tau2 pairs to zero with *phi and tau3 wedges to zero with both
    phi and *phi.  Both identities are re-checked after solving.
    """
    if algebra.dim != 7:
        raise ValueError("torsion analysis lives on 7-dimensional algebras")
    s = structure if structure is not None else metric_from_phi(phi)
    g, orient, star_phi = s.metric, s.volume, s.star_phi
    float_ring = s.is_float_ring() or algebra.is_float_ring()
    use_tol = tol if float_ring else 0.0
    dphi = algebra.d(phi)
    dstar = algebra.d(star_phi)

    # --- 4-form equation ---------------------------------------------------
    tau0 = form_inner(dphi, star_phi, g) / form_inner(star_phi, star_phi, g)
    basis47 = [wedge(KForm(7, 1, {(i,): Fraction(1)}), phi) for i in range(1, 8)]
    p47, coeffs47 = _gram_project(dphi, basis47, g, use_tol)
    tau1 = KForm(7, 1, {(i + 1,): c / 3 for i, c in enumerate(coeffs47)
                        if not is_zero(c)})
    star_tau3 = dphi - tau0 * star_phi - p47
    tau3 = hodge_star(star_tau3, g, orient)
    if not wedge(tau3, phi).is_zero(use_tol) or \
            not wedge(tau3, star_phi).is_zero(use_tol):
        raise TorsionInconsistencyError("tau3 escaped the 27-dimensional type")

    # --- 5-form equation ---------------------------------------------------
    basis57 = [wedge(KForm(7, 1, {(i,): Fraction(1)}), star_phi)
               for i in range(1, 8)]
    p57, coeffs57 = _gram_project(dstar, basis57, g, use_tol)
    tau1_bis = KForm(7, 1, {(i + 1,): c / 4 for i, c in enumerate(coeffs57)
                            if not is_zero(c)})
    if not (tau1 - tau1_bis).is_zero(max(use_tol, tol if float_ring else 0.0)):
        raise TorsionInconsistencyError(
            "tau1 from d(phi) and d(*phi) disagree")
    rest = dstar - p57
    basis14 = two_form_14_basis(s, tol)
    idx5 = basis_indices(7, 5)
    cols = [form_to_vec(wedge(b, phi), idx5) for b in basis14]
    rows = [[cols[c][r] for c in range(len(basis14))] for r in range(len(idx5))]
    rhs = form_to_vec(rest, idx5)
    if float_ring:
        import numpy as np
        a = np.array([[scalars.as_float(x) for x in row] for row in rows])
        b_vec = np.array([scalars.as_float(x) for x in rhs])
        x, res = linalg.lstsq(a, b_vec)
        if res > tol:
            raise TorsionInconsistencyError("tau2 system residual %.3g" % res)
        tau2 = KForm.zero(7, 2)
        for c, f in zip(x, basis14):
            tau2 = tau2 + float(c) * f
    else:
        sol = linalg.solve(linalg.mat(rows), rhs)
        if sol is None:
            raise TorsionInconsistencyError("tau2 system is inconsistent")
        tau2 = KForm.zero(7, 2)
        for c, f in zip(sol, basis14):
            tau2 = tau2 + c * f

    # --- exact reconstruction ------------------------------------------------
    recon4 = tau0 * star_phi + 3 * wedge(tau1, phi) + star_tau3
    recon5 = 4 * wedge(tau1, star_phi) + wedge(tau2, phi)
    if not (recon4 - dphi).is_zero(use_tol) or \
            not (recon5 - dstar).is_zero(use_tol):
        raise TorsionInconsistencyError("torsion reconstruction failed")

    label = _classify(tau0, tau1, tau2, tau3, use_tol)
    return TorsionForms(tau0=tau0, tau1=tau1, tau2=tau2, tau3=tau3,
                        class_label=label)


def _classify(tau0, tau1, tau2, tau3, tol) -> str:
    z0 = is_zero(tau0, tol)
    z1 = tau1.is_zero(tol)
    z2 = tau2.is_zero(tol)
    z3 = tau3.is_zero(tol)
    if z0 and z1 and z2 and z3:
        return CLASS_PARALLEL
    if z0 and z1 and z3:
        return CLASS_CALIBRATED
    if z0 and z3 and z2:
        return CLASS_LCP
    if z0 and z3:
        return CLASS_LCC
    return CLASS_GENERIC


def scalar_curvature_from_torsion(t: TorsionForms, s: G2Structure,
                                  algebra: LieAlgebra) -> Scalar:
    """Scal = 12 delta(tau1) + 30 |tau1|^2 - (1/2) |tau2|^2.

    Valid whenever tau0 and tau3 vanish (conformally calibrated classes,
    with the calibrated case tau1 = 0 included).
    """
    if t.class_label == CLASS_GENERIC:
        raise ValueError("no closed-form scalar curvature for generic torsion")
    g, orient = s.metric, s.volume
    delta_tau1 = codifferential(t.tau1, algebra.d, g, orient)
    dt1 = delta_tau1.coeffs.get((), Fraction(0))
    norm1 = form_inner(t.tau1, t.tau1, g)
    norm2 = form_inner(t.tau2, t.tau2, g)
    return 12 * dt1 + 30 * norm1 - Fraction(1, 2) * norm2


def star_ricci(m: MetricLieAlgebra, phi: KForm,
               structure: Optional[G2Structure] = None,
               tol: float = 1e-10) -> StarRicci:
    """Contraction rho*_{sm} = R_{ijkl} phi_{ijs} phi_{klm} in an
    orthonormal frame, with the star-Einstein verdict on its traceless part.
    """
    from .curvature import curvature_tensors
    s = structure if structure is not None else metric_from_phi(phi)
    float_ring = s.is_float_ring() or m.algebra.is_float_ring()
    use_tol = tol if float_ring else 0.0
    if not all(scalars.eq(a, b, use_tol)
               for ra, rb in zip(s.metric.matrix, m.metric.matrix)
               for a, b in zip(ra, rb)):
        raise MetricMismatchError("phi does not induce the supplied metric")
    if not m.metric.is_identity():
        raise MetricMismatchError("star-Ricci is computed in an orthonormal "
                                  "coframe; re-express the metric first")
    tensors = curvature_tensors(m)
    n = 7
    # full antisymmetric coefficients phi_{ijk}
    phi_full: Dict[Tuple[int, int, int], Scalar] = {}
    for (i, j, k), c in phi.coeffs.items():
        for (a, b, cc), sign in _perms3():
            phi_full[_apply3((i, j, k), (a, b, cc))] = c * sign
    rows = []
    for ss in range(1, 8):
        row = []
        for mm in range(1, 8):
            total: Scalar = Fraction(0)
            for (i, j, k, l), r in tensors.riemann.items():
                c1 = phi_full.get((i, j, ss))
                if c1 is None:
                    continue
                c2 = phi_full.get((k, l, mm))
                if c2 is None:
                    continue
                total = total + r * c1 * c2
            row.append(total)
        rows.append(row)
    matrix = linalg.mat(rows)
    trace: Scalar = Fraction(0)
    for i in range(7):
        trace = trace + matrix[i][i]
    symmetric = linalg.is_symmetric(matrix, use_tol)
    star_einstein = True
    for i in range(7):
        for j in range(7):
            expect = trace / 7 if i == j else Fraction(0)
            if not is_zero(matrix[i][j] - expect, use_tol):
                star_einstein = False
    return StarRicci(matrix=matrix, trace=trace, star_einstein=star_einstein,
                     symmetric=symmetric)


def _perms3():
    # permutations of (0,1,2) with signs
    return (((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
            ((1, 0, 2), -1), ((0, 2, 1), -1), ((2, 1, 0), -1))


def _apply3(idx, perm):
    return (idx[perm[0]], idx[perm[1]], idx[perm[2]])


def product_g2(pair: StablePair, ext: LieAlgebra,
               base: Optional[LieAlgebra] = None,
               tol: float = 1e-10) -> Tuple[KForm, G2Structure]:
    """phi = omega ^ e7 + sigma on a rank-one extension with closed e7.

    The pair must be coupled on the six-dimensional factor; the caller
    analyzes the result with torsion_forms.
    """
    if ext.dim != 7:
        raise ValueError("extension must be 7-dimensional")
    if ext.d_coframe[6].coeffs:
        raise ValueError("the new coframe direction must be closed")
    if base is None:
        base = restrict(ext, 6)
    c = coupling_constant(base, pair.omega, pair.sigma, tol=tol)
    if c is None:
        raise ValueError("the pair is not coupled on the base algebra")
    lift_omega = KForm(7, 2, dict(pair.omega.coeffs))
    lift_sigma = KForm(7, 3, dict(pair.sigma.coeffs))
    e7 = KForm(7, 1, {(7,): Fraction(1)})
    phi = wedge(lift_omega, e7) + lift_sigma
    return phi, metric_from_phi(phi)
