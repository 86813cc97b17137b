from fractions import Fraction

import pytest

from g2forge import catalog
from g2forge.curvature import (connection_satisfies_invariants,
                               curvature_tensors, einstein_constant,
                               levi_civita, nilsoliton_check)
from g2forge.liealg import MetricLieAlgebra
from g2forge.scalars import Polynomial


def euclidean(name):
    return MetricLieAlgebra.euclidean(catalog.algebra(name))


def test_levi_civita_examples(n28):
    abelian = euclidean("n34")
    assert all(x == 0 for gi in levi_civita(abelian).gamma
               for gj in gi for x in gj)
    m28 = MetricLieAlgebra.euclidean(n28)
    coeffs = levi_civita(m28)
    # nabla_{e1} e3 = -1/2 e5
    assert coeffs.gamma[0][2][4] == Fraction(-1, 2)
    assert all(coeffs.gamma[0][2][k] == 0 for k in range(6) if k != 4)
    ext = catalog.abelian_scaling_extension()
    ce = levi_civita(ext)
    a = Polynomial.variable("a")
    assert ce.gamma[0][0][6] == a
    assert ce.gamma[0][6][0] == -1 * a


def test_connection_invariants(n28, einstein_ext):
    assert connection_satisfies_invariants(MetricLieAlgebra.euclidean(n28))
    assert connection_satisfies_invariants(einstein_ext)
    assert connection_satisfies_invariants(catalog.abelian_scaling_extension())


def test_ricci_n28(n28):
    t = curvature_tensors(MetricLieAlgebra.euclidean(n28))
    expected = [-1, -1, -1, -1, 1, 1]
    for i in range(6):
        for j in range(6):
            assert t.ricci[i][j] == (expected[i] if i == j else 0)
    assert t.scal == -2


def test_einstein_extension_curvature(einstein_ext):
    t = curvature_tensors(einstein_ext)
    for i in range(7):
        for j in range(7):
            assert t.ricci[i][j] == (-3 if i == j else 0)
    assert t.scal == -21
    assert einstein_constant(einstein_ext, t) == -3


def test_polynomial_family_curvature():
    ext = catalog.abelian_scaling_extension()
    t = curvature_tensors(ext)
    a = Polynomial.variable("a")
    expected = -6 * a ** 2
    for i in range(7):
        for j in range(7):
            assert t.ricci[i][j] == (expected if i == j else Polynomial.zero())
    assert t.scal == -42 * a ** 2
    assert einstein_constant(ext, t) == expected


def test_einstein_negative_case(n28):
    assert einstein_constant(MetricLieAlgebra.euclidean(n28)) is None
    abelian = euclidean("n34")
    assert einstein_constant(abelian) == 0


def test_riemann_symmetries(n28, einstein_ext):
    for m in (MetricLieAlgebra.euclidean(n28), einstein_ext):
        t = curvature_tensors(m)
        r = t.riemann
        n = m.algebra.dim
        get = lambda i, j, k, l: r.get((i, j, k, l), Fraction(0))
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                for k in range(1, n + 1):
                    for l in range(1, n + 1):
                        assert get(i, j, k, l) == -get(j, i, k, l)
                        assert get(i, j, k, l) == -get(i, j, l, k)
                        assert get(i, j, k, l) == get(k, l, i, j)
                        bianchi = (get(i, j, k, l) + get(j, k, i, l)
                                   + get(k, i, j, l))
                        assert bianchi == 0


def test_trace_of_ricci_is_scal():
    for name in ("n28", "n6", "n34", "n9"):
        m = euclidean(name)
        t = curvature_tensors(m)
        assert sum(t.ricci[i][i] for i in range(6)) == t.scal


def test_abelian_is_flat():
    t = curvature_tensors(euclidean("n34"))
    assert not t.riemann
    assert all(x == 0 for row in t.ricci for x in row)


def test_nilsoliton_n28(n28):
    w = nilsoliton_check(MetricLieAlgebra.euclidean(n28))
    assert w is not None
    assert w.constant == -3
    expected = [2, 2, 2, 2, 4, 4]
    for i in range(6):
        for j in range(6):
            assert w.derivation[i][j] == (expected[i] if i == j else 0)
    from g2forge.liealg import is_derivation
    assert is_derivation(n28, w.derivation)


def test_nilsoliton_abelian():
    w = nilsoliton_check(euclidean("n34"))
    assert w is not None and w.constant == 0
    assert all(x == 0 for row in w.derivation for x in row)


def test_nilsoliton_n9_soliton_frame():
    m = MetricLieAlgebra.euclidean(catalog.n9_nilsoliton_frame())
    w = nilsoliton_check(m, tol=1e-8)
    assert w is not None
    from g2forge.liealg import is_derivation
    assert is_derivation(m.algebra, w.derivation, tol=1e-7)


def test_nilsoliton_standard_n9_frame_has_no_witness():
    # the identity product in the plain frame is not a soliton
    m = euclidean("n9")
    assert nilsoliton_check(m) is None


def test_nilsoliton_requires_nilpotent(einstein_ext):
    with pytest.raises(ValueError):
        nilsoliton_check(einstein_ext)
