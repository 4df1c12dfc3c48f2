"""Ext, the translate, and endomorphism-ring dimension invariants."""
import pytest

from tiltbench import algebra_ops, rep, subcat
from tiltbench.algebra_ops import DimBound
from tiltbench.axioms import endomorphism_algebra
from tiltbench.fitting import RadicalPreconditionViolated
from tiltbench.linalg import PrimeField
from tiltbench.quiver import Quiver, build_algebra

from conftest import make_x


class TestExt:
    def test_a2(self, a2):
        S1, S2 = rep.simple(a2, 0), rep.simple(a2, 1)
        P1 = rep.projective(a2, 0)
        assert subcat.ext_dim(S1, S2, 1) == 1
        assert subcat.ext_dim(S1, S1, 1) == 0
        assert subcat.ext_dim(S1, S2, 2) == 0  # hereditary
        assert subcat.ext_dim(S1, P1, 1) == 0
        assert subcat.ext_dim(P1, S2, 1) == 0  # projective source
        assert subcat.ext_dim(S1, S1, 0) == 1  # Ext^0 = Hom

    def test_periodic_over_dual_numbers(self, kx2):
        S = rep.simple(kx2, 0)
        for i in range(4):
            assert subcat.ext_dim(S, S, i) == 1

    def test_a3_rad2(self, a3rad2):
        P = [rep.projective(a3rad2, v) for v in range(3)]
        S = [rep.simple(a3rad2, v) for v in range(3)]
        # Lambda + DLambda is 2-rigid
        for x in P + [S[0]]:
            for y in P + [S[0]]:
                assert subcat.ext_dim(x, y, 1) == 0
        assert subcat.ext_dim(S[0], S[1], 1) == 1
        # syzygy chain S1 -> S2 -> S3 shifts degrees
        assert subcat.ext_dim(S[0], S[2], 2) == 1
        assert subcat.ext_dim(S[0], S[2], 3) == 0


class TestTranslate:
    def test_a2(self, a2):
        S1, S2 = rep.simple(a2, 0), rep.simple(a2, 1)
        assert rep.is_isomorphic(subcat.tau(S1), S2)
        assert rep.is_isomorphic(subcat.tau_inverse(S2), S1)
        assert subcat.tau(rep.projective(a2, 0)).is_zero
        assert subcat.tau_inverse(rep.injective(a2, 0)).is_zero

    def test_stable_over_dual_numbers(self, kx2):
        S = rep.simple(kx2, 0)
        assert rep.is_isomorphic(subcat.tau(S), S)

    def test_higher_translate(self, a3rad2):
        S = [rep.simple(a3rad2, v) for v in range(3)]
        assert rep.is_isomorphic(subcat.tau_d(S[0], 2), S[2])
        assert rep.is_isomorphic(subcat.tau_d_inverse(S[2], 2), S[0])

    def test_translate_is_dual_of_transpose(self, a2):
        S1 = rep.simple(a2, 0)
        assert rep.is_isomorphic(subcat.tau(S1),
                                 rep.dualize(subcat.transpose(S1)))
        assert subcat.transpose(rep.projective(a2, 0)).is_zero

    def test_hereditary_a3_orbit(self, hereditary_a3):
        # tau-inverse orbit of P3 climbs to the injective at the source
        P3 = rep.projective(hereditary_a3, 2)
        S2 = rep.simple(hereditary_a3, 1)
        I1 = rep.injective(hereditary_a3, 0)
        t1 = subcat.tau_inverse(P3)
        assert rep.is_isomorphic(t1, S2)
        assert rep.is_isomorphic(subcat.tau_inverse(t1), I1)


class TestDimBound:
    def test_exact(self):
        b = DimBound.exact(2)
        assert b.ge(2) and b.ge(1) and not b.ge(3)
        assert b.le(2) and b.le(5) and not b.le(1)
        assert b == 2 and b != 3

    def test_lower_bound_is_partial(self):
        b = DimBound.at_least(21)
        assert b.ge(4)
        assert not b.le(20)
        with pytest.raises(ValueError):
            b.le(30)  # the cap hid the answer

    def test_infinite(self):
        b = DimBound.infinite()
        assert b.ge(10**6) and not b.le(10**6)
        assert str(b) == "inf"


def gamma_of(alg, parts):
    return endomorphism_algebra(make_x(alg, parts))


class TestAlgebraDimensions:
    def test_semisimple(self, semisimple2):
        g = gamma_of(semisimple2, rep.regular_parts(semisimple2))
        assert algebra_ops.global_dimension(g) == 0
        assert algebra_ops.dominant_dimension(g).kind == "infinite"

    def test_hereditary_a2(self, a2):
        g = gamma_of(a2, rep.regular_parts(a2))  # End(Lambda) = Lambda^op
        assert algebra_ops.global_dimension(g) == 1
        assert algebra_ops.dominant_dimension(g) == 1

    def test_a3_rad2_regular(self, a3rad2):
        g = gamma_of(a3rad2, rep.regular_parts(a3rad2))
        assert algebra_ops.global_dimension(g) == 2
        assert algebra_ops.dominant_dimension(g) == 2

    def test_selfinjective(self, kx2):
        g = gamma_of(kx2, [rep.projective(kx2, 0)])
        assert algebra_ops.global_dimension(g).kind in ("infinite", "at_least")
        assert algebra_ops.dominant_dimension(g).kind == "infinite"
        left, right = algebra_ops.selfinjective_dimensions(g)
        assert left == 0 and right == 0

    def test_auslander_shape(self, kx2):
        # End of an additive generator: small global, large dominant
        g = gamma_of(kx2, [rep.projective(kx2, 0), rep.simple(kx2, 0)])
        assert algebra_ops.global_dimension(g) == 2
        assert algebra_ops.dominant_dimension(g).ge(2)

    def test_module_dimensions(self, a3rad2):
        g = gamma_of(a3rad2, rep.regular_parts(a3rad2))
        for s in g.simples():
            assert algebra_ops.projective_dimension(s).le(2)

    def test_projective_dimension_infinite(self, kx2):
        g = gamma_of(kx2, [rep.projective(kx2, 0)])
        s = g.simples()[0]
        pd = algebra_ops.projective_dimension(s, cap=8)
        assert pd.kind in ("infinite", "at_least")
        assert pd.ge(8)


def test_small_field_precondition():
    F3 = PrimeField(3)
    q = Quiver(["*"], [("x", "*", "*")])
    alg = build_algebra(q, [[(1, ["x", "x", "x"])]], F3)  # dim 3 = p
    with pytest.raises(RadicalPreconditionViolated) as ei:
        rep.decompose(rep.projective(alg, 0))
    assert ei.value.p == 3
    assert "p=" in str(ei.value)  # suggests a usable prime
