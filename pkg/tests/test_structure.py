from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from lpkenmotsu.exact import Matrix, basis_vector, determinant, vec_scale, zero_vector
from lpkenmotsu.frame import covariant_derivative_endomorphism
from lpkenmotsu.spec_io import builtin_example
from lpkenmotsu.structure import (
    EINSTEIN,
    NEITHER,
    ParacontactStructure,
    check_almost_paracontact,
    check_curvature_identities,
    check_k_paracontact,
    check_lp_kenmotsu,
    check_scalar_lemma,
    classify_einstein,
    consistency_24_vs_21,
    derive_nu,
)

from conftest import Fixture, change_frame, flat_fixture, from_doc, vec


def labels_failed(report):
    return {c.label for c in report.failed()}


def with_phi(fx, phi, zeta=None):
    return ParacontactStructure.build(fx.m, phi, fx.p.zeta if zeta is None else zeta)


@st.composite
def frame_changes(draw, n):
    entries = draw(st.lists(st.integers(-2, 2), min_size=n * n, max_size=n * n))
    p = Matrix([entries[i * n:(i + 1) * n] for i in range(n)])
    assume(determinant(p) != 0)
    return p


class TestDeriveNu:
    def test_golden(self, golden):
        assert derive_nu(golden.m, golden.p.zeta) == vec(0, 0, 0, 0, -1)

    def test_zero_zeta(self, golden):
        assert derive_nu(golden.m, zero_vector(5)) == zero_vector(5)
        p = ParacontactStructure.build(golden.m, golden.p.phi, zero_vector(5))
        assert "(2.1)" in labels_failed(check_almost_paracontact(golden.m, p))

    def test_three(self, three):
        assert derive_nu(three.m, basis_vector(3, 2)) == vec(0, 0, -1)


class TestAlmostParacontact:
    def test_golden_passes(self, golden):
        report = check_almost_paracontact(golden.m, golden.p)
        assert report.verdict
        assert [c.label for c in report.checks] == ["(2.1)", "(2.2)", "(2.3)", "(2.3)", "(2.4)", "(2.5)", "(2.6)"]

    def test_single_sign_flip(self, golden):
        cols = [list(golden.p.phi.column(j)) for j in range(5)]
        cols[0][1] = Fraction(1)  # phi e_1 = +e_2
        p = with_phi(golden, Matrix.from_columns(cols))
        report = check_almost_paracontact(golden.m, p)
        (c26,) = report.by_label("(2.6)")
        assert not c26.passed
        # g(e_1, phi e_2) = -1 against g(e_2, phi e_1) = +1
        assert c26.witness == (0, 1)
        assert c26.residual[0, 1] == -2

    def test_zero_structure(self, golden):
        p = ParacontactStructure.build(golden.m, Matrix.zeros(5), zero_vector(5))
        assert {"(2.1)", "(2.2)"} <= labels_failed(check_almost_paracontact(golden.m, p))

    def test_supplied_nu_cross_checked(self, golden):
        p = ParacontactStructure.build(golden.m, golden.p.phi, golden.p.zeta, nu=vec(0, 0, 0, 0, 1))
        assert labels_failed(check_almost_paracontact(golden.m, p)) == {"(2.5)"}

    @given(st.sampled_from([2, 3, -2, Fraction(1, 2)]))
    def test_24_and_21_consistent(self, t):
        fx = from_doc(builtin_example(5))
        p = with_phi(fx, fx.p.phi, vec_scale(t, fx.p.zeta))
        report = check_almost_paracontact(fx.m, p)
        assert consistency_24_vs_21(report, fx.m, p)
        assert not report.by_label("(2.1)")[0].passed

    def test_24_at_zeta_reduces_to_21_on_golden(self, golden):
        report = check_almost_paracontact(golden.m, golden.p)
        assert consistency_24_vs_21(report, golden.m, golden.p)


class TestKParacontact:
    def test_golden_fails(self, golden):
        assert not check_k_paracontact(golden.m, golden.conn, golden.p).verdict

    def test_flat_with_zero_phi(self, flat):
        p = with_phi(flat, Matrix.zeros(5), basis_vector(5, 4))
        assert check_k_paracontact(flat.m, flat.conn, p).verdict

    def test_three_fails(self, three):
        assert not check_k_paracontact(three.m, three.conn, three.p).verdict


class TestLPKenmotsu:
    def test_golden(self, golden):
        assert check_lp_kenmotsu(golden.m, golden.conn, golden.p).verdict

    def test_flat_fails_210(self, flat):
        report = check_lp_kenmotsu(flat.m, flat.conn, flat.p)
        assert "(2.10)" in labels_failed(report)
        (c,) = report.by_label("(2.10)")
        # nabla_{e_1} zeta = 0 but -e_1 - nu(e_1) zeta = -e_1
        assert c.residual[0, 0] == 1

    def test_three(self, three):
        assert three.p.phi == Matrix.from_columns([vec(0, -1, 0), vec(-1, 0, 0), vec(0, 0, 0)])
        assert check_lp_kenmotsu(three.m, three.conn, three.p).verdict


class TestCurvatureIdentities:
    def test_golden(self, golden):
        report = check_curvature_identities(golden.m, golden.cd, golden.p)
        assert report.verdict
        zeta = golden.p.zeta
        assert golden.cd.ricci.bilinear(zeta, zeta) == -4

    def test_flat_fails_215(self, flat):
        assert "(2.15)" in labels_failed(check_curvature_identities(flat.m, flat.cd, flat.p))

    def test_three(self, three):
        assert check_curvature_identities(three.m, three.cd, three.p).verdict
        assert three.cd.ricci_operator @ three.p.zeta == vec(0, 0, 2)


class TestClassification:
    def test_golden(self, golden):
        c = classify_einstein(golden.m, golden.cd, golden.p)
        assert (c.a, c.b, c.label) == (4, 0, EINSTEIN)
        assert c.decomposition_holds and c.scalar == 20 and c.scalar_consistent

    def test_three(self, three):
        c = classify_einstein(three.m, three.cd, three.p)
        assert (c.a, c.b, c.label, c.scalar) == (2, 0, EINSTEIN, 6)

    def test_flat(self, flat):
        c = classify_einstein(flat.m, flat.cd, flat.p)
        assert c.label == NEITHER and not c.scalar_consistent


class TestLemma:
    def test_golden(self, golden):
        assert check_scalar_lemma(golden.m, golden.conn, golden.cd, golden.p).verdict

    def test_n3_skips_with_warning(self, three):
        with pytest.warns(UserWarning, match="n = 3"):
            report = check_scalar_lemma(three.m, three.conn, three.cd, three.p)
        (first,) = report.by_label("(2.20)")
        assert first.skipped and report.verdict

    def test_flat(self, flat):
        assert "(2.20)" in labels_failed(check_scalar_lemma(flat.m, flat.conn, flat.cd, flat.p))


@pytest.mark.parametrize("n", [3, 5])
@given(data=st.data())
def test_lp_kenmotsu_consequences_in_random_frames(n, data):
    p = data.draw(frame_changes(n))
    fx = change_frame(from_doc(builtin_example(n)), p)
    assert check_almost_paracontact(fx.m, fx.p).verdict
    assert check_lp_kenmotsu(fx.m, fx.conn, fx.p).verdict
    assert check_curvature_identities(fx.m, fx.cd, fx.p).verdict
    c = classify_einstein(fx.m, fx.cd, fx.p)
    assert c.decomposition_holds and c.scalar == n * (n - 1)
    # (nabla_zeta Q) E = 2QE - 2(n-1)E, both sides zero here
    dq = covariant_derivative_endomorphism(fx.m, fx.conn, fx.p.zeta, fx.cd.ricci_operator)
    assert dq == 2 * fx.cd.ricci_operator - 2 * (n - 1) * Matrix.identity(n)


def test_flat_frame_with_nontrivial_phi_is_not_lp_kenmotsu():
    fx = flat_fixture(3)
    assert not check_lp_kenmotsu(fx.m, fx.conn, fx.p).verdict
    assert isinstance(fx, Fixture)
