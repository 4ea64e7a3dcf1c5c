"""Frame geometry: connection, curvature, Ricci data, Lie derivatives.

Oracles used here are independent of the index formulas in the module:
curvature is recomputed as an operator composition, the Lie derivative of the
connection from its defining commutator, and endomorphism derivatives from
the generic tensor rule.
"""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lpkenmotsu.errors import DimensionMismatch, ValidationError
from lpkenmotsu.exact import UP, DOWN, Matrix, MultiTensor, basis_vector, vec_add, vec_scale, vec_sub, zero_vector
from lpkenmotsu.frame import (
    FrameManifold,
    covariant_derivative_endomorphism,
    covariant_derivative_tensor,
    covariant_derivative_vector,
    lie_bracket,
    lie_derivative_connection,
    lie_derivative_metric,
    lie_derivative_metric_both,
    riemann_curvature,
    ricci_data,
)
from lpkenmotsu.identities import connection_checks, curvature_checks
from lpkenmotsu.spec_io import builtin_example

from conftest import F, change_frame, from_doc, vec

E = basis_vector


def operator_riemann(fx, x, y, z):
    """R(X,Y)Z via nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z."""
    m, c = fx.m, fx.conn
    nab = lambda a, b: covariant_derivative_vector(m, c, a, b)
    return vec_sub(vec_sub(nab(x, nab(y, z)), nab(y, nab(x, z))), nab(lie_bracket(m, x, y), z))


def commutator_lie_connection(fx, k, x, y):
    """(L_K nabla)(X,Y) = [K, nabla_X Y] - nabla_[K,X] Y - nabla_X [K,Y]."""
    m, c = fx.m, fx.conn
    nab = lambda a, b: covariant_derivative_vector(m, c, a, b)
    br = lambda a, b: lie_bracket(m, a, b)
    return vec_sub(vec_sub(br(k, nab(x, y)), nab(br(k, x), y)), nab(x, br(k, y)))


class TestValidation:
    def test_jacobi_enforced(self):
        # [e1,e2]=e3, [e1,e3]=e1 with the rest zero violates Jacobi
        with pytest.raises(ValidationError, match="Jacobi"):
            FrameManifold.from_brackets(Matrix.diag([1, 1, -1]), [(0, 1, 2, 1), (0, 2, 0, 1)])

    def test_riemannian_metric_rejected(self):
        with pytest.raises(ValidationError, match="Lorentzian"):
            FrameManifold.from_brackets(Matrix.identity(3), [])

    def test_degenerate_metric_rejected(self):
        with pytest.raises(ValidationError, match="degenerate"):
            FrameManifold.from_brackets(Matrix.diag([1, 0, -1]), [])

    def test_bracket_order(self):
        with pytest.raises(ValidationError):
            FrameManifold.from_brackets(Matrix.diag([1, 1, -1]), [(2, 0, 0, 1)])


class TestLieBracket:
    def test_table(self, golden):
        assert lie_bracket(golden.m, E(5, 0), E(5, 4)) == vec_scale(-1, E(5, 0))

    @given(st.lists(st.integers(-3, 3), min_size=5, max_size=5))
    def test_self_bracket_vanishes(self, xs):
        m = builtin_example(5).manifold()
        assert lie_bracket(m, vec(*xs), vec(*xs)) == zero_vector(5)

    def test_bilinear(self, golden):
        x = vec_add(E(5, 0), E(5, 1))
        assert lie_bracket(golden.m, x, E(5, 4)) == vec(-1, -1, 0, 0, 0)

    def test_dimension_mismatch(self, golden):
        with pytest.raises(DimensionMismatch):
            lie_bracket(golden.m, vec(1, 0), E(5, 0))


class TestKoszul:
    def test_golden_table(self, golden):
        expected = {(i, i, 4): F(-1) for i in range(4)} | {(i, 4, i): F(-1) for i in range(4)}
        assert dict(golden.conn.nonzero()) == expected

    def test_flat(self, flat):
        assert flat.conn.nonzero() == []

    def test_three_dim_hand_values(self, three):
        # hand evaluation of the Koszul formula over all 27 triples
        assert dict(three.conn.nonzero()) == {(0, 0, 2): -1, (0, 2, 0): -1, (1, 1, 2): -1, (1, 2, 1): -1}

    def test_off_diagonal_metric(self):
        fx = change_frame(from_doc(builtin_example(3)), Matrix([[1, 1, 0], [0, 1, 0], [0, 0, 1]]))
        assert connection_checks(fx.m, fx.conn).verdict


class TestCovariantDerivative:
    def test_zero_entry(self, golden):
        assert covariant_derivative_vector(golden.m, golden.conn, E(5, 4), E(5, 0)) == zero_vector(5)

    def test_flat(self, flat):
        assert covariant_derivative_vector(flat.m, flat.conn, vec(1, 2, 3, 4, 5), vec(5, 4, 3, 2, 1)) == zero_vector(5)

    def test_linearity(self, golden):
        out = covariant_derivative_vector(golden.m, golden.conn, E(5, 0), vec_add(E(5, 0), E(5, 4)))
        assert out == vec(-1, 0, 0, 0, -1)

    def test_identity_parallel(self, golden):
        d = covariant_derivative_endomorphism(golden.m, golden.conn, vec(1, 2, 0, -1, 3), Matrix.identity(5))
        assert d.is_zero()

    def test_ricci_operator_parallel(self, golden):
        for i in range(5):
            assert covariant_derivative_endomorphism(golden.m, golden.conn, E(5, i), golden.cd.ricci_operator).is_zero()

    def test_three_dim_hand_expansion(self, three):
        d = covariant_derivative_endomorphism(three.m, three.conn, E(3, 0), Matrix.diag([2, 1, 1]))
        assert d.column(0) == vec(0, 0, -1)
        assert d.column(2) == vec(1, 0, 0)
        assert d.column(1) == vec(0, 0, 0)

    @pytest.mark.parametrize("n", [3, 5])
    def test_endomorphism_matches_tensor_rule(self, n):
        fx = change_frame(from_doc(builtin_example(n)), Matrix.from_function(n, lambda i, j: int(i <= j)))
        t = Matrix.from_function(n, lambda a, b: (a * 3 + b * 5) % 7 - 3)
        tensor = MultiTensor.from_function(n, (UP, DOWN), lambda a, b: t[a, b])
        d = covariant_derivative_tensor(fx.conn, tensor)
        for i in range(n):
            direct = covariant_derivative_endomorphism(fx.m, fx.conn, E(n, i), t)
            assert direct == Matrix.from_function(n, lambda a, b: d[i, a, b])


class TestRiemann:
    def test_golden_samples(self, golden):
        R = lambda i, j, k: operator_riemann(golden, E(5, i), E(5, j), E(5, k))
        assert R(0, 1, 1) == E(5, 0)
        assert R(0, 4, 4) == vec_scale(-1, E(5, 0))
        assert R(2, 3, 2) == vec_scale(-1, E(5, 3))

    def test_flat(self, flat):
        assert flat.cd.riemann.is_zero()

    def test_three_dim(self, three):
        R = three.cd.riemann
        assert [R[0, 1, 1, l] for l in range(3)] == [1, 0, 0]
        assert [R[0, 2, 2, l] for l in range(3)] == [-1, 0, 0]

    @pytest.mark.parametrize("n", [3, 5])
    def test_matches_operator_composition(self, n):
        fx = change_frame(from_doc(builtin_example(n)), Matrix.from_function(n, lambda i, j: int(i == j) + int(j == i + 1)))
        R = fx.cd.riemann
        for i, j, k in itertools.product(range(n), repeat=3):
            assert operator_riemann(fx, E(n, i), E(n, j), E(n, k)) == tuple(R[i, j, k, l] for l in range(n))


class TestRicci:
    def test_golden(self, golden):
        assert golden.cd.ricci == Matrix.diag([4, 4, 4, 4, -4])
        assert golden.cd.scalar == 20
        assert golden.cd.ricci_operator == 4 * Matrix.identity(5)

    def test_flat(self, flat):
        assert flat.cd.ricci.is_zero() and flat.cd.scalar == 0 and flat.cd.ricci_operator.is_zero()

    def test_three_dim(self, three):
        assert three.cd.ricci == Matrix.diag([2, 2, -2])
        assert three.cd.scalar == 6
        assert three.cd.ricci_operator == 2 * Matrix.identity(3)

    def test_trace_oracle(self, golden):
        # S(Y,Z) = trace of X -> R(X,Y)Z
        for j, k in itertools.product(range(5), repeat=2):
            tr = sum(operator_riemann(golden, E(5, i), E(5, j), E(5, k))[i] for i in range(5))
            assert golden.cd.ricci[j, k] == tr


class TestLieDerivatives:
    def test_metric_along_zeta(self, golden):
        assert lie_derivative_metric(golden.m, golden.conn, E(5, 4)) == Matrix.diag([-2, -2, -2, -2, 0])

    def test_metric_zero_field(self, golden):
        assert lie_derivative_metric(golden.m, golden.conn, zero_vector(5)).is_zero()

    def test_metric_flat(self, flat):
        assert lie_derivative_metric(flat.m, flat.conn, vec(1, -2, 3, 0, 5)).is_zero()

    @given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=6), min_size=5, max_size=5))
    def test_two_formulas_agree(self, k):
        fx = _skewed5()
        a, b = lie_derivative_metric_both(fx.m, fx.conn, tuple(k))
        assert a == b and a.is_symmetric()

    def test_connection_along_zeta_hand_value(self, golden):
        # with L_zeta g = -2g - 2 nu(x)nu the Yano formula reduces to 2 (g + nu(x)nu)(E,F) zeta
        lc = lie_derivative_connection(golden.m, golden.conn, E(5, 4))
        assert dict(lc.nonzero()) == {(i, i, 4): F(2) for i in range(4)}

    def test_connection_zero_and_flat(self, golden, flat):
        assert lie_derivative_connection(golden.m, golden.conn, zero_vector(5)).is_zero()
        assert lie_derivative_connection(flat.m, flat.conn, vec(1, 1, 1, 1, 1)).is_zero()

    @given(st.lists(st.integers(-3, 3), min_size=5, max_size=5))
    def test_connection_matches_commutator(self, k):
        fx = _skewed5()
        k = vec(*k)
        lc = lie_derivative_connection(fx.m, fx.conn, k)
        assert lc.is_symmetric_in(0, 1)
        for i, j in itertools.product(range(5), repeat=2):
            assert commutator_lie_connection(fx, k, E(5, i), E(5, j)) == tuple(lc[i, j, l] for l in range(5))


_cache = {}


def _skewed5():
    if "fx" not in _cache:
        p = Matrix([[1, 1, 0, 0, 0], [0, 1, 0, 0, 1], [0, 0, 2, 0, 0], [0, 0, 1, 1, 0], [0, 0, 0, 0, 1]])
        _cache["fx"] = change_frame(from_doc(builtin_example(5)), p)
    return _cache["fx"]


@pytest.mark.parametrize("n", [3, 5, 7])
def test_curvature_identities_hold(n):
    fx = from_doc(builtin_example(n))
    assert curvature_checks(fx.m, fx.conn, fx.cd.riemann).verdict


def test_curvature_identities_hold_in_skewed_frame():
    fx = _skewed5()
    report = curvature_checks(fx.m, fx.conn, fx.cd.riemann)
    assert report.verdict, [c.label for c in report.failed()]


def test_curvature_checks_detect_corruption(golden):
    R = golden.cd.riemann
    bad = MultiTensor.from_sparse(5, R.variance, dict(R.nonzero()) | {(0, 1, 2, 3): Fraction(1)})
    failed = {c.label for c in curvature_checks(golden.m, golden.conn, bad, second_bianchi=False).failed()}
    assert {"antisymmetry", "bianchi-1"} <= failed


def test_ricci_data_is_deterministic(golden):
    cd = ricci_data(golden.m, riemann_curvature(golden.m, golden.conn))
    assert cd == golden.cd
