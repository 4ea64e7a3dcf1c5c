"""Levi-Civita geometry of a homogeneous frame.

A frame ``e_1..e_n`` has constant metric components ``g_ij`` and constant
structure constants ``[e_i, e_j] = c_ij^k e_k``. Every field handled here has
constant frame components, so directional derivatives of scalars vanish and
the whole calculus reduces to algebra on ``g``, ``c`` and the connection
coefficients ``Gamma_ij^k`` (``nabla_{e_i} e_j = Gamma_ij^k e_k``).

Indices are 0-based throughout this module.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, InternalInconsistency, SingularMatrix, ValidationError
from .exact import (
    DOWN,
    UP,
    ZERO,
    Matrix,
    MultiTensor,
    Vector,
    as_vector,
    invert,
    signature,
)


def _nested_zeros(n, depth):
    if depth == 1:
        return [ZERO] * n
    return [_nested_zeros(n, depth - 1) for _ in range(n)]


def _freeze(x):
    if isinstance(x, list):
        return tuple(_freeze(y) for y in x)
    return x


@dataclass(frozen=True)
class FrameManifold:
    """Dimension, constant frame metric and structure constants.

    ``structure[i][j][k]`` is ``c_ij^k``. Construct through
    :meth:`from_brackets` to get the antisymmetric completion; validation runs
    on every construction.
    """

    n: int
    metric: Matrix
    structure: tuple

    def __post_init__(self):
        validate_manifold(self)

    @classmethod
    def from_brackets(cls, metric: Matrix, brackets: Sequence[tuple]) -> "FrameManifold":
        """``brackets`` is an iterable of ``(i, j, k, value)`` with ``i < j``."""
        n = metric.order
        c = _nested_zeros(n, 3)
        for i, j, k, value in brackets:
            if not (0 <= i < n and 0 <= j < n and 0 <= k < n):
                raise ValidationError(f"bracket index ({i}, {j}, {k}) outside 0..{n - 1}")
            if i >= j:
                raise ValidationError(f"bracket entry ({i}, {j}, {k}) must have i < j")
            value = Fraction(value)
            c[i][j][k] += value
            c[j][i][k] -= value
        return cls(n, metric, _freeze(c))

    def bracket_entries(self) -> list:
        """Nonzero ``(i, j, k, value)`` with ``i < j``, sorted."""
        n = self.n
        return [(i, j, k, self.structure[i][j][k])
                for i in range(n) for j in range(i + 1, n) for k in range(n)
                if self.structure[i][j][k] != 0]

    @property
    def metric_inverse(self) -> Matrix:
        return invert(self.metric)


def validate_manifold(m: FrameManifold) -> None:
    n = m.n
    if n < 3:
        raise ValidationError(f"dimension {n} < 3")
    if m.metric.order != n:
        raise ValidationError(f"metric order {m.metric.order} differs from dimension {n}", "metric")
    if not m.metric.is_symmetric():
        raise ValidationError("metric is not symmetric", "metric")
    try:
        invert(m.metric)
    except SingularMatrix:
        raise ValidationError("metric is degenerate (singular)", "metric") from None
    sig = signature(m.metric)
    if tuple(sig) != (n - 1, 1, 0):
        raise ValidationError(f"signature {tuple(sig)} != Lorentzian {(n - 1, 1, 0)}", "metric")
    c = m.structure
    if len(c) != n or any(len(ci) != n or any(len(cij) != n for cij in ci) for ci in c):
        raise ValidationError("structure constants have the wrong shape", "brackets")
    for i, j, k in itertools.product(range(n), repeat=3):
        if c[i][j][k] != -c[j][i][k]:
            raise ValidationError(f"structure constants not antisymmetric at ({i}, {j}, {k})", "brackets")
    bad = jacobi_violation(c)
    if bad is not None:
        raise ValidationError(f"Jacobi identity fails at (i, j, k, l) = {bad}", "brackets")


def jacobi_violation(c) -> tuple | None:
    """First ``(i, j, k, l)`` where the cyclic sum of ``c_ij^m c_mk^l`` is nonzero."""
    n = len(c)
    for i, j, k in itertools.combinations(range(n), 3):
        for l in range(n):
            s = ZERO
            for a, b, d in ((i, j, k), (j, k, i), (k, i, j)):
                for mm in range(n):
                    if c[a][b][mm]:
                        s += c[a][b][mm] * c[mm][d][l]
            if s != 0:
                return (i, j, k, l)
    return None


@dataclass(frozen=True)
class Connection:
    """``gamma[i][j][k]`` = ``Gamma_ij^k``."""

    gamma: tuple

    @property
    def n(self) -> int:
        return len(self.gamma)

    def along(self, direction: Sequence) -> Matrix:
        """Matrix of ``Y -> nabla_X Y`` on constant-component fields, ``X`` = ``direction``."""
        n = self.n
        return Matrix.from_function(
            n, lambda k, a: sum((direction[i] * self.gamma[i][a][k] for i in range(n) if direction[i]), ZERO))

    def nonzero(self) -> list:
        n = self.n
        return [((i, j, k), self.gamma[i][j][k])
                for i, j, k in itertools.product(range(n), repeat=3) if self.gamma[i][j][k] != 0]


@dataclass(frozen=True)
class CurvatureData:
    riemann: MultiTensor  # R_ijk^l, R(e_i, e_j) e_k = R_ijk^l e_l
    ricci: Matrix
    scalar: Fraction
    ricci_operator: Matrix  # column j is Q e_j


def _check_vec(m: FrameManifold, *vs):
    for v in vs:
        if len(v) != m.n:
            raise DimensionMismatch(f"expected {m.n} components, got {len(v)}")


def lie_bracket(m: FrameManifold, x: Sequence, y: Sequence) -> Vector:
    _check_vec(m, x, y)
    n = m.n
    c = m.structure
    out = [ZERO] * n
    for i in range(n):
        if not x[i]:
            continue
        for j in range(n):
            if not y[j]:
                continue
            xy = x[i] * y[j]
            for k in range(n):
                if c[i][j][k]:
                    out[k] += xy * c[i][j][k]
    return tuple(out)


def koszul_connection(m: FrameManifold) -> Connection:
    """Levi-Civita connection; for constant metric components only bracket terms remain."""
    n = m.n
    g = m.metric
    ginv = invert(g)
    c = m.structure

    def lowered(i, j, l):
        # 2 g(nabla_i e_j, e_l)
        s = ZERO
        for mm in range(n):
            s += c[i][j][mm] * g[mm, l] - c[i][l][mm] * g[mm, j] - c[j][l][mm] * g[mm, i]
        return s

    gamma = _nested_zeros(n, 3)
    for i, j in itertools.product(range(n), repeat=2):
        low = [lowered(i, j, l) for l in range(n)]
        if not any(low):
            continue
        for k in range(n):
            gamma[i][j][k] = sum((ginv[k, l] * low[l] for l in range(n) if low[l]), ZERO) / 2
    return Connection(_freeze(gamma))


def covariant_derivative_vector(m: FrameManifold, conn: Connection, direction: Sequence,
                                field: Sequence) -> Vector:
    _check_vec(m, direction, field)
    return conn.along(direction) @ field


def covariant_derivative_endomorphism(m: FrameManifold, conn: Connection, direction: Sequence,
                                      t: Matrix) -> Matrix:
    """``(nabla_X T) e_j = nabla_X(T e_j) - T(nabla_X e_j)``."""
    _check_vec(m, direction)
    if t.order != m.n:
        raise DimensionMismatch(f"endomorphism of order {t.order} on a {m.n}-frame")
    a = conn.along(direction)
    return a @ t - t @ a


def covariant_derivative_tensor(conn: Connection, t: MultiTensor) -> MultiTensor:
    """Full covariant derivative; the new direction slot is prepended as a ``down`` index."""
    n = t.n
    gamma = conn.gamma
    # per direction i: nonzero (a, k, value) with Gamma_ia^k != 0
    by_dir = [[(a, k, gamma[i][a][k]) for a in range(n) for k in range(n) if gamma[i][a][k]]
              for i in range(n)]
    entries = {}
    for idx, val in t.items():
        if not val:
            continue
        for i in range(n):
            for a, k, gv in by_dir[i]:
                for p, var in enumerate(t.variance):
                    if var == UP and idx[p] == a:
                        # T^{..a..} contributes Gamma_ia^k to slot value k
                        new = (i,) + idx[:p] + (k,) + idx[p + 1:]
                        entries[new] = entries.get(new, ZERO) + gv * val
                    elif var == DOWN and idx[p] == k:
                        # T_{..k..} contributes -Gamma_ia^k to slot value a
                        new = (i,) + idx[:p] + (a,) + idx[p + 1:]
                        entries[new] = entries.get(new, ZERO) - gv * val
    return MultiTensor.from_sparse(n, (DOWN,) + t.variance, entries)


def riemann_curvature(m: FrameManifold, conn: Connection) -> MultiTensor:
    """``R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z`` in components."""
    n = m.n
    c = m.structure
    nz = conn.nonzero()
    # index Gamma_{a b}^{k} by first slot for contraction over its lower indices
    by_first = {}
    for (a, b, k), v in nz:
        by_first.setdefault(a, []).append((b, k, v))
    entries = {}

    def add(idx, v):
        entries[idx] = entries.get(idx, ZERO) + v

    # Gamma_jk^m Gamma_im^l - Gamma_ik^m Gamma_jm^l
    for (j, k, mm), v1 in nz:
        for i in range(n):
            for b, l, v2 in by_first.get(i, ()):
                if b == mm:
                    prod = v1 * v2
                    add((i, j, k, l), prod)
                    add((j, i, k, l), -prod)
    # - c_ij^m Gamma_mk^l
    for i, j in itertools.product(range(n), repeat=2):
        for mm in range(n):
            cv = c[i][j][mm]
            if cv:
                for k, l, v in by_first.get(mm, ()):
                    add((i, j, k, l), -cv * v)
    return MultiTensor.from_sparse(n, (DOWN, DOWN, DOWN, UP), entries)


def ricci_data(m: FrameManifold, riemann: MultiTensor) -> CurvatureData:
    """``S_jk = R_ijk^i``, ``r = g^jk S_jk``, ``Q^k_j = g^ki S_ij``."""
    n = m.n
    ginv = invert(m.metric)
    s = Matrix.from_function(n, lambda j, k: sum((riemann[i, j, k, i] for i in range(n)), ZERO))
    r = sum((ginv[j, k] * s[j, k] for j in range(n) for k in range(n)), ZERO)
    q = ginv @ s
    return CurvatureData(riemann=riemann, ricci=s, scalar=r, ricci_operator=q)


def curvature(m: FrameManifold, conn: Connection | None = None) -> CurvatureData:
    """Shortcut: connection -> Riemann -> Ricci data."""
    conn = conn or koszul_connection(m)
    return ricci_data(m, riemann_curvature(m, conn))


def lie_derivative_metric_both(m: FrameManifold, conn: Connection, k: Sequence) -> tuple:
    """``(via_connection, via_brackets)`` evaluations of ``L_K g`` on frame pairs."""
    _check_vec(m, k)
    n = m.n
    g = m.metric
    nabla_k = [covariant_derivative_vector(m, conn, _e(n, i), k) for i in range(n)]
    via_conn = Matrix.from_function(
        n, lambda i, j: g.bilinear(nabla_k[i], _e(n, j)) + g.bilinear(_e(n, i), nabla_k[j]))
    br = [lie_bracket(m, k, _e(n, i)) for i in range(n)]
    via_br = Matrix.from_function(
        n, lambda i, j: -g.bilinear(br[i], _e(n, j)) - g.bilinear(_e(n, i), br[j]))
    return via_conn, via_br


def lie_derivative_metric(m: FrameManifold, conn: Connection, k: Sequence) -> Matrix:
    via_conn, via_br = lie_derivative_metric_both(m, conn, k)
    if via_conn != via_br:
        raise InternalInconsistency("Lie derivative of g disagrees between connection and bracket formulas")
    return via_conn


def lie_derivative_connection(m: FrameManifold, conn: Connection, k: Sequence) -> MultiTensor:
    """``(L_K nabla)(e_i, e_j)^l`` from the derivatives of ``T = L_K g``.

    ``2 g((L_K nabla)(E,F), G) = (nabla_E T)(F,G) + (nabla_F T)(E,G) - (nabla_G T)(E,F)``
    with ``(nabla_E T)(F,G) = -T(nabla_E F, G) - T(F, nabla_E G)``.
    """
    n = m.n
    t = lie_derivative_metric(m, conn, k)
    gamma = conn.gamma
    ginv = invert(m.metric)

    def dt(e, f, g_):
        # (nabla_e T)(f, g_) for basis indices
        return -sum((gamma[e][f][a] * t[a, g_] + gamma[e][g_][a] * t[f, a] for a in range(n)), ZERO)

    dtt = {(e, f, g_): dt(e, f, g_) for e, f, g_ in itertools.product(range(n), repeat=3)}
    entries = {}
    for i, j in itertools.product(range(n), repeat=2):
        low = [(dtt[i, j, l] + dtt[j, i, l] - dtt[l, i, j]) / 2 for l in range(n)]
        for out in range(n):
            v = sum((ginv[out, l] * low[l] for l in range(n) if low[l]), ZERO)
            if v:
                entries[(i, j, out)] = v
    return MultiTensor.from_sparse(n, (DOWN, DOWN, UP), entries)


def _e(n, i):
    return tuple(Fraction(int(k == i)) for k in range(n))


def frame_vector(n: int, coefficients: dict) -> Vector:
    """Vector from a sparse ``{index: value}`` map."""
    return as_vector(coefficients.get(k, 0) for k in range(n))
