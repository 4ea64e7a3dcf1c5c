"""Structural identities every Levi-Civita connection and its curvature must satisfy."""

from __future__ import annotations

from .exact import DOWN, UP, ZERO, MultiTensor
from .frame import Connection, FrameManifold, covariant_derivative_tensor
from .structure import CheckReport, make_check


def connection_checks(m: FrameManifold, conn: Connection) -> CheckReport:
    n = m.n
    c, gamma, g = m.structure, conn.gamma, m.metric
    torsion = MultiTensor.from_function(
        n, (DOWN, DOWN, UP), lambda i, j, k: gamma[i][j][k] - gamma[j][i][k] - c[i][j][k])
    compat = MultiTensor.from_function(
        n, (DOWN, DOWN, DOWN),
        lambda i, j, k: sum((gamma[i][j][a] * g[a, k] + gamma[i][k][a] * g[a, j] for a in range(n)), ZERO))
    return CheckReport((
        make_check("torsion-free: Gamma_ij^k - Gamma_ji^k = c_ij^k", "torsion", torsion),
        make_check("metric-compatible: g(nabla_i e_j, e_k) + g(e_j, nabla_i e_k) = 0", "metric", compat),
    ))


def lower_riemann(m: FrameManifold, riemann: MultiTensor) -> MultiTensor:
    """``R_ijkw = g(R(e_i, e_j) e_k, e_w)``."""
    n = m.n
    g = m.metric
    return MultiTensor.from_function(
        n, (DOWN,) * 4, lambda i, j, k, w: sum((riemann[i, j, k, l] * g[l, w] for l in range(n)), ZERO))


def curvature_checks(m: FrameManifold, conn: Connection, riemann: MultiTensor,
                     second_bianchi: bool = True) -> CheckReport:
    n = m.n
    R = riemann
    low = lower_riemann(m, R)
    checks = [
        make_check("R(X,Y) = -R(Y,X)", "antisymmetry",
                   MultiTensor.from_function(n, R.variance, lambda i, j, k, l: R[i, j, k, l] + R[j, i, k, l])),
        make_check("g(R(X,Y)Z,W) = -g(R(X,Y)W,Z)", "g-skew",
                   MultiTensor.from_function(n, low.variance,
                                             lambda i, j, k, w: low[i, j, k, w] + low[i, j, w, k])),
        make_check("first Bianchi: cyclic sum of R(X,Y)Z = 0", "bianchi-1",
                   MultiTensor.from_function(n, R.variance, lambda i, j, k, l:
                                             R[i, j, k, l] + R[j, k, i, l] + R[k, i, j, l])),
        make_check("g(R(X,Y)Z,W) = g(R(Z,W)X,Y)", "pair-symmetry",
                   MultiTensor.from_function(n, low.variance,
                                             lambda i, j, k, w: low[i, j, k, w] - low[k, w, i, j])),
    ]
    if second_bianchi:
        d = covariant_derivative_tensor(conn, R)  # d[i, j, k, a, l] = (nabla_i R)_jka^l
        checks.append(make_check(
            "second Bianchi: cyclic sum of (nabla_X R)(Y,Z) = 0", "bianchi-2",
            MultiTensor.from_function(n, d.variance, lambda i, j, k, a, l:
                                      d[i, j, k, a, l] + d[j, k, i, a, l] + d[k, i, j, a, l])))
    return CheckReport(tuple(checks))
