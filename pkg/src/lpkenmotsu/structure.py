"""Paracontact structure axioms, LP-Kenmotsu identities and Einstein classification.

Every check evaluates an identity on all frame index tuples and records the
full residual. Failures are report entries, never exceptions.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .exact import (
    DOWN,
    UP,
    ZERO,
    Matrix,
    MultiTensor,
    Vector,
    as_vector,
    basis_vector,
)
from .frame import (
    Connection,
    CurvatureData,
    FrameManifold,
    covariant_derivative_endomorphism,
    covariant_derivative_vector,
)

Residual = Union[Fraction, MultiTensor]


@dataclass(frozen=True)
class ParacontactStructure:
    """``phi`` (column j = phi e_j), ``zeta`` and the derived ``nu = g(., zeta)``.

    ``nu_supplied`` is kept only to be cross-checked against the derived form.
    """

    phi: Matrix
    zeta: Vector
    nu: Vector
    nu_supplied: Optional[Vector] = None

    @classmethod
    def build(cls, m: FrameManifold, phi: Matrix, zeta: Sequence, nu: Optional[Sequence] = None):
        zeta = as_vector(zeta)
        return cls(phi=phi, zeta=zeta, nu=derive_nu(m, zeta),
                   nu_supplied=None if nu is None else as_vector(nu))


def derive_nu(m: FrameManifold, zeta: Sequence) -> Vector:
    return m.metric @ zeta


@dataclass(frozen=True)
class Check:
    name: str
    label: str
    passed: bool
    witness: Optional[tuple]  # 0-based index tuple of the worst entry, None when passed
    residual: Residual
    note: Optional[str] = None
    skipped: bool = False


@dataclass(frozen=True)
class CheckReport:
    checks: tuple = ()

    @property
    def verdict(self) -> bool:
        return all(c.passed for c in self.checks)

    def __add__(self, other: "CheckReport") -> "CheckReport":
        return CheckReport(self.checks + other.checks)

    def by_label(self, label: str) -> list:
        return [c for c in self.checks if c.label == label]

    def failed(self) -> list:
        return [c for c in self.checks if not c.passed]


def make_check(name: str, label: str, residual: Residual, note: Optional[str] = None) -> Check:
    if isinstance(residual, MultiTensor):
        worst, witness = ZERO, None
        for idx, v in residual.items():
            if abs(v) > worst:
                worst, witness = abs(v), idx
        passed = witness is None
    else:
        residual = Fraction(residual)
        passed = residual == 0
        witness = None if passed else ()
    return Check(name=name, label=label, passed=passed, witness=witness, residual=residual, note=note)


def skipped_check(name: str, label: str, note: str) -> Check:
    return Check(name=name, label=label, passed=True, witness=None, residual=ZERO, note=note, skipped=True)


def _tensor(n, variance, f):
    return MultiTensor.from_function(n, variance, f)


def check_almost_paracontact(m: FrameManifold, p: ParacontactStructure) -> CheckReport:
    n = m.n
    g = m.metric
    phi, zeta, nu = p.phi, p.zeta, p.nu
    phi2 = phi @ phi
    phi_zeta = phi @ zeta
    nu_phi = tuple(sum((nu[a] * phi[a, j] for a in range(n)), ZERO) for j in range(n))
    gram = phi.T @ g @ phi  # g(phi e_i, phi e_j)
    g_phi = g @ phi  # g(e_i, phi e_j)
    nu_ref = p.nu_supplied if p.nu_supplied is not None else nu
    checks = [
        make_check("nu(zeta) = -1", "(2.1)", sum((a * b for a, b in zip(nu, zeta)), ZERO) + 1),
        make_check("phi^2 E = E + nu(E) zeta", "(2.2)",
                   _tensor(n, (UP, DOWN), lambda a, b: phi2[a, b] - (a == b) - zeta[a] * nu[b])),
        make_check("phi zeta = 0", "(2.3)", _tensor(n, (UP,), lambda a: phi_zeta[a])),
        make_check("nu(phi E) = 0", "(2.3)", _tensor(n, (DOWN,), lambda j: nu_phi[j])),
        make_check("g(phi E, phi F) = g(E, F) + nu(E) nu(F)", "(2.4)",
                   _tensor(n, (DOWN, DOWN), lambda i, j: gram[i, j] - g[i, j] - nu[i] * nu[j])),
        make_check("g(E, zeta) = nu(E)", "(2.5)",
                   _tensor(n, (DOWN,), lambda i: nu[i] - nu_ref[i])),
        make_check("g(E, phi F) = g(F, phi E)", "(2.6)",
                   _tensor(n, (DOWN, DOWN), lambda i, j: g_phi[i, j] - g_phi[j, i])),
    ]
    return CheckReport(tuple(checks))


def _nabla_zeta(m, conn, zeta):
    return [covariant_derivative_vector(m, conn, basis_vector(m.n, i), zeta) for i in range(m.n)]


def check_k_paracontact(m: FrameManifold, conn: Connection, p: ParacontactStructure) -> CheckReport:
    n = m.n
    dz = _nabla_zeta(m, conn, p.zeta)
    res = _tensor(n, (DOWN, UP), lambda i, l: dz[i][l] - p.phi[l, i])
    return CheckReport((make_check("nabla_E zeta = phi E", "(2.7)", res),))


def check_lp_kenmotsu(m: FrameManifold, conn: Connection, p: ParacontactStructure) -> CheckReport:
    n = m.n
    g = m.metric
    phi, zeta, nu = p.phi, p.zeta, p.nu
    gamma = conn.gamma
    dphi = [covariant_derivative_endomorphism(m, conn, basis_vector(n, i), phi) for i in range(n)]
    g_phi_e = phi.T @ g  # [i, j] = g(phi e_i, e_j)
    dz = _nabla_zeta(m, conn, zeta)

    def r29(i, j, l):
        return dphi[i][l, j] + g_phi_e[i, j] * zeta[l] + nu[j] * phi[l, i]

    def r211(i, j):
        dnu = -sum((gamma[i][j][k] * nu[k] for k in range(n)), ZERO)
        return dnu + g[i, j] + nu[i] * nu[j]

    checks = [
        make_check("(nabla_E phi) F = -g(phi E, F) zeta - nu(F) phi E", "(2.9)",
                   _tensor(n, (DOWN, DOWN, UP), r29)),
        make_check("nabla_E zeta = -E - nu(E) zeta", "(2.10)",
                   _tensor(n, (DOWN, UP), lambda i, l: dz[i][l] + (i == l) + nu[i] * zeta[l])),
        make_check("(nabla_E nu) F = -g(E, F) - nu(E) nu(F)", "(2.11)", _tensor(n, (DOWN, DOWN), r211)),
    ]
    return CheckReport(tuple(checks))


def check_curvature_identities(m: FrameManifold, cd: CurvatureData, p: ParacontactStructure) -> CheckReport:
    n = m.n
    g = m.metric
    zeta, nu = p.zeta, p.nu
    R = cd.riemann
    S = cd.ricci
    idx = range(n)

    def r_zeta_first(j, k, l):  # R(zeta, e_j) e_k
        return sum((zeta[i] * R[i, j, k, l] for i in idx if zeta[i]), ZERO)

    def r_zeta_last(i, j, l):  # R(e_i, e_j) zeta
        return sum((zeta[k] * R[i, j, k, l] for k in idx if zeta[k]), ZERO)

    def r212(i, j, k):
        lhs = sum((R[i, j, k, l] * nu[l] for l in idx), ZERO)
        return lhs - g[j, k] * nu[i] + g[i, k] * nu[j]

    def r213(j, k, l):
        return r_zeta_first(j, k, l) - g[j, k] * zeta[l] + nu[k] * (j == l)

    def r214(i, j, l):
        return r_zeta_last(i, j, l) - nu[j] * (i == l) + nu[i] * (j == l)

    def r215(j, l):
        v = sum((zeta[k] * r_zeta_first(j, k, l) for k in idx if zeta[k]), ZERO)
        return v - (j == l) - nu[j] * zeta[l]

    s_zeta = S @ zeta  # S(e_i, zeta)
    s_zz = sum((zeta[i] * s_zeta[i] for i in idx), ZERO)
    q_zeta = cd.ricci_operator @ zeta
    checks = [
        make_check("nu(R(E,F)G) = g(F,G) nu(E) - g(E,G) nu(F)", "(2.12)",
                   _tensor(n, (DOWN, DOWN, DOWN), r212)),
        make_check("R(zeta,E)F = g(E,F) zeta - nu(F) E", "(2.13)", _tensor(n, (DOWN, DOWN, UP), r213)),
        make_check("R(E,F)zeta = nu(F) E - nu(E) F", "(2.14)", _tensor(n, (DOWN, DOWN, UP), r214)),
        make_check("R(zeta,E)zeta = E + nu(E) zeta", "(2.15)", _tensor(n, (DOWN, UP), r215)),
        make_check("S(E,zeta) = (n-1) nu(E)", "(2.16)",
                   _tensor(n, (DOWN,), lambda i: s_zeta[i] - (n - 1) * nu[i])),
        make_check("S(zeta,zeta) = -(n-1)", "(2.16)", s_zz + (n - 1)),
        make_check("Q zeta = (n-1) zeta", "(2.17)",
                   _tensor(n, (UP,), lambda l: q_zeta[l] - (n - 1) * zeta[l])),
    ]
    return CheckReport(tuple(checks))


def nabla_q_closed_form(m: FrameManifold, p: ParacontactStructure, r, f: Sequence, e: Sequence) -> Vector:
    """``(nabla_F Q) E`` predicted from the nu-Einstein form of Q at constant ``r``."""
    n = m.n
    b = Fraction(r) / (n - 1) - n
    nu_e = sum((p.nu[i] * e[i] for i in range(n)), ZERO)
    nu_f = sum((p.nu[i] * f[i] for i in range(n)), ZERO)
    gef = m.metric.bilinear(e, f)
    return tuple(-b * (gef * p.zeta[k] + 2 * nu_e * nu_f * p.zeta[k] + nu_e * f[k]) for k in range(n))


def check_scalar_lemma(m: FrameManifold, conn: Connection, cd: CurvatureData,
                       p: ParacontactStructure) -> CheckReport:
    """Constant-r consequences of the scalar-curvature lemma plus the closed form of nabla Q."""
    n = m.n
    q = cd.ricci_operator
    zeta = p.zeta
    basis = [basis_vector(n, i) for i in range(n)]
    dq = [covariant_derivative_endomorphism(m, conn, basis[i], q) for i in range(n)]
    dq_zeta = covariant_derivative_endomorphism(m, conn, zeta, q)

    if n == 3:
        msg = "lemma coefficient (n-3)/(2(n-1)) vanishes for n = 3; constant-r check skipped"
        warnings.warn(msg, stacklevel=2)
        first = skipped_check("zeta(r) = 2(r - n(n-1)) at constant r", "(2.20)", msg)
    else:
        # zeta(r) = 0 for constant components, so the lemma forces r = n(n-1)
        first = make_check("zeta(r) = 2(r - n(n-1)) at constant r", "(2.20)", 2 * (cd.scalar - n * (n - 1)))

    def r221(i, l):
        return (dq[i] @ zeta)[l] - q[l, i] + (n - 1) * (i == l)

    def r222(i, l):
        return dq_zeta[l, i] - 2 * q[l, i] + 2 * (n - 1) * (i == l)

    def r46(f, e, l):
        return dq[f][l, e] - nabla_q_closed_form(m, p, cd.scalar, basis[f], basis[e])[l]

    checks = [
        first,
        make_check("(nabla_E Q) zeta = QE - (n-1)E", "(2.21)", _tensor(n, (DOWN, UP), r221)),
        make_check("(nabla_zeta Q) E = 2QE - 2(n-1)E", "(2.22)", _tensor(n, (DOWN, UP), r222)),
        make_check("(nabla_F Q) E closed form at constant r", "(4.6)", _tensor(n, (DOWN, DOWN, UP), r46)),
    ]
    return CheckReport(tuple(checks))


EINSTEIN = "Einstein"
NU_EINSTEIN = "nu-Einstein"
NEITHER = "neither"


@dataclass(frozen=True)
class EinsteinClassification:
    a: Fraction
    b: Fraction
    decomposition_holds: bool
    decomposition_residual: Matrix
    label: str
    scalar: Fraction
    expected_scalar: int
    scalar_consistent: bool
    notes: tuple = field(default_factory=tuple)


def classify_einstein(m: FrameManifold, cd: CurvatureData, p: ParacontactStructure) -> EinsteinClassification:
    n = m.n
    r = cd.scalar
    a = r / (n - 1) - 1
    b = r / (n - 1) - n
    predicted = a * m.metric + b * Matrix.outer(p.nu, p.nu)
    residual = cd.ricci - predicted
    holds = residual.is_zero()
    if holds and b == 0 and not cd.ricci.is_zero():
        label = EINSTEIN
    elif holds and b != 0:
        label = NU_EINSTEIN
    else:
        label = NEITHER
    expected = n * (n - 1)
    notes = []
    if r != expected:
        notes.append(f"r = {r} differs from n(n-1) = {expected}; a constant-r LP-Kenmotsu frame needs r = n(n-1)")
    return EinsteinClassification(a=a, b=b, decomposition_holds=holds, decomposition_residual=residual,
                                  label=label, scalar=r, expected_scalar=expected,
                                  scalar_consistent=r == expected, notes=tuple(notes))


def consistency_24_vs_21(report: CheckReport, m: FrameManifold, p: ParacontactStructure) -> bool:
    """(2.4) at E = F = zeta collapses to nu(zeta)(nu(zeta) + 1) = 0 when phi zeta = 0.

    Returns True when the two report entries are mutually consistent.
    """
    (c21,) = report.by_label("(2.1)")
    c24 = report.by_label("(2.4)")[0]
    c23 = report.by_label("(2.3)")[0]
    if not c23.passed:
        return True
    nz = p.nu
    zz = sum((a * b for a, b in zip(nz, p.zeta)), ZERO)
    contracted = sum((p.zeta[i] * p.zeta[j] * c24.residual[i, j]
                      for i, j in itertools.product(range(m.n), repeat=2)), ZERO)
    # with phi zeta = 0 the contraction is -(nu(zeta)^2 + nu(zeta))
    if contracted != -(zz * zz + zz):
        return False
    return c21.passed or zz == 0 or not c24.passed
