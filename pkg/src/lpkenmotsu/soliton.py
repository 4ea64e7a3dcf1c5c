"""Ricci-Yamabe soliton residuals, Lambda solvers and closed-form theorem evaluators."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import BadDimension, SigmaZero
from .exact import Matrix, Vector, as_vector, format_rational, zero_vector
from .frame import CurvatureData, FrameManifold, koszul_connection, lie_derivative_metric
from .structure import ParacontactStructure

SHRINKING = "shrinking"
STEADY = "steady"
EXPANDING = "expanding"


@dataclass(frozen=True)
class SolitonParams:
    sigma: Fraction
    rho: Fraction
    lam: Optional[Fraction] = None

    def __post_init__(self):
        object.__setattr__(self, "sigma", Fraction(self.sigma))
        object.__setattr__(self, "rho", Fraction(self.rho))
        if self.lam is not None:
            object.__setattr__(self, "lam", Fraction(self.lam))

    def with_lambda(self, lam) -> "SolitonParams":
        return SolitonParams(self.sigma, self.rho, lam)


@dataclass(frozen=True)
class SolitonField:
    """``kind`` is ``"zeta"``, ``"explicit"`` (with ``vector``) or ``"gradient-constant"``."""

    kind: str
    vector: Optional[Vector] = None

    ZETA = "zeta"
    EXPLICIT = "explicit"
    GRADIENT_CONSTANT = "gradient-constant"

    def __post_init__(self):
        if self.kind not in (self.ZETA, self.EXPLICIT, self.GRADIENT_CONSTANT):
            raise ValueError(f"unknown soliton field kind {self.kind!r}")
        if (self.kind == self.EXPLICIT) != (self.vector is not None):
            raise ValueError("an explicit field needs a vector; other kinds take none")

    @classmethod
    def zeta(cls):
        return cls(cls.ZETA)

    @classmethod
    def explicit(cls, k: Sequence):
        return cls(cls.EXPLICIT, as_vector(k))

    @classmethod
    def gradient_constant(cls):
        return cls(cls.GRADIENT_CONSTANT)

    def resolve(self, n: int, structure: Optional[ParacontactStructure] = None) -> Vector:
        if self.kind == self.ZETA:
            if structure is None:
                raise ValueError("field 'zeta' needs the paracontact structure")
            return structure.zeta
        if self.kind == self.EXPLICIT:
            if len(self.vector) != n:
                raise ValueError(f"explicit field has {len(self.vector)} components, expected {n}")
            return self.vector
        # K = Dv with v constant
        return zero_vector(n)


@dataclass(frozen=True)
class SolitonVerdict:
    residual: Matrix
    satisfied: bool
    lambda_used: Fraction
    classification: str
    notes: tuple = ()


def classify_by_lambda(lam) -> str:
    lam = Fraction(lam)
    if lam < 0:
        return SHRINKING
    if lam == 0:
        return STEADY
    return EXPANDING


def rys_residual(m: FrameManifold, cd: CurvatureData, soliton_field: SolitonField, params: SolitonParams,
                 structure: Optional[ParacontactStructure] = None) -> Matrix:
    """``L_K g + 2 sigma S + (2 Lambda - rho r) g``."""
    if params.lam is None:
        raise ValueError("rys_residual needs Lambda")
    k = soliton_field.resolve(m.n, structure)
    lie = lie_derivative_metric(m, koszul_connection(m), k)
    return lie + 2 * params.sigma * cd.ricci + (2 * params.lam - params.rho * cd.scalar) * m.metric


def rys_verdict(m, cd, soliton_field, params, structure=None) -> SolitonVerdict:
    res = rys_residual(m, cd, soliton_field, params, structure)
    return SolitonVerdict(residual=res, satisfied=res.is_zero(), lambda_used=params.lam,
                          classification=classify_by_lambda(params.lam))


def _zeta_zeta(mat: Matrix, zeta) -> Fraction:
    return mat.bilinear(zeta, zeta)


def solve_lambda_zeta(m: FrameManifold, cd: CurvatureData, params: SolitonParams,
                      structure: ParacontactStructure) -> Fraction:
    """Lambda zeroing the (zeta, zeta) entry of the zeta-field residual.

    ``(L_zeta g)(zeta, zeta)`` is always 0, so this is
    ``rho r / 2 - sigma S(zeta, zeta) / g(zeta, zeta)``; on an LP-Kenmotsu frame
    it equals ``rho r / 2 - sigma (n - 1)``.
    """
    zeta = structure.zeta
    gzz = _zeta_zeta(m.metric, zeta)
    if gzz == 0:
        raise ValueError("g(zeta, zeta) = 0: the zeta contraction does not determine Lambda")
    return params.rho * cd.scalar / 2 - params.sigma * _zeta_zeta(cd.ricci, zeta) / gzz


def lambda_zeta_from_scalar(n: int, sigma, rho, r) -> Fraction:
    """``rho r / 2 - sigma (n - 1)``."""
    return Fraction(rho) * Fraction(r) / 2 - Fraction(sigma) * (n - 1)


@dataclass(frozen=True)
class ZetaSolitonAnalysis:
    lambda_used: Fraction
    predicted_ricci: Matrix
    ricci_residual: Matrix
    ricci_form_holds: bool
    lambda_from_r: Fraction  # rho r / 2 - sigma (n-1) with the frame's actual r
    compatible_scalar: Fraction  # r* = (n-1)/sigma + n(n-1)
    lambda_star: Fraction
    classification: str
    inequality_lhs: Fraction  # rho / sigma
    inequality_rhs: Fraction  # 2 sigma - rho n
    inequality_classification: Optional[str]
    notes: tuple = field(default_factory=tuple)


def zeta_soliton_closed_form(n: int, sigma, rho) -> tuple:
    """``(r*, Lambda*)`` for a zeta-field soliton on a constant-r frame."""
    sigma, rho = Fraction(sigma), Fraction(rho)
    if sigma == 0:
        raise SigmaZero("sigma = 0: the zeta-soliton Ricci form divides by sigma")
    r_star = Fraction(n - 1) / sigma + n * (n - 1)
    lam_star = -sigma * (n - 1) + rho * (n - 1) * (1 + n * sigma) / (2 * sigma)
    return r_star, lam_star


def inequality_classification(n: int, sigma, rho) -> Optional[str]:
    """Compare ``rho/sigma`` with ``2 sigma - rho n``; only meaningful for sigma > 0."""
    sigma, rho = Fraction(sigma), Fraction(rho)
    if sigma <= 0:
        return None
    lhs, rhs = rho / sigma, 2 * sigma - rho * n
    if lhs > rhs:
        return EXPANDING
    if lhs == rhs:
        return STEADY
    return SHRINKING


def zeta_soliton_analysis(m: FrameManifold, cd: CurvatureData, structure: ParacontactStructure,
                          params: SolitonParams) -> ZetaSolitonAnalysis:
    n = m.n
    sigma, rho = params.sigma, params.rho
    if sigma == 0:
        raise SigmaZero("sigma = 0: the zeta-soliton Ricci form divides by sigma")
    r = cd.scalar
    lam_from_r = lambda_zeta_from_scalar(n, sigma, rho, r)
    lam = params.lam if params.lam is not None else lam_from_r
    nu = structure.nu
    predicted = (-(lam - 1 - rho * r / 2) / sigma) * m.metric + (1 / sigma) * Matrix.outer(nu, nu)
    residual = cd.ricci - predicted
    r_star, lam_star = zeta_soliton_closed_form(n, sigma, rho)
    notes = []
    if r != r_star:
        notes.append(f"actual r = {format_rational(r)} != r* = {format_rational(r_star)} "
                     f"for sigma = {format_rational(sigma)}: the frame is not a zeta-field RYS")
    if sigma < 0:
        notes.append("sigma < 0: inequality form not evaluated (dividing by sigma flips it)")
    return ZetaSolitonAnalysis(
        lambda_used=lam,
        predicted_ricci=predicted,
        ricci_residual=residual,
        ricci_form_holds=residual.is_zero(),
        lambda_from_r=lam_from_r,
        compatible_scalar=r_star,
        lambda_star=lam_star,
        classification=classify_by_lambda(lam_star),
        inequality_lhs=rho / sigma,
        inequality_rhs=2 * sigma - rho * n,
        inequality_classification=inequality_classification(n, sigma, rho),
        notes=tuple(notes),
    )


def lambda_constant_potential(n: int, sigma, rho) -> Fraction:
    """``rho n (n-1) / 2 - sigma (n-1)``."""
    if n < 3:
        raise BadDimension(f"n = {n} < 3")
    return Fraction(rho) * n * (n - 1) / 2 - Fraction(sigma) * (n - 1)


def gradient_rys_residual(m: FrameManifold, cd: CurvatureData, params: SolitonParams) -> Matrix:
    """``nabla Dv + sigma Q + (Lambda - rho r / 2) Id`` with ``Dv = 0``."""
    if params.lam is None:
        raise ValueError("gradient_rys_residual needs Lambda")
    hess = Matrix.zeros(m.n)  # v constant
    return hess + params.sigma * cd.ricci_operator + (params.lam - params.rho * cd.scalar / 2) * Matrix.identity(m.n)


def solve_gradient_lambda(m: FrameManifold, cd: CurvatureData, sigma, rho,
                          structure: ParacontactStructure) -> Fraction:
    """``rho r / 2 - sigma S(zeta,zeta) / g(zeta,zeta)``."""
    return solve_lambda_zeta(m, cd, SolitonParams(sigma, rho), structure)


def gradient_verdict(m, cd, params: SolitonParams, structure: ParacontactStructure) -> SolitonVerdict:
    notes = []
    if params.lam is None:
        lam = solve_gradient_lambda(m, cd, params.sigma, params.rho, structure)
        notes.append("Lambda solved from the zeta contraction")
        params = params.with_lambda(lam)
    res = gradient_rys_residual(m, cd, params)
    if not res.is_zero():
        notes.append("residual nonzero: Q is not a multiple of the identity or Lambda is off")
    return SolitonVerdict(residual=res, satisfied=res.is_zero(), lambda_used=params.lam,
                          classification=classify_by_lambda(params.lam), notes=tuple(notes))


@dataclass(frozen=True)
class GradientFormulas:
    zeta_v: Fraction
    nu_coefficient: Fraction  # coefficient of nu(F) in F(v)
    dr_coefficient: Fraction  # coefficient of F(r) in F(v); F(r) = 0 here
    trivial: bool


def gradient_formula_suite(n: int, sigma, rho, r) -> GradientFormulas:
    if n < 4:
        raise BadDimension(f"gradient formula suite needs n >= 4, got {n}")
    sigma, rho, r = Fraction(sigma), Fraction(rho), Fraction(r)
    excess = r - n * (n - 1)
    zeta_v = excess / (n - 1) * (2 * (n - 1) * rho - sigma * (5 * n - 13) / (n - 1))
    nu_coef = -excess * (3 * rho - sigma * (5 * n - 13) / Fraction((n - 1) ** 2))
    return GradientFormulas(zeta_v=zeta_v, nu_coefficient=nu_coef, dr_coefficient=-rho / 2,
                            trivial=excess == 0)


@dataclass(frozen=True)
class CorollaryRow:
    corollary: str
    soliton: str
    sigma: Fraction
    rho: Fraction
    source: str
    lam: Fraction
    classification: str
    stated_lambda: Fraction
    stated_label: str
    lambda_match: bool
    label_match: bool

    @property
    def match(self) -> bool:
        return self.lambda_match and self.label_match


def corollary_table(n: int) -> list:
    if n < 3:
        raise BadDimension(f"n = {n} < 3")
    q = Fraction
    # (corollary, soliton, sigma, rho, source, stated Lambda, stated label)
    stated = [
        ("3.2", "Ricci soliton", 1, 0, "(3.15)", q(-(n - 1)), SHRINKING),
        ("3.3", "Yamabe soliton", 0, 1, "(3.15)", q(n * (n - 1), 2), SHRINKING),
        ("3.4", "Einstein soliton", 1, -1, "(3.15)", q(-(n * n - 1), 2), SHRINKING),
        ("4.3", "gradient Ricci soliton", 1, 0, "(4.13)", q(-(n - 1)), SHRINKING),
        ("4.4", "gradient Einstein soliton", 1, -1, "(4.13)", q(-(n - 1) * (n + 2), 2), SHRINKING),
    ]
    rows = []
    for cor, kind, sigma, rho, source, stated_lam, stated_label in stated:
        lam = lambda_constant_potential(n, sigma, rho)
        label = classify_by_lambda(lam)
        rows.append(CorollaryRow(cor, kind, q(sigma), q(rho), source, lam, label, stated_lam, stated_label,
                                 lam == stated_lam, label == stated_label))
    return rows


def corollary_discrepancies(n: int) -> list:
    out = []
    for row in corollary_table(n):
        if not row.lambda_match:
            out.append(f"Corollary {row.corollary} ({row.soliton}): stated Lambda = "
                       f"{format_rational(row.stated_lambda)}, formula {row.source} gives "
                       f"{format_rational(row.lam)} (suspected slip)")
        if not row.label_match:
            out.append(f"Corollary {row.corollary} ({row.soliton}): stated '{row.stated_label}', but "
                       f"Lambda = {format_rational(row.lam)} is {row.classification} by the sign rule")
    return out
