"""Reference tables for the five-dimensional LP-Kenmotsu example (1-based frame indices).

Each curvature entry reads ``R(e_i, e_j) e_k = coefficient * e_l``.
"""

from fractions import Fraction

# nabla_{e_i} e_j = coefficient * e_k; every other coefficient is 0
GAMMA = tuple(
    [((i, i, 5), Fraction(-1)) for i in range(1, 5)]
    + [((i, 5, i), Fraction(-1)) for i in range(1, 5)]
)

# ((i, j, k), coefficient, l, typo_suspected)
RIEMANN = (
    ((1, 2, 1), Fraction(-1), 2, False),
    ((1, 2, 2), Fraction(1), 1, False),
    ((1, 3, 1), Fraction(-1), 3, False),
    ((1, 3, 3), Fraction(1), 1, False),
    # listed as "-v_4" in the reference table; read as -e_4
    ((1, 4, 1), Fraction(-1), 4, True),
    ((1, 4, 4), Fraction(1), 1, False),
    ((1, 5, 1), Fraction(-1), 5, False),
    ((1, 5, 5), Fraction(-1), 1, False),
    ((2, 3, 2), Fraction(-1), 3, False),
    ((2, 3, 3), Fraction(1), 2, False),
    ((2, 4, 2), Fraction(-1), 4, False),
    ((2, 4, 4), Fraction(1), 2, False),
    ((2, 5, 2), Fraction(-1), 5, False),
    ((2, 5, 5), Fraction(-1), 2, False),
    ((3, 4, 3), Fraction(-1), 4, False),
    ((3, 4, 4), Fraction(1), 3, False),
    ((3, 5, 3), Fraction(-1), 5, False),
    ((3, 5, 5), Fraction(-1), 3, False),
    ((4, 5, 4), Fraction(-1), 5, False),
    ((4, 5, 5), Fraction(-1), 4, False),
)

RICCI_DIAGONAL = (Fraction(4),) * 4 + (Fraction(-4),)
SCALAR = Fraction(20)


def gradient_lambda(sigma, rho) -> Fraction:
    """Lambda making the potential constant: ``10 rho - 4 sigma``."""
    return 10 * Fraction(rho) - 4 * Fraction(sigma)
