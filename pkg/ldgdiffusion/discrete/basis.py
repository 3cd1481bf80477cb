"""
Orthonormal modal basis on the reference triangle with vertices (0,0), (1,0),
(0,1). Basis functions are numbered 1..15; the first N = (p+1)(p+2)/2 span
P_p(T^) for p = 0..4.
"""
import numpy as np

from ldgdiffusion.constants import MAX_POLY_ORDER
from ldgdiffusion.exceptions import UnsupportedOrderError

NUM_BASIS_FUNCTIONS = 15

SQ2 = np.sqrt(2.0)
SQ3 = np.sqrt(3.0)
SQ5 = np.sqrt(5.0)
SQ6 = np.sqrt(6.0)
SQ10 = np.sqrt(10.0)
SQ14 = np.sqrt(14.0)
SQ30 = np.sqrt(30.0)
SQ70 = np.sqrt(70.0)


def _phi_1(x1, x2):
    return SQ2 * np.ones_like(x1)


def _phi_2(x1, x2):
    return 2 - 6 * x1


def _phi_3(x1, x2):
    return 2 * SQ3 * (1 - x1 - 2 * x2)


def _phi_4(x1, x2):
    return SQ6 * ((10 * x1 - 8) * x1 + 1)


def _phi_5(x1, x2):
    return SQ3 * ((5 * x1 - 4) * x1 + (-15 * x2 + 12) * x2 - 1)


def _phi_6(x1, x2):
    return 3 * SQ5 * ((3 * x1 + 8 * x2 - 4) * x1 + (3 * x2 - 4) * x2 + 1)


def _phi_7(x1, x2):
    return 2 * SQ2 * (-1 + (15 + (-45 + 35 * x1) * x1) * x1)


def _phi_8(x1, x2):
    return 2 * SQ6 * (
        -1 + (13 + (-33 + 21 * x1) * x1) * x1 + (2 + (-24 + 42 * x1) * x1) * x2
    )


def _phi_9(x1, x2):
    return 2 * SQ10 * (
        -1
        + (9 + (-15 + 7 * x1) * x1) * x1
        + (6 + (-48 + 42 * x1) * x1 + (-6 + 42 * x1) * x2) * x2
    )


def _phi_10(x1, x2):
    return 2 * SQ14 * (
        -1
        + (3 + (-3 + x1) * x1) * x1
        + (12 + (-24 + 12 * x1) * x1 + (-30 + 30 * x1 + 20 * x2) * x2) * x2
    )


def _phi_11(x1, x2):
    return SQ10 * (1 + (-24 + (126 + (-224 + 126 * x1) * x1) * x1) * x1)


def _phi_12(x1, x2):
    return SQ30 * (
        1
        + (-22 + (105 + (-168 + 84 * x1) * x1) * x1) * x1
        + (-2 + (42 + (-168 + 168 * x1) * x1) * x1) * x2
    )


def _phi_13(x1, x2):
    return 5 * SQ2 * (
        1
        + (-18 + (69 + (-88 + 36 * x1) * x1) * x1) * x1
        + (
            -6
            + (102 + (-312 + 216 * x1) * x1) * x1
            + (6 + (-96 + 216 * x1) * x1) * x2
        )
        * x2
    )


def _phi_14(x1, x2):
    return SQ70 * (
        1
        + (-12 + (30 + (-28 + 9 * x1) * x1) * x1) * x1
        + (
            -12
            + (132 + (-228 + 108 * x1) * x1) * x1
            + (30 + (-300 + 270 * x1) * x1 + (-20 + 180 * x1) * x2) * x2
        )
        * x2
    )


def _phi_15(x1, x2):
    return 3 * SQ10 * (
        1
        + (-4 + (6 + (-4 + x1) * x1) * x1) * x1
        + (
            -20
            + (60 + (-60 + 20 * x1) * x1) * x1
            + (90 + (-180 + 90 * x1) * x1 + (-140 + 140 * x1 + 70 * x2) * x2) * x2
        )
        * x2
    )


def _dphi1_1(x1, x2):
    return np.zeros_like(x1)


def _dphi1_2(x1, x2):
    return -6 * np.ones_like(x1)


def _dphi1_3(x1, x2):
    return -2 * SQ3 * np.ones_like(x1)


def _dphi1_4(x1, x2):
    return SQ6 * (20 * x1 - 8)


def _dphi1_5(x1, x2):
    return SQ3 * (10 * x1 - 4)


def _dphi1_6(x1, x2):
    return 6 * SQ5 * (3 * x1 + 4 * x2 - 2)


def _dphi1_7(x1, x2):
    return 2 * SQ2 * (15 + (-90 + 105 * x1) * x1)


def _dphi1_8(x1, x2):
    return 2 * SQ6 * (13 + (-66 + 63 * x1) * x1 + (-24 + 84 * x1) * x2)


def _dphi1_9(x1, x2):
    return 2 * SQ10 * (9 + (-30 + 21 * x1) * x1 + (-48 + 84 * x1 + 42 * x2) * x2)


def _dphi1_10(x1, x2):
    return 2 * SQ14 * (3 + (-6 + 3 * x1) * x1 + (-24 + 24 * x1 + 30 * x2) * x2)


def _dphi1_11(x1, x2):
    return SQ10 * (-24 + (252 + (-672 + 504 * x1) * x1) * x1)


def _dphi1_12(x1, x2):
    return SQ30 * (
        -22
        + (210 + (-504 + 336 * x1) * x1) * x1
        + (42 + (-336 + 504 * x1) * x1) * x2
    )


def _dphi1_13(x1, x2):
    return 5 * SQ2 * (
        -18
        + (138 + (-264 + 144 * x1) * x1) * x1
        + (102 + (-624 + 648 * x1) * x1 + (-96 + 432 * x1) * x2) * x2
    )


def _dphi1_14(x1, x2):
    return SQ70 * (
        -12
        + (60 + (-84 + 36 * x1) * x1) * x1
        + (132 + (-456 + 324 * x1) * x1 + (-300 + 540 * x1 + 180 * x2) * x2) * x2
    )


def _dphi1_15(x1, x2):
    return 3 * SQ10 * (
        -4
        + (12 + (-12 + 4 * x1) * x1) * x1
        + (60 + (-120 + 60 * x1) * x1 + (-180 + 180 * x1 + 140 * x2) * x2) * x2
    )


def _dphi2_zero(x1, x2):
    return np.zeros_like(x1)


def _dphi2_3(x1, x2):
    return -4 * SQ3 * np.ones_like(x1)


def _dphi2_5(x1, x2):
    return 2 * SQ3 * (-15 * x2 + 6)


def _dphi2_6(x1, x2):
    return 6 * SQ5 * (4 * x1 + 3 * x2 - 2)


def _dphi2_8(x1, x2):
    return 2 * SQ6 * (2 + (-24 + 42 * x1) * x1)


def _dphi2_9(x1, x2):
    return 2 * SQ10 * (6 + (-48 + 42 * x1) * x1 + (-12 + 84 * x1) * x2)


def _dphi2_10(x1, x2):
    return 2 * SQ14 * (12 + (-24 + 12 * x1) * x1 + (-60 + 60 * x1 + 60 * x2) * x2)


def _dphi2_12(x1, x2):
    return SQ30 * (-2 + (42 + (-168 + 168 * x1) * x1) * x1)


def _dphi2_13(x1, x2):
    return 5 * SQ2 * (
        -6
        + (102 + (-312 + 216 * x1) * x1) * x1
        + (12 + (-192 + 432 * x1) * x1) * x2
    )


def _dphi2_14(x1, x2):
    return SQ70 * (
        -12
        + (132 + (-228 + 108 * x1) * x1) * x1
        + (60 + (-600 + 540 * x1) * x1 + (-60 + 540 * x1) * x2) * x2
    )


def _dphi2_15(x1, x2):
    return 3 * SQ10 * (
        -20
        + (60 + (-60 + 20 * x1) * x1) * x1
        + (180 + (-360 + 180 * x1) * x1 + (-420 + 420 * x1 + 280 * x2) * x2) * x2
    )


_PHI = (
    _phi_1, _phi_2, _phi_3, _phi_4, _phi_5,
    _phi_6, _phi_7, _phi_8, _phi_9, _phi_10,
    _phi_11, _phi_12, _phi_13, _phi_14, _phi_15,
)

_GRAD_PHI = {
    1: (
        _dphi1_1, _dphi1_2, _dphi1_3, _dphi1_4, _dphi1_5,
        _dphi1_6, _dphi1_7, _dphi1_8, _dphi1_9, _dphi1_10,
        _dphi1_11, _dphi1_12, _dphi1_13, _dphi1_14, _dphi1_15,
    ),
    2: (
        _dphi2_zero, _dphi2_zero, _dphi2_3, _dphi2_zero, _dphi2_5,
        _dphi2_6, _dphi2_zero, _dphi2_8, _dphi2_9, _dphi2_10,
        _dphi2_zero, _dphi2_12, _dphi2_13, _dphi2_14, _dphi2_15,
    ),
}


def _check_index(i):
    if isinstance(i, bool) or not isinstance(i, (int, np.integer)):
        raise UnsupportedOrderError(f"basis index must be an integer, got {i!r}")
    if not 1 <= i <= NUM_BASIS_FUNCTIONS:
        raise UnsupportedOrderError(
            f"basis index {i} outside 1..{NUM_BASIS_FUNCTIONS} "
            f"(polynomial orders up to {MAX_POLY_ORDER})"
        )


def phi(i, x1, x2):
    """
    Evaluates the i-th basis function.
    :param i: basis index 1..15
    :param x1: reference coordinates, any array shape
    :param x2: reference coordinates, same shape as x1
    :return: float array of the shape of x1
    """
    _check_index(i)
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    return _PHI[i - 1](x1, x2)


def grad_phi(i, m, x1, x2):
    """
    Evaluates the derivative of the i-th basis function in direction x^m.
    :param i: basis index 1..15
    :param m: component 1 or 2
    """
    _check_index(i)
    if m not in _GRAD_PHI:
        raise UnsupportedOrderError(f"gradient component must be 1 or 2, got {m!r}")
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    return _GRAD_PHI[m][i - 1](x1, x2)


def phi_table(n_local, x1, x2):
    """Values of basis functions 1..n_local, stacked along a trailing axis."""
    return np.stack([phi(i, x1, x2) for i in range(1, n_local + 1)], axis=-1)


def grad_phi_table(n_local, x1, x2):
    """Gradients of basis functions 1..n_local, shape (*x1.shape, n_local, 2)."""
    return np.stack(
        [
            np.stack([grad_phi(i, m, x1, x2) for m in (1, 2)], axis=-1)
            for i in range(1, n_local + 1)
        ],
        axis=-2,
    )
