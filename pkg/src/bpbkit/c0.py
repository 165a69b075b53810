"""The c0^n side, obtained by dualizing the l1^n operator correction.

Vectors of c0^n carry the sup norm and functionals on c0^n are l1^n vectors.
The same bilinear :func:`bpbkit.space.pair` is used with the roles swapped:
``pair(phi, x)`` where ``phi`` is the l1 functional and ``x`` the c0 vector.

In finite dimension c0^n and l_inf^n coincide and every operator on l1^n is
an adjoint, so the restriction of ``T0^*`` to c0^n needs no extra checks.
"""

from dataclasses import dataclass

import numpy as np

from . import space
from .errors import DomainError, NotInPi, NotUnitNorm
from .operators import OperatorCorrection, bpbp_nu_l1, bpbp_nu_l1_modulus, op_norm_l1, operator_threshold
from .space import DEFAULT_TOL, as_operator, as_vector, in_Pi_l1, l1_norm, pair, sup_norm


def in_Pi_c0(x, phi, tol=DEFAULT_TOL) -> bool:
    """``||x||_inf = ||phi||_1 = 1`` and ``x_j phi_j = |phi_j|`` for all ``j``."""
    return in_Pi_l1(phi, x, tol)


def op_norm_c0(T):
    """Induced sup norm: largest row sum of moduli."""
    T = as_operator(T, "T")
    return float(np.max(np.sum(np.abs(T), axis=1)))


def numerical_radius_c0(T):
    # c0 has numerical index one
    return op_norm_c0(T)


@dataclass
class C0Correction:
    S: np.ndarray
    x0: np.ndarray
    phi0: np.ndarray
    dist_T: float
    dist_x: float
    dist_phi: float
    attainment: complex
    nu_S: float
    eps: float
    T: np.ndarray
    l1: OperatorCorrection


def bpbp_nu_c0(T, x, phi, eps, tol=DEFAULT_TOL, force=False, normalize=False) -> C0Correction:
    """Correct ``(T, x, phi)`` on c0^n with ``|phi(Tx)| >= 1 - (eps/9)^{9/2}``.

    Runs the l1 correction on ``(T^T, phi, x)`` (``phi`` is the vector there,
    ``x`` the functional) and transposes the corrected operator back. The
    rotated variant is used only when ``Re phi(Tx)`` itself misses the
    threshold; then ``|phi0(S x0)| = 1`` instead of ``phi0(S x0) = 1``.
    """
    T = as_operator(T, "T")
    x = as_vector(x, "x")
    phi = as_vector(phi, "phi")
    if T.shape[0] != x.size or x.size != phi.size:
        raise space.DimensionMismatch(f"T is {T.shape[0]}x{T.shape[1]}, x has {x.size}, phi has {phi.size}")
    if not 0.0 < eps < 1.0:
        raise DomainError(f"eps must lie in (0, 1), got {eps}")
    nu = numerical_radius_c0(T)
    if abs(nu - 1.0) > tol and not normalize:
        raise NotUnitNorm(f"numerical radius of T on c0 is {nu!r}, expected 1")
    if not in_Pi_c0(x, phi, tol):
        raise NotInPi("(x, phi) is not a norming pair of c0: need ||x||_inf = ||phi||_1 = 1 and x_j phi_j = |phi_j|")

    scale = 1.0 / nu if (normalize and abs(nu - 1.0) > tol and nu > 0) else 1.0
    realized = pair(phi, (T * scale) @ x)
    run = bpbp_nu_l1 if realized.real >= 1.0 - operator_threshold(eps) else bpbp_nu_l1_modulus
    res = run(T.T, phi, x, eps, tol=tol, force=force, normalize=normalize)
    T_used = res.T.T
    S = res.T0.T
    x0 = res.phi0
    phi0 = res.x0
    return C0Correction(
        S=S,
        x0=x0,
        phi0=phi0,
        dist_T=op_norm_c0(T_used - S),
        dist_x=sup_norm(x - x0),
        dist_phi=l1_norm(phi - phi0),
        attainment=pair(phi0, S @ x0),
        nu_S=numerical_radius_c0(S),
        eps=eps,
        T=T_used,
        l1=res,
    )


def dual_norm_gap(T, S):
    """``| ||S - T||_c0 - ||S^T - T^T||_l1 |``; zero up to rounding."""
    T = as_operator(T)
    S = as_operator(S)
    return abs(op_norm_c0(S - T) - op_norm_l1(S.T - T.T))
