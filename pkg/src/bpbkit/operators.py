"""Operators on l1^n: norm, numerical radius and the numerical-radius correction.

An operator is an ``n x n`` complex matrix ``T`` with ``T[k, j] = <e_k*, T e_j>``,
so column ``j`` is ``T e_j``. With the bilinear pairing the adjoint is the
plain transpose.
"""

from dataclasses import dataclass, field

import numpy as np

from . import space
from .construct import bpb_second, second_functional
from .errors import DomainError, EmptyP, HypothesisNotMet, InternalInvariant, NotInPi, NotUnitNorm
from .space import DEFAULT_TOL, as_operator, as_vector, in_Pi_l1, l1_norm, pair, phase, sup_norm


def operator_threshold(eps):
    """Allowed deficit ``1 - Re phi(Tx)`` for the operator correction."""
    return (eps / 9.0) ** 4.5


def operator_mu(eps):
    return float(np.sqrt(eps**3 / 240.0))


def apply(T, x):
    T = as_operator(T, "T")
    x = as_vector(x, "x")
    if T.shape[1] != x.size:
        raise space.DimensionMismatch(f"operator is {T.shape[0]}x{T.shape[1]}, vector has length {x.size}")
    return T @ x


def adjoint(T):
    """Transpose (no conjugation): ``pair(adjoint(T) phi, x) == pair(phi, T x)``."""
    return as_operator(T, "T").T.copy()


def op_norm_l1(T, return_argmax=False):
    """Induced l1 norm: the largest column sum of moduli.

    With ``return_argmax`` also returns the smallest maximizing column.
    """
    T = as_operator(T, "T")
    sums = np.sum(np.abs(T), axis=0)
    j = int(np.argmax(sums))
    norm = float(sums[j])
    return (norm, j) if return_argmax else norm


def numerical_radius_l1(T):
    """Numerical radius on l1^n. The numerical index of l1 is one, so this is the norm."""
    return op_norm_l1(T)


def attains_nr(T, x, phi, tol=DEFAULT_TOL):
    """True when ``(x, phi)`` is a norming pair at which ``|phi(Tx)|`` equals the numerical radius."""
    T = as_operator(T, "T")
    x = as_vector(x, "x")
    phi = as_vector(phi, "phi")
    if T.shape[0] != x.size or x.size != phi.size:
        return False
    if not in_Pi_l1(x, phi, tol):
        return False
    return abs(abs(pair(phi, T @ x)) - numerical_radius_l1(T)) <= tol


@dataclass
class ColumnRecord:
    j: int
    a: complex  # phase of phi(Te_j) in the frame where x is positive
    z: np.ndarray  # replacement column T0 e_j (original frame)
    M: float


@dataclass
class OperatorCorrection:
    T0: np.ndarray
    x0: np.ndarray
    phi0: np.ndarray
    dist_T: float
    dist_x: float
    dist_phi: float
    attainment: complex
    nu_T0: float
    eps: float
    mu: float
    P: np.ndarray
    A: np.ndarray
    column_log: list
    threshold: float
    realized: complex
    T: np.ndarray  # the operator actually corrected (after optional rescaling)
    isometry: np.ndarray  # u with x = u * |x|
    scale: float = 1.0
    rotation: complex = 1.0 + 0j
    forced: bool = False
    constants: dict = field(default_factory=dict)

    @property
    def replaced_columns(self):
        return self.P

    @property
    def dist_nu(self):
        # numerical radius equals the norm on l1^n
        return self.dist_T


def _prepare(T, x, phi, eps, tol, normalize):
    T = as_operator(T, "T")
    x = as_vector(x, "x")
    phi = as_vector(phi, "phi")
    if T.shape[0] != x.size or x.size != phi.size:
        raise space.DimensionMismatch(f"T is {T.shape[0]}x{T.shape[1]}, x has {x.size}, phi has {phi.size}")
    if not 0.0 < eps < 1.0:
        raise DomainError(f"eps must lie in (0, 1), got {eps}")
    nu = numerical_radius_l1(T)
    scale = 1.0
    if abs(nu - 1.0) > tol:
        if not normalize:
            raise NotUnitNorm(f"numerical radius of T is {nu!r}, expected 1")
        if nu == 0.0:
            raise NotUnitNorm("the zero operator cannot be normalized")
        scale = 1.0 / nu
        T = T * scale
    if not in_Pi_l1(x, phi, tol):
        raise NotInPi("(x, phi) is not a norming pair: need ||x||_1 = ||phi||_inf = 1 and phi_j x_j = |x_j|")
    return T, x, phi, scale


def bpbp_nu_l1(T, x, phi, eps, tol=DEFAULT_TOL, force=False, normalize=False) -> OperatorCorrection:
    """Correct ``(T, x, phi)`` with ``Re phi(Tx) >= 1 - (eps/9)^{9/2}`` to an exactly attaining triple.

    The returned ``T0`` agrees with ``T`` outside the replaced columns ``P``;
    each replaced column lies in ``pi_1(phi0)`` up to the phase that undoes
    the positivity frame, and ``phi0`` depends only on ``(phi, eps)``.
    """
    T, x, phi, scale = _prepare(T, x, phi, eps, tol, normalize)
    realized = pair(phi, T @ x)
    threshold = operator_threshold(eps)
    if realized.real < 1.0 - threshold and not force:
        raise HypothesisNotMet(
            f"Re phi(Tx) = {realized.real!r} is below 1 - (eps/9)^4.5 = {1.0 - threshold!r}",
            deficit=(1.0 - threshold) - realized.real,
            required=1.0 - threshold,
            realized=realized.real,
        )

    # frame where x is positive: x = u * |x|, T' = U^{-1} T U, phi' = phi U
    u = phase(x)
    x_pos = np.abs(x)
    phi_p = phi * u
    supp = np.flatnonzero(x_pos != 0)
    if np.any(np.abs(phi_p[supp] - 1.0) > tol):
        raise InternalInvariant("phi is not 1 on supp(x) in the positive frame; (x, phi) is corrupted")
    T_p = np.conj(u)[:, None] * T * u[None, :]

    mu = operator_mu(eps)
    r_P = mu**2 / 2.0
    g = T_p.T @ phi_p  # g_j = phi'(T' e_j)
    P = space.set_P(x_pos, g, r_P)
    if P.size == 0:
        raise EmptyP("no column of T is aligned with phi on supp(x)")

    Mx = float(np.sum(x_pos[P]))
    x0 = np.zeros_like(x)
    x0[P] = x[P] / Mx

    eps_col = eps / 2.0
    phi0, A = second_functional(phi, eps_col)

    T0 = T.copy()
    log = []
    for j in P:
        a = phase(g[j])
        col = bpb_second(np.conj(a) * T_p[:, j], phi_p, eps_col, tol=tol, force=True)
        z = np.conj(u[j]) * (u * col.x0)
        T0[:, j] = z
        log.append(ColumnRecord(j=int(j), a=a, z=z, M=col.M))

    T0x0 = T0 @ x0
    return OperatorCorrection(
        T0=T0,
        x0=x0,
        phi0=phi0,
        dist_T=op_norm_l1(T - T0),
        dist_x=l1_norm(x - x0),
        dist_phi=sup_norm(phi - phi0),
        attainment=pair(phi0, T0x0),
        nu_T0=numerical_radius_l1(T0),
        eps=eps,
        mu=mu,
        P=P,
        A=A,
        column_log=log,
        threshold=threshold,
        realized=realized,
        T=T,
        isometry=u,
        scale=scale,
        forced=force,
        constants={
            "threshold": threshold,
            "mu": mu,
            "P_radius": r_P,
            "A_radius": eps_col**2 / 20.0,
        },
    )


def bpbp_nu_l1_modulus(T, x, phi, eps, tol=DEFAULT_TOL, force=False, normalize=False) -> OperatorCorrection:
    """Operator correction under ``|phi(Tx)| >= 1 - (eps/9)^{9/2}``.

    ``T`` is rotated by the phase of ``phi(Tx)``, corrected, and the replaced
    columns rotated back, so ``|phi0(T0 x0)| = 1``.
    """
    T, x, phi, scale = _prepare(T, x, phi, eps, tol, normalize)
    realized = pair(phi, T @ x)
    threshold = operator_threshold(eps)
    if abs(realized) < 1.0 - threshold and not force:
        raise HypothesisNotMet(
            f"|phi(Tx)| = {abs(realized)!r} is below 1 - (eps/9)^4.5 = {1.0 - threshold!r}",
            deficit=(1.0 - threshold) - abs(realized),
            required=1.0 - threshold,
            realized=abs(realized),
        )
    w = phase(realized)
    inner = bpbp_nu_l1(np.conj(w) * T, x, phi, eps, tol=tol, force=True)

    T0 = T.copy()
    P = inner.P
    T0[:, P] = w * inner.T0[:, P]
    log = [ColumnRecord(j=rec.j, a=rec.a, z=T0[:, rec.j].copy(), M=rec.M) for rec in inner.column_log]
    return OperatorCorrection(
        T0=T0,
        x0=inner.x0,
        phi0=inner.phi0,
        dist_T=op_norm_l1(T - T0),
        dist_x=inner.dist_x,
        dist_phi=inner.dist_phi,
        attainment=pair(inner.phi0, T0 @ inner.x0),
        nu_T0=numerical_radius_l1(T0),
        eps=eps,
        mu=inner.mu,
        P=P,
        A=inner.A,
        column_log=log,
        threshold=threshold,
        realized=realized,
        T=T,
        isometry=inner.isometry,
        scale=scale,
        rotation=w,
        forced=force,
        constants=inner.constants,
    )


def shift_operator(n):
    """``Te_1 = e_2`` and ``Te_j = e_j`` for ``j >= 2`` (0-based: column 0 is e_1)."""
    if n < 2:
        raise DomainError("the shift needs n >= 2")
    T = np.eye(n, dtype=np.complex128)
    T[:, 0] = 0
    T[1, 0] = 1
    return T
