"""Explicit Bishop-Phelps-Bollobas corrections for (vector, functional) pairs on l1^n.

Two recipes are provided. :func:`bpb_first` keeps the coordinates of ``x``
that are well aligned with ``phi`` and snaps ``phi`` to the conjugate phase
of ``x`` there. :func:`bpb_second` works in the frame where ``phi`` is
positive and produces a corrected functional that depends only on
``(phi, eps)``; the operator correction relies on that independence.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import space
from .errors import DomainError, EmptyP, HypothesisNotMet
from .space import DEFAULT_TOL, l1_norm, pair, phase, set_A, set_P, sup_norm


# Constants of the two constructions. Each maps eps to the quantity used.
def first_threshold(eps):
    """Allowed deficit ``1 - Re phi(x)`` for the first construction."""
    return eps**3 / 4.0


def first_radius(eps):
    """Radius of the retained index set for the first construction."""
    return eps**2 / 2.0


def second_threshold(eps):
    return eps**3 / 60.0


def second_radius(eps):
    return eps**2 / 20.0


@dataclass
class PairCorrection:
    x0: np.ndarray
    phi0: np.ndarray
    dist_x: float
    dist_phi: float
    attainment: complex
    eps: float
    method: str
    P: np.ndarray
    M: float
    r: float
    threshold: float
    realized: complex
    A: Optional[np.ndarray] = None
    forced: bool = False
    extra: dict = field(default_factory=dict)


def _check_inputs(x, phi, eps, tol):
    x = space.as_vector(x, "x")
    phi = space.as_vector(phi, "phi")
    if x.shape != phi.shape:
        raise space.DimensionMismatch(f"length mismatch: {x.size} vs {phi.size}")
    if not 0.0 < eps < 1.0:
        raise DomainError(f"eps must lie in (0, 1), got {eps}")
    if l1_norm(x) > 1.0 + tol:
        raise DomainError(f"x is outside the unit ball: ||x||_1 = {l1_norm(x)!r}")
    if sup_norm(phi) > 1.0 + tol:
        raise DomainError(f"phi is outside the unit ball: ||phi||_inf = {sup_norm(phi)!r}")
    return x, phi


def _require(realized, threshold, what, force):
    required = 1.0 - threshold
    if realized < required and not force:
        raise HypothesisNotMet(
            f"{what} = {realized!r} is below the required {required!r} "
            f"(deficit {required - realized:.3e})",
            deficit=required - realized,
            required=required,
            realized=realized,
        )


def key_lemma_mass(x, phi, r, tol=DEFAULT_TOL):
    """Mass ``|| Re(e^{i arg phi} x) 1_P ||_1`` of the well-aligned coordinates.

    Returns ``(mass, P)`` with ``P = set_P(x, phi, r)``. When
    ``Re phi(x) >= 1 - delta`` with ``delta < r`` the mass is at least
    ``1 - delta/r``.
    """
    x = space.as_vector(x, "x")
    phi = space.as_vector(phi, "phi")
    if x.shape != phi.shape:
        raise space.DimensionMismatch(f"length mismatch: {x.size} vs {phi.size}")
    if not 0.0 < r < 1.0:
        raise DomainError(f"r must lie in (0, 1), got {r}")
    P = set_P(x, phi, r)
    mass = float(np.sum(np.abs(np.real(phase(phi[P]) * x[P]))))
    return mass, P


def bpb_first(x, phi, eps, tol=DEFAULT_TOL, force=False) -> PairCorrection:
    """First construction: truncate ``x`` to its aligned part, align ``phi`` there.

    Requires ``Re phi(x) >= 1 - eps^3/4``. ``force=True`` skips that check
    (the guarantees are then not promised).
    """
    x, phi = _check_inputs(x, phi, eps, tol)
    realized = pair(phi, x)
    threshold = first_threshold(eps)
    _require(realized.real, threshold, "Re phi(x)", force)

    r = first_radius(eps)
    P = set_P(x, phi, r)
    M = float(np.sum(np.abs(x[P])))
    if M == 0.0:
        raise EmptyP("no coordinate of x is aligned with phi; cannot normalize")

    x0 = np.zeros_like(x)
    x0[P] = x[P] / M
    phi0 = phi.copy()
    phi0[P] = np.conj(phase(x[P]))
    return PairCorrection(
        x0=x0,
        phi0=phi0,
        dist_x=l1_norm(x - x0),
        dist_phi=sup_norm(phi - phi0),
        attainment=pair(phi0, x0),
        eps=eps,
        method="first",
        P=P,
        M=M,
        r=r,
        threshold=threshold,
        realized=realized,
        forced=force,
    )


def bpb_first_modulus(x, phi, eps, tol=DEFAULT_TOL, force=False) -> PairCorrection:
    """First construction under ``|phi(x)| >= 1 - eps^3/4``.

    Rotates ``x`` so that ``phi(x)`` becomes non-negative, corrects, then
    rotates ``x0`` back; the corrected pair satisfies ``|phi0(x0)| = 1``.
    """
    x, phi = _check_inputs(x, phi, eps, tol)
    realized = pair(phi, x)
    threshold = first_threshold(eps)
    _require(abs(realized), threshold, "|phi(x)|", force)

    w = phase(realized)
    inner = bpb_first(np.conj(w) * x, phi, eps, tol=tol, force=True)
    x0 = w * inner.x0
    return PairCorrection(
        x0=x0,
        phi0=inner.phi0,
        dist_x=l1_norm(x - x0),
        dist_phi=inner.dist_phi,
        attainment=pair(inner.phi0, x0),
        eps=eps,
        method="first-modulus",
        P=inner.P,
        M=inner.M,
        r=inner.r,
        threshold=threshold,
        realized=realized,
        forced=force,
        extra={"rotation": w},
    )


def second_functional(phi, eps):
    """Corrected functional of the second construction and its snap set ``A``.

    ``phi`` is kept off ``A = {j : |phi_j| >= 1 - eps^2/20}`` and replaced by
    its phase on ``A``. Nothing here depends on the vector being corrected.
    """
    phi = space.as_vector(phi, "phi")
    A = set_A(phi, second_radius(eps))
    phi0 = phi.copy()
    phi0[A] = phase(phi[A])
    return phi0, A


def bpb_second(x, phi, eps, tol=DEFAULT_TOL, force=False) -> PairCorrection:
    """Second construction, valid under ``Re phi(x) >= 1 - eps^3/60``.

    In the frame ``S`` that multiplies coordinate ``j`` by ``e^{i arg phi_j}``
    the functional is ``|phi|``; there the vector is replaced by the
    normalized positive part of ``Re(Sx)`` on the aligned set, and the
    result is mapped back with ``S^{-1}``.
    """
    x, phi = _check_inputs(x, phi, eps, tol)
    realized = pair(phi, x)
    threshold = second_threshold(eps)
    _require(realized.real, threshold, "Re phi(x)", force)

    r = second_radius(eps)
    phi0, A = second_functional(phi, eps)

    rot = phase(phi)
    x_tilde = rot * x
    phi_tilde = np.abs(phi)
    P = set_P(x_tilde, phi_tilde, r)
    re_part = np.real(x_tilde[P])
    M = float(np.sum(np.abs(re_part)))
    if M == 0.0:
        raise EmptyP("no coordinate of Sx is aligned with |phi|; cannot normalize")

    x_hat = np.zeros(x.size)
    x_hat[P] = re_part / M
    x0 = np.conj(rot) * x_hat
    return PairCorrection(
        x0=x0,
        phi0=phi0,
        dist_x=l1_norm(x - x0),
        dist_phi=sup_norm(phi - phi0),
        attainment=pair(phi0, x0),
        eps=eps,
        method="second",
        P=P,
        A=A,
        M=M,
        r=r,
        threshold=threshold,
        realized=realized,
        forced=force,
        extra={"x_tilde": x_tilde, "x_hat": x_hat},
    )


METHODS = {
    "first": bpb_first,
    "first-modulus": bpb_first_modulus,
    "second": bpb_second,
}
