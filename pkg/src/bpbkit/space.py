"""Finite-dimensional l1^n / l_inf^n carriers, norms and the bilinear pairing.

Vectors and functionals are plain ``complex128`` numpy arrays; operators are
square ``complex128`` matrices whose column ``j`` is the image of ``e_j``.
Coordinates are 0-based. Real-field mode is the same code restricted to
arrays with zero imaginary part (see :func:`check_field`).

The index sets returned by :func:`set_N`, :func:`set_A` and :func:`set_P`
are sorted ``int`` arrays, so they can be used directly for fancy indexing.
"""

from typing import Literal

import numpy as np

from .errors import DimensionMismatch, DomainError

FieldMode = Literal["real", "complex"]
FIELD_MODES = ("real", "complex")

TWO_PI = 2.0 * np.pi
DEFAULT_TOL = 1e-9


def as_vector(v, name="vector"):
    """Coerce ``v`` to a finite 1-d complex array with at least one entry."""
    arr = np.asarray(v, dtype=np.complex128)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.ndim != 1 or arr.size == 0:
        raise DimensionMismatch(f"{name} must be a non-empty 1-d array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} has non-finite entries")
    return arr


def as_operator(T, name="operator"):
    """Coerce ``T`` to a finite square complex matrix."""
    arr = np.asarray(T, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise DimensionMismatch(f"{name} must be a non-empty square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} has non-finite entries")
    return arr


def _same_length(a, b):
    if a.shape != b.shape:
        raise DimensionMismatch(f"length mismatch: {a.shape[0]} vs {b.shape[0]}")


def check_field(arr, mode: FieldMode) -> bool:
    """True when ``arr`` is admissible in field ``mode``."""
    if mode not in FIELD_MODES:
        raise DomainError(f"unknown field mode {mode!r}")
    if mode == "complex":
        return True
    return bool(np.all(np.imag(np.asarray(arr)) == 0))


def l1_norm(x) -> float:
    return float(np.sum(np.abs(np.asarray(x, dtype=np.complex128))))


def sup_norm(phi) -> float:
    phi = np.asarray(phi, dtype=np.complex128)
    return float(np.max(np.abs(phi))) if phi.size else 0.0


def pair(phi, x) -> complex:
    """Bilinear duality ``sum_j phi_j x_j`` (no conjugation)."""
    phi = np.asarray(phi, dtype=np.complex128)
    x = np.asarray(x, dtype=np.complex128)
    _same_length(phi, x)
    return complex(np.dot(phi, x))


def arg_of(z):
    """Principal argument in ``[0, 2*pi)`` with ``arg(0) = 0``.

    Accepts scalars or arrays; returns the same shape.
    """
    z = np.asarray(z, dtype=np.complex128)
    a = np.angle(z)
    a = np.where(a < 0, a + TWO_PI, a)
    # tiny negative angles can round up to exactly 2*pi
    a = np.where(a >= TWO_PI, 0.0, a)
    a = np.where(z == 0, 0.0, a)
    return float(a) if a.ndim == 0 else a


def phase(z):
    """``exp(i*arg(z))`` computed as ``z/|z|`` (and 1 at zero).

    The quotient form keeps real inputs exactly real (``phase(-2.0) == -1``),
    which the exponential of the angle does not.
    """
    z = np.asarray(z, dtype=np.complex128)
    mod = np.abs(z)
    safe = np.where(mod == 0, 1.0, mod)
    # componentwise real division; numpy's complex/real division is not exact on the axes
    out = (z.real / safe) + 1j * (z.imag / safe)
    out = np.where(mod == 0, 1.0 + 0j, out)
    return complex(out) if out.ndim == 0 else out


def support(x):
    x = np.asarray(x, dtype=np.complex128)
    return np.flatnonzero(np.abs(x) != 0)


def mask(indices, n):
    """Characteristic vector of ``indices`` in ``{0, ..., n-1}``."""
    m = np.zeros(n, dtype=bool)
    m[np.asarray(indices, dtype=int)] = True
    return m


def is_positive(x) -> bool:
    x = np.asarray(x, dtype=np.complex128)
    return bool(np.all(x.imag == 0) and np.all(x.real >= 0))


def set_N(x, phi, tol=0.0):
    """Coordinates with ``phi_j x_j == |x_j|`` up to ``tol``."""
    x = as_vector(x, "x")
    phi = as_vector(phi, "phi")
    _same_length(x, phi)
    if tol < 0:
        raise DomainError("tol must be non-negative")
    return np.flatnonzero(np.abs(phi * x - np.abs(x)) <= tol)


def set_A(phi, r):
    """Coordinates where ``|phi_j| >= 1 - r``."""
    if not r > 0:
        raise DomainError(f"r must be positive, got {r}")
    phi = as_vector(phi, "phi")
    return np.flatnonzero(np.abs(phi) >= 1.0 - r)


def set_P(x, phi, r):
    """Support coordinates where ``Re(phi_j x_j) >= (1 - r)|x_j|``."""
    if not r > 0:
        raise DomainError(f"r must be positive, got {r}")
    x = as_vector(x, "x")
    phi = as_vector(phi, "phi")
    _same_length(x, phi)
    ax = np.abs(x)
    keep = (ax != 0) & (np.real(phi * x) >= (1.0 - r) * ax)
    return np.flatnonzero(keep)


def in_Pi_l1(x, phi, tol=DEFAULT_TOL) -> bool:
    """Membership of ``(x, phi)`` in the norming pairs of l1^n (coordinatewise test)."""
    x = as_vector(x, "x")
    phi = as_vector(phi, "phi")
    _same_length(x, phi)
    if abs(l1_norm(x) - 1.0) > tol or abs(sup_norm(phi) - 1.0) > tol:
        return False
    return len(set_N(x, phi, tol)) == x.size


def in_pi1(phi, x, tol=DEFAULT_TOL) -> bool:
    """``x`` is a unit vector on which ``phi`` takes the value 1."""
    x = as_vector(x, "x")
    phi = as_vector(phi, "phi")
    _same_length(x, phi)
    return abs(l1_norm(x) - 1.0) <= tol and abs(pair(phi, x) - 1.0) <= tol
