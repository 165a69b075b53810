"""Random instances that satisfy the near-attainment hypotheses by construction.

Every generator starts from an exactly attaining configuration and moves
away from it along a random direction, halving the step until the deficit
is within the requested ``delta``. With ``delta == 0`` the canonical
configuration is returned unchanged: ``x`` positive with dyadic entries
summing to exactly 1, ``phi == 1`` on ``supp(x)`` and ``|phi| <= 1/2``
elsewhere, so the corrections must reproduce it bit for bit.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .construct import first_threshold, second_threshold
from .errors import DomainError
from .operators import op_norm_l1, operator_threshold
from .space import FIELD_MODES, phase

KINDS = ("pair-l1", "operator-l1", "operator-c0")
DYADIC_BITS = 20
MAX_HALVINGS = 200


@dataclass
class Instance:
    kind: str
    field_mode: str
    eps: float
    x: np.ndarray
    phi: np.ndarray
    T: Optional[np.ndarray] = None
    method: str = "first"
    delta: float = 0.0
    seed: Optional[int] = None

    @property
    def n(self):
        return int(self.x.size)


def hypothesis_threshold(kind, eps, method="first"):
    if kind == "pair-l1":
        return second_threshold(eps) if method == "second" else first_threshold(eps)
    if kind in ("operator-l1", "operator-c0"):
        return operator_threshold(eps)
    raise DomainError(f"unknown kind {kind!r}")


def _units(rng, size, field_mode):
    if field_mode == "real":
        return rng.choice([-1.0, 1.0], size=size).astype(np.complex128)
    return np.exp(1j * rng.uniform(0, 2 * np.pi, size=size))


def _disc(rng, size, radius, field_mode):
    if field_mode == "real":
        return rng.uniform(-radius, radius, size=size).astype(np.complex128)
    return radius * np.sqrt(rng.uniform(size=size)) * _units(rng, size, "complex")


def _noise(rng, shape, field_mode):
    z = rng.normal(size=shape)
    if field_mode == "complex":
        z = z + 1j * rng.normal(size=shape)
    return z.astype(np.complex128)


def _dyadic_simplex(rng, k):
    """``k`` positive dyadic weights with exact float sum 1."""
    total = 2**DYADIC_BITS
    w = rng.dirichlet(np.ones(k))
    c = np.maximum(1, np.floor(w * (total - k)).astype(np.int64))
    c[np.argmax(c)] += total - c.sum()
    return c.astype(float) / total


def _support(rng, n):
    k = int(rng.integers(1, n + 1))
    return np.sort(rng.choice(n, size=k, replace=False))


def canonical_pair(n, rng, field_mode="complex"):
    """Exactly attaining ``(x, phi)``: ``x >= 0`` dyadic, ``phi = 1`` on ``supp(x)``."""
    S = _support(rng, n)
    x = np.zeros(n, dtype=np.complex128)
    x[S] = _dyadic_simplex(rng, S.size)
    phi = _disc(rng, n, 0.5, field_mode)
    phi[S] = 1.0
    return x, phi


def _spread_pair(n, rng, field_mode):
    """Attaining pair with random phases and moduli spread over many decades."""
    S = _support(rng, n)
    x = np.zeros(n, dtype=np.complex128)
    mags = 10.0 ** rng.uniform(-8, 0, size=S.size)
    x[S] = mags / mags.sum() * _units(rng, S.size, field_mode)
    phi = _disc(rng, n, 1.0, field_mode)
    phi[S] = np.conj(phase(x[S]))
    return x, phi


def _descend(deficit, target, t0=1.0):
    t = t0
    for _ in range(MAX_HALVINGS):
        d = deficit(t)
        if d <= target:
            return t
        t /= 2
    return 0.0


def _check_delta(delta, threshold):
    if delta < 0:
        raise DomainError("delta must be non-negative")
    if delta > threshold:
        raise DomainError(f"delta = {delta!r} exceeds the hypothesis threshold {threshold!r}")


def generate_pair(n, eps, rng, delta=None, field_mode="complex", method="first"):
    """Pair in the unit balls with ``Re phi(x) >= 1 - delta`` (``|phi(x)|`` for ``first-modulus``).

    ``delta`` defaults to the threshold of ``method``. One coordinate of
    ``supp(x)`` keeps ``phi`` unimodular so ``pi_1(phi)`` is non-empty.
    """
    threshold = hypothesis_threshold("pair-l1", eps, method)
    delta = threshold if delta is None else delta
    _check_delta(delta, threshold)
    if delta == 0:
        x, phi = canonical_pair(n, rng, field_mode)
        return Instance("pair-l1", field_mode, eps, x, phi, method=method, delta=0.0)

    x_att, phi_att = _spread_pair(n, rng, field_mode)
    S = np.flatnonzero(x_att != 0)
    keep = S[np.argmax(np.abs(x_att[S]))]
    dx = _noise(rng, n, field_mode)
    dx /= np.sum(np.abs(dx))
    dphi = _noise(rng, n, field_mode) / (np.abs(x_att) + 1e-3)
    dphi /= np.max(np.abs(dphi))
    dphi[keep] = 0
    target = delta * rng.uniform(0.1, 0.9)

    def point(t):
        x = x_att + t * dx
        x = x / max(1.0, float(np.sum(np.abs(x))))
        phi = phi_att + t * dphi
        phi = phi / np.maximum(1.0, np.abs(phi))
        return x, phi

    def deficit(t):
        x, phi = point(t)
        return 1.0 - np.dot(phi, x).real

    t = _descend(deficit, target)
    x, phi = point(t)
    if method == "first-modulus" and field_mode == "complex":
        x = x * np.exp(1j * rng.uniform(0, 2 * np.pi))
    elif method == "first-modulus":
        x = x * rng.choice([-1.0, 1.0])
    return Instance("pair-l1", field_mode, eps, x, phi, method=method, delta=float(delta))


def canonical_operator(n, rng, field_mode="complex"):
    """Exactly attaining ``(T, x, phi)`` in the positive configuration.

    Columns on ``supp(x)`` are non-negative dyadic vectors supported on
    ``supp(x)`` with unit sum; the remaining columns have norm below one.
    """
    x, phi = canonical_pair(n, rng, field_mode)
    S = np.flatnonzero(x != 0)
    T = _noise(rng, (n, n), field_mode)
    T /= np.sum(np.abs(T), axis=0, keepdims=True) * rng.uniform(1.05, 3.0, size=(1, n))
    for j in S:
        col = np.zeros(n, dtype=np.complex128)
        col[S] = _dyadic_simplex(rng, S.size)
        T[:, j] = col
    return T, x, phi


def generate_operator(n, eps, rng, delta=None, field_mode="complex", kind="operator-l1", rotate=False):
    """Operator triple with ``||T|| = 1``, ``(x, phi)`` norming and ``Re phi(Tx) >= 1 - delta``.

    For ``kind="operator-c0"`` the l1 triple is transposed: the c0 operator
    is ``T^T``, the c0 vector is ``phi`` and the l1 functional is ``x``.
    ``rotate`` multiplies ``T`` by a random unimodular scalar, so only the
    modulus hypothesis holds.
    """
    threshold = operator_threshold(eps)
    delta = threshold if delta is None else delta
    _check_delta(delta, threshold)
    if delta == 0:
        T, x, phi = canonical_operator(n, rng, field_mode)
    else:
        x, phi = _spread_pair(n, rng, field_mode)
        S = np.flatnonzero(x != 0)
        T_att = _noise(rng, (n, n), field_mode)
        T_att /= np.sum(np.abs(T_att), axis=0, keepdims=True) * rng.uniform(1.0, 2.0, size=(1, n))
        for j in S:
            c = rng.dirichlet(np.ones(S.size))
            y = np.zeros(n, dtype=np.complex128)
            y[S] = c * np.conj(phi[S])
            T_att[:, j] = phi[j] * y
        dT = _noise(rng, (n, n), field_mode)
        dT /= np.sum(np.abs(dT), axis=0, keepdims=True)
        dT *= 1.0 / (np.abs(x) + 1e-3)[None, :]
        target = delta * rng.uniform(0.1, 0.9)

        def op(t):
            Tt = T_att + t * dT
            Tt = Tt / np.maximum(1.0, np.sum(np.abs(Tt), axis=0, keepdims=True))
            return Tt / op_norm_l1(Tt)

        def deficit(t):
            return 1.0 - np.dot(phi, op(t) @ x).real

        T = op(_descend(deficit, target, t0=10.0))

    method = "plain"
    if rotate:
        T = T * _units(rng, 1, field_mode)[0]
        method = "modulus"
    if kind == "operator-c0":
        return Instance("operator-c0", field_mode, eps, x=phi, phi=x, T=T.T.copy(), method=method, delta=float(delta))
    return Instance(kind, field_mode, eps, x=x, phi=phi, T=T, method=method, delta=float(delta))


def generate(kind, n, eps, rng, delta=None, field_mode="complex", method="first", rotate=False):
    if field_mode not in FIELD_MODES:
        raise DomainError(f"unknown field mode {field_mode!r}")
    if not 0.0 < eps < 1.0:
        raise DomainError(f"eps must lie in (0, 1), got {eps}")
    if n < 1:
        raise DomainError("n must be at least 1")
    if kind == "pair-l1":
        return generate_pair(n, eps, rng, delta, field_mode, method)
    if kind in ("operator-l1", "operator-c0"):
        return generate_operator(n, eps, rng, delta, field_mode, kind, rotate)
    raise DomainError(f"unknown kind {kind!r}")
