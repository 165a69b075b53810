"""Brute-force checks that do not share code paths with the constructions.

:func:`nr_grid_oracle_l1` estimates the numerical radius by evaluating
``|phi(Tx)|`` over explicitly built norming pairs ``(x, phi)``, never
touching the column-sum formula. The ``verify_*`` functions recompute every
conclusion of a correction from the raw input and output arrays.
"""

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .space import DEFAULT_TOL, as_operator, as_vector, in_Pi_l1, set_A, set_P

# slack for comparing realized distances with eps; only absorbs summation rounding
DIST_SLACK = 1e-12


def _phase(z):
    z = np.asarray(z, dtype=np.complex128)
    mod = np.abs(z)
    safe = np.where(mod == 0, 1.0, mod)
    return np.where(mod == 0, 1.0 + 0j, z.real / safe + 1j * (z.imag / safe))


def _colsum_norm(T):
    # kept local so the verifier does not import the code it checks
    return float(np.max(np.sum(np.abs(T), axis=0)))


@dataclass
class OracleReport:
    estimate: float
    closed_form: float
    gap: float
    samples: int
    seed: int
    resolution: int
    best_x: np.ndarray = field(repr=False, default=None)


def pi_values(T, X):
    """``|phi(Tx)|`` for each row ``x`` of ``X`` with the best admissible ``phi``.

    On ``supp(x)`` the functional is forced to ``conj(phase(x_j))``; off the
    support each ``phi_k`` is unimodular and rotated so that ``phi_k (Tx)_k``
    lines up with the forced part. Rows of ``X`` must be unit vectors.
    """
    TX = X @ T.T
    on = X != 0
    phi = np.where(on, np.conj(_phase(X)), 0)
    forced = np.sum(phi * TX, axis=1)
    align = _phase(forced)[:, None] * np.conj(_phase(TX))
    phi = np.where(on, phi, align)
    return np.abs(np.sum(phi * TX, axis=1))


def _basis_points(n, sweep=8):
    ph = np.exp(2j * np.pi * np.arange(sweep) / sweep)
    X = np.zeros((n * sweep, n), dtype=np.complex128)
    for j in range(n):
        X[j * sweep:(j + 1) * sweep, j] = ph
    return X


def _grid_size(n, m):
    return math.comb(m + n - 1, n - 1) * m ** (n - 1)


def _simplex_phase_grid(n, budget):
    """Lattice points of the modulus simplex (``m`` divisions) times ``m`` phases per coordinate."""
    m = 0
    while _grid_size(n, m + 1) <= budget:
        m += 1
        if m > 4096:
            break
    if m < 2:
        return np.zeros((0, n), dtype=np.complex128)
    mods = []
    for bars in itertools.combinations(range(m + n - 1), n - 1):
        cuts = (-1,) + bars + (m + n - 1,)
        mods.append([cuts[i + 1] - cuts[i] - 1 for i in range(n)])
    mods = np.asarray(mods, dtype=float) / m
    phases = np.exp(2j * np.pi * np.arange(m) / m)
    # first coordinate's phase is irrelevant to |phi(Tx)|
    ph = np.array(list(itertools.product(phases, repeat=n - 1)), dtype=np.complex128).reshape(-1, n - 1)
    ph = np.hstack([np.ones((ph.shape[0], 1), dtype=np.complex128), ph])
    return (mods[:, None, :] * ph[None, :, :]).reshape(-1, n)


def _random_points(n, count, rng):
    X = np.zeros((count, n), dtype=np.complex128)
    if count == 0:
        return X
    k = rng.integers(1, n + 1, size=count)
    w = rng.dirichlet(np.ones(n), size=count)
    order = np.argsort(rng.random((count, n)), axis=1)
    keep = np.argsort(order, axis=1) < k[:, None]
    w = np.where(keep, w, 0.0)
    w /= w.sum(axis=1, keepdims=True)
    ang = rng.uniform(0, 2 * np.pi, size=(count, n))
    X[:] = w * np.exp(1j * ang)
    return X


def nr_grid_oracle_l1(T, resolution=10_000, seed=0, chunk=50_000) -> OracleReport:
    """Estimate the numerical radius of ``T`` on l1^n by sampling norming pairs.

    The sample always contains every basis vector with an 8-point phase
    sweep, then a modulus-simplex x phase lattice using about half of
    ``resolution`` and uniformly random unit vectors (with random supports)
    for the rest. Deterministic for a given ``(resolution, seed)``.
    """
    if resolution < 1:
        raise DomainError("resolution must be at least 1")
    T = as_operator(T, "T")
    n = T.shape[0]
    rng = np.random.default_rng(seed)

    blocks = [_basis_points(n)]
    used = blocks[0].shape[0]
    grid = _simplex_phase_grid(n, max(0, resolution // 2))
    blocks.append(grid)
    used += grid.shape[0]
    blocks.append(_random_points(n, max(0, resolution - used), rng))

    best, best_x, total = -1.0, None, 0
    for X in blocks:
        for start in range(0, X.shape[0], chunk):
            part = X[start:start + chunk]
            vals = pi_values(T, part)
            i = int(np.argmax(vals))
            if vals[i] > best:
                best, best_x = float(vals[i]), part[i].copy()
            total += part.shape[0]
    closed = _colsum_norm(T)
    return OracleReport(
        estimate=best,
        closed_form=closed,
        gap=closed - best,
        samples=total,
        seed=int(seed),
        resolution=int(resolution),
        best_x=best_x,
    )


@dataclass
class Verdict:
    checks: dict
    values: dict

    @property
    def passed(self):
        return all(self.checks.values())

    def failures(self):
        return [k for k, ok in self.checks.items() if not ok]


def verify_pair_correction(x, phi, eps, out, tol=DEFAULT_TOL) -> Verdict:
    """Recheck a :class:`~bpbkit.construct.PairCorrection` against its input."""
    x = as_vector(x, "x")
    phi = as_vector(phi, "phi")
    x0 = as_vector(out.x0, "x0")
    phi0 = as_vector(out.phi0, "phi0")
    P = np.asarray(out.P, dtype=int)
    method = out.method

    dist_x = float(np.sum(np.abs(x - x0)))
    dist_phi = float(np.max(np.abs(phi - phi0)))
    att = complex(np.sum(phi0 * x0))
    checks = {
        "dist_x": dist_x <= eps + DIST_SLACK,
        "dist_phi": dist_phi <= eps + DIST_SLACK,
        "unit_x0": abs(np.sum(np.abs(x0)) - 1.0) <= tol,
        "unit_phi0": abs(np.max(np.abs(phi0)) - 1.0) <= tol,
    }
    values = {"dist_x": dist_x, "dist_phi": dist_phi, "attainment": att}

    if method == "first-modulus":
        w = _phase(complex(np.sum(phi * x)))
        checks["attainment"] = abs(abs(att) - 1.0) <= tol
        checks["in_Pi"] = in_Pi_l1(np.conj(w) * x0, phi0, tol)
        xr = np.conj(w) * x
    else:
        checks["attainment"] = abs(att - 1.0) <= tol
        checks["in_Pi"] = in_Pi_l1(x0, phi0, tol)
        xr = x

    if method in ("first", "first-modulus"):
        P_raw = set_P(xr, phi, eps**2 / 2)
        M = float(np.sum(np.abs(xr[P_raw])))
        checks["P_recomputed"] = np.array_equal(P_raw, P)
        checks["M_bound"] = M >= 1.0 - eps / 2
    elif method == "second":
        rot = _phase(phi)
        xt = rot * x
        P_raw = set_P(xt, np.abs(phi), eps**2 / 20)
        A_raw = set_A(phi, eps**2 / 20)
        M = float(np.sum(np.abs(np.real(xt[P_raw]))))
        checks["P_recomputed"] = np.array_equal(P_raw, P)
        checks["P_subset_A"] = bool(np.all(np.isin(P_raw, A_raw)))
        checks["M_bound"] = M >= 1.0 - eps / 3
    else:
        raise DomainError(f"unknown method {method!r}")
    checks["M_recorded"] = abs(M - out.M) <= tol
    values["M"] = M
    return Verdict(checks, values)


def verify_operator_correction(T, x, phi, eps, out, tol=DEFAULT_TOL, oracle_resolution=2000, seed=0) -> Verdict:
    """Recheck an :class:`~bpbkit.operators.OperatorCorrection` against its input.

    ``out.scale`` is applied to ``T`` first when the correction rescaled it.
    The numerical radius of ``T0`` is checked both by column sums and by the
    grid oracle (skipped when ``oracle_resolution`` is ``None``).
    """
    T = as_operator(T, "T") * out.scale
    x = as_vector(x, "x")
    phi = as_vector(phi, "phi")
    T0 = as_operator(out.T0, "T0")
    x0 = as_vector(out.x0, "x0")
    phi0 = as_vector(out.phi0, "phi0")
    P = np.asarray(out.P, dtype=int)
    n = T.shape[0]

    dist_T = _colsum_norm(T - T0)
    dist_x = float(np.sum(np.abs(x - x0)))
    dist_phi = float(np.max(np.abs(phi - phi0)))
    att = complex(np.sum(phi0 * (T0 @ x0)))
    nu = _colsum_norm(T0)
    w = _phase(complex(np.sum(phi * (T @ x)))) if out.rotation != 1 else 1.0 + 0j
    checks = {
        "dist_T": dist_T <= eps + DIST_SLACK,
        "dist_x": dist_x <= eps + DIST_SLACK,
        "dist_phi": dist_phi <= eps + DIST_SLACK,
        "in_Pi": in_Pi_l1(x0, phi0, tol),
        "attainment": abs(att - w) <= tol,
        "nu_closed_form": abs(nu - 1.0) <= tol,
    }
    values = {"dist_T": dist_T, "dist_x": dist_x, "dist_phi": dist_phi, "attainment": att, "nu_T0": nu}

    if oracle_resolution:
        rep = nr_grid_oracle_l1(T0, resolution=oracle_resolution, seed=seed)
        checks["nu_oracle"] = abs(rep.estimate - 1.0) <= tol
        values["nu_oracle"] = rep.estimate

    off = np.setdiff1d(np.arange(n), P)
    checks["columns_off_P_kept"] = np.array_equal(T0[:, off], T[:, off])

    mu = math.sqrt(eps**3 / 240)
    g = _phase(x) * ((np.conj(w) * T).T @ phi)
    a = _phase(g[P])
    checks["a_bound"] = bool(np.all(np.abs(a - 1.0) <= mu + DIST_SLACK))
    values["max_a_dev"] = float(np.max(np.abs(a - 1.0))) if P.size else 0.0
    return Verdict(checks, values)


def verify_c0_correction(T, x, phi, eps, out, tol=DEFAULT_TOL) -> Verdict:
    """Recheck a :class:`~bpbkit.c0.C0Correction` with c0 norms (rows for operators)."""
    T = as_operator(T, "T") * out.l1.scale
    x = as_vector(x, "x")
    phi = as_vector(phi, "phi")
    S = as_operator(out.S, "S")
    x0 = as_vector(out.x0, "x0")
    phi0 = as_vector(out.phi0, "phi0")

    dist_T = float(np.max(np.sum(np.abs(T - S), axis=1)))
    dist_x = float(np.max(np.abs(x - x0)))
    dist_phi = float(np.sum(np.abs(phi - phi0)))
    att = complex(np.sum(phi0 * (S @ x0)))
    nu = float(np.max(np.sum(np.abs(S), axis=1)))
    w = _phase(complex(np.sum(phi * (T @ x)))) if out.l1.rotation != 1 else 1.0 + 0j
    checks = {
        "dist_T": dist_T <= eps + DIST_SLACK,
        "dist_x": dist_x <= eps + DIST_SLACK,
        "dist_phi": dist_phi <= eps + DIST_SLACK,
        "in_Pi": in_Pi_l1(phi0, x0, tol),
        "attainment": abs(att - w) <= tol,
        "nu_closed_form": abs(nu - 1.0) <= tol,
    }
    values = {"dist_T": dist_T, "dist_x": dist_x, "dist_phi": dist_phi, "attainment": att, "nu_S": nu}
    return Verdict(checks, values)


@dataclass
class DemoResult:
    max_abs_pair: float
    bound: float
    eps: float
    samples: int
    seed: int
    n: int


def _shift(n):
    T = np.eye(n, dtype=np.complex128)
    T[:, 0] = 0
    T[1, 0] = 1
    return T


def counterexample_demo(eps, samples=10_000, seed=0, n=3) -> DemoResult:
    """Largest ``|phi(x)|`` over sampled pairs near ``(e_1, e_2^*)``.

    The shift ``Te_1 = e_2`` attains its numerical radius at ``(e_1, e_2^*)``
    only outside the norming pairs; every ``(x, phi)`` in the unit balls with
    ``||e_1 - x||_1 <= eps`` and ``||e_2^* - phi||_inf <= eps`` has
    ``|phi(x)| <= 2 eps``, so no nearby pair is norming. A tenth of the
    samples are placed on the extremal family ``x = (1-s) e_1 + s e_2``.
    """
    if not 0.0 < eps < 0.5:
        raise DomainError(f"eps must lie in (0, 1/2), got {eps}")
    if samples < 1:
        raise DomainError("samples must be at least 1")
    if n < 2:
        raise DomainError("n must be at least 2")
    rng = np.random.default_rng(seed)
    T = _shift(n)
    e1 = np.zeros(n, dtype=np.complex128)
    e1[0] = 1
    e2s = T[:, 0].copy()  # e_2 viewed as a functional

    xs, phis = [], []
    n_struct = samples // 10
    s = rng.uniform(0, eps / 2, size=n_struct)
    X = np.zeros((n_struct, n), dtype=np.complex128)
    X[:, 0] = 1 - s
    X[:, 1] = s
    F = np.tile(e2s, (n_struct, 1))
    F[:, 0] = eps * np.exp(1j * rng.uniform(-0.1, 0.1, size=n_struct))
    xs.append(X)
    phis.append(F)

    need = samples - n_struct
    while need > 0:
        m = max(need * 2, 64)
        d = rng.normal(size=(m, n)) + 1j * rng.normal(size=(m, n))
        d /= np.sum(np.abs(d), axis=1, keepdims=True)
        X = e1 + rng.uniform(0, eps, size=(m, 1)) * d
        norms = np.sum(np.abs(X), axis=1, keepdims=True)
        X = X / np.maximum(norms, 1.0)
        X = X[np.sum(np.abs(X - e1), axis=1) <= eps][:need]
        k = X.shape[0]
        rad = eps * np.sqrt(rng.uniform(size=(k, n)))
        F = e2s + rad * np.exp(1j * rng.uniform(0, 2 * np.pi, size=(k, n)))
        F = F / np.maximum(np.abs(F), 1.0)
        xs.append(X)
        phis.append(F)
        need -= k

    X = np.vstack(xs)
    F = np.vstack(phis)
    ok = (
        (np.sum(np.abs(X - e1), axis=1) <= eps + DIST_SLACK)
        & (np.max(np.abs(F - e2s), axis=1) <= eps + DIST_SLACK)
        & (np.sum(np.abs(X), axis=1) <= 1 + DIST_SLACK)
        & (np.max(np.abs(F), axis=1) <= 1 + DIST_SLACK)
    )
    vals = np.abs(np.sum(F[ok] * X[ok], axis=1))
    return DemoResult(
        max_abs_pair=float(vals.max()),
        bound=2 * eps,
        eps=eps,
        samples=int(ok.sum()),
        seed=int(seed),
        n=n,
    )
