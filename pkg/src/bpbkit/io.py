"""JSON encoding of instances and run reports.

Every complex number is written as a ``[re, im]`` pair of decimal strings
with 17 significant digits, which round-trips IEEE doubles exactly. Operators
are stored as a list of rows, ``T[k][j] = <e_k*, T e_j>``.
"""

import json
from types import SimpleNamespace

import numpy as np

from .errors import ParseError
from .generate import KINDS, Instance
from .space import FIELD_MODES


def fmt(v):
    return format(float(v), ".17g")


def enc_scalar(z):
    z = complex(z)
    return [fmt(z.real), fmt(z.imag)]


def enc_vector(v):
    return [enc_scalar(z) for z in np.asarray(v, dtype=np.complex128)]


def enc_matrix(T):
    return [enc_vector(row) for row in np.asarray(T, dtype=np.complex128)]


def dec_scalar(p):
    try:
        re, im = p
        return complex(float(re), float(im))
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad complex pair {p!r}") from exc


def dec_vector(v):
    if not isinstance(v, list):
        raise ParseError(f"expected a list of [re, im] pairs, got {type(v).__name__}")
    return np.array([dec_scalar(p) for p in v], dtype=np.complex128)


def dec_matrix(T):
    if not isinstance(T, list) or not T:
        raise ParseError("expected a non-empty list of rows")
    rows = [dec_vector(r) for r in T]
    if any(r.size != len(rows) for r in rows):
        raise ParseError("operator must be square")
    return np.vstack(rows)


def instance_to_dict(inst: Instance):
    d = {
        "kind": inst.kind,
        "field_mode": inst.field_mode,
        "n": inst.n,
        "eps": fmt(inst.eps),
        "method": inst.method,
        "delta": fmt(inst.delta),
        "seed": inst.seed,
        "x": enc_vector(inst.x),
        "phi": enc_vector(inst.phi),
    }
    if inst.T is not None:
        d["T"] = enc_matrix(inst.T)
    return d


def instance_from_dict(d):
    try:
        kind = d["kind"]
        field_mode = d.get("field_mode", "complex")
        if kind not in KINDS:
            raise ParseError(f"unknown kind {kind!r}")
        if field_mode not in FIELD_MODES:
            raise ParseError(f"unknown field_mode {field_mode!r}")
        x = dec_vector(d["x"])
        phi = dec_vector(d["phi"])
        T = dec_matrix(d["T"]) if d.get("T") is not None else None
        eps = float(d["eps"])
        inst = Instance(
            kind=kind,
            field_mode=field_mode,
            eps=eps,
            x=x,
            phi=phi,
            T=T,
            method=d.get("method", "first"),
            delta=float(d.get("delta", 0.0)),
            seed=d.get("seed"),
        )
    except KeyError as exc:
        raise ParseError(f"missing field {exc.args[0]!r}") from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc)) from exc
    n = d.get("n", x.size)
    if x.size != n or phi.size != n or (T is not None and T.shape[0] != n):
        raise ParseError(f"dimensions inconsistent with n = {n}")
    if kind != "pair-l1" and T is None:
        raise ParseError(f"kind {kind!r} needs an operator T")
    if field_mode == "real":
        for arr in (x, phi) + ((T,) if T is not None else ()):
            if np.any(arr.imag != 0):
                raise ParseError("real field_mode with non-zero imaginary parts")
    return inst


def load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def load_instance(path):
    return instance_from_dict(load_json(path))


def dumps(obj):
    return json.dumps(obj, indent=2) + "\n"


def report_correction(report):
    """Rebuild the correction object stored in a run report (for re-verification)."""
    out = report["outputs"]
    w = report["witnesses"]
    kind = report["kind"]
    if kind == "pair-l1":
        return SimpleNamespace(
            x0=dec_vector(out["x0"]),
            phi0=dec_vector(out["phi0"]),
            P=np.asarray(w["P"], dtype=int),
            M=float(w["M"]),
            method=report["method"],
        )
    common = dict(
        P=np.asarray(w["P"], dtype=int),
        scale=float(w["scale"]),
        rotation=dec_scalar(w["rotation"]),
    )
    if kind == "operator-l1":
        return SimpleNamespace(
            T0=dec_matrix(out["T0"]),
            x0=dec_vector(out["x0"]),
            phi0=dec_vector(out["phi0"]),
            **common,
        )
    return SimpleNamespace(
        S=dec_matrix(out["S"]),
        x0=dec_vector(out["x0"]),
        phi0=dec_vector(out["phi0"]),
        l1=SimpleNamespace(**common),
    )
