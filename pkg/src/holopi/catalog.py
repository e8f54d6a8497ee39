"""Catalog loading: named kernels, sequences, and identity records.

The catalogs ship as JSON package data (override with HOLOPI_CATALOG or an
explicit path) so new entries need no code change. Loaders build the typed
objects the verification modules consume.
"""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .holonomic import LODE, PRecurrence
from .kernels import BinomialKernel, SequenceDef, SupportBound
from .numerics import QuadraticNumber, rat
from .specialize import DoubleSeriesSpec


class UnknownId(KeyError):
    pass


def _load_json(name: str, override_path: str | None = None):
    if override_path:
        with open(override_path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    env_dir = os.environ.get("HOLOPI_CATALOG")
    if env_dir:
        with open(os.path.join(env_dir, name), "r", encoding="utf-8") as fh:
            return json.load(fh)
    with resources.files("holopi.data").joinpath(name).open("r") as fh:
        return json.load(fh)


def kernel_from_json(data) -> BinomialKernel:
    factors = [(f["top"], f["bottom"]) for f in data.get("factors", [])]
    geoms = [(rat(g["base"]), g["exponent"]) for g in data.get("geometric", [])]
    sup = data.get("support")
    support = None
    if sup is not None:
        k_min = sup.get("kMin", ["0", "0"])
        k_max = sup.get("kMax", ["1", "0"])
        support = SupportBound(rat(k_min[0]), rat(k_min[1]), rat(k_max[0]), rat(k_max[1]))
    return BinomialKernel(
        factors, scalar=rat(data.get("scalar", 1)), geoms=geoms, support=support
    )


def recurrence_from_json(data) -> PRecurrence:
    return PRecurrence(
        [[rat(c) for c in p] for p in data["coeffs"]],
        [rat(c) for c in data.get("initial", [])],
        valid_from=int(data.get("validFrom", 0)),
    )


def sequence_from_json(data) -> SequenceDef:
    closed = kernel_from_json(data["closedForm"]) if data.get("closedForm") else None
    rec = recurrence_from_json(data["recurrence"]) if data.get("recurrence") else None
    return SequenceDef(
        data["id"],
        closed=closed,
        recurrence=rec,
        known_terms=[rat(t) for t in data.get("knownTerms", [])],
        notes=data.get("notes", ""),
    )


def quadratic_from_json(data) -> QuadraticNumber:
    if isinstance(data, (str, int)):
        return QuadraticNumber.from_rational(rat(data))
    return QuadraticNumber(rat(data.get("rat", 0)), rat(data.get("surd", 0)),
                           int(data.get("d", 1)))


def side_from_json(data) -> DoubleSeriesSpec:
    outer = None
    spec_outer = data.get("outer")
    if spec_outer:
        if "seq" in spec_outer:
            outer = sequence(spec_outer["seq"])
        else:
            outer = kernel_from_json(spec_outer["kernel"])
    inner = None
    if data.get("inner"):
        inner = (
            kernel_from_json(data["inner"]["kernel"]),
            int(data["inner"].get("xPowK", 1)),
            rat(data["inner"].get("geom", 1)),
        )
    mult = None
    if data.get("mult"):
        mult = (data["mult"]["A"], data["mult"]["B"])
    return DoubleSeriesSpec(
        outer=outer,
        sign=int(data.get("sign", 1)),
        geom=rat(data.get("geom", 1)),
        xpow_n=int(data.get("xPowN", 1)),
        xshift=int(data.get("xShift", 0)),
        scalar=rat(data.get("scalar", 1)),
        prefactors=[
            ([rat(c) for c in p["poly"]], int(p.get("n", 0)), rat(p.get("c", 0)))
            for p in data.get("prefactors", [])
        ],
        inner=inner,
        mult=mult,
    )


def _expr_from_json(node):
    """Expression nodes pass through except sides, which become specs."""
    if isinstance(node, dict) and len(node) == 1:
        (op, payload), = node.items()
        if op == "side":
            return {"side": side_from_json(payload)}
        if op in ("add", "mul"):
            return {op: [_expr_from_json(sub) for sub in payload]}
        if op in ("neg", "D"):
            return {op: _expr_from_json(payload)}
        if op == "pow":
            return {op: [_expr_from_json(payload[0]), payload[1], payload[2]]}
    return node


@dataclass
class IdentityRecord:
    id: str
    paper_tag: str
    kind: str
    default_order: int
    payload: dict
    notes: str = ""


def _identity_from_json(data) -> IdentityRecord:
    kind = data["kind"]
    payload = dict(data)
    if kind == "series":
        payload["lhs"] = _expr_from_json(data["lhs"])
        payload["rhs"] = _expr_from_json(data["rhs"])
    elif kind == "translation":
        payload["lhs"] = side_from_json(data["lhs"])
        payload["rhs"] = side_from_json(data["rhs"])
    elif kind == "pi":
        for key in ("A", "B", "x", "prefactorSquared", "target"):
            if key in data and data[key] is not None:
                payload[key] = quadratic_from_json(data[key])
    return IdentityRecord(
        id=data["id"],
        paper_tag=data.get("paperTag", ""),
        kind=kind,
        default_order=int(data.get("defaultOrder", 40)),
        payload=payload,
        notes=data.get("notes", ""),
    )


class _Catalog:
    """Two-stage loader: identity parsing may look sequences up, so the
    sequence table is installed first and guarded by a reentrant lock."""

    def __init__(self):
        self._lock = threading.RLock()
        self._sequences = None
        self._kernels = None
        self._identities = None
        self._odes = None

    def load_sequences(self, seq_path=None):
        with self._lock:
            if self._sequences is None:
                raw = _load_json("sequences.json", seq_path)
                self._kernels = {
                    kid: kernel_from_json(k) for kid, k in raw.get("kernels", {}).items()
                }
                self._sequences = {
                    s["id"]: sequence_from_json(s) for s in raw["sequences"]
                }
                self._odes = {
                    oid: (
                        LODE([[rat(c) for c in p] for p in o["coeffs"]],
                             rhs=[rat(c) for c in o.get("rhs", [])]),
                        o["solution"],
                    )
                    for oid, o in raw.get("odes", {}).items()
                }

    def load_identities(self, seq_path=None, id_path=None):
        with self._lock:
            self.load_sequences(seq_path)
            if self._identities is None:
                raw = _load_json("identities.json", id_path)
                self._identities = {
                    r["id"]: _identity_from_json(r) for r in raw["identities"]
                }

    def reset(self):
        with self._lock:
            self._sequences = None
            self._kernels = None
            self._identities = None
            self._odes = None


_CATALOG = _Catalog()


def sequence(seq_id: str) -> SequenceDef:
    _CATALOG.load_sequences()
    try:
        return _CATALOG._sequences[seq_id]
    except KeyError:
        raise UnknownId(f"unknown sequence {seq_id!r}") from None


def kernel(kernel_id: str) -> BinomialKernel:
    _CATALOG.load_sequences()
    try:
        return _CATALOG._kernels[kernel_id]
    except KeyError:
        raise UnknownId(f"unknown kernel {kernel_id!r}") from None


def identity(identity_id: str) -> IdentityRecord:
    _CATALOG.load_identities()
    try:
        return _CATALOG._identities[identity_id]
    except KeyError:
        raise UnknownId(f"unknown identity {identity_id!r}") from None


def all_identities() -> dict:
    _CATALOG.load_identities()
    return dict(_CATALOG._identities)


def all_sequences() -> dict:
    _CATALOG.load_sequences()
    return dict(_CATALOG._sequences)


def all_kernels() -> dict:
    _CATALOG.load_sequences()
    return dict(_CATALOG._kernels)


def ode(ode_id: str):
    """(LODE, solution sequence id) for a cataloged operator."""
    _CATALOG.load_sequences()
    try:
        return _CATALOG._odes[ode_id]
    except KeyError:
        raise UnknownId(f"unknown ode {ode_id!r}") from None


def all_odes() -> dict:
    _CATALOG.load_sequences()
    return dict(_CATALOG._odes)


def reload(seq_path=None, id_path=None):
    _CATALOG.reset()
    _CATALOG.load_identities(seq_path, id_path)
