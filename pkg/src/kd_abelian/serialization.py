"""JSON layouts for groups, subgroups, states, operators and KD tables.

Complex numbers are written as ``[re, im]`` pairs; tables are nested lists
with rows indexed by g and columns by chi in canonical element order.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .groups import GroupSpec, Subgroup, closure, make_group


def complex_to_json(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def array_to_json(a) -> list:
    a = np.asarray(a, dtype=complex)
    if a.ndim == 1:
        return [complex_to_json(z) for z in a]
    return [array_to_json(row) for row in a]


def array_from_json(data) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    if arr.shape[-1] != 2:
        raise ValueError("complex entries must be [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def group_from_json(data) -> GroupSpec:
    return make_group(data["orders"])


def subgroup_from_json(G: GroupSpec, data) -> Subgroup:
    return closure(G, [tuple(g) for g in data["generators"]])


def operator_to_json(G: GroupSpec, C) -> dict:
    return {"group": G.to_json(), "entries": array_to_json(C)}


def kd_to_json(G: GroupSpec, f) -> dict:
    return {"group": G.to_json(), "values": array_to_json(f)}


def state_to_json(G: GroupSpec, psi) -> dict:
    return {"group": G.to_json(), "amplitudes": array_to_json(psi)}


def _load_table(data, key: str) -> tuple[GroupSpec, np.ndarray]:
    G = group_from_json(data["group"])
    arr = array_from_json(data[key])
    if arr.shape != (G.order, G.order):
        raise ValueError(f"{key} has shape {arr.shape}, expected ({G.order}, {G.order})")
    return G, arr


def operator_from_json(data) -> tuple[GroupSpec, np.ndarray]:
    if "amplitudes" in data:
        G, psi = state_from_json(data)
        return G, np.outer(psi, psi.conj())
    return _load_table(data, "entries")


def kd_from_json(data) -> tuple[GroupSpec, np.ndarray]:
    return _load_table(data, "values")


def state_from_json(data) -> tuple[GroupSpec, np.ndarray]:
    G = group_from_json(data["group"])
    psi = array_from_json(data["amplitudes"])
    if psi.shape != (G.order,):
        raise ValueError(f"amplitudes have shape {psi.shape}, expected ({G.order},)")
    return G, psi


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def read_json(path) -> dict:
    return json.loads(Path(path).read_text())


def write_json(path, obj):
    Path(path).write_text(dumps(obj) + "\n")
