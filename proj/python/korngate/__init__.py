"""Exact Korn-inequality verification for piecewise polynomial vector fields.

Every function returns plain Python data decoded from the JSON reports produced by the
C++ core. Exact rationals appear as strings such as ``"-1/6"``; :func:`fraction`
turns them into :class:`fractions.Fraction`.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Iterable

from . import _korngate
from ._korngate import MeshParseError

__all__ = [
    "MeshParseError",
    "builtin_mesh",
    "builtin_mesh_names",
    "counterexample",
    "counterexamples",
    "coverage",
    "fraction",
    "kernel",
    "kernel_space_names",
    "registry",
    "reproduce_tables",
    "unisolvence",
]


def fraction(value: str | int) -> Fraction:
    """Parse a rational string ("p/q" or an integer) into a Fraction."""
    return Fraction(value)


def registry() -> list[dict[str, Any]]:
    """All registered finite element descriptors."""
    return json.loads(_korngate.registry_json())


def kernel_space_names() -> list[str]:
    """Names accepted by :func:`kernel`."""
    return list(_korngate.kernel_space_names())


def builtin_mesh_names() -> list[str]:
    return list(_korngate.builtin_mesh_names())


def builtin_mesh(name: str) -> dict[str, Any]:
    """A builtin mesh in the JSON mesh format."""
    return json.loads(_korngate.builtin_mesh_json(name))


def reproduce_tables(tables: Iterable[int] = (1, 2)) -> dict[str, Any]:
    return json.loads(_korngate.reproduce_tables_json(list(tables)))


def counterexample(dim: int, k: int) -> dict[str, Any]:
    """Build and verify the counterexample that drops condition ``k`` on the canonical domain."""
    return json.loads(_korngate.counterexample_json(dim, k))


def counterexamples(dim: int) -> list[dict[str, Any]]:
    return [counterexample(dim, k) for k in range(1, (3 if dim == 2 else 6) + 1)]


def kernel(element: str, mesh: str | dict[str, Any], *, phi: bool = True, jumps: str = "none") -> dict[str, Any]:
    """Exact kernel test.

    ``mesh`` is a path to a mesh JSON file, ``"builtin:<name>"``, JSON text, or an
    already decoded mesh dictionary.
    """
    if isinstance(mesh, dict):
        mesh = json.dumps(mesh)
    return json.loads(_korngate.kernel_json(element, str(mesh), phi, jumps))


def unisolvence(element: str) -> dict[str, Any]:
    """Unisolvence of an element's DOF set on its reference simplex."""
    return json.loads(_korngate.unisolvence_json(element))


def coverage(element: str) -> dict[str, Any]:
    return json.loads(_korngate.coverage_json(element))
