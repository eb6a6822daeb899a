"""Smoke tests for the Python bindings and schema checks for the JSON reports."""

from __future__ import annotations

import json
import os
import pathlib
import subprocess
from fractions import Fraction

import jsonschema
import pytest

import korngate

ROOT = pathlib.Path(__file__).resolve().parents[2]
SCHEMAS = ROOT / "docs" / "schemas"
CLI = os.environ.get("KORN_GATE_EXE")


def schema(name: str) -> dict:
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


def test_registry_names_match_kernel_spaces():
    names = {e["name"] for e in korngate.registry()}
    assert len(names) >= 12
    assert names <= set(korngate.kernel_space_names())
    assert {"p1-continuous", "rm-piecewise"} <= set(korngate.kernel_space_names())


@pytest.mark.parametrize("dim,count", [(2, 3), (3, 6)])
def test_counterexamples_verify(dim, count):
    reports = korngate.counterexamples(dim)
    assert len(reports) == count
    for r in reports:
        jsonschema.validate(r, schema("sharpness_report"))
        assert r["verdict"] == "counterexample"
        assert all(r["checks"].values())
        assert Fraction(r["strain_norm_sq"]) == 0
        assert all(Fraction(v) == 0 for v in r["retained"].values())
        (value,) = r["violated"].values()
        assert Fraction(value) != 0


def test_e1_values():
    r = korngate.counterexample(2, 1)
    assert r["coefficients"]["a1"] == "1/3"
    assert korngate.fraction(r["violated"]["pi0-normal"]) == Fraction(-1, 6)


def test_kernel_reports():
    cr = korngate.kernel("cr-2d", "builtin:two-square-simplicial", phi=False)
    jsonschema.validate(cr, schema("korn_report"))
    assert cr["verdict"] == "fails" and cr["kernel_dim"] > cr["expected"]
    assert cr["matches_expected"]
    assert "witness" in cr

    p1 = korngate.kernel("p1-continuous", korngate.builtin_mesh("square-2x2"))
    jsonschema.validate(p1, schema("korn_report"))
    assert (p1["verdict"], p1["kernel_dim"]) == ("holds", 2)

    rm = korngate.kernel("rm-piecewise", str(ROOT / "data" / "meshes" / "two-cube.json"), jumps="minimal")
    assert (rm["verdict"], rm["kernel_dim"]) == ("holds", 3)


def test_tables_and_unisolvence():
    t = korngate.reproduce_tables()
    assert t["all_match"] and t["all_unisolvent"]
    for row in t["rows"]:
        jsonschema.validate(row["coverage"], schema("korn_report"))
    u = korngate.unisolvence("v1-qstar-3d")
    assert u["verdict"] == "unisolvent" and u["rank"] == u["dof_count"] == u["dimension"]
    assert korngate.coverage("cr-3d")["verdict"] == "fails"


def test_builtin_meshes_match_schema():
    for name in korngate.builtin_mesh_names():
        jsonschema.validate(korngate.builtin_mesh(name), schema("mesh"))


def test_input_errors_raise_value_error():
    with pytest.raises(korngate.MeshParseError) as info:
        korngate.kernel("cr-2d", '{"dimension": 2,\n "vertices": [["1/0", "0"]], "cells": []}')
    assert ":2:" in str(info.value)
    with pytest.raises(ValueError):
        korngate.kernel("no-such-element", "builtin:square-2x2")
    with pytest.raises(ValueError):
        korngate.kernel("cr-2d", "builtin:square-2x2", jumps="some")
    with pytest.raises(ValueError):
        korngate.counterexample(2, 4)


@pytest.mark.skipif(not CLI, reason="KORN_GATE_EXE not set")
def test_cli_json_matches_schema_and_bindings():
    def run(*args):
        out = subprocess.run([CLI, *args, "--format", "json"], capture_output=True, text=True, check=True)
        return json.loads(out.stdout)

    kernel = run("kernel", "--element", "cr-2d", "--mesh", "builtin:two-square-simplicial", "--no-phi")
    jsonschema.validate(kernel, schema("korn_report"))
    binding = korngate.kernel("cr-2d", "builtin:two-square-simplicial", phi=False)
    assert kernel["kernel_dim"] == binding["kernel_dim"]
    assert kernel["residuals"] == binding["residuals"]

    for report in run("counterexample", "--domain", "3d"):
        jsonschema.validate(report, schema("sharpness_report"))
    assert run("counterexample", "--domain", "3d", "--k", "4") == [korngate.counterexample(3, 4)]
