"""JSON and CSV interchange.

Complex matrices serialize as nested arrays of [re, im] pairs, distributions
as {label: weight} maps.  JSON floats are emitted at 17 significant digits
(round-trip exact), CSV at 12 (plot-ready).  All formatting is
locale-independent.
"""

from __future__ import annotations

import json
from dataclasses import asdict

import numpy as np

from .generate import GenConfig
from .indirect import IndirectModel
from .measurement import MeasurementKind, Povm
from .states import DensityOperator, HermitianObservable, OutcomeSpace, ProbabilityDistribution
from .tolerances import DEFAULT_TOL, Tolerances

CSV_HEADER = "dim,kind,param,epsA,epsB,R,I,bound,slack,naiveBound,naiveViolated"


def matrix_to_json(matrix) -> list:
    arr = np.asarray(matrix, dtype=complex)
    return [[[float(x.real), float(x.imag)] for x in row] for row in arr]


def matrix_from_json(data) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise ValueError("matrix JSON must be nested arrays of [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def distribution_to_json(p: ProbabilityDistribution) -> dict[str, float]:
    return p.as_dict()


def povm_to_json(povm: Povm) -> dict:
    return {
        "kind": povm.kind.value,
        "labels": list(povm.space.labels),
        "values": [float(v) for v in povm.space.values],
        "dim": povm.dim,
        "effects": [matrix_to_json(e) for e in povm.effects],
    }


def povm_from_json(data: dict, *, tol: Tolerances = DEFAULT_TOL) -> Povm:
    space = OutcomeSpace(tuple(data["labels"]), tuple(data["values"]))
    effects = [matrix_from_json(e) for e in data["effects"]]
    kind = MeasurementKind(data.get("kind", "custom"))
    return Povm(space, effects, kind=kind, tol=tol)


def model_to_json(model: IndirectModel) -> dict:
    return {
        "system_dim": model.system_dim,
        "ancilla_dim": model.ancilla_dim,
        "ancilla_state": matrix_to_json(model.ancilla_state.matrix),
        "interaction": matrix_to_json(model.interaction),
        "meter": matrix_to_json(model.meter.matrix),
    }


def model_from_json(data: dict, *, tol: Tolerances = DEFAULT_TOL) -> IndirectModel:
    return IndirectModel(
        int(data["system_dim"]),
        DensityOperator(matrix_from_json(data["ancilla_state"]), tol=tol),
        matrix_from_json(data["interaction"]),
        HermitianObservable(matrix_from_json(data["meter"]), tol=tol),
        tol=tol,
    )


def genconfig_to_json(cfg: GenConfig) -> dict:
    return asdict(cfg)


def load_state(path, *, tol: Tolerances = DEFAULT_TOL) -> DensityOperator:
    with open(path, encoding="utf-8") as fh:
        return DensityOperator(matrix_from_json(json.load(fh)), tol=tol)


def load_observable(path, *, tol: Tolerances = DEFAULT_TOL) -> HermitianObservable:
    with open(path, encoding="utf-8") as fh:
        return HermitianObservable(matrix_from_json(json.load(fh)), tol=tol)


def load_povm(path, *, tol: Tolerances = DEFAULT_TOL) -> Povm:
    with open(path, encoding="utf-8") as fh:
        return povm_from_json(json.load(fh), tol=tol)


def load_model(path, *, tol: Tolerances = DEFAULT_TOL) -> IndirectModel:
    with open(path, encoding="utf-8") as fh:
        return model_from_json(json.load(fh), tol=tol)


def format_float(x: float, sig: int) -> str:
    return format(float(x), f".{sig}g")


def json_text(obj, sig: int = 17, indent: int = 0) -> str:
    """Serialize to JSON with floats at a fixed number of significant digits."""
    pad = " " * indent
    if isinstance(obj, dict):
        items = ",\n".join(
            f'{pad}  {json.dumps(str(k))}: {json_text(v, sig, indent + 2).lstrip()}'
            for k, v in obj.items()
        )
        return f"{pad}{{\n{items}\n{pad}}}" if obj else f"{pad}{{}}"
    if isinstance(obj, (list, tuple)):
        inner = ", ".join(json_text(v, sig).strip() for v in obj)
        return f"{pad}[{inner}]"
    if isinstance(obj, bool) or obj is None:
        return pad + json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return pad + str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return pad + format_float(float(obj), sig)
    return pad + json.dumps(str(obj))


def relation_csv_row(report, param: float | None) -> str:
    """One CSV line in the fixed column order; the param cell is empty when
    the row does not belong to a parameter scan."""
    d = report.as_dict()
    cells = [
        str(d["dim"]),
        str(d["kind"]),
        "" if param is None else format_float(param, 12),
    ]
    for key in ("epsA", "epsB", "R", "I", "bound", "slack", "naiveBound"):
        cells.append(format_float(d[key], 12))
    cells.append("true" if d["naiveViolated"] else "false")
    return ",".join(cells)
