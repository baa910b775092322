"""Stable CSV/JSON serialisation for records and reports.

Every file starts with a schema_version field.  Floats are written with 17
significant digits, so a written value re-parses to the identical bits;
writers emit rows in a fixed order with a fixed line terminator, which makes
output byte-identical across runs and worker counts.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable

from .bounds import BoundReport
from .lattice import CountBundle
from .optimize import OptimalRecord
from .spectrum import Cuboid, SpectralPoint

SCHEMA_VERSION = 1

OPTIMIZE_COLUMNS = [
    "schema_version",
    "k",
    "a1",
    "a2",
    "a3",
    "lambda_star",
    "delta",
    "evaluations",
    "restarts_agreeing",
    "unique_within_tol",
    "status",
]

VERIFY_COLUMNS = ["schema_version", "suite", "input_repr", "lhs", "rhs", "slack", "pass"]

SPECTRUM_COLUMNS = [
    "schema_version",
    "k",
    "lambda",
    "lambda_over_pi2",
    "multiplicity",
    "indices",
]


def fmt_float(x: float) -> str:
    return format(float(x), ".17g")


def fmt_bool(x: bool) -> str:
    return "true" if x else "false"


def parse_bool(s: str) -> bool:
    if s == "true":
        return True
    if s == "false":
        return False
    raise ValueError(f"not a serialised bool: {s!r}")


def write_csv(stream, columns: list[str], rows: Iterable[list[str]]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    writer.writerows(rows)


def input_repr(inputs: dict) -> str:
    parts = []
    for key, value in inputs.items():
        if isinstance(value, bool):
            parts.append(f"{key}={fmt_bool(value)}")
        elif isinstance(value, float):
            parts.append(f"{key}={fmt_float(value)}")
        else:
            parts.append(f"{key}={value}")
    return ";".join(parts)


def optimize_row(record: OptimalRecord) -> list[str]:
    c = record.cuboid
    sides = (c.a1, c.a2, c.a3) if c is not None else (float("nan"),) * 3
    return [
        str(SCHEMA_VERSION),
        str(record.k),
        fmt_float(sides[0]),
        fmt_float(sides[1]),
        fmt_float(sides[2]),
        fmt_float(record.lambda_star),
        fmt_float(record.delta),
        str(record.evaluations),
        str(record.restarts_agreeing),
        fmt_bool(record.unique_within_tol),
        record.status,
    ]


def write_optimize_csv(stream, records: Iterable[OptimalRecord]) -> None:
    write_csv(stream, OPTIMIZE_COLUMNS, [optimize_row(r) for r in records])


def read_optimize_csv(stream) -> list[OptimalRecord]:
    reader = csv.DictReader(stream)
    records = []
    for row in reader:
        if int(row["schema_version"]) != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {row['schema_version']}")
        a1, a2, a3 = (float(row[key]) for key in ("a1", "a2", "a3"))
        cuboid = None if a1 != a1 else Cuboid(a1, a2, a3)
        records.append(
            OptimalRecord(
                k=int(row["k"]),
                cuboid=cuboid,
                lambda_star=float(row["lambda_star"]),
                delta=float(row["delta"]),
                evaluations=int(row["evaluations"]),
                restarts_agreeing=int(row["restarts_agreeing"]),
                unique_within_tol=parse_bool(row["unique_within_tol"]),
                status=row["status"],
            )
        )
    return records


def optimize_records_json(records: Iterable[OptimalRecord]) -> str:
    payload = {
        "schema_version": SCHEMA_VERSION,
        "records": [
            {
                "k": r.k,
                "a1": r.cuboid.a1 if r.cuboid else None,
                "a2": r.cuboid.a2 if r.cuboid else None,
                "a3": r.cuboid.a3 if r.cuboid else None,
                "lambda_star": None if r.lambda_star != r.lambda_star else r.lambda_star,
                "delta": None if r.delta != r.delta else r.delta,
                "evaluations": r.evaluations,
                "restarts_agreeing": r.restarts_agreeing,
                "unique_within_tol": r.unique_within_tol,
                "status": r.status,
            }
            for r in records
        ],
    }
    return json.dumps(payload, indent=2)


def verify_row(report: BoundReport) -> list[str]:
    return [
        str(SCHEMA_VERSION),
        report.name,
        input_repr(report.inputs),
        fmt_float(report.lhs),
        fmt_float(report.rhs),
        fmt_float(report.slack),
        fmt_bool(report.passed),
    ]


def write_verify_csv(stream, reports: Iterable[BoundReport]) -> None:
    write_csv(stream, VERIFY_COLUMNS, [verify_row(r) for r in reports])


def verify_reports_json(reports: Iterable[BoundReport]) -> str:
    payload = {
        "schema_version": SCHEMA_VERSION,
        "reports": [
            {
                "suite": r.name,
                "inputs": r.inputs,
                "lhs": r.lhs,
                "rhs": r.rhs,
                "slack": r.slack,
                "pass": r.passed,
            }
            for r in reports
        ],
    }
    return json.dumps(payload, indent=2)


def spectrum_rows(
    points: list[SpectralPoint], k_max: int, is_cube: bool
) -> list[list[str]]:
    """One row per eigenvalue index 1..k_max."""
    from .spectrum import PI_SQUARED

    rows = []
    k = 0
    for point in points:
        over_pi2 = point.value / PI_SQUARED
        over_pi2_repr = (
            str(round(over_pi2)) if is_cube else fmt_float(over_pi2)
        )
        indices_repr = ";".join(",".join(map(str, t)) for t in point.indices)
        for _ in range(point.multiplicity):
            k += 1
            if k > k_max:
                return rows
            rows.append(
                [
                    str(SCHEMA_VERSION),
                    str(k),
                    fmt_float(point.value),
                    over_pi2_repr,
                    str(point.multiplicity),
                    indices_repr,
                ]
            )
    return rows


def spectrum_json(points: list[SpectralPoint], k_max: int, is_cube: bool) -> str:
    from .spectrum import PI_SQUARED

    entries = []
    k = 0
    for point in points:
        for _ in range(point.multiplicity):
            k += 1
            if k > k_max:
                break
            entries.append(
                {
                    "k": k,
                    "lambda": point.value,
                    "lambda_over_pi2": round(point.value / PI_SQUARED)
                    if is_cube
                    else point.value / PI_SQUARED,
                    "multiplicity": point.multiplicity,
                    "indices": [list(t) for t in point.indices],
                }
            )
    return json.dumps({"schema_version": SCHEMA_VERSION, "eigenvalues": entries}, indent=2)


def bundle_json(cuboid: Cuboid, bundle: CountBundle) -> str:
    payload = {
        "schema_version": SCHEMA_VERSION,
        "a1": cuboid.a1,
        "a2": cuboid.a2,
        "a3": cuboid.a3,
        "lambda": bundle.lam,
        "N": bundle.n,
        "T": bundle.t,
        "T_x1": bundle.t_x1,
        "T_x2": bundle.t_x2,
        "T_x3": bundle.t_x3,
        "Tp_x1": bundle.tp_x1,
        "Tp_x2": bundle.tp_x2,
        "Tp_x3": bundle.tp_x3,
        "f1": bundle.f1,
        "f2": bundle.f2,
        "f3": bundle.f3,
        "identity_ok": bundle.consistent(),
    }
    return json.dumps(payload, indent=2)


def bundle_csv(cuboid: Cuboid, bundle: CountBundle) -> str:
    columns = [
        "schema_version",
        "a1",
        "a2",
        "a3",
        "lambda",
        "N",
        "T",
        "T_x1",
        "T_x2",
        "T_x3",
        "Tp_x1",
        "Tp_x2",
        "Tp_x3",
        "f1",
        "f2",
        "f3",
        "identity_ok",
    ]
    row = [
        str(SCHEMA_VERSION),
        fmt_float(cuboid.a1),
        fmt_float(cuboid.a2),
        fmt_float(cuboid.a3),
        fmt_float(bundle.lam),
        str(bundle.n),
        str(bundle.t),
        str(bundle.t_x1),
        str(bundle.t_x2),
        str(bundle.t_x3),
        str(bundle.tp_x1),
        str(bundle.tp_x2),
        str(bundle.tp_x3),
        str(bundle.f1),
        str(bundle.f2),
        str(bundle.f3),
        fmt_bool(bundle.consistent()),
    ]
    out = io.StringIO()
    write_csv(out, columns, [row])
    return out.getvalue()
