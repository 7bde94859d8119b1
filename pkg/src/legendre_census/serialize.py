"""Fixed-order CSV and JSON-lines serialization for census and form results.

Column order and schema tags are frozen so identical runs produce identical
bytes; schema versions ride in a leading comment line.
"""

from __future__ import annotations

import json
from typing import TextIO

from .forms import AlmostSquare, Representation
from .leastnumbers import CensusRecord, CensusResult
from .smooth import ScalingRow

CENSUS_SCHEMA = "legendre-census census v1"
CENSUS_FIELDS = ("q", "omega", "y", "status", "g_q_or_cap", "worst_divisor", "worst_divisor_g", "n_q_or_cap")

SCALING_SCHEMA = "legendre-census scaling-table v1"
SCALING_FIELDS = (
    "x",
    "y",
    "a",
    "count",
    "observed_exponent",
    "theorem_exponent_lower",
    "theorem_exponent_upper",
)


def cap_marker(value: int | None, cap: int) -> str:
    """A value column that distinguishes 'exceeded the cap' from a number."""
    return str(value) if value is not None else f">{cap}"


def bits_key(bits: int, k: int) -> str:
    """Render sign-pattern bits as '0'/'1' characters, first prime first."""
    return "".join("1" if bits >> i & 1 else "0" for i in range(k))


def witness_map(witnesses: dict[int, int], k: int) -> dict[str, int]:
    return {bits_key(bits, k): n for bits, n in sorted(witnesses.items())}


def census_record_row(record: CensusRecord) -> list[str]:
    st = record.status
    return [
        str(record.q),
        str(record.omega),
        str(record.y),
        st.status.value,
        cap_marker(st.g_q, record.cap),
        "" if st.worst_divisor is None else str(st.worst_divisor),
        "" if st.worst_divisor is None else cap_marker(st.worst_divisor_g, record.cap),
        cap_marker(record.n_q, record.cap),
    ]


def _summary_parts(result: CensusResult) -> list[str]:
    counts = result.counts()
    parts = [f"records={len(result.records)}"]
    parts.extend(f"{status}={counts[status]}" for status in counts)
    parts.append(f"skipped_small={result.skipped_small}")
    parts.append(f"skipped_even={result.skipped_even}")
    parts.append(f"skipped_not_squarefree={result.skipped_not_squarefree}")
    return parts


def census_to_csv(result: CensusResult, stream: TextIO) -> None:
    stream.write(f"# schema: {CENSUS_SCHEMA}\n")
    stream.write(",".join(CENSUS_FIELDS) + "\n")
    for record in result.records:
        stream.write(",".join(census_record_row(record)) + "\n")
    stream.write("# summary: " + " ".join(_summary_parts(result)) + "\n")


def census_record_to_dict(record: CensusRecord) -> dict:
    st = record.status
    return {
        "q": record.q,
        "omega": record.omega,
        "a": record.a,
        "y": record.y,
        "status": st.status.value,
        "cap": record.cap,
        "g_q": st.g_q,
        "g_witnesses": list(st.g_witnesses),
        "divisor_g": {str(d): g for d, g in st.divisor_g.items()},
        "worst_divisor": st.worst_divisor,
        "worst_divisor_g": st.worst_divisor_g,
        "n_q": record.n_q,
        "n_q_witnesses": witness_map(record.n_q_witnesses, record.omega),
    }


def census_to_jsonl(result: CensusResult, stream: TextIO) -> None:
    stream.write(json.dumps({"schema": CENSUS_SCHEMA}) + "\n")
    for record in result.records:
        stream.write(json.dumps(census_record_to_dict(record)) + "\n")
    counts = result.counts()
    stream.write(
        json.dumps(
            {
                "summary": {
                    "records": len(result.records),
                    **counts,
                    "skipped_small": result.skipped_small,
                    "skipped_even": result.skipped_even,
                    "skipped_not_squarefree": result.skipped_not_squarefree,
                }
            }
        )
        + "\n"
    )


def scaling_table_to_csv(rows: list[ScalingRow], stream: TextIO) -> None:
    stream.write(f"# schema: {SCALING_SCHEMA}\n")
    stream.write(",".join(SCALING_FIELDS) + "\n")
    for row in rows:
        observed = "" if row.observed_exponent is None else f"{row.observed_exponent:.6f}"
        stream.write(
            ",".join(
                [
                    str(row.x),
                    str(row.y),
                    repr(row.a),
                    str(row.count),
                    observed,
                    f"{row.theorem_exponent_lower:.6f}",
                    f"{row.theorem_exponent_upper:.6f}",
                ]
            )
            + "\n"
        )


def representation_to_dict(rep: Representation, d: int, almost: AlmostSquare) -> dict:
    """The wire shape {q, d, form, x, y, u, v, X, Y} for representation results."""
    return {
        "q": rep.value,
        "d": d,
        "form": [rep.form.a, rep.form.b, rep.form.c],
        "x": rep.x,
        "y": rep.y,
        "u": almost.u,
        "v": almost.v,
        "X": almost.X,
        "Y": almost.Y,
    }
