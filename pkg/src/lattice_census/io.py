"""File formats: census CSV, class catalog JSON-lines, growth CSV.

All writers go through :func:`atomic_write` so a failed run never leaves a
partial file behind.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from pathlib import Path
from typing import Iterable

from .enumeration import CensusResult
from .unimodular import invariant_vector


def atomic_write(path: str | os.PathLike, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def census_csv(results: Iterable[CensusResult]) -> str:
    lines = ["param,count"]
    lines += [f"{r.parameter},{r.count}" for r in sorted(results, key=lambda r: r.parameter)]
    return "\n".join(lines) + "\n"


def catalog_lines(results: Iterable[CensusResult]) -> str:
    out = []
    for r in sorted(results, key=lambda r: r.parameter):
        entries = []
        for form in r.classes:
            canon = form.to_json()
            entries.append((dumps(canon).encode(), {
                "param": r.parameter,
                "mode": r.mode,
                "canonical": canon,
                "invariants": invariant_vector(form.polygon()).to_json(),
            }))
        entries.sort(key=lambda e: e[0])
        out += [dumps(rec) for _, rec in entries]
    return "".join(line + "\n" for line in out)


def read_catalog(text: str) -> list[dict]:
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def growth_csv(results: Iterable[CensusResult]) -> str:
    # the one place floats appear, and only in the report
    lines = ["param,count,log2_count,log2_count_over_cuberoot"]
    for r in sorted(results, key=lambda r: r.parameter):
        if r.count:
            lg = math.log2(r.count)
            lines.append(f"{r.parameter},{r.count},{lg:.6f},{lg / r.parameter ** (1 / 3):.6f}")
        else:
            lines.append(f"{r.parameter},0,,")
    return "\n".join(lines) + "\n"


def witness_csv(rows: Iterable[tuple[int, int, int, int, int, int | None]]) -> str:
    lines = ["d,w,k,volume_num,volume_den,count"]
    lines += [",".join("" if v is None else str(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"
