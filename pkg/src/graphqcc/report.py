"""JSON (and CSV) reports for command-line runs."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from .qcc import Check, _jsonable

SCHEMA = "qcc-report/1"


@dataclass
class Report:
    command: str
    config: dict
    records: list[dict] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def add(self, check: Check, graph: str | None = None) -> None:
        rec = check.to_json()
        if graph is not None:
            rec = {"graph": graph, **rec}
        self.records.append(rec)

    def add_failure(self, name: str, graph: str | None, error: Exception | str) -> None:
        if isinstance(error, Exception):
            error = f"{type(error).__name__}: {error}"
        self.records.append({"graph": graph, "name": name, "inputs": {}, "mode": "exact",
                             "observed": error,
                             "expected": "success", "pass": False})

    @property
    def passed(self) -> bool:
        return all(r["pass"] for r in self.records)

    def summary(self) -> dict:
        n_pass = sum(1 for r in self.records if r["pass"])
        return {"total": len(self.records), "passed": n_pass,
                "failed": len(self.records) - n_pass}

    def to_json(self) -> dict:
        return {"schema": SCHEMA, "command": self.command, "config": _jsonable(self.config),
                "data": _jsonable(self.data), "records": self.records,
                "summary": self.summary()}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["graph", "name", "mode", "observed", "expected", "pass"])
        for r in self.records:
            w.writerow([r.get("graph") or "", r["name"], r["mode"],
                        json.dumps(r["observed"]), json.dumps(r["expected"]), r["pass"]])
        return buf.getvalue()
