"""Report data structures and persistence for conformal_forge."""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from conformal_forge.constants import REPORT_SCHEMA_NAME


@dataclass
class Failure:
    """One failing tuple of a checker.

    Attributes:
        inputs: Rendered inputs of the failing tuple
        residual: Rendered nonzero residual
    """
    inputs: list[str]
    residual: str

    def to_json(self) -> dict[str, Any]:
        return {"inputs": list(self.inputs), "residual": self.residual}


@dataclass
class Report:
    """Outcome of any check, closure or evidence run.

    Attributes:
        check: Name of the check, e.g. "novikov-axioms"
        status: "pass" or "fail"
        verdict: One-line summary
        params: Parameters of the run, rendered as text
        window: Rendered window indices
        dpow_bound: ∂-degree truncation, when the run has one
        lossy: True if any computation was truncated
        failures: Failing tuples with their residuals
        witnesses: Check-specific evidence records
        notes: Free-form remarks
    """
    check: str
    status: str = "pass"
    verdict: str = ""
    params: dict[str, str] = field(default_factory=dict)
    window: list[str] = field(default_factory=list)
    dpow_bound: Optional[int] = None
    lossy: bool = False
    failures: list[Failure] = field(default_factory=list)
    witnesses: list[dict[str, Any]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict[str, Any]:
        return {
            "check": self.check,
            "status": self.status,
            "verdict": self.verdict,
            "params": dict(self.params),
            "window": list(self.window),
            "dpow_bound": self.dpow_bound,
            "lossy": self.lossy,
            "failures": [f.to_json() for f in self.failures],
            "witnesses": list(self.witnesses),
            "notes": list(self.notes),
        }

    def to_text(self) -> str:
        lines = [f"== {self.check}: {self.status.upper()}"]
        if self.verdict:
            lines.append(f"verdict: {self.verdict}")
        for key, value in self.params.items():
            lines.append(f"param {key} = {value}")
        lines.append(f"window ({len(self.window)}): " + " ".join(self.window))
        if self.dpow_bound is not None:
            lines.append(f"dpow_bound: {self.dpow_bound}")
        lines.append(f"lossy: {'yes' if self.lossy else 'no'}")
        for failure in self.failures:
            lines.append(f"FAIL [{', '.join(failure.inputs)}] residual: {failure.residual}")
        for witness in self.witnesses:
            lines.append("witness " + json.dumps(witness, ensure_ascii=False, sort_keys=True))
        for note in self.notes:
            lines.append(f"note: {note}")
        return "\n".join(lines) + "\n"


def report_from_json(data: dict[str, Any]) -> Report:
    return Report(
        check=data["check"],
        status=data["status"],
        verdict=data.get("verdict", ""),
        params=dict(data.get("params", {})),
        window=list(data.get("window", [])),
        dpow_bound=data.get("dpow_bound"),
        lossy=bool(data.get("lossy", False)),
        failures=[Failure(inputs=f["inputs"], residual=f["residual"]) for f in data.get("failures", [])],
        witnesses=list(data.get("witnesses", [])),
        notes=list(data.get("notes", [])),
    )


def render(reports: list[Report], output_format: str) -> str:
    """Render reports as text blocks or as a JSON document."""
    if output_format == "json":
        payload = [r.to_json() for r in reports]
        body = payload[0] if len(payload) == 1 else payload
        return json.dumps(body, indent=2, ensure_ascii=False) + "\n"
    return "".join(r.to_text() for r in reports)


class ReportWriter:
    """Manages report save/load operations."""

    def save_report(self, reports: list[Report], path: str, output_format: str) -> Path:
        """Write rendered reports to path.

        Args:
            reports: Reports to write
            path: Target file
            output_format: "text" or "json"

        Returns:
            Path to the written file
        """
        filepath = Path(path)
        filepath.parent.mkdir(parents=True, exist_ok=True)
        with open(filepath, "w", encoding="utf-8") as f:
            f.write(render(reports, output_format))
        return filepath

    def load_report(self, filepath: str) -> list[Report]:
        """Load reports from a JSON file written by save_report.

        Args:
            filepath: Path to the report JSON file

        Returns:
            Loaded Report objects
        """
        with open(filepath, "r", encoding="utf-8") as f:
            data = json.load(f)
        if isinstance(data, dict):
            data = [data]
        return [report_from_json(item) for item in data]


def report_schema() -> dict[str, Any]:
    """JSON Schema every report document conforms to."""
    path = Path(__file__).parent / "schemas" / REPORT_SCHEMA_NAME
    with open(path, encoding="utf-8") as f:
        return json.load(f)
