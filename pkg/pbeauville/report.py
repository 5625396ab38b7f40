"""
Reports
Versioned JSON reports of suite checks, and the exit codes they map to
"""
from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

Status = Literal["verified", "counterexample", "unknown"]

EXIT_VERIFIED = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


class Check(BaseModel):
    name: str
    status: Status
    detail: str = ""
    counterexample_data: Optional[dict[str, Any]] = None

    @model_validator(mode="after")
    def check_replayable(self):
        if self.status == "counterexample" and not self.counterexample_data:
            raise ValueError(f"check {self.name} reports a counterexample without replay data")
        return self

    @classmethod
    def verified(cls, name: str, detail: str = "") -> "Check":
        return cls(name=name, status="verified", detail=detail)

    @classmethod
    def counterexample(cls, name: str, detail: str, data: dict[str, Any]) -> "Check":
        return cls(name=name, status="counterexample", detail=detail, counterexample_data=data)

    @classmethod
    def unknown(cls, name: str, detail: str = "") -> "Check":
        return cls(name=name, status="unknown", detail=detail)

    @classmethod
    def of(cls, name: str, holds: bool, detail: str = "", data: Optional[dict[str, Any]] = None) -> "Check":
        """verified when holds, otherwise a counterexample carrying data."""
        if holds:
            return cls.verified(name, detail)
        if not data:
            raise ValueError(f"check {name} fails without replay data")
        return cls.counterexample(name, detail, data)


class SuiteResult(BaseModel):
    """What a suite hands back to the registry."""
    group_order: int
    checks: list[Check] = Field(default_factory=list)


class Report(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(default=1, serialization_alias="schema")
    command: str
    params: dict[str, Any]
    group_order: int
    checks: list[Check]
    elapsed_ms: Optional[int] = None
    seed: int
    workers: int

    @property
    def exit_code(self) -> int:
        statuses = {c.status for c in self.checks}
        if "counterexample" in statuses:
            return EXIT_COUNTEREXAMPLE
        if "unknown" in statuses:
            return EXIT_BUDGET
        return EXIT_VERIFIED

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)

    def summary(self) -> str:
        """One line per check for stderr."""
        lines = [f"{self.command}: group order {self.group_order}, seed {self.seed}"]
        marks = {"verified": "✓", "counterexample": "✗", "unknown": "?"}
        for c in self.checks:
            lines.append(f"  {marks[c.status]} {c.name}: {c.detail}" if c.detail else f"  {marks[c.status]} {c.name}")
        return "\n".join(lines)
