"""Machine-checkable records of verified or falsified identities."""
from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Certificate:
    claim: str
    status: str  # "verified" | "falsified"
    residue: str | None = None
    inputs: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in ("verified", "falsified"):
            raise ValueError(f"bad certificate status {self.status!r}")

    @classmethod
    def from_residue(cls, claim, residue, inputs=None, details=None) -> Certificate:
        """Verified iff ``residue`` is zero; the residue text is kept either way."""
        ok = not residue
        return cls(
            claim=claim,
            status="verified" if ok else "falsified",
            residue=None if ok else str(residue),
            inputs=dict(inputs or {}),
            details=dict(details or {}),
        )

    @property
    def verified(self) -> bool:
        return self.status == "verified"

    def to_json(self) -> dict:
        out = {"claim": self.claim, "status": self.status, "residue": self.residue, "inputs": self.inputs}
        if self.details:
            out["details"] = self.details
        return out

    def dumps(self, **kw) -> str:
        return json.dumps(self.to_json(), **kw)

    @classmethod
    def from_json(cls, data) -> Certificate:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(
            claim=data["claim"],
            status=data["status"],
            residue=data.get("residue"),
            inputs=data.get("inputs", {}),
            details=data.get("details", {}),
        )
