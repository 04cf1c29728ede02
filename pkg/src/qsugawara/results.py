"""Outcome record shared by all identity checks."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckResult:
    ok: bool
    witness: str | None = None
    info: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok

    @classmethod
    def combine(cls, parts: dict) -> "CheckResult":
        """AND of named sub-results; the first failure supplies the witness."""
        info = {name: ({"ok": r.ok, **r.info} if r.info else r.ok) for name, r in parts.items()}
        for name, r in parts.items():
            if not r.ok:
                return cls(False, f"{name}: {r.witness}", info)
        return cls(True, None, info)
