"""Single-instance outcome of a theorem checker."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Verdict:
    holds: bool
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.holds
