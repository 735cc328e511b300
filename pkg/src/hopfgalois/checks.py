"""Named pass/fail results shared by the verification routines."""

from __future__ import annotations

from dataclasses import dataclass, field


class VerificationError(AssertionError):
    """A theorem-backed identity failed on concrete data."""


@dataclass
class CheckReport:
    """Ordered collection of named boolean checks plus free-form details."""

    title: str
    checks: dict[str, bool] = field(default_factory=dict)
    details: dict[str, object] = field(default_factory=dict)

    def record(self, name: str, ok: bool, detail=None) -> bool:
        self.checks[name] = bool(ok)
        if detail is not None:
            self.details[name] = detail
        return bool(ok)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    @property
    def failures(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]

    def merge(self, other: "CheckReport", prefix: str | None = None) -> None:
        pre = f"{prefix or other.title}."
        for k, v in other.checks.items():
            self.checks[pre + k] = v
        for k, v in other.details.items():
            self.details[pre + k] = v

    def require(self) -> "CheckReport":
        if not self.ok:
            raise VerificationError(f"{self.title}: failed {', '.join(self.failures)}")
        return self

    def as_dict(self) -> dict:
        return {"title": self.title, "ok": self.ok, "checks": dict(self.checks)}
