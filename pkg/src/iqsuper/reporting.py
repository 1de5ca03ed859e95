"""Check reports: one record per verified identity, JSON-serializable."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckReport:
    check: str
    profile: str
    status: str                      # "pass" | "fail"
    residual_support: list = field(default_factory=list)
    detail: str = ""

    @staticmethod
    def from_residual(check, profile, ok, support=(), detail=""):
        return CheckReport(check, profile, "pass" if ok else "fail",
                           [list(map(str, s)) for s in support], detail)

    def to_json(self):
        out = {"check": self.check, "profile": self.profile,
               "status": self.status,
               "residual_support": self.residual_support}
        if self.detail:
            out["detail"] = self.detail
        return out


def all_pass(reports):
    return all(r.status == "pass" for r in reports)
