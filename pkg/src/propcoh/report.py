from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field


@dataclass
class Record:
    loc: str
    desc: str
    status: str
    detail: str | None = None


@dataclass
class Report:
    records: list = field(default_factory=list)

    def add(self, loc, desc, ok, detail=None):
        self.records.append(Record(loc, desc, "PASS" if ok else "FAIL",
                                   None if ok else detail))

    @property
    def passed(self):
        return sum(r.status == "PASS" for r in self.records)

    @property
    def failed(self):
        return sum(r.status == "FAIL" for r in self.records)

    @property
    def ok(self):
        return self.failed == 0

    def summary(self):
        return {"passed": self.passed, "failed": self.failed, "total": len(self.records)}

    def to_text(self):
        lines = []
        for r in self.records:
            lines.append(f"{r.status} {r.loc} {r.desc}")
            if r.detail:
                lines.extend("    " + line for line in r.detail.splitlines())
        s = self.summary()
        lines.append(f"summary: {s['passed']} passed, {s['failed']} failed, {s['total']} total")
        return "\n".join(lines) + "\n"

    def to_json(self):
        return json.dumps({"records": [asdict(r) for r in self.records],
                           "summary": self.summary()}, indent=2) + "\n"
