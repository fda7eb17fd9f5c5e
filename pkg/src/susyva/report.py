"""Check reports: a list of named pass/fail entries with optional detail."""


class Report:
    def __init__(self, title):
        self.title = title
        self.entries = []
        self.info = {}

    def add(self, name, ok, **detail):
        self.entries.append((name, bool(ok), {k: str(v) for k, v in detail.items()}))
        return ok

    def extend(self, other, prefix=""):
        for name, ok, detail in other.entries:
            self.entries.append((prefix + name, ok, detail))
        return self

    @property
    def passed(self):
        return all(ok for _, ok, _ in self.entries)

    def __bool__(self):
        return self.passed

    def failures(self):
        return [(n, d) for n, ok, d in self.entries if not ok]

    def first_failure(self):
        f = self.failures()
        return f[0] if f else None

    def to_dict(self):
        return {
            "title": self.title,
            "passed": self.passed,
            "checks": [{"name": n, "passed": ok, **({"detail": d} if d else {})}
                       for n, ok, d in self.entries],
            **({"info": {k: str(v) for k, v in self.info.items()}} if self.info else {}),
        }

    def lines(self, verbose=False):
        out = [f"{self.title}: {'PASS' if self.passed else 'FAIL'}"]
        for n, ok, d in self.entries:
            if verbose or not ok:
                out.append(f"  [{'ok' if ok else 'FAIL'}] {n}")
                for k, v in d.items():
                    out.append(f"      {k}: {v}")
        for k, v in self.info.items():
            out.append(f"  {k} = {v}")
        return out

    def __str__(self):
        return "\n".join(self.lines())

    def __repr__(self):
        return f"<Report {self.title}: {len(self.entries)} checks, passed={self.passed}>"
