"""Structured pass/fail reports produced by the verifiers.

Verifiers return both sides of every identity they check rather than a bare
boolean, so a failure is immediately diagnosable.
"""

from dataclasses import dataclass, field
from fractions import Fraction


def fmt_q(q):
    return str(Fraction(q))


def fmt_coords(coords):
    return "[" + ", ".join(fmt_q(c) for c in coords) + "]"


@dataclass
class CheckItem:
    key: str
    lhs: str
    rhs: str
    equal: bool
    note: str = ""

    def to_dict(self):
        d = {"key": self.key, "lhs": self.lhs, "rhs": self.rhs, "equal": self.equal}
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class VerifyReport:
    title: str
    items: list = field(default_factory=list)

    def add(self, key, lhs, rhs, equal=None, note=""):
        if equal is None:
            equal = lhs == rhs
        self.items.append(CheckItem(str(key), str(lhs), str(rhs), bool(equal), note))
        return equal

    def add_bool(self, key, ok, note=""):
        self.items.append(CheckItem(str(key), "pass" if ok else "fail", "pass", bool(ok), note))
        return ok

    def extend(self, other):
        self.items.extend(other.items)

    @property
    def passed(self):
        return all(item.equal for item in self.items)

    def failures(self):
        return [item for item in self.items if not item.equal]

    def to_dict(self):
        return {
            "title": self.title,
            "passed": self.passed,
            "checks": [item.to_dict() for item in sorted(self.items, key=lambda i: i.key)],
        }

    def text_lines(self):
        lines = [f"{'PASS' if self.passed else 'FAIL'}  {self.title}"]
        for item in sorted(self.items, key=lambda i: i.key):
            mark = "ok " if item.equal else "XX "
            lines.append(f"  {mark} {item.key}: lhs={item.lhs} rhs={item.rhs}" + (f" ({item.note})" if item.note else ""))
        return lines
