"""Verification reports: typed checks with deterministic renderings.

The structured rendering is line-delimited, tab-separated, and
byte-identical across runs on identical inputs; the text rendering is the
human-facing view of the same records.  Exit status: 0 when every check
passes, 1 when any check fails, 3 when the only non-passes are refused
preconditions, 2 is reserved for input/usage errors at the CLI layer.
"""

import hashlib
from dataclasses import dataclass, field

from .errors import ParseError

PASS = "pass"
FAIL = "fail"
REFUSED = "refused"

_FORMAT_TAG = "locfree-report"
_FORMAT_VERSION = "1"


def _clean(text):
    return str(text).replace("\t", " ").replace("\n", "; ")


@dataclass(frozen=True)
class Check:
    name: str
    verdict: str
    details: str
    claim: str = "plumbing"


@dataclass
class VerificationReport:
    command: str
    inputs: tuple = ()
    checks: list = field(default_factory=list)

    def add(self, name, verdict, details, claim="plumbing"):
        self.checks.append(Check(name, verdict, _clean(details), _clean(claim)))

    def check(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def exit_status(self):
        verdicts = {c.verdict for c in self.checks}
        if FAIL in verdicts:
            return 1
        if REFUSED in verdicts:
            return 3
        return 0

    def all_pass(self):
        return self.exit_status == 0

    def render_structured(self):
        lines = [f"{_FORMAT_TAG}\t{_FORMAT_VERSION}",
                 f"command\t{_clean(self.command)}"]
        for key, value in self.inputs:
            lines.append(f"input\t{_clean(key)}={_clean(value)}")
        for c in self.checks:
            lines.append(f"check\t{c.name}\t{c.verdict}\t{c.details}\t{c.claim}")
        lines.append(f"exit\t{self.exit_status}")
        return "\n".join(lines) + "\n"

    def render_text(self):
        lines = [self.command]
        if self.inputs:
            lines.append("  inputs: " + "  ".join(
                f"{k}={v}" for k, v in self.inputs))
        for c in self.checks:
            lines.append(f"  [{c.verdict.upper():7}] {c.name}: {c.details}")
            lines.append(f"            claim: {c.claim}")
        lines.append(f"exit status: {self.exit_status}")
        return "\n".join(lines) + "\n"

    def render(self, fmt):
        if fmt == "structured":
            return self.render_structured()
        if fmt == "text":
            return self.render_text()
        raise ParseError(f"unknown report format {fmt!r}")


def parse_structured(text):
    """Inverse of render_structured, for re-rendering saved reports."""
    lines = text.splitlines()
    if not lines or lines[0].split("\t") != [_FORMAT_TAG, _FORMAT_VERSION]:
        raise ParseError("not a structured report (missing format line)", 1)
    report = None
    inputs = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        fields = line.split("\t")
        kind = fields[0]
        if kind == "command" and len(fields) == 2:
            report = VerificationReport(command=fields[1])
        elif kind == "input" and len(fields) == 2 and report is not None:
            key, _, value = fields[1].partition("=")
            inputs.append((key, value))
        elif kind == "check" and len(fields) == 5 and report is not None:
            if fields[2] not in (PASS, FAIL, REFUSED):
                raise ParseError(f"bad verdict {fields[2]!r}", lineno)
            report.checks.append(Check(*fields[1:]))
        elif kind == "exit" and len(fields) == 2 and report is not None:
            if int(fields[1]) != report.exit_status:
                raise ParseError(
                    f"recorded exit {fields[1]} does not match checks", lineno)
        else:
            raise ParseError(f"bad report line {line!r}", lineno)
    if report is None:
        raise ParseError("missing command line", 1)
    report.inputs = tuple(inputs)
    return report


def digest_text(text):
    return "sha256:" + hashlib.sha256(text.encode()).hexdigest()[:12]
