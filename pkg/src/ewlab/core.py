"""Domain model: jobs, instances, advance hints, schedules and the objective.

Two machines process jobs against one shared due date ``d``.  M1 takes any
job; M2 only takes hierarchy-2 jobs.  A schedule is just a partition of the
jobs, and the objective counts the work finished before the due date:
``min(L1, d) + min(L2, d)`` over the two machine loads.  Intra-machine
order never matters, so schedules store loads rather than start times;
:func:`job_early_work` exists for the per-job definition and the test that
ties the two views together.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .exactnum import ZERO, QValue, ratio_decimal

__all__ = [
    "Machine", "Job", "Instance", "Hint", "Schedule", "RunReport",
    "ValidationFailure", "total_early_work", "job_early_work",
    "lemma1_bound", "validate", "make_report",
    "instance_to_json", "instance_from_json",
    "report_to_json", "report_from_json",
]

HIERARCHIES = (1, 2)


class Machine(enum.Enum):
    M1 = "M1"
    M2 = "M2"

    def __repr__(self):
        return self.value


class ValidationFailure(ValueError):
    """Raised when an instance/hint pair fails :func:`validate`."""

    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = violations


@dataclass(frozen=True)
class Job:
    """One arrival: processing time `p` and hierarchy `g` (1 or 2)."""

    p: QValue
    g: int

    def __post_init__(self):
        if self.g not in HIERARCHIES:
            raise ValueError(f"hierarchy must be 1 or 2, not {self.g!r}")
        if not isinstance(self.p, QValue):
            object.__setattr__(self, "p", QValue(self.p))


@dataclass(frozen=True)
class Hint:
    """Advance information for the semi-online models.

    kind "none"   -- nothing known;
    kind "total"  -- value is the total processing time of all jobs;
    kind "pmax"   -- value is the largest processing time;
    kind "pmax1"  -- largest processing time, attained by a hierarchy-1 job;
    kind "pmax2"  -- largest processing time, attained by a hierarchy-2 job.

    With ties, pmax1/pmax2 require at least one job of the stated
    hierarchy to attain the maximum; other jobs may match it.
    """

    kind: str
    value: QValue | None = None

    KINDS = ("none", "total", "pmax", "pmax1", "pmax2")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown hint kind {self.kind!r}")
        if self.kind == "none":
            if self.value is not None:
                raise ValueError("hint 'none' carries no value")
        elif not isinstance(self.value, QValue):
            object.__setattr__(self, "value", QValue(self.value))

    @classmethod
    def none(cls) -> "Hint":
        return cls("none")

    @classmethod
    def total(cls, t) -> "Hint":
        return cls("total", t if isinstance(t, QValue) else QValue(t))

    @classmethod
    def pmax(cls, p) -> "Hint":
        return cls("pmax", p if isinstance(p, QValue) else QValue(p))

    @classmethod
    def pmax1(cls, p) -> "Hint":
        return cls("pmax1", p if isinstance(p, QValue) else QValue(p))

    @classmethod
    def pmax2(cls, p) -> "Hint":
        return cls("pmax2", p if isinstance(p, QValue) else QValue(p))


@dataclass(frozen=True)
class Instance:
    """A due date and the jobs in arrival order."""

    d: QValue
    jobs: tuple[Job, ...]

    def __post_init__(self):
        if not isinstance(self.d, QValue):
            object.__setattr__(self, "d", QValue(self.d))
        object.__setattr__(self, "jobs", tuple(self.jobs))

    @classmethod
    def build(cls, d, pairs) -> "Instance":
        """Instance from (p, g) pairs; p may be anything QValue accepts."""
        return cls(QValue(d) if not isinstance(d, QValue) else d,
                   tuple(Job(p if isinstance(p, QValue) else QValue(p), g)
                         for p, g in pairs))

    def total_processing(self) -> QValue:
        t = ZERO
        for job in self.jobs:
            t = t + job.p
        return t

    def is_rational(self) -> bool:
        return self.d.is_rational() and all(j.p.is_rational() for j in self.jobs)


@dataclass(frozen=True)
class Schedule:
    """A completed assignment: one machine per job plus the final loads."""

    assignments: tuple[Machine, ...]
    L1: QValue
    L2: QValue


@dataclass
class RunReport:
    """Outcome of one game or policy run, with the exact bound verdict.

    ``bound_kind`` records which direction was checked: "upper" verifies
    c_opt <= bound * c_alg (a competitive-ratio guarantee), "lower"
    verifies c_opt >= bound * c_alg (an adversarial forcing result).
    ``ratio_decimal`` is display-only; the verdict never depends on it.
    """

    c_alg: QValue
    c_opt: QValue
    bound: QValue
    bound_kind: str
    bound_holds: bool
    ratio_decimal: str
    trace: list[tuple[Job, Machine]] = field(default_factory=list)


def total_early_work(l1: QValue, l2: QValue, d: QValue) -> QValue:
    """min(L1, d) + min(L2, d): work that finishes before the due date."""
    if l1.sign() < 0 or l2.sign() < 0:
        raise ValueError("machine loads cannot be negative")
    if d.sign() <= 0:
        raise ValueError("due date must be positive")
    return (l1 if l1 <= d else d) + (l2 if l2 <= d else d)


def job_early_work(p: QValue, start: QValue, d: QValue) -> QValue:
    """Early work of one job running on [start, start + p)."""
    if p.sign() <= 0:
        raise ValueError("processing time must be positive")
    if start.sign() < 0:
        raise ValueError("start time cannot be negative")
    if d.sign() <= 0:
        raise ValueError("due date must be positive")
    if start + p <= d:
        return p
    if start >= d:
        return ZERO
    return d - start


def lemma1_bound(t: QValue, d: QValue) -> QValue:
    """min(T, 2d): no schedule's value can exceed it.

    The weaker form d + T/2 also always dominates; callers that want it
    can check against ``d + t * Fraction(1, 2)`` directly.
    """
    if t.sign() < 0:
        raise ValueError("total processing time cannot be negative")
    if d.sign() <= 0:
        raise ValueError("due date must be positive")
    two_d = d + d
    return t if t <= two_d else two_d


def validate(instance: Instance, hint: Hint) -> list[str]:
    """All rule violations of the instance/hint pair (empty means valid).

    Violations are data, not exceptions: a semi-online run only learns
    whether its hint was honest once the last job has arrived.
    """
    out = []
    d = instance.d
    if d.sign() <= 0:
        out.append("d <= 0")
    for i, job in enumerate(instance.jobs, start=1):
        if job.p.sign() <= 0:
            out.append(f"job {i}: p <= 0")
        elif d.sign() > 0 and job.p > d:
            out.append(f"job {i}: p > d")
    if hint.kind == "total":
        if hint.value != instance.total_processing():
            out.append("hint total: declared T differs from the actual sum")
    elif hint.kind in ("pmax", "pmax1", "pmax2"):
        if not instance.jobs:
            out.append(f"hint {hint.kind}: no jobs, so no maximum exists")
        else:
            actual = instance.jobs[0].p
            for job in instance.jobs[1:]:
                if job.p > actual:
                    actual = job.p
            if hint.value != actual:
                out.append(f"hint {hint.kind}: declared maximum differs from "
                           "the actual one")
            elif hint.kind != "pmax":
                wanted = 1 if hint.kind == "pmax1" else 2
                if not any(job.g == wanted and job.p == actual
                           for job in instance.jobs):
                    out.append(f"hint {hint.kind}: no hierarchy-{wanted} job "
                               "attains the declared maximum")
    return out


# -- wire formats -------------------------------------------------------------

def instance_to_json(instance: Instance, hint: Hint) -> dict:
    doc = {"d": instance.d.to_json()}
    if hint.kind == "none":
        doc["hint"] = {"kind": "none"}
    else:
        doc["hint"] = {"kind": hint.kind, "value": hint.value.to_json()}
    doc["jobs"] = [{"p": job.p.to_json(), "g": job.g} for job in instance.jobs]
    return doc


def instance_from_json(doc) -> tuple[Instance, Hint]:
    if not isinstance(doc, dict):
        raise ValueError("instance document must be a JSON object")
    if "d" not in doc:
        raise ValueError("instance document lacks \"d\"")
    d = QValue.from_json(doc["d"])
    hint_doc = doc.get("hint", {"kind": "none"})
    if not isinstance(hint_doc, dict) or "kind" not in hint_doc:
        raise ValueError("hint must be an object with a \"kind\"")
    kind = hint_doc["kind"]
    if kind == "none":
        hint = Hint.none()
    else:
        if kind not in Hint.KINDS:
            raise ValueError(f"unknown hint kind {kind!r}")
        if "value" not in hint_doc:
            raise ValueError(f"hint {kind!r} requires a value")
        hint = Hint(kind, QValue.from_json(hint_doc["value"]))
    jobs = []
    for i, job_doc in enumerate(doc.get("jobs", ()), start=1):
        if not isinstance(job_doc, dict) or "p" not in job_doc or "g" not in job_doc:
            raise ValueError(f"job {i} must be an object with \"p\" and \"g\"")
        if job_doc["g"] not in HIERARCHIES:
            raise ValueError(f"job {i}: hierarchy must be 1 or 2")
        jobs.append(Job(QValue.from_json(job_doc["p"]), job_doc["g"]))
    return Instance(d, tuple(jobs)), hint


def report_to_json(report: RunReport) -> dict:
    return {
        "c_alg": report.c_alg.to_json(),
        "c_opt": report.c_opt.to_json(),
        "bound": report.bound.to_json(),
        "bound_kind": report.bound_kind,
        "bound_holds": report.bound_holds,
        "ratio_decimal": report.ratio_decimal,
        "trace": [{"p": job.p.to_json(), "g": job.g, "machine": m.value}
                  for job, m in report.trace],
    }


def report_from_json(doc) -> RunReport:
    return RunReport(
        c_alg=QValue.from_json(doc["c_alg"]),
        c_opt=QValue.from_json(doc["c_opt"]),
        bound=QValue.from_json(doc["bound"]),
        bound_kind=doc["bound_kind"],
        bound_holds=bool(doc["bound_holds"]),
        ratio_decimal=doc["ratio_decimal"],
        trace=[(Job(QValue.from_json(t["p"]), t["g"]), Machine(t["machine"]))
               for t in doc["trace"]],
    )


def make_report(c_alg: QValue, c_opt: QValue, bound: QValue, bound_kind: str,
                trace: list[tuple[Job, Machine]]) -> RunReport:
    """Assemble a report, computing the exact verdict and the display ratio."""
    if c_alg > c_opt:
        raise AssertionError("offline optimum lost to an online run; "
                             "this is an implementation bug")
    if bound_kind == "upper":
        holds = c_opt <= bound * c_alg
    elif bound_kind == "lower":
        holds = c_opt >= bound * c_alg
    else:
        raise ValueError(f"bound_kind must be 'upper' or 'lower', not {bound_kind!r}")
    if c_alg.sign() == 0:
        ratio = "1." + "0" * 10  # empty run: both sides scored zero
    else:
        ratio = ratio_decimal(c_opt, c_alg, 10)
    return RunReport(c_alg=c_alg, c_opt=c_opt, bound=bound,
                     bound_kind=bound_kind, bound_holds=holds,
                     ratio_decimal=ratio, trace=trace)
