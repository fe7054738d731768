"""The four online/semi-online assignment policies behind one interface.

Each policy sees jobs one at a time and must commit each to a machine
before the next arrives.  Hierarchy-1 jobs always go to M1 (M2 cannot run
them); the policies differ only in how they route hierarchy-2 jobs:

alg1  (no advance information)
    Send a job to M2 while it still fits under the due date, or while the
    M2 load is at most (sqrt2 - 1) * d; otherwise M1.

alg2  (total processing time T known)
    Send jobs to M2 while more than (5/8) * T would remain for M1 after
    the assignment.  The first time that margin is gone, make one final
    balance test (remaining-for-M1 >= current M2 load), place the job
    accordingly, and latch: every later hierarchy-2 job goes to M1.

alg3  (largest processing time known, attained by a hierarchy-1 job)
    Send a job to M2 exactly while the M2 load is strictly below 2d/3.
    The declared maximum never enters the routing rule; it is only
    validated against the realized instance.

alg4  (largest processing time known, attained by a hierarchy-2 job)
    Reserve room on M2 for the promised largest job: before it has been
    seen, a smaller job may use M2 only if load + p_max + p stays within
    (sqrt5 - 1) * d.  The first job matching p_max goes to M2 and releases
    the reservation; afterwards M2 is filled up to (sqrt5 - 1) * d.

Comparison strictness follows the rules above verbatim (the second alg1
branch is <=, alg3 is strict <, alg2 is strict > then >=, alg4 is <=);
the equality cases are exercised by dedicated tests.
"""

from __future__ import annotations

from fractions import Fraction

from .core import Hint, Instance, Job, Machine, Schedule, ValidationFailure, validate
from .exactnum import SQRT2, SQRT5, ZERO, QValue

__all__ = [
    "POLICY_KINDS", "HINT_REQUIREMENTS", "PolicyState",
    "PolicyConfigError", "HintViolation",
    "policy_init", "policy_step", "run_policy", "policy_bound",
    "alg1_rule", "alg2_rule", "alg3_rule", "alg4_rule",
]

POLICY_KINDS = ("alg1", "alg2", "alg3", "alg4")

# Hint kind each policy insists on ("any" means the hint is ignored).
HINT_REQUIREMENTS = {
    "alg1": "any",
    "alg2": "total",
    "alg3": "pmax1",
    "alg4": "pmax2",
}

_M1 = Machine.M1
_M2 = Machine.M2


class PolicyConfigError(ValueError):
    """Policy instantiated with the wrong kind of hint."""


class HintViolation(ValueError):
    """A job contradicted the advance information mid-run."""


class PolicyState:
    """Online state of one run; treat as immutable, stepping returns a new one.

    Tracks both machine loads, the latch of alg2 (`committed_m1`) and the
    largest-job flag of alg4 (`seen_largest`); both flags are monotone
    within a run.  `threshold` caches the kind's routing constant
    ((sqrt2-1)*d, 5T/8, 2d/3 or (sqrt5-1)*d) so steps never recompute it.
    """

    __slots__ = ("kind", "d", "L1", "L2", "hint", "committed_m1",
                 "seen_largest", "threshold")

    def __init__(self, kind, d, L1, L2, hint, committed_m1, seen_largest,
                 threshold):
        self.kind = kind
        self.d = d
        self.L1 = L1
        self.L2 = L2
        self.hint = hint
        self.committed_m1 = committed_m1
        self.seen_largest = seen_largest
        self.threshold = threshold

    def __repr__(self):
        return (f"PolicyState({self.kind}, L1={self.L1!r}, L2={self.L2!r}, "
                f"committed_m1={self.committed_m1}, "
                f"seen_largest={self.seen_largest})")


def policy_bound(kind: str) -> QValue:
    """The proven worst-case ratio guarantee of a policy."""
    return {
        "alg1": SQRT2,
        "alg2": QValue(Fraction(4, 3)),
        "alg3": QValue(Fraction(6, 5)),
        "alg4": SQRT5 - 1,
    }[kind]


def _threshold(kind: str, d: QValue, hint: Hint) -> QValue:
    if kind == "alg1":
        return (SQRT2 - 1) * d
    if kind == "alg2":
        return hint.value * Fraction(5, 8)
    if kind == "alg3":
        return d * Fraction(2, 3)
    return (SQRT5 - 1) * d


def policy_init(kind: str, d: QValue, hint: Hint) -> PolicyState:
    """Fresh state: zero loads, flags cleared; rejects a mismatched hint."""
    if kind not in POLICY_KINDS:
        raise PolicyConfigError(f"unknown policy {kind!r}")
    if not isinstance(d, QValue):
        d = QValue(d)
    if d.sign() <= 0:
        raise PolicyConfigError("due date must be positive")
    required = HINT_REQUIREMENTS[kind]
    if required != "any" and hint.kind != required:
        raise PolicyConfigError(
            f"{kind} requires a {required!r} hint, got {hint.kind!r}")
    return PolicyState(kind, d, ZERO, ZERO, hint, False, False,
                       _threshold(kind, d, hint))


# -- routing rules ------------------------------------------------------------
# The public rule functions carry the per-kind contracts; policy_step goes
# through the same _choose helpers with the run's cached threshold.

def _alg1_choose(l2: QValue, p: QValue, d: QValue, threshold: QValue) -> Machine:
    if l2 + p <= d:
        return _M2
    if l2 <= threshold:
        return _M2
    return _M1


def _alg2_choose(t, l2, committed, p, threshold):
    if committed:
        return _M1, True
    rest = t - l2 - p
    if rest > threshold:
        return _M2, False
    if rest >= l2:
        return _M2, True
    return _M1, True


def _alg3_choose(l2: QValue, d: QValue, threshold: QValue) -> Machine:
    if l2 < threshold:
        return _M2
    return _M1


def _alg4_choose(l2, seen_largest, p, p_max, threshold):
    if not seen_largest:
        if p == p_max:
            return _M2, True
        if l2 + p_max + p <= threshold:
            return _M2, False
        return _M1, False
    if l2 + p <= threshold:
        return _M2, True
    return _M1, True


def alg1_rule(l2: QValue, d: QValue, p: QValue) -> Machine:
    """Routing of a hierarchy-2 job with no advance information."""
    return _alg1_choose(l2, p, d, (SQRT2 - 1) * d)


def alg2_rule(t: QValue, l2: QValue, committed: bool, p: QValue) -> tuple[Machine, bool]:
    """Routing with known total T; returns (machine, committed-after)."""
    return _alg2_choose(t, l2, committed, p, t * Fraction(5, 8))


def alg3_rule(l2: QValue, d: QValue, p: QValue) -> Machine:
    """Routing with the largest job known to be hierarchy-1.

    The job size `p` is accepted for signature symmetry but never read:
    only the current M2 load against 2d/3 decides.
    """
    return _alg3_choose(l2, d, d * Fraction(2, 3))


def alg4_rule(l2: QValue, seen_largest: bool, p: QValue, p_max: QValue,
              d: QValue) -> tuple[Machine, bool]:
    """Routing with the largest job known to be hierarchy-2.

    Returns (machine, seen-largest-after); the flag flips on the first job
    whose size equals the declared maximum.
    """
    return _alg4_choose(l2, seen_largest, p, p_max, (SQRT5 - 1) * d)


# -- stepping -----------------------------------------------------------------

def policy_step(state: PolicyState, job: Job) -> tuple[PolicyState, Machine]:
    """Assign one arriving job and return the successor state."""
    p = job.p
    if p.sign() <= 0:
        raise ValueError("job processing time must be positive")
    if p > state.d:
        raise ValueError("job processing time exceeds the due date")
    kind = state.kind
    committed = state.committed_m1
    seen = state.seen_largest
    if job.g == 1:
        machine = _M1
    elif kind == "alg1":
        machine = _alg1_choose(state.L2, p, state.d, state.threshold)
    elif kind == "alg2":
        machine, committed = _alg2_choose(state.hint.value, state.L2,
                                          committed, p, state.threshold)
    elif kind == "alg3":
        if p > state.hint.value:
            raise HintViolation("job larger than the declared maximum")
        machine = _alg3_choose(state.L2, state.d, state.threshold)
    else:
        if p > state.hint.value:
            raise HintViolation("job larger than the declared maximum")
        machine, seen = _alg4_choose(state.L2, seen, p, state.hint.value,
                                     state.threshold)
    if machine is _M1:
        next_state = PolicyState(kind, state.d, state.L1 + p, state.L2,
                                 state.hint, committed, seen, state.threshold)
    else:
        next_state = PolicyState(kind, state.d, state.L1, state.L2 + p,
                                 state.hint, committed, seen, state.threshold)
    return next_state, machine


def run_policy(kind: str, instance: Instance, hint: Hint) -> tuple[Schedule, QValue]:
    """Run a policy over the whole arrival sequence.

    Validates the instance/hint pair first (raising ValidationFailure on
    any violation), folds policy_step over the jobs, and returns the
    realized schedule together with its objective value.
    """
    violations = validate(instance, hint)
    if violations:
        raise ValidationFailure(violations)
    state = policy_init(kind, instance.d, hint)
    assignments = []
    for job in instance.jobs:
        state, machine = policy_step(state, job)
        assignments.append(machine)
    d = state.d
    value = (state.L1 if state.L1 <= d else d) + (state.L2 if state.L2 <= d else d)
    return Schedule(tuple(assignments), state.L1, state.L2), value
