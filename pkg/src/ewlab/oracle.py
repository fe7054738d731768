"""Exact offline optimum, computed two independent ways.

Any feasible schedule keeps hierarchy-1 jobs on M1, so the whole offline
decision is which subset of hierarchy-2 jobs moves to M2.  With s that
subset's total size and T the grand total, the objective is

    f(s) = min(T - s, d) + min(s, d).

:func:`optimal_bruteforce` enumerates every subset in field arithmetic and
also reports a witness; :func:`optimal_dp` scales a rational instance to
integers, collects the reachable M2 loads with a subset-sum bitset, and
maximizes f over them.  The two routes share no arithmetic and are held
equal by the equivalence test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import Instance
from .exactnum import ZERO, QValue

__all__ = [
    "OracleResult", "BruteForceCapError", "DpUnsupported",
    "optimal_bruteforce", "optimal_dp", "optimal_value", "opt_sanity",
    "DEFAULT_SUBSET_CAP", "DP_UNIT_CAP",
]

DEFAULT_SUBSET_CAP = 24
DP_UNIT_CAP = 10 ** 8


class BruteForceCapError(ValueError):
    """Too many hierarchy-2 jobs to enumerate; use optimal_dp instead."""


class DpUnsupported(ValueError):
    """The scaling DP needs a rational instance of bounded magnitude."""


@dataclass(frozen=True)
class OracleResult:
    """Optimal value plus the M2 job-index subset that realizes it."""

    value: QValue
    witness: tuple[int, ...]


def optimal_bruteforce(instance: Instance,
                       cap: int = DEFAULT_SUBSET_CAP) -> OracleResult:
    """Exact maximum of f over all hierarchy-2 subsets, with a witness.

    Ties break toward the lexicographically smallest witness (as a sorted
    tuple of 0-based job indices).  Works on irrational instances too;
    refuses when more than `cap` hierarchy-2 jobs would have to be
    enumerated.
    """
    d = instance.d
    h2 = [(i, job.p) for i, job in enumerate(instance.jobs) if job.g == 2]
    if len(h2) > cap:
        raise BruteForceCapError(
            f"{len(h2)} hierarchy-2 jobs exceed the enumeration cap of "
            f"{cap}; use optimal_dp for large rational instances")
    total = instance.total_processing()

    # sums[mask] built incrementally from the mask with its lowest bit cleared.
    count = 1 << len(h2)
    sums: list[QValue] = [ZERO] * count
    best_value = None
    best_witness: tuple[int, ...] = ()
    for mask in range(count):
        if mask:
            low = mask & -mask
            s = sums[mask ^ low] + h2[low.bit_length() - 1][1]
            sums[mask] = s
        else:
            s = ZERO
        rest = total - s
        value = (s if s <= d else d) + (rest if rest <= d else d)
        if best_value is None or value > best_value:
            best_value = value
            best_witness = _mask_indices(mask, h2)
        elif value == best_value:
            witness = _mask_indices(mask, h2)
            if witness < best_witness:
                best_witness = witness
    return OracleResult(best_value if best_value is not None else ZERO,
                        best_witness)


def _mask_indices(mask: int, h2) -> tuple[int, ...]:
    return tuple(h2[k][0] for k in range(len(h2)) if mask >> k & 1)


def optimal_dp(instance: Instance) -> QValue:
    """Optimal value via subset-sum reachability on the scaled instance.

    All processing times and the due date must be pure rationals; values
    are scaled by the least common multiple of their denominators and the
    reachable M2 loads are collected in one bitset.  Refuses when the
    scaled hierarchy-2 total exceeds DP_UNIT_CAP units.
    """
    if not instance.is_rational():
        raise DpUnsupported("instance has irrational values; "
                            "use optimal_bruteforce")
    d_frac = instance.d.as_fraction()
    p_fracs = [job.p.as_fraction() for job in instance.jobs]
    unit = math.lcm(d_frac.denominator,
                    *(p.denominator for p in p_fracs)) if p_fracs \
        else d_frac.denominator
    d_s = d_frac.numerator * (unit // d_frac.denominator)
    total_s = 0
    weights = []
    for p, job in zip(p_fracs, instance.jobs):
        w = p.numerator * (unit // p.denominator)
        total_s += w
        if job.g == 2:
            weights.append(w)
    t2_s = sum(weights)
    if t2_s > DP_UNIT_CAP:
        raise DpUnsupported(f"scaled hierarchy-2 total {t2_s} exceeds "
                            f"{DP_UNIT_CAP} units; use optimal_bruteforce")

    reach = 1
    for w in weights:
        reach |= reach << w

    # f is concave piecewise linear in s with its plateau between d and
    # T - d, so only the reachable loads adjacent to (or inside) that band
    # can be optimal.
    lo = min(d_s, total_s - d_s)
    hi = max(d_s, total_s - d_s)
    candidates = set()
    for edge in (lo, hi):
        edge = 0 if edge < 0 else (t2_s if edge > t2_s else edge)
        below = reach & ((1 << (edge + 1)) - 1)
        if below:
            candidates.add(below.bit_length() - 1)
        above = reach >> edge
        if above:
            candidates.add(edge + (above & -above).bit_length() - 1)
    best = max(min(s, d_s) + min(total_s - s, d_s) for s in candidates)
    return QValue(Fraction(best, unit))


def optimal_value(instance: Instance) -> QValue:
    """C^OPT by whichever oracle fits the instance.

    Rational instances of manageable size go through the DP; anything
    else falls back to subset enumeration.
    """
    if instance.is_rational():
        try:
            return optimal_dp(instance)
        except DpUnsupported:
            pass
    return optimal_bruteforce(instance).value


def opt_sanity(instance: Instance, c_opt: QValue) -> bool:
    """Exact check of both optimum caps: min(T, 2d) and d + T/2."""
    total = instance.total_processing()
    d = instance.d
    two_d = d + d
    cap = total if total <= two_d else two_d
    return c_opt <= cap and c_opt <= d + total * Fraction(1, 2)
