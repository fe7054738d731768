"""Exact arithmetic in the real field Q(sqrt2, sqrt5).

Every quantity the schedulers ever compare -- processing times, machine
loads, the due date, and decision thresholds such as ``(sqrt2 - 1) * d``
or ``(sqrt5 - 1) * d`` -- is a :class:`QValue`, a number of the form

    a + b*sqrt(2) + c*sqrt(5) + e*sqrt(10)

with rational coefficients.  The four basis elements are linearly
independent over the rationals, so the representation is unique and the
zero test is structural: a value is zero exactly when all four
coefficients are zero.  Sign queries on nonzero values are decided by
enclosing sqrt2, sqrt5 and sqrt10 in dyadic intervals and refining until
the interval for the whole expression excludes zero; refinement always
terminates because a nonzero field element is bounded away from zero.

There is deliberately no division between field elements.  Comparisons
of ratios are phrased multiplicatively (compare ``x`` against ``r * y``)
and decimal ratio displays go through :func:`ratio_decimal`, which needs
only multiplication, exact floor hunting and exact sign tests.

The starting interval precision is 64 fractional bits (doubling each
refinement round) and can be overridden with the ``EWL_PRECISION_BITS``
environment variable.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction

__all__ = ["QValue", "SQRT2", "SQRT5", "SQRT10", "ONE", "ZERO",
           "ratio_decimal", "set_precision_bits", "precision_bits"]

_DEFAULT_BITS = 64
_start_bits = int(os.environ.get("EWL_PRECISION_BITS", _DEFAULT_BITS))
if _start_bits < 1:
    raise ValueError("EWL_PRECISION_BITS must be a positive integer")


def precision_bits() -> int:
    """Current starting precision of the interval sign loop."""
    return _start_bits


def set_precision_bits(bits: int) -> None:
    """Override the starting precision (normally set via EWL_PRECISION_BITS)."""
    global _start_bits
    if bits < 1:
        raise ValueError("precision must be a positive number of bits")
    _start_bits = bits


# Dyadic enclosures of sqrt(n): _sqrt_floor(n, k) is the largest integer s
# with s/2^k <= sqrt(n); the enclosure is [s, s+1] / 2^k.
_sqrt_floor_cache: dict[tuple[int, int], int] = {}


def _sqrt_floor(n: int, bits: int) -> int:
    key = (n, bits)
    s = _sqrt_floor_cache.get(key)
    if s is None:
        s = math.isqrt(n << (2 * bits))
        _sqrt_floor_cache[key] = s
    return s


class QValue:
    """An element of Q(sqrt2, sqrt5) on the basis {1, sqrt2, sqrt5, sqrt10}.

    Stored canonically as integer numerators over a single positive
    denominator with gcd(a, b, c, e, den) == 1, so structural equality is
    value equality.  Instances are immutable and hashable; hashes of pure
    rational values agree with the corresponding ``Fraction``/``int``.

    Supports ``+``, ``-``, ``*`` (with QValue, int or Fraction operands),
    exact rich comparisons, :meth:`sign`, :meth:`compare` and correctly
    rounded decimal rendering via :meth:`to_decimal`.
    """

    __slots__ = ("_a", "_b", "_c", "_e", "_q")

    def __init__(self, a=0, b=0, c=0, e=0):
        fa = _as_fraction(a)
        fb = _as_fraction(b)
        fc = _as_fraction(c)
        fe = _as_fraction(e)
        q = math.lcm(fa.denominator, fb.denominator,
                     fc.denominator, fe.denominator)
        self._a = fa.numerator * (q // fa.denominator)
        self._b = fb.numerator * (q // fb.denominator)
        self._c = fc.numerator * (q // fc.denominator)
        self._e = fe.numerator * (q // fe.denominator)
        self._q = q
        self._reduce()

    def _reduce(self) -> None:
        g = math.gcd(self._a, self._b, self._c, self._e, self._q)
        if g > 1:
            self._a //= g
            self._b //= g
            self._c //= g
            self._e //= g
            self._q //= g

    # -- coefficient access (always in lowest terms over the shared den) --

    @property
    def a(self) -> Fraction:
        return Fraction(self._a, self._q)

    @property
    def b(self) -> Fraction:
        return Fraction(self._b, self._q)

    @property
    def c(self) -> Fraction:
        return Fraction(self._c, self._q)

    @property
    def e(self) -> Fraction:
        return Fraction(self._e, self._q)

    def coefficients(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.e)

    def is_rational(self) -> bool:
        return not (self._b or self._c or self._e)

    def as_fraction(self) -> Fraction:
        """The value as a Fraction; raises on values with radical parts."""
        if not self.is_rational():
            raise ValueError(f"{self!r} is irrational")
        return Fraction(self._a, self._q)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        q1, q2 = self._q, o._q
        if q1 == q2:
            return _build(self._a + o._a, self._b + o._b,
                          self._c + o._c, self._e + o._e, q1)
        return _build(self._a * q2 + o._a * q1, self._b * q2 + o._b * q1,
                      self._c * q2 + o._c * q1, self._e * q2 + o._e * q1,
                      q1 * q2)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        q1, q2 = self._q, o._q
        if q1 == q2:
            return _build(self._a - o._a, self._b - o._b,
                          self._c - o._c, self._e - o._e, q1)
        return _build(self._a * q2 - o._a * q1, self._b * q2 - o._b * q1,
                      self._c * q2 - o._c * q1, self._e * q2 - o._e * q1,
                      q1 * q2)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return _build(-self._a, -self._b, -self._c, -self._e, self._q)

    def __pos__(self):
        return self

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a1, b1, c1, e1 = self._a, self._b, self._c, self._e
        a2, b2, c2, e2 = o._a, o._b, o._c, o._e
        # sqrt2*sqrt5 = sqrt10, sqrt2*sqrt10 = 2*sqrt5, sqrt5*sqrt10 = 5*sqrt2
        return _build(
            a1 * a2 + 2 * b1 * b2 + 5 * c1 * c2 + 10 * e1 * e2,
            a1 * b2 + b1 * a2 + 5 * (c1 * e2 + e1 * c2),
            a1 * c2 + c1 * a2 + 2 * (b1 * e2 + e1 * b2),
            a1 * e2 + e1 * a2 + b1 * c2 + c1 * b2,
            self._q * o._q,
        )

    __rmul__ = __mul__

    # -- exact ordering --------------------------------------------------

    def sign(self) -> int:
        """Exact sign in {-1, 0, +1}.

        Zero is decided structurally (all coefficients zero), never by the
        interval loop; anything else is resolved by dyadic interval
        refinement at doubling precision.
        """
        if not (self._b or self._c or self._e):
            a = self._a
            return (a > 0) - (a < 0)
        bits = _start_bits
        while True:
            lo, hi = self._dyadic_bounds(bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2

    def _dyadic_bounds(self, bits: int) -> tuple[int, int]:
        """Integer lo, hi with the value in [lo, hi] / (den * 2^bits)."""
        lo = hi = self._a << bits
        for coef, n in ((self._b, 2), (self._c, 5), (self._e, 10)):
            if coef:
                s = _sqrt_floor(n, bits)
                if coef > 0:
                    lo += coef * s
                    hi += coef * (s + 1)
                else:
                    lo += coef * (s + 1)
                    hi += coef * s
        return lo, hi

    def compare(self, other) -> int:
        """-1, 0 or +1 as this value is less than, equal to or greater."""
        o = _coerce(other)
        if o is None:
            raise TypeError(f"cannot compare QValue with {type(other).__name__}")
        return (self - o).sign()

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return (self._a == o._a and self._b == o._b and self._c == o._c
                and self._e == o._e and self._q == o._q)

    def __lt__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if not (self._b or self._c or self._e or o._b or o._c or o._e):
            return self._a * o._q < o._a * self._q
        return (self - o).sign() < 0

    def __le__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if not (self._b or self._c or self._e or o._b or o._c or o._e):
            return self._a * o._q <= o._a * self._q
        return (self - o).sign() <= 0

    def __gt__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if not (self._b or self._c or self._e or o._b or o._c or o._e):
            return self._a * o._q > o._a * self._q
        return (self - o).sign() > 0

    def __ge__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if not (self._b or self._c or self._e or o._b or o._c or o._e):
            return self._a * o._q >= o._a * self._q
        return (self - o).sign() >= 0

    def __bool__(self):
        return bool(self._a or self._b or self._c or self._e)

    def __hash__(self):
        if self.is_rational():
            return hash(Fraction(self._a, self._q))
        return hash((self._a, self._b, self._c, self._e, self._q))

    def __reduce__(self):
        return (_build, (self._a, self._b, self._c, self._e, self._q))

    # -- decimal rendering (display only, never used for decisions) ------

    def to_decimal(self, digits: int) -> str:
        """Correctly rounded decimal string with `digits` fractional digits.

        Rational values round ties to even; irrational values never tie.
        """
        if digits < 1:
            raise ValueError("digits must be >= 1")
        if self.sign() < 0:
            return "-" + (-self).to_decimal(digits)
        scale = 10 ** digits
        if self.is_rational():
            n = round(Fraction(self._a * scale, self._q))
        else:
            n = _round_nearest_scaled(self, scale)
        whole, frac = divmod(n, scale)
        return f"{whole}.{frac:0{digits}d}"

    # -- construction helpers -------------------------------------------

    @classmethod
    def sqrt2(cls) -> "QValue":
        return _build(0, 1, 0, 0, 1)

    @classmethod
    def sqrt5(cls) -> "QValue":
        return _build(0, 0, 1, 0, 1)

    @classmethod
    def sqrt10(cls) -> "QValue":
        return _build(0, 0, 0, 1, 1)

    @classmethod
    def from_json(cls, obj) -> "QValue":
        """Parse the wire form: "p/q" / "p" / integer / {"a": ..., "e": ...}.

        Omitted coefficients default to 0.  Denominator 0 is rejected;
        non-canonical fractions such as "2/4" are normalized on read.
        """
        if isinstance(obj, dict):
            unknown = set(obj) - {"a", "b", "c", "e"}
            if unknown:
                raise ValueError(f"unknown coefficient keys: {sorted(unknown)}")
            return cls(*(_parse_rational(obj.get(k, 0)) for k in "abce"))
        return cls(_parse_rational(obj))

    def to_json(self):
        """Wire form: a "p/q" string for rationals, else a coefficient object."""
        if self.is_rational():
            return _format_rational(Fraction(self._a, self._q))
        out = {}
        for key, num in (("a", self._a), ("b", self._b),
                         ("c", self._c), ("e", self._e)):
            if num:
                out[key] = _format_rational(Fraction(num, self._q))
        return out

    def __repr__(self):
        parts = []
        for num, tag in ((self._a, ""), (self._b, "*sqrt2"),
                         (self._c, "*sqrt5"), (self._e, "*sqrt10")):
            if num:
                parts.append(f"{Fraction(num, self._q)}{tag}")
        if not parts:
            return "QValue(0)"
        return f"QValue({' + '.join(parts)})"


def _build(a: int, b: int, c: int, e: int, q: int) -> QValue:
    v = QValue.__new__(QValue)
    v._a = a
    v._b = b
    v._c = c
    v._e = e
    v._q = q
    g = math.gcd(a, b, c, e, q)
    if g > 1:
        v._a = a // g
        v._b = b // g
        v._c = c // g
        v._e = e // g
        v._q = q // g
    return v


def _as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    raise TypeError(f"coefficients must be int, Fraction or string, not "
                    f"{type(v).__name__}")


def _coerce(v):
    if isinstance(v, QValue):
        return v
    if isinstance(v, int):
        return _build(v, 0, 0, 0, 1)
    if isinstance(v, Fraction):
        return _build(v.numerator, 0, 0, 0, v.denominator)
    return None


def _parse_rational(obj) -> Fraction:
    if isinstance(obj, bool):
        raise ValueError("booleans are not numbers")
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, float):
        raise ValueError(f"floats are not exact; write {obj!r} as a \"p/q\" string")
    if isinstance(obj, str):
        text = obj.strip()
        num_part, slash, den_part = text.partition("/")
        try:
            num = int(num_part.strip())
            den = int(den_part.strip()) if slash else 1
        except ValueError:
            raise ValueError(f"not a rational literal: {obj!r}") from None
        if den == 0:
            raise ValueError(f"denominator 0 in {obj!r}")
        return Fraction(num, den)
    raise ValueError(f"cannot parse {type(obj).__name__} as a rational")


def _format_rational(f: Fraction) -> str:
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def _round_nearest_scaled(x: QValue, scale: int) -> int:
    """round(x * scale) for positive irrational x (ties cannot occur)."""
    bits = _start_bits
    while True:
        lo, hi = x._dyadic_bounds(bits)
        den = x._q << bits
        # floor(v * scale + 1/2) at both interval ends
        nlo = (2 * lo * scale + den) // (2 * den)
        nhi = (2 * hi * scale + den) // (2 * den)
        if nlo == nhi:
            return nlo
        bits *= 2


def _floor_quotient(num: QValue, den: QValue) -> int:
    """floor(num / den) for num >= 0 and den > 0, decided exactly."""
    bits = _start_bits
    while True:
        nlo, nhi = num._dyadic_bounds(bits)
        dlo, dhi = den._dyadic_bounds(bits)
        if dlo > 0:
            # num in [nlo, nhi]/Nq2, den in [dlo, dhi]/Dq2; the 2^bits cancel.
            mlo = (nlo * den._q) // (dhi * num._q)
            mhi = (nhi * den._q) // (dlo * num._q)
            if mlo == mhi:
                return mlo
            if mhi == mlo + 1:
                # Quotient may be exactly the integer mhi; settle by exact sign.
                s = (num - den * mhi).sign()
                return mhi if s >= 0 else mlo
        bits *= 2


def ratio_decimal(num: QValue, den: QValue, digits: int = 10) -> str:
    """Correctly rounded decimal string of num/den (ties to even).

    Display helper only: works through multiplication and exact sign
    tests, so no field division is ever performed.  Requires num >= 0 and
    den > 0.
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    if den.sign() <= 0:
        raise ValueError("ratio denominator must be positive")
    if num.sign() < 0:
        raise ValueError("ratio numerator must be nonnegative")
    scale = 10 ** digits
    if num.is_rational() and den.is_rational():
        n = round(Fraction(num._a * den._q * scale, num._q * den._a))
    else:
        target = num * scale
        m = _floor_quotient(target, den)
        # Round half to even: compare target against den * (m + 1/2).
        t = (target + target - den * (2 * m + 1)).sign()
        n = m + 1 if (t > 0 or (t == 0 and m % 2 == 1)) else m
    whole, frac = divmod(n, scale)
    return f"{whole}.{frac:0{digits}d}"


SQRT2 = QValue.sqrt2()
SQRT5 = QValue.sqrt5()
SQRT10 = QValue.sqrt10()
ONE = _build(1, 0, 0, 0, 1)
ZERO = _build(0, 0, 0, 0, 1)
