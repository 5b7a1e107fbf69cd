"""Exact p-adic valuations of weight coordinates.

A valuation is either a :class:`fractions.Fraction` or ``math.inf``.  The
weight coordinate of an integer weight ``k`` is ``w_k = (1+2p)^k - 1``; it is
never materialized here.  For odd ``p`` and ``m != 0``::

    v_p((1+2p)^m - 1) = 1 + v_p(m)

so ``v_p(w_a - w_b) = v_p((1+2p)^b ((1+2p)^(a-b) - 1)) = 1 + v_p(a - b)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

INFINITY = math.inf

Valuation = Union[Fraction, float]

OUTSIDE_RANGE_NOTE = "p = 3 is outside the range p >= 5 where ghost slope predictions are expected to hold"


class IndeterminateValuation(ValueError):
    """The valuation of a difference is not determined by the data given."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Prime:
    """A prime ``p``; by default ``p >= 5`` is enforced.

    ``allow_small=True`` admits 2 and 3.  Ghost-series code refuses ``p = 2``
    regardless, and every report made with ``p = 3`` carries
    :data:`OUTSIDE_RANGE_NOTE`.
    """

    p: int
    allow_small: bool = field(default=False, compare=False)

    def __post_init__(self):
        if isinstance(self.p, bool) or not isinstance(self.p, int):
            raise TypeError(f"prime must be an int, got {self.p!r}")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.p < 5 and not self.allow_small:
            raise ValueError(f"p = {self.p} < 5 requires allow_small=True")

    def __int__(self):
        return self.p

    @property
    def note(self) -> str | None:
        return OUTSIDE_RANGE_NOTE if self.p == 3 else None

    def require_odd(self) -> None:
        if self.p == 2:
            raise ValueError("p = 2 is not supported for ghost series")


def as_prime(p: int | Prime, allow_small: bool = False) -> Prime:
    return p if isinstance(p, Prime) else Prime(p, allow_small=allow_small)


@dataclass(frozen=True)
class ArithmeticWeight:
    """The integer weight ``k``, i.e. ``w_k = (1+2p)^k - 1``."""

    k: int

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"arithmetic weights need k >= 2, got {self.k}")

    def __str__(self):
        return f"w_{self.k}"


@dataclass(frozen=True)
class GenericWeight:
    """Any weight ``kappa`` with ``v_p(w_kappa) = c``; only ``c`` is kept."""

    c: Fraction

    def __post_init__(self):
        c = Fraction(self.c)
        if c <= 0:
            raise ValueError(f"generic weights need v_p(w) > 0, got {c}")
        object.__setattr__(self, "c", c)

    def __str__(self):
        return f"w(v={self.c})"


Weight = Union[ArithmeticWeight, GenericWeight]


def vp_integer(n: int, p: int | Prime) -> int:
    """Exponent of ``p`` in the nonzero integer ``n``."""
    p = int(p)
    if n == 0:
        raise ValueError("v_p(0) is infinite; handle the zero case explicitly")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_weight(k: int, p: int | Prime) -> int:
    """``v_p(w_k)`` for odd ``p``."""
    return 1 + vp_integer(k, p)


def vp_weight_difference(k0: Weight | int, k: int, p: int | Prime) -> Valuation:
    """``v_p(w_{k0} - w_k)`` where ``k0`` may be generic.

    For a generic weight with ``v_p(w_kappa) = c`` the answer is
    ``min(c, 1 + v_p(k))`` and :class:`IndeterminateValuation` is raised when
    the two terms have equal valuation.
    """
    if int(p) == 2:
        raise ValueError("p must be odd")
    if isinstance(k0, int):
        k0 = ArithmeticWeight(k0)
    if isinstance(k0, ArithmeticWeight):
        if k < 2:
            raise ValueError(f"weights need k >= 2, got {k}")
        if k0.k == k:
            return INFINITY
        return Fraction(1 + vp_integer(k0.k - k, p))
    vk = vp_weight(k, p)
    if k0.c == vk:
        raise IndeterminateValuation(
            f"v_p(w_kappa) = {k0.c} equals v_p(w_{k}); the difference is undetermined"
        )
    return min(k0.c, Fraction(vk))


def format_valuation(v: Valuation) -> str:
    return "inf" if v == INFINITY else str(v)


def parse_valuation(s: str) -> Valuation:
    if s.strip().lower() in ("inf", "+inf", "infinity"):
        return INFINITY
    return Fraction(s)
