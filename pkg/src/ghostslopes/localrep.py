"""Semisimple 2-dimensional mod-p representations of the local Galois group.

Every such representation is, up to twist, either ``ind(omega_2^s)`` or
``nr(alpha) + nr(beta) omega^t``.  Two concrete types model them:

* :class:`Induced` -- ``ind(omega_2^s) (x) nr(gamma) omega^j``
* :class:`Split`   -- ``(nr(alpha) + nr(beta) omega^t) (x) omega^j``

with ``alpha, beta, gamma`` in a concrete field F_{p^m}.  A representation
is irregular when it is a twist of some ``ind(omega_2^s)``: either it is
irreducible (``p+1`` does not divide ``s``), or it is an unramified twist
``nr(a) + nr(-a)`` whose Frobenius trace vanishes.

Descriptor grammar (version 1), whitespace separated ``key=value`` tokens::

    rep/1 split   p=<prime> [m=<deg>] [modulus=<poly>] alpha=<elt> beta=<elt> t=<int> j=<int>
    rep/1 induced p=<prime> [m=<deg>] [modulus=<poly>] s=<int> [gamma=<elt>] [j=<int>]

Field elements and the modulus are polynomials in ``x`` with integer
coefficients, e.g. ``2x+1`` or ``-1``.  Without ``modulus`` a degree-``m``
field uses the first monic irreducible in lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Union

from .ffield import FFElement, FiniteField, field as make_field, format_poly, parse_poly

DESCRIPTOR_VERSION = "rep/1"


@dataclass(frozen=True)
class Split:
    alpha: FFElement
    beta: FFElement
    t: int
    j: int = 0

    @property
    def p(self) -> int:
        return self.alpha.field.p

    @property
    def field(self) -> FiniteField:
        return self.alpha.field

    def __str__(self):
        tw = f" (x) w^{self.j}" if self.j else ""
        return f"(nr({self.alpha}) + nr({self.beta}) w^{self.t}){tw}"


@dataclass(frozen=True)
class Induced:
    s: int
    gamma: FFElement
    j: int = 0
    # set by canonicalize when p+1 | s and sqrt(-1) is missing from the field
    reducible: bool = dc_field(default=False, compare=False)

    @property
    def p(self) -> int:
        return self.gamma.field.p

    @property
    def field(self) -> FiniteField:
        return self.gamma.field

    def __str__(self):
        tw = f" (x) nr({self.gamma})" if self.gamma != 1 else ""
        om = f" (x) w^{self.j}" if self.j else ""
        return f"ind(w2^{self.s}){tw}{om}"


LocalRep = Union[Split, Induced]


@dataclass(frozen=True)
class Regularity:
    irregular: bool
    clause: str | None
    reason: str

    def __bool__(self):
        return self.irregular


def canonicalize(r: LocalRep) -> LocalRep:
    """Normal form; isomorphic representations get equal normal forms.

    Induced types fold the omega-twist into ``s`` (``ind(w2^s) (x) w =
    ind(w2^(s+p+1))``), pick the smaller of ``s`` and ``p s``, and the smaller
    of ``gamma`` and ``-gamma``.  When ``p+1 | s`` they are rewritten as split
    via ``ind(1) = nr(i) + nr(-i)``, ``i^2 = -1``, if ``i`` is in the field.
    """
    p = r.p
    if isinstance(r, Split):
        if not r.alpha or not r.beta:
            raise ValueError("alpha and beta must be nonzero")
        t, j = r.t % (p - 1), r.j % (p - 1)
        a = (t, j, r.alpha.code, r.beta.code)
        b = ((-t) % (p - 1), (j + t) % (p - 1), r.beta.code, r.alpha.code)
        t, j, ac, bc = min(a, b)
        f = r.field
        return Split(f.from_code(ac), f.from_code(bc), t, j)

    if not r.gamma:
        raise ValueError("gamma must be nonzero")
    q1 = p * p - 1
    s = (r.s + (p + 1) * r.j) % q1
    s = min(s, (p * s) % q1)
    gamma = min(r.gamma, -r.gamma, key=lambda e: e.code)
    if s % (p + 1) == 0:
        i = r.field.sqrt(r.field(-1))
        if i is not None:
            return canonicalize(Split(gamma * i, -(gamma * i), 0, s // (p + 1)))
        return Induced(s, gamma, 0, reducible=True)
    return Induced(s, gamma, 0)


def is_irregular(r: LocalRep) -> Regularity:
    """Decide irregularity; ``clause`` is ``"2a"`` (irreducible) or ``"2b"``
    (twist of an unramified representation with Frobenius trace zero)."""
    r = canonicalize(r)
    p = r.p
    if isinstance(r, Induced):
        if r.s % (p + 1):
            return Regularity(True, "2a", f"irreducible: {r} with p+1 not dividing s")
        return Regularity(True, "2b", f"{r} is a twist of ind(1), unramified with trace zero")
    if r.t % (p - 1) == 0 and not (r.alpha + r.beta):
        return Regularity(
            True, "2b", f"unramified-twist trace zero: alpha + beta = 0 in {r.field!r}"
        )
    if r.t % (p - 1) == 0:
        why = f"unramified twist with trace alpha + beta = {r.alpha + r.beta} != 0"
    else:
        why = f"omega-exponent t = {r.t} != 0"
    return Regularity(False, None, f"regular: {why}")


def twist(r: LocalRep, gamma: FFElement | int, j: int) -> LocalRep:
    """``r (x) nr(gamma) omega^j`` in canonical form."""
    g = r.field(gamma)
    if not g:
        raise ValueError("gamma must be nonzero")
    if isinstance(r, Split):
        return canonicalize(Split(g * r.alpha, g * r.beta, r.t, r.j + j))
    return canonicalize(Induced(r.s, g * r.gamma, r.j + j))


def b_of(r: LocalRep) -> int:
    """The ``b`` in [2, p] with ``det|_I = omega^(b-1)``."""
    p = r.p
    e = (r.s + 2 * r.j) if isinstance(r, Induced) else (r.t + 2 * r.j)
    b = e % (p - 1) + 1
    return b if b >= 2 else b + (p - 1)


# --- small-weight crystalline reductions -------------------------------------


class TraceRequired(ValueError):
    pass


@dataclass(frozen=True)
class ReductionShape:
    """Symbolic reduction of the crystalline representation of weight ``k``.

    ``kind`` is one of ``"Ind2"`` (``ind(omega_2^exponent)``),
    ``"SplitUnramifiedPair"`` (``(nr(a) + nr(1/a)) (x) omega`` with
    ``a + 1/a = trace``) or ``"IndOneTwist"`` (``ind(1) (x) omega^omega_power``).
    """

    kind: str
    k: int
    p: int
    condition: str
    irregular: bool
    exponent: int | None = None
    omega_power: int | None = None
    trace: FFElement | None = None

    def __str__(self):
        if self.kind == "Ind2":
            body = f"ind(w2^{self.exponent})"
        elif self.kind == "IndOneTwist":
            body = f"ind(1) (x) w^{self.omega_power}"
        else:
            body = f"(nr(a) + nr(1/a)) (x) w^{self.omega_power}, a + 1/a = {self.trace}"
        verdict = "irregular" if self.irregular else "regular"
        return f"{body}  [{self.condition}; {verdict}]"

    def to_local_rep(self, fld: FiniteField | None = None) -> LocalRep:
        """A concrete :data:`LocalRep`; the split pair needs a root of ``x^2 - trace x + 1``."""
        if self.kind == "SplitUnramifiedPair":
            f = self.trace.field
            roots = f.roots([f.one, -self.trace, f.one])
            if not roots:
                raise ValueError(f"x^2 - ({self.trace})x + 1 has no root in {f!r}; use an extension")
            a = roots[0]
            return canonicalize(Split(a, a.inverse(), 0, self.omega_power))
        f = fld or make_field(self.p)
        if self.kind == "Ind2":
            return canonicalize(Induced(self.exponent, f.one, 0))
        return canonicalize(Induced(0, f.one, self.omega_power))


def reduce_crystalline_small_weight(
    k: int, slope: Fraction | int | str, p: int, trace_over_p: FFElement | None = None
) -> ReductionShape:
    """Reduction mod p of the crystalline representation with Hodge-Tate
    weights {0, k-1} and ``v_p(a_p) = slope``, for ``2 <= k <= p + 2``.

    ``trace_over_p`` is the reduction of ``a_p / p``; it is consulted only for
    ``k = p + 2`` and slope 1, where it must be nonzero.
    """
    slope = Fraction(slope)
    if slope <= 0:
        raise ValueError("slope must be positive")
    if not 2 <= k <= p + 2:
        raise ValueError(f"k = {k} outside [2, p+2] = [2, {p + 2}]")
    if k <= p + 1:
        return ReductionShape("Ind2", k, p, "2 <= k <= p+1", True, exponent=k - 1)
    if slope < 1:
        return ReductionShape("Ind2", k, p, "k = p+2, 0 < v_p(a_p) < 1", True, exponent=2)
    if slope > 1:
        return ReductionShape("IndOneTwist", k, p, "k = p+2, v_p(a_p) > 1", True, omega_power=1)
    if trace_over_p is None or not trace_over_p:
        raise TraceRequired("trace required, nonzero: k = p+2 with v_p(a_p) = 1 needs a_p/p mod p")
    if trace_over_p.field.p != p:
        raise ValueError("trace_over_p lives in a field of the wrong characteristic")
    # nr(a) + nr(1/a) is irregular iff a + 1/a = 0, excluded just above
    return ReductionShape(
        "SplitUnramifiedPair", k, p, "k = p+2, v_p(a_p) = 1", False,
        omega_power=1, trace=trace_over_p,
    )


# --- descriptors --------------------------------------------------------------


def _field_from_tokens(kv: dict[str, str], p: int) -> FiniteField:
    if "modulus" in kv:
        return make_field(p, tuple(parse_poly(kv["modulus"], p)))
    return make_field(p, None, int(kv.get("m", "1")))


def parse_rep(text: str) -> LocalRep:
    tokens = text.split()
    if len(tokens) < 2 or tokens[0] != DESCRIPTOR_VERSION:
        raise ValueError(f"descriptor must start with {DESCRIPTOR_VERSION!r}: {text!r}")
    kind = tokens[1]
    kv: dict[str, str] = {}
    for tok in tokens[2:]:
        key, sep, value = tok.partition("=")
        if not sep or not value:
            raise ValueError(f"bad token {tok!r}; expected key=value")
        if key in kv:
            raise ValueError(f"duplicate key {key!r}")
        kv[key] = value
    allowed = {
        "split": {"p", "m", "modulus", "alpha", "beta", "t", "j"},
        "induced": {"p", "m", "modulus", "s", "gamma", "j"},
    }
    if kind not in allowed:
        raise ValueError(f"unknown kind {kind!r}; expected split or induced")
    extra = set(kv) - allowed[kind]
    if extra:
        raise ValueError(f"unexpected keys for {kind}: {sorted(extra)}")
    if "p" not in kv:
        raise ValueError("missing p")
    p = int(kv["p"])
    f = _field_from_tokens(kv, p)
    if "m" in kv and int(kv["m"]) != f.m:
        raise ValueError(f"m = {kv['m']} disagrees with modulus degree {f.m}")
    if kind == "split":
        missing = {"alpha", "beta", "t"} - set(kv)
        if missing:
            raise ValueError(f"split descriptor missing {sorted(missing)}")
        return canonicalize(Split(f(kv["alpha"]), f(kv["beta"]), int(kv["t"]), int(kv.get("j", "0"))))
    if "s" not in kv:
        raise ValueError("induced descriptor missing s")
    return canonicalize(Induced(int(kv["s"]), f(kv.get("gamma", "1")), int(kv.get("j", "0"))))


def format_rep(r: LocalRep) -> str:
    f = r.field
    head = f"{DESCRIPTOR_VERSION} {'split' if isinstance(r, Split) else 'induced'} p={f.p}"
    if f.m > 1:
        head += f" m={f.m} modulus={format_poly(f.modulus)}"
    if isinstance(r, Split):
        return f"{head} alpha={r.alpha} beta={r.beta} t={r.t} j={r.j}"
    return f"{head} s={r.s} gamma={r.gamma} j={r.j}"
