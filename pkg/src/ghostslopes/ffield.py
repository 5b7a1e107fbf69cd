"""Small finite fields F_{p^m} = F_p[x]/(f), m <= 4.

Elements are encoded as integers ``a_0 + a_1 p + ... + a_{m-1} p^{m-1}``
(the coefficient vector of ``a_0 + a_1 x + ...``).  Multiplication goes
through discrete log tables built once per field.
"""

from __future__ import annotations

import itertools
import re
from functools import cached_property, lru_cache

MAX_DEGREE = 4


def _poly_rem(a: list[int], g: list[int], p: int) -> list[int]:
    """Remainder of ``a`` by ``g`` over F_p; coefficient lists low degree first."""
    a = [c % p for c in a]
    dg = len(g) - 1
    if len(a) <= dg:
        return a
    inv = pow(g[-1], -1, p)
    for top in range(len(a) - 1, dg - 1, -1):
        q = a[top] * inv % p
        if q:
            for i, c in enumerate(g):
                a[top - dg + i] = (a[top - dg + i] - q * c) % p
    return a[:dg]


def _is_irreducible(f: list[int], p: int) -> bool:
    """Exhaustive check: no monic factor of degree <= deg(f) / 2."""
    m = len(f) - 1
    for deg in range(1, m // 2 + 1):
        for lower in itertools.product(range(p), repeat=deg):
            if not any(_poly_rem(f, list(lower) + [1], p)):
                return False
    return True


def first_irreducible(p: int, m: int) -> tuple[int, ...]:
    """The first monic irreducible of degree ``m`` in lexicographic order of coefficients."""
    for lower in itertools.product(range(p), repeat=m):
        f = list(lower) + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("unreachable")


class FiniteField:
    """F_p[x]/(modulus) with ``modulus`` monic, given low degree first."""

    def __init__(self, p: int, modulus: tuple[int, ...] | list[int] | None = None):
        from .padic import is_prime

        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if modulus is None:
            modulus = (0, 1)
        f = [c % p for c in modulus]
        while len(f) > 1 and f[-1] == 0:
            f.pop()
        m = len(f) - 1
        if m < 1 or m > MAX_DEGREE:
            raise ValueError(f"modulus degree must be in 1..{MAX_DEGREE}, got {m}")
        if f[-1] != 1:
            raise ValueError("modulus must be monic")
        if not _is_irreducible(f, p):
            raise ValueError(f"modulus {format_poly(f)} is reducible over F_{p}")
        self.p = p
        self.m = m
        self.modulus = tuple(f)
        self.order = p**m

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}, modulus={format_poly(self.modulus)})"

    # integer <-> coefficient list
    def _coeffs(self, n: int) -> list[int]:
        out = []
        for _ in range(self.m):
            n, r = divmod(n, self.p)
            out.append(r)
        return out

    def _encode(self, coeffs: list[int]) -> int:
        n = 0
        for c in reversed(coeffs):
            n = n * self.p + c % self.p
        return n

    @cached_property
    def _tables(self) -> tuple[list[int], dict[int, int]]:
        q1 = self.order - 1
        for g in range(1, self.order):
            exp = [1]
            x = [1] + [0] * (self.m - 1)
            gc = self._coeffs(g)
            for _ in range(q1 - 1):
                prod = [0] * (2 * self.m - 1)
                for i, a in enumerate(x):
                    if a:
                        for j, b in enumerate(gc):
                            prod[i + j] += a * b
                x = _poly_rem(prod, list(self.modulus), self.p)
                x += [0] * (self.m - len(x))
                e = self._encode(x)
                if e == 1:
                    break
                exp.append(e)
            if len(exp) == q1:
                log = {e: i for i, e in enumerate(exp)}
                return exp, log
        raise AssertionError("no primitive element found")

    def __call__(self, value) -> "FFElement":
        if isinstance(value, FFElement):
            if value.field != self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FFElement(self, value % self.p)
        if isinstance(value, (list, tuple)):
            coeffs = list(value)
            if len(coeffs) > self.m:
                coeffs = _poly_rem(coeffs, list(self.modulus), self.p)
            return FFElement(self, self._encode(coeffs + [0] * (self.m - len(coeffs))))
        if isinstance(value, str):
            return self(parse_poly(value, self.p))
        raise TypeError(f"cannot make a field element from {value!r}")

    def from_code(self, code: int) -> "FFElement":
        return FFElement(self, code)

    def elements(self):
        return [FFElement(self, n) for n in range(self.order)]

    def units(self):
        return [FFElement(self, n) for n in range(1, self.order)]

    @property
    def zero(self) -> "FFElement":
        return FFElement(self, 0)

    @property
    def one(self) -> "FFElement":
        return FFElement(self, 1)

    def sqrt(self, a: "FFElement") -> "FFElement | None":
        """Some square root of ``a`` in this field, or None."""
        if a.code == 0:
            return self.zero
        exp, log = self._tables
        e = log[a.code]
        if e % 2:
            return None
        return FFElement(self, exp[e // 2])

    def roots(self, coeffs: list["FFElement"]) -> list["FFElement"]:
        """Roots of ``sum coeffs[i] x^i`` in this field, by exhaustion."""
        out = []
        for x in self.elements():
            acc = self.zero
            for c in reversed(coeffs):
                acc = acc * x + c
            if acc.code == 0:
                out.append(x)
        return out


class FFElement:
    __slots__ = ("field", "code")

    def __init__(self, field: FiniteField, code: int):
        self.field = field
        self.code = code

    def _other(self, other) -> int:
        if isinstance(other, FFElement):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("elements of different fields")
            return other.code
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def _add_codes(self, a: int, b: int, sign: int = 1) -> int:
        f = self.field
        if f.m == 1:
            return (a + sign * b) % f.p
        p = f.p
        out, place = 0, 1
        for _ in range(f.m):
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += ((ra + sign * rb) % p) * place
            place *= p
        return out

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FFElement(self.field, self._add_codes(self.code, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FFElement(self.field, self._add_codes(self.code, o, -1))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return FFElement(self.field, self._add_codes(0, self.code, -1))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if self.code == 0 or o == 0:
            return FFElement(self.field, 0)
        f = self.field
        if f.m == 1:
            return FFElement(f, self.code * o % f.p)
        exp, log = f._tables
        return FFElement(f, exp[(log[self.code] + log[o]) % (f.order - 1)])

    __rmul__ = __mul__

    def inverse(self) -> "FFElement":
        if self.code == 0:
            raise ZeroDivisionError("0 has no inverse")
        f = self.field
        if f.m == 1:
            return FFElement(f, pow(self.code, -1, f.p))
        exp, log = f._tables
        return FFElement(f, exp[(-log[self.code]) % (f.order - 1)])

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * FFElement(self.field, o).inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return self.code != 0

    def __eq__(self, other):
        if isinstance(other, FFElement):
            return self.field == other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.modulus, self.code))

    def coeffs(self) -> list[int]:
        return self.field._coeffs(self.code)

    def __str__(self):
        return format_poly(self.coeffs())

    def __repr__(self):
        return f"FFElement({self}, {self.field!r})"


def format_poly(coeffs) -> str:
    terms = []
    for i, c in reversed(list(enumerate(coeffs))):
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            mono = "x" if i == 1 else f"x^{i}"
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) if terms else "0"


_TERM = re.compile(r"([+-]?)(\d*)(x(?:\^(\d+))?)?")


def parse_poly(text: str, p: int | None = None) -> list[int]:
    """Parse ``"3x^2+2x-1"`` into ``[-1, 2, 3]`` (reduced mod ``p`` if given)."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise ValueError(f"cannot parse polynomial {text!r} at position {pos}")
        sign = -1 if m.group(1) == "-" else 1
        coef = int(m.group(2)) if m.group(2) else 1
        deg = (int(m.group(4)) if m.group(4) else 1) if m.group(3) else 0
        coeffs[deg] = coeffs.get(deg, 0) + sign * coef
        pos = m.end()
        if pos < len(s) and s[pos] not in "+-":
            raise ValueError(f"cannot parse polynomial {text!r} at position {pos}")
    out = [coeffs.get(i, 0) for i in range(max(coeffs) + 1)]
    if p is not None:
        out = [c % p for c in out]
    return out


@lru_cache(maxsize=None)
def field(p: int, modulus: tuple[int, ...] | None = None, m: int = 1) -> FiniteField:
    """Cached field constructor; ``modulus=None`` with ``m > 1`` picks :func:`first_irreducible`."""
    if modulus is None:
        modulus = (0, 1) if m == 1 else first_irreducible(p, m)
    return FiniteField(p, modulus)
