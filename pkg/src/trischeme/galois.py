"""Arithmetic in GF(p^alpha) over a fixed polynomial basis.

Elements are coefficient vectors ``(c_0, ..., c_{alpha-1})`` of
``c_0 + c_1 x + ...`` modulo the field's modulus.  Internally every element
also has an integer code ``sum(c_i * p**i)`` so that 0 and 1 keep their usual
codes; lookup tables are indexed by code.

The *element order* used for deterministic choices (generators, orbit
representatives, domain orderings) is lexicographic on the coefficient
vector, low-degree coefficient first.  It is *not* the order of the codes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache, total_ordering
from typing import Iterator, Sequence

import numpy as np


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(n: int) -> tuple[int, int]:
    """Return ``(p, alpha)`` with ``n == p**alpha``; raise if ``n`` is not a prime power."""
    fs = prime_factors(n) if n > 1 else []
    if len(fs) != 1:
        raise ValueError(f"{n} is not a prime power")
    p, alpha = fs[0], 0
    while n > 1:
        n //= p
        alpha += 1
    return p, alpha


# ---------------------------------------------------------------------------
# dense polynomials over GF(p), coefficient lists low degree first

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    m = _trim(list(m))
    inv_lead = pow(m[-1], -1, p)
    while len(a) >= len(m):
        coef = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * c) % p
        _trim(a)
    return a


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _is_irreducible(m: Sequence[int], p: int) -> bool:
    deg = len(m) - 1
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_mod(m, list(low) + [1], p):
                return False
    return True


def monic_polynomials(p: int, degree: int) -> Iterator[tuple[int, ...]]:
    """Monic polynomials of the given degree, lexicographic with low degree first."""
    for low in itertools.product(range(p), repeat=degree):
        yield tuple(low) + (1,)


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^alpha) with a fixed monic irreducible ``modulus`` (low degree first)."""

    p: int
    alpha: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.alpha < 1:
            raise ValueError("extension degree must be >= 1")
        if len(self.modulus) != self.alpha + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree alpha")
        if not _is_irreducible(self.modulus, self.p):
            raise ValueError(f"modulus {self.modulus} is reducible over GF({self.p})")

    @property
    def n(self) -> int:
        return self.p**self.alpha

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.alpha})"

    # codes <-> coefficients
    def coeffs(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.alpha):
            code, r = divmod(code, self.p)
            out.append(r)
        return tuple(out)

    def code(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) != self.alpha:
            raise ValueError(f"expected {self.alpha} coefficients")
        out = 0
        for c in reversed(coeffs):
            if not 0 <= c < self.p:
                raise ValueError(f"coefficient {c} out of range")
            out = out * self.p + c
        return out

    def sort_key(self, code: int) -> tuple[int, ...]:
        return self.coeffs(code)

    @cached_property
    def ordered(self) -> tuple[int, ...]:
        """All codes in element order."""
        return tuple(sorted(range(self.n), key=self.sort_key))

    @cached_property
    def rank(self) -> np.ndarray:
        """``rank[code]`` = position of the element in element order."""
        r = np.empty(self.n, dtype=np.int64)
        r[list(self.ordered)] = np.arange(self.n)
        return r

    def _poly_mulmod(self, a: int, b: int) -> int:
        prod = _poly_mul(self.coeffs(a), self.coeffs(b), self.p)
        red = _poly_mod(prod, self.modulus, self.p)
        return self.code(red + [0] * (self.alpha - len(red)))

    def _slow_pow(self, a: int, e: int) -> int:
        out, base = 1, a
        while e:
            if e & 1:
                out = self._poly_mulmod(out, base)
            base = self._poly_mulmod(base, base)
            e >>= 1
        return out

    @cached_property
    def primitive(self) -> int:
        """Least element (in element order) of multiplicative order n-1."""
        m = self.n - 1
        if m == 1:
            return 1
        factors = prime_factors(m)
        for a in self.ordered:
            if a == 0:
                continue
            if all(self._slow_pow(a, m // r) != 1 for r in factors):
                return a
        raise AssertionError("no primitive element; modulus not irreducible?")

    @cached_property
    def _exp_log(self) -> tuple[np.ndarray, np.ndarray]:
        m = self.n - 1
        exp = np.empty(2 * m, dtype=np.int64)
        log = np.full(self.n, -1, dtype=np.int64)
        x = 1
        for i in range(m):
            exp[i] = x
            log[x] = i
            x = self._poly_mulmod(x, self.primitive)
        exp[m:] = exp[:m]
        return exp, log

    @cached_property
    def add_table(self) -> np.ndarray:
        digits = np.array([self.coeffs(c) for c in range(self.n)], dtype=np.int64)
        s = (digits[:, None, :] + digits[None, :, :]) % self.p
        weights = self.p ** np.arange(self.alpha, dtype=np.int64)
        return (s * weights).sum(axis=2)

    @cached_property
    def mul_table(self) -> np.ndarray:
        exp, log = self._exp_log
        m = self.n - 1
        lg = log.copy()
        tab = exp[(lg[:, None] + lg[None, :]) % m] if m else np.ones((1, 1), dtype=np.int64)
        tab = np.array(tab)
        tab[0, :] = 0
        tab[:, 0] = 0
        return tab

    @cached_property
    def neg_table(self) -> np.ndarray:
        digits = np.array([self.coeffs(c) for c in range(self.n)], dtype=np.int64)
        weights = self.p ** np.arange(self.alpha, dtype=np.int64)
        return ((-digits) % self.p * weights).sum(axis=1)

    @cached_property
    def inv_table(self) -> np.ndarray:
        exp, log = self._exp_log
        m = self.n - 1
        inv = np.zeros(self.n, dtype=np.int64)
        for a in range(1, self.n):
            inv[a] = exp[(-log[a]) % m] if m else 1
        return inv

    # code-level arithmetic
    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return int(self.inv_table[a])

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        exp, log = self._exp_log
        return int(exp[(int(log[a]) * e) % (self.n - 1)])

    def pow_table(self, e: int) -> np.ndarray:
        """``x -> x**e`` for every code (``e >= 1``)."""
        if e < 1:
            raise ValueError("pow_table needs a positive exponent")
        return np.array([self.pow(a, e) for a in range(self.n)], dtype=np.int64)

    def frobenius(self, a: int, k: int = 1) -> int:
        return self.pow(a, self.p**k)

    def from_int(self, c: int) -> int:
        """Code of the prime-field element ``c mod p``."""
        return c % self.p

    def element(self, code: int) -> "FieldElem":
        return FieldElem(self, code)

    def elements(self) -> list["FieldElem"]:
        return [FieldElem(self, c) for c in self.ordered]

    def order_of(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        m = self.n - 1
        o = m
        for r in prime_factors(m):
            while o % r == 0 and self.pow(a, o // r) == 1:
                o //= r
        return o


@lru_cache(maxsize=None)
def make_field(p: int, alpha: int = 1) -> FieldSpec:
    """GF(p^alpha) with the lexicographically least monic irreducible modulus."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if alpha < 1:
        raise ValueError("extension degree must be >= 1")
    for m in monic_polynomials(p, alpha):
        if _is_irreducible(m, p):
            return FieldSpec(p, alpha, m)
    raise AssertionError("unreachable: irreducibles exist in every degree")


def field_of_order(n: int) -> FieldSpec:
    return make_field(*prime_power(n))


@total_ordering
@dataclass(frozen=True)
class FieldElem:
    field: FieldSpec
    code: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.code)

    @classmethod
    def from_coeffs(cls, field: FieldSpec, coeffs: Sequence[int]) -> "FieldElem":
        return cls(field, field.code(coeffs))

    def _check(self, other: "FieldElem") -> None:
        if self.field != other.field:
            raise ValueError(f"elements of different fields: {self.field} vs {other.field}")

    def __add__(self, other: "FieldElem") -> "FieldElem":
        return add(self, other)

    def __sub__(self, other: "FieldElem") -> "FieldElem":
        return add(self, neg(other))

    def __mul__(self, other: "FieldElem") -> "FieldElem":
        return mul(self, other)

    def __truediv__(self, other: "FieldElem") -> "FieldElem":
        return mul(self, inv(other))

    def __neg__(self) -> "FieldElem":
        return neg(self)

    def __pow__(self, e: int) -> "FieldElem":
        return power(self, e)

    def __lt__(self, other: "FieldElem") -> bool:
        self._check(other)
        return self.coeffs < other.coeffs

    def is_zero(self) -> bool:
        return self.code == 0

    def __repr__(self) -> str:
        if self.field.alpha == 1:
            return f"{self.code}"
        return "[" + ",".join(map(str, self.coeffs)) + "]"


def add(x: FieldElem, y: FieldElem) -> FieldElem:
    x._check(y)
    return FieldElem(x.field, x.field.add(x.code, y.code))


def mul(x: FieldElem, y: FieldElem) -> FieldElem:
    x._check(y)
    return FieldElem(x.field, x.field.mul(x.code, y.code))


def neg(x: FieldElem) -> FieldElem:
    return FieldElem(x.field, x.field.neg(x.code))


def inv(x: FieldElem) -> FieldElem:
    return FieldElem(x.field, x.field.inv(x.code))


def power(x: FieldElem, e: int) -> FieldElem:
    """Square-and-multiply exponentiation; negative ``e`` needs ``x != 0``."""
    if e < 0:
        return power(inv(x), -e)
    f = x.field
    out, base = 1, x.code
    while e:
        if e & 1:
            out = f.mul(out, base)
        base = f.mul(base, base)
        e >>= 1
    return FieldElem(f, out)


def _subfield_step(field: FieldSpec, q: int) -> int:
    """Return ``r = alpha / frak_a`` where ``q = p**frak_a`` and ``frak_a | alpha``."""
    try:
        p, a = prime_power(q)
    except ValueError:
        raise ValueError(f"{q} is not a prime power") from None
    if p != field.p or field.alpha % a:
        raise ValueError(f"GF({q}) is not a subfield of {field}")
    return field.alpha // a


def galois_orbit(x: FieldElem, q: int) -> frozenset[FieldElem]:
    """``{x^(q^beta) : 1 <= beta <= alpha/frak_a}``, the GF(q)-conjugates of ``x``."""
    r = _subfield_step(x.field, q)
    out = set()
    y = x
    for _ in range(r):
        y = power(y, q)
        out.add(y)
    return frozenset(out)


def degree_over_subfield(x: FieldElem, q: int) -> int:
    return len(galois_orbit(x, q))


def is_quadratic_residue(x: FieldElem) -> bool:
    f = x.field
    if f.p == 2:
        raise ValueError("quadratic residues are only defined here for odd characteristic")
    if x.is_zero():
        raise ValueError("zero is neither a residue nor a nonresidue")
    return power(x, (f.n - 1) // 2).code == 1


def multiplicative_generator(f: FieldSpec) -> FieldElem:
    return FieldElem(f, f.primitive)


def galois_orbit_codes(field: FieldSpec, a: int, q: int) -> list[int]:
    """Code-level orbit ``[a^(q^1), ..., a^(q^r)]`` in exponent order (may repeat)."""
    r = _subfield_step(field, q)
    out = []
    y = a
    for _ in range(r):
        y = field.pow(y, q)
        out.append(y)
    return out
