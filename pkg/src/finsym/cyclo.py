"""Exact arithmetic in cyclotomic fields Q_n.

Elements are kept in the power basis 1, w, ..., w^(phi(n)-1) of
Q[r]/(Phi_n(r)), with arbitrary-precision rational coordinates.  All field
operations are exact; floating point enters only through `to_complex` (display)
and `recognize` (numeric-to-exact guessing, whose output callers must verify
exactly before trusting).
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DivisionByZero, NotCoprime, NotFound

__all__ = [
    "CyclotomicPoly",
    "Cyclotomic",
    "cyclotomic_polynomial",
    "euler_phi",
    "reduce_coords",
    "omega",
    "rational",
    "recognize",
]


def euler_phi(n: int) -> int:
    count = 0
    for k in range(1, n + 1):
        if math.gcd(k, n) == 1:
            count += 1
    return count


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Division of integer polynomials with monic divisor (ascending coeffs)."""
    num = num[:]
    dd = len(den) - 1
    assert den[-1] == 1
    quot = [0] * max(1, len(num) - dd)
    while len(num) - 1 >= dd and any(num):
        while num and num[-1] == 0:
            num.pop()
        if len(num) - 1 < dd:
            break
        shift = len(num) - 1 - dd
        c = num[-1]
        quot[shift] = c
        for i, dc in enumerate(den):
            num[shift + i] -= c * dc
    while num and num[-1] == 0:
        num.pop()
    return quot, num


@dataclass(frozen=True)
class CyclotomicPoly:
    """The n-th cyclotomic polynomial Phi_n, ascending integer coefficients."""

    conductor: int
    coefficients: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coefficients):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                mag = "" if abs(c) == 1 else str(abs(c)) + "*"
                sign = "-" if c < 0 else ("+" if terms else "")
                var = "r" if k == 1 else f"r^{k}"
                terms.append(f"{sign} {mag}{var}".strip())
        return " ".join(terms) if terms else "0"


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> CyclotomicPoly:
    """Phi_n by recursive exact division of r^n - 1 by Phi_d, d | n, d < n."""
    if n < 1:
        raise ValueError("conductor must be positive")
    if n == 1:
        return CyclotomicPoly(1, (-1, 1))
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    for d in range(1, n):
        if n % d == 0:
            quot, rem = _poly_divmod_int(num, list(cyclotomic_polynomial(d).coefficients))
            assert not rem, f"Phi_{d} does not divide r^{n}-1 exactly"
            num = quot
    assert len(num) - 1 == euler_phi(n)
    assert num[-1] == 1
    return CyclotomicPoly(n, tuple(num))


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Coordinates of w^j mod Phi_n for j = 0 .. max(n, 2*phi(n)) - 1."""
    phi = cyclotomic_polynomial(n)
    d = phi.degree
    top = max(n, 2 * d)
    rows = []
    cur = [0] * d
    if d > 0:
        cur[0] = 1
    for _ in range(top):
        rows.append(tuple(cur))
        # multiply by w
        carry = cur[-1]
        cur = [0] + cur[:-1]
        if carry:
            for i in range(d):
                cur[i] -= carry * phi.coefficients[i]
    return tuple(rows)


def reduce_coords(raw, n: int) -> "Cyclotomic":
    """Canonical element of Q_n from rational coefficients of 1, w, w^2, ...

    Exponents beyond n-1 fold via w^n = 1; the result is reduced mod Phi_n.
    Idempotent on already-canonical coordinate vectors.
    """
    d = cyclotomic_polynomial(n).degree
    table = _power_table(n)
    out = [Fraction(0)] * d
    for k, c in enumerate(raw):
        if c == 0:
            continue
        c = Fraction(c)
        row = table[k % n]
        for i, t in enumerate(row):
            if t:
                out[i] += c * t
    return Cyclotomic(n, tuple(out))


class Cyclotomic:
    """Element of the cyclotomic field Q_n in the power basis.

    Immutable.  Mixed-conductor arithmetic lifts both operands to the lcm
    conductor first (Q_a and Q_b are both subfields of Q_lcm(a,b)).
    """

    __slots__ = ("n", "coords")

    def __init__(self, n: int, coords: tuple[Fraction, ...]):
        d = cyclotomic_polynomial(n).degree
        if len(coords) != d:
            raise ValueError(f"need {d} coordinates for conductor {n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, *a):
        raise AttributeError("Cyclotomic is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(n: int = 1) -> "Cyclotomic":
        return reduce_coords([], n)

    @staticmethod
    def one(n: int = 1) -> "Cyclotomic":
        return reduce_coords([1], n)

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coords[0] if self.coords else Fraction(0)

    # -- conductor handling -------------------------------------------------

    def lift(self, m: int) -> "Cyclotomic":
        """The same number as an element of Q_m, for n | m."""
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError(f"{m} is not a multiple of conductor {self.n}")
        step = m // self.n
        raw = [Fraction(0)] * (len(self.coords) * step + 1)
        for j, c in enumerate(self.coords):
            raw[j * step] = c
        return reduce_coords(raw, m)

    @staticmethod
    def _aligned(x: "Cyclotomic", y) -> tuple["Cyclotomic", "Cyclotomic"]:
        if not isinstance(y, Cyclotomic):
            y = rational(y)
        if x.n == y.n:
            return x, y
        m = x.n * y.n // math.gcd(x.n, y.n)
        return x.lift(m), y.lift(m)

    # -- ring/field operations ----------------------------------------------

    def __add__(self, other) -> "Cyclotomic":
        a, b = Cyclotomic._aligned(self, other)
        return Cyclotomic(a.n, tuple(x + y for x, y in zip(a.coords, b.coords)))

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self.n, tuple(-c for c in self.coords))

    def __sub__(self, other) -> "Cyclotomic":
        a, b = Cyclotomic._aligned(self, other)
        return Cyclotomic(a.n, tuple(x - y for x, y in zip(a.coords, b.coords)))

    def __rsub__(self, other) -> "Cyclotomic":
        return (-self) + other

    def __mul__(self, other) -> "Cyclotomic":
        a, b = Cyclotomic._aligned(self, other)
        d = len(a.coords)
        if d == 0:
            return a
        if b.is_rational():
            q = b.coords[0]
            return Cyclotomic(a.n, tuple(c * q for c in a.coords))
        if a.is_rational():
            q = a.coords[0]
            return Cyclotomic(a.n, tuple(c * q for c in b.coords))
        conv = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a.coords):
            if x == 0:
                continue
            for j, y in enumerate(b.coords):
                if y:
                    conv[i + j] += x * y
        table = _power_table(a.n)
        out = list(conv[:d])
        for k in range(d, 2 * d - 1):
            c = conv[k]
            if c:
                row = table[k]
                for i, t in enumerate(row):
                    if t:
                        out[i] += c * t
        return Cyclotomic(a.n, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        """Field inverse via extended Euclid in Q[r] mod Phi_n."""
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if self.is_rational():
            return Cyclotomic(self.n, (1 / self.coords[0],) + self.coords[1:])
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.n).coefficients]
        r0, r1 = phi, list(self.coords)
        s0, s1 = [Fraction(0)], [Fraction(1)]

        def trim(p):
            while p and p[-1] == 0:
                p.pop()
            return p

        r1 = trim(r1)
        while True:
            # divide r0 by r1
            q = [Fraction(0)] * max(1, len(r0) - len(r1) + 1)
            rem = r0[:]
            while len(rem) >= len(r1) and any(rem):
                rem = trim(rem)
                if len(rem) < len(r1):
                    break
                shift = len(rem) - len(r1)
                c = rem[-1] / r1[-1]
                q[shift] = c
                for i, dc in enumerate(r1):
                    rem[shift + i] -= c * dc
                rem = trim(rem)
            # s update: s0 - q*s1
            prod = [Fraction(0)] * (len(q) + len(s1) - 1)
            for i, qc in enumerate(q):
                if qc:
                    for j, sc in enumerate(s1):
                        prod[i + j] += qc * sc
            news = [Fraction(0)] * max(len(s0), len(prod))
            for i, c in enumerate(s0):
                news[i] += c
            for i, c in enumerate(prod):
                news[i] -= c
            r0, r1 = r1, trim(rem)
            s0, s1 = s1, trim(news)
            if not r1:
                break
        # r0 is the gcd, a nonzero constant since Phi_n is irreducible
        assert len(r0) == 1 and r0[0] != 0
        inv_coeffs = [c / r0[0] for c in s0]
        return reduce_coords(inv_coeffs, self.n)

    def __truediv__(self, other) -> "Cyclotomic":
        a, b = Cyclotomic._aligned(self, other)
        if b.is_zero():
            raise DivisionByZero("division by zero")
        if b.is_rational():
            q = b.coords[0]
            return Cyclotomic(a.n, tuple(c / q for c in a.coords))
        return a * b.inverse()

    def __rtruediv__(self, other) -> "Cyclotomic":
        return rational(other, self.n) / self

    def __pow__(self, k: int) -> "Cyclotomic":
        if k < 0:
            return self.inverse() ** (-k)
        acc = Cyclotomic.one(self.n)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = rational(other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = Cyclotomic._aligned(self, other)
        return a.coords == b.coords

    __hash__ = None  # cross-conductor equality makes hashing a trap

    # -- Galois action -------------------------------------------------------

    def galois(self, k: int) -> "Cyclotomic":
        """Image under the automorphism w -> w^k, gcd(k, n) = 1."""
        if math.gcd(k, self.n) != 1:
            raise NotCoprime(f"gcd({k}, {self.n}) != 1")
        raw = [Fraction(0)] * self.n
        for j, c in enumerate(self.coords):
            if c:
                raw[(j * k) % self.n] += c
        return reduce_coords(raw, self.n)

    def conjugate(self) -> "Cyclotomic":
        """Complex conjugation, w^m -> w^(n-m)."""
        if self.n <= 2:
            return self
        return self.galois(self.n - 1)

    # -- embeddings -----------------------------------------------------------

    def to_complex(self) -> complex:
        """Float evaluation at w = exp(2*pi*i/n).  Display only."""
        w = cmath.exp(2j * cmath.pi / self.n)
        acc = 0j
        for c in reversed(self.coords):
            acc = acc * w + complex(c)
        return acc

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "coords": [[str(c.numerator), str(c.denominator)] for c in self.coords],
        }

    @staticmethod
    def from_json(obj: dict) -> "Cyclotomic":
        coords = tuple(Fraction(int(p), int(q)) for p, q in obj["coords"])
        return Cyclotomic(int(obj["n"]), coords)

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coords):
            if c == 0:
                continue
            mag = str(abs(c))
            if k == 0:
                body = mag
            else:
                var = "w" if k == 1 else f"w^{k}"
                body = var if abs(c) == 1 else f"{mag}*{var}"
            sign = "-" if c < 0 else ("+" if terms else "")
            terms.append(f"{sign} {body}".strip())
        body = " ".join(terms) if terms else "0"
        return f"{body} (n={self.n})"

    __repr__ = __str__


def omega(n: int, k: int = 1) -> Cyclotomic:
    """The root of unity w_n^k."""
    raw = [Fraction(0)] * (k % n + 1)
    raw[k % n] = Fraction(1)
    return reduce_coords(raw, n)


def rational(q, n: int = 1) -> Cyclotomic:
    """A rational number embedded in Q_n."""
    return reduce_coords([Fraction(q)], n)


# ---------------------------------------------------------------------------
# numeric recognition


def _divisor_ladder(n: int) -> list[int]:
    divs = [d for d in range(1, n + 1) if n % d == 0]
    divs.sort(key=lambda d: (euler_phi(d), d))
    return divs


def recognize(
    value: complex,
    conductor: int,
    denominator: int = 1,
    height: int = 16,
    tol: float = 1e-6,
    budget: int = 3_000_000,
) -> Cyclotomic:
    """Guess z in Q_n with denominator*z in Z[w_n] close to a float value.

    Tries subfields Q_d, d | n, in order of increasing degree, searching
    integer coordinate vectors bounded by `height` (meet-in-the-middle, so
    degree-8 subfields are still feasible).  Raises NotFound when every
    subfield within budget is exhausted, which usually signals a wrong
    conductor guess.  Callers must verify any returned value exactly; this
    function alone is only a Las Vegas proposal step.
    """
    target = complex(value) * denominator
    for d in _divisor_ladder(conductor):
        z = _recognize_in(target, d, height, tol, budget)
        if z is not None:
            z = z.lift(conductor) / denominator
            if abs(z.to_complex() - complex(value)) < tol:
                return z
    raise NotFound(
        f"no element of (1/{denominator})Z[w_{conductor}] of height <= {height} "
        f"within {tol} of {value}"
    )


def _recognize_in(target: complex, d: int, height: int, tol: float, budget: int):
    phi = cyclotomic_polynomial(d).degree
    span = 2 * height + 1
    if phi == 1:
        c = round(target.real)
        if abs(c) <= height and abs(target - c) < tol:
            return rational(c, d)
        return None
    half = phi // 2
    if span**max(half, phi - half) > budget:
        return None
    w = cmath.exp(2j * cmath.pi / d)
    basis = [w**j for j in range(phi)]
    lo, hi = basis[:half], basis[half:]
    rng = range(-height, height + 1)

    grid = tol

    def key(z: complex) -> tuple[int, int]:
        return (round(z.real / grid), round(z.imag / grid))

    table: dict[tuple[int, int], list[tuple[complex, tuple[int, ...]]]] = {}
    for cs in itertools.product(rng, repeat=phi - half):
        s = sum(c * b for c, b in zip(cs, hi))
        table.setdefault(key(s), []).append((s, cs))
    for cs in itertools.product(rng, repeat=half):
        s = sum(c * b for c, b in zip(cs, lo))
        need = target - s
        k0 = key(need)
        for dk in itertools.product((-1, 0, 1), repeat=2):
            bucket = table.get((k0[0] + dk[0], k0[1] + dk[1]))
            if not bucket:
                continue
            for s2, cs2 in bucket:
                if abs(s + s2 - target) < tol:
                    coords = [Fraction(c) for c in cs + cs2]
                    return Cyclotomic(d, tuple(coords))
    return None
