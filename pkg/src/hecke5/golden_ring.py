"""Exact arithmetic in Z[L], L = golden ratio, the ring of integers of Q(sqrt 5).

Elements are stored as integer pairs (a, b) meaning a + b*L with L^2 = L + 1.
Everything here is pure integer arithmetic; no floating point is used anywhere,
including the real-embedding comparisons needed by the matrix reduction code.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd as int_gcd, isqrt


@dataclass(frozen=True)
class GoldenInt:
    """a + b*L with arbitrary-precision integer coordinates."""

    a: int
    b: int

    def __add__(self, other: "GoldenInt | int") -> "GoldenInt":
        other = _coerce(other)
        return GoldenInt(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other: "GoldenInt | int") -> "GoldenInt":
        other = _coerce(other)
        return GoldenInt(self.a - other.a, self.b - other.b)

    def __rsub__(self, other: "GoldenInt | int") -> "GoldenInt":
        return _coerce(other) - self

    def __neg__(self) -> "GoldenInt":
        return GoldenInt(-self.a, -self.b)

    def __mul__(self, other: "GoldenInt | int") -> "GoldenInt":
        other = _coerce(other)
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        bb = b1 * b2
        return GoldenInt(a1 * a2 + bb, a1 * b2 + a2 * b1 + bb)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def conj(self) -> "GoldenInt":
        """Galois conjugate, L -> 1 - L."""
        return GoldenInt(self.a + self.b, -self.b)

    def norm(self) -> int:
        """Signed norm a^2 + a*b - b^2 (= self * self.conj())."""
        return self.a * self.a + self.a * self.b - self.b * self.b

    def is_unit(self) -> bool:
        return abs(self.norm()) == 1

    def inverse(self) -> "GoldenInt":
        """Inverse of a unit."""
        n = self.norm()
        if abs(n) != 1:
            raise ValueError(f"{self} is not a unit")
        c = self.conj()
        return c if n == 1 else -c

    def divide_exact(self, d: "GoldenInt | int") -> "GoldenInt":
        """Exact quotient self / d, raising ValueError if d does not divide."""
        d = _coerce(d)
        n = d.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Z[L]")
        z = self * d.conj()
        if z.a % n or z.b % n:
            raise ValueError(f"{d} does not divide {self}")
        return GoldenInt(z.a // n, z.b // n)

    def divisible_by(self, d: "GoldenInt | int") -> bool:
        d = _coerce(d)
        n = d.norm()
        if n == 0:
            return not self
        z = self * d.conj()
        return z.a % n == 0 and z.b % n == 0

    def __str__(self) -> str:
        a, b = self.a, self.b
        if b == 0:
            return str(a)
        if b == 1:
            lam = "L"
        elif b == -1:
            lam = "-L"
        else:
            lam = f"{b}*L"
        if a == 0:
            return lam
        return f"{a}+{lam}" if not lam.startswith("-") else f"{a}{lam}"


def _coerce(x) -> GoldenInt:
    if isinstance(x, GoldenInt):
        return x
    if isinstance(x, int):
        return GoldenInt(x, 0)
    raise TypeError(f"cannot coerce {x!r} to GoldenInt")


ZERO = GoldenInt(0, 0)
ONE = GoldenInt(1, 0)
LAMBDA = GoldenInt(0, 1)

_GOLDEN_RE = re.compile(
    r"""^\s*
    (?:(?P<a>[+-]?\d+)\s*)?                       # integer part
    (?:(?P<sign>[+-])?\s*(?:(?P<b>\d+)\s*\*\s*)?(?P<lam>L))?   # lambda part
    \s*$""",
    re.VERBOSE,
)


def parse_golden(text: str) -> GoldenInt:
    """Parse the `a+b*L` grammar (whitespace insignificant)."""
    m = _GOLDEN_RE.match(text)
    if not m or (m.group("a") is None and m.group("lam") is None):
        raise ValueError(f"malformed ring element: {text!r}")
    a = int(m.group("a")) if m.group("a") is not None else 0
    if m.group("lam") is None:
        return GoldenInt(a, 0)
    if m.group("a") is not None and m.group("sign") is None:
        raise ValueError(f"malformed ring element: {text!r}")
    b = int(m.group("b")) if m.group("b") is not None else 1
    if m.group("sign") == "-":
        b = -b
    return GoldenInt(a, b)


def mul(x: GoldenInt, y: GoldenInt) -> GoldenInt:
    return x * y


def norm(x: GoldenInt) -> int:
    return x.norm()


def power_lambda(n: int) -> GoldenInt:
    """L^n = F(n)*L + F(n-1) with the Fibonacci numbers F (n may be negative)."""
    if n < 0:
        return power_lambda(-n).inverse()
    prev, cur = 1, 0  # F(n-1), F(n) at n = 0
    for _ in range(n):
        prev, cur = cur, prev + cur
    return GoldenInt(prev, cur)


# ---------------------------------------------------------------------------
# Real-embedding comparisons (L -> (1+sqrt5)/2), exact integer arithmetic.


def _quad_sign(A: int, B: int) -> int:
    """Sign of A + B*sqrt(5)."""
    if A >= 0 and B >= 0:
        return 1 if (A or B) else 0
    if A <= 0 and B <= 0:
        return -1
    # opposite signs: compare A^2 against 5 B^2
    if A > 0:
        return 1 if A * A > 5 * B * B else -1
    return 1 if 5 * B * B > A * A else -1


def emb_sign(x: GoldenInt) -> int:
    """Sign of x under the embedding L -> (1+sqrt5)/2."""
    return _quad_sign(2 * x.a + x.b, x.b)


def emb_abs_less(x: GoldenInt, y: GoldenInt) -> bool:
    """|emb(x)| < |emb(y)|, decided exactly via sign of emb(y^2 - x^2)."""
    return emb_sign(y * y - x * x) > 0


def _floor_quad(A: int, B: int, C: int) -> int:
    """floor((A + B*sqrt5) / C) for integers, C != 0."""
    if C < 0:
        A, B, C = -A, -B, -C
    f = isqrt(5 * B * B) if B >= 0 else -isqrt(5 * B * B) - 1
    q = (A + f) // C
    # f is only a floor of B*sqrt5; fix up by exact sign checks
    while _quad_sign(A - (q + 1) * C, B) >= 0:
        q += 1
    while _quad_sign(A - q * C, B) < 0:
        q -= 1
    return q


def emb_ratio_round(x: GoldenInt, y: GoldenInt) -> int:
    """Nearest integer to emb(x)/emb(y), exact; y nonzero."""
    n = y.norm()
    z = x * y.conj()  # emb(x)/emb(y) = emb(z)/n
    A, B = 2 * z.a + z.b, z.b
    if n < 0:
        A, B, n = -A, -B, -n
    # round(t) = floor(t + 1/2) with t = (A + B sqrt5) / (2n)
    return _floor_quad(A + n, B, 2 * n)


# ---------------------------------------------------------------------------
# Moduli and residue classes.


@dataclass(frozen=True)
class Modulus:
    """A rational integer n or an ideal (g), with the HNF lattice basis.

    The reduction lattice is {x*g : x in Z[L]} in (a, b) coordinates, with
    basis vectors (d1, 0) and (c, d2), 0 <= c < d1.  Rational(n) and
    Ideal(n) produce identical residue rings.
    """

    kind: str  # "rational" | "ideal"
    generator: GoldenInt
    d1: int
    c: int
    d2: int

    @staticmethod
    def rational(n: int) -> "Modulus":
        if n <= 0:
            raise ValueError("rational modulus must be positive")
        return Modulus("rational", GoldenInt(n, 0), n, 0, n)

    @staticmethod
    def ideal(g: GoldenInt) -> "Modulus":
        if not g:
            raise ValueError("ideal modulus must be nonzero")
        d1, c, d2 = _ideal_hnf(g)
        return Modulus("ideal", g, d1, c, d2)

    @property
    def ring_size(self) -> int:
        return self.d1 * self.d2

    def reduce_pair(self, a: int, b: int) -> tuple[int, int]:
        d1, c, d2 = self.d1, self.c, self.d2
        j, b = divmod(b, d2)
        return (a - j * c) % d1, b

    def reduce(self, x: GoldenInt) -> "ResidueClass":
        a, b = self.reduce_pair(x.a, x.b)
        return ResidueClass(self, a, b)

    def contains(self, x: GoldenInt) -> bool:
        return self.reduce_pair(x.a, x.b) == (0, 0)

    def divides(self, other: "Modulus") -> bool:
        """True iff (other.generator) is contained in (self.generator)."""
        return self.contains(other.generator)

    def residues(self):
        """All canonical residue pairs, ring_size of them."""
        for a in range(self.d1):
            for b in range(self.d2):
                yield (a, b)

    def __str__(self) -> str:
        if self.kind == "rational":
            return str(self.generator.a)
        return f"({self.generator})"


def _ideal_hnf(g: GoldenInt) -> tuple[int, int, int]:
    # lattice rows: g = (a, b) and L*g = (b, a+b)
    v1 = (g.a, g.b)
    v2 = (g.b, g.a + g.b)
    d2, s, t = _xgcd(v1[1], v2[1])  # d2 > 0: v1[1] = b and v2[1] = a+b cannot both vanish
    w = (s * v1[0] + t * v2[0], d2)
    r1 = v1[0] - (v1[1] // d2) * w[0]
    r2 = v2[0] - (v2[1] // d2) * w[0]
    d1 = int_gcd(abs(r1), abs(r2))
    c = w[0] % d1
    return d1, c, d2


def _xgcd(x: int, y: int) -> tuple[int, int, int]:
    """g, s, t with s*x + t*y = g = gcd(x, y) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while y:
        q, r = divmod(x, y)
        x, y = y, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if x < 0:
        x, s0, t0 = -x, -s0, -t0
    return x, s0, t0


@dataclass(frozen=True)
class ResidueClass:
    modulus: Modulus
    a: int
    b: int

    def lift(self) -> GoldenInt:
        return GoldenInt(self.a, self.b)

    def _wrap(self, x: GoldenInt) -> "ResidueClass":
        a, b = self.modulus.reduce_pair(x.a, x.b)
        return ResidueClass(self.modulus, a, b)

    def __add__(self, other: "ResidueClass") -> "ResidueClass":
        return self._wrap(self.lift() + other.lift())

    def __mul__(self, other: "ResidueClass") -> "ResidueClass":
        return self._wrap(self.lift() * other.lift())

    def __str__(self) -> str:
        return f"{self.lift()} mod {self.modulus}"


def reduce(x: GoldenInt, m: Modulus) -> ResidueClass:
    return m.reduce(x)


def rational_integer_below(m: Modulus) -> int:
    """Smallest positive rational integer in the ideal."""
    return m.d1


# ---------------------------------------------------------------------------
# Prime classification and gcd.

RAMIFIED_PRIME = GoldenInt(2, 1)  # 2 + L, the prime above 5


@dataclass(frozen=True)
class PrimeClassification:
    kind: str  # "ramified" | "inert" | "split"
    factors: tuple[GoldenInt, ...]


def classify_rational_prime(p: int) -> PrimeClassification:
    if p < 2 or any(p % q == 0 for q in range(2, isqrt(p) + 1)):
        raise ValueError(f"{p} is not prime")
    if p == 5:
        return PrimeClassification("ramified", (RAMIFIED_PRIME,))
    if p % 10 in (1, 9):
        f = _split_factor(p)
        return PrimeClassification("split", (f, canonical_associate(f.conj())))
    return PrimeClassification("inert", (GoldenInt(p, 0),))


def _split_factor(p: int) -> GoldenInt:
    for b in range(p + 1):
        for a in range(-p, p + 1):
            if abs(a * a + a * b - b * b) == p:
                return canonical_associate(GoldenInt(a, b))
    raise RuntimeError(f"no factor of split prime {p} found")  # unreachable


def canonical_associate(x: GoldenInt) -> GoldenInt:
    """Deterministic representative of the associate class of x.

    Scales by +-L^k to minimise |a| + |b|; ties broken by preferring a > 0,
    then b > 0.
    """
    if not x:
        return x
    lam_inv = GoldenInt(-1, 1)  # L^-1 = L - 1

    def weight(y: GoldenInt) -> int:
        return abs(y.a) + abs(y.b)

    best = x
    for step in (LAMBDA, lam_inv):
        cur = best
        stale = 0
        while stale < 3:
            cur = cur * step
            if weight(cur) < weight(best):
                best, stale = cur, 0
            else:
                stale += 1
    candidates = [best, -best]
    # L-neighbours can tie on weight; include them for deterministic choice
    for step in (LAMBDA, lam_inv):
        y = best * step
        if weight(y) == weight(best):
            candidates += [y, -y]
    ties = [y for y in candidates if weight(y) == weight(best)]
    return min(ties, key=lambda y: (-(y.a > 0), -(y.b > 0), y.a, y.b))


def is_associate(x: GoldenInt, y: GoldenInt) -> bool:
    if not x or not y:
        return not x and not y
    return x.divisible_by(y) and y.divisible_by(x)


def gcd(x: GoldenInt, y: GoldenInt) -> GoldenInt:
    """Generator of the ideal (x, y), canonicalised; Euclidean descent."""
    if not x and not y:
        raise ValueError("gcd(0, 0) is undefined")
    while y:
        x, y = y, _euclid_remainder(x, y)
    return canonical_associate(x)


def _euclid_remainder(x: GoldenInt, y: GoldenInt) -> GoldenInt:
    n = y.norm()
    z = x * y.conj()  # exact field quotient is z / n
    fa, fb = _floor_div(z.a, n), _floor_div(z.b, n)
    qa, qb = _round_div(z.a, n), _round_div(z.b, n)
    # floor/ceil combinations first, then the 3x3 grid around the rounding
    grids = (
        [(fa + da, fb + db) for da in (0, 1) for db in (0, 1)],
        [(qa + da, qb + db) for da in (-1, 0, 1) for db in (-1, 0, 1)],
    )
    for grid in grids:
        best = min((x - GoldenInt(*q) * y for q in grid),
                   key=lambda r: abs(r.norm()))
        if abs(best.norm()) < abs(n):
            return best
    raise ArithmeticError(f"euclidean step failed for {x}, {y}")  # unreachable


def _floor_div(a: int, n: int) -> int:
    if n < 0:
        a, n = -a, -n
    return a // n


def _round_div(a: int, n: int) -> int:
    if n < 0:
        a, n = -a, -n
    return (2 * a + n) // (2 * n)
