"""Determinant-1 matrices over Z[L], words in the generators S and T.

S = [[0, 1], [-1, 0]] and T = [[1, L], [0, 1]] generate the homogeneous group;
identifying a matrix with its negative gives the projective group, whose
elements are represented here by sign-canonical `ProjMat` values.

`decompose` solves the word problem by continued-fraction reduction in the
real embedding: repeatedly split off T^k S until the matrix is upper
triangular, and demand strict decrease of |emb(e21)| at every step.  Matrices
for which no candidate quotient makes progress, or whose terminal triangular
form is not +-T^j, are rejected as lying outside the group.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .golden_ring import (
    GoldenInt, LAMBDA, ONE, ZERO,
    emb_abs_less, emb_ratio_round, parse_golden,
)


class NotInG5Error(ValueError):
    """Raised when a determinant-1 matrix is provably not a word in S, T."""


@dataclass(frozen=True)
class GMat:
    e11: GoldenInt
    e12: GoldenInt
    e21: GoldenInt
    e22: GoldenInt

    def __post_init__(self):
        if self.det() != ONE:
            raise ValueError(f"determinant of {self} is not 1")

    def det(self) -> GoldenInt:
        return self.e11 * self.e22 - self.e12 * self.e21

    def __mul__(self, other: "GMat") -> "GMat":
        a, b, c, d = self.e11, self.e12, self.e21, self.e22
        e, f, g, h = other.e11, other.e12, other.e21, other.e22
        return GMat(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def __neg__(self) -> "GMat":
        return GMat(-self.e11, -self.e12, -self.e21, -self.e22)

    def inv(self) -> "GMat":
        return GMat(self.e22, -self.e12, -self.e21, self.e11)

    def trace(self) -> GoldenInt:
        return self.e11 + self.e22

    def entries(self) -> tuple[GoldenInt, GoldenInt, GoldenInt, GoldenInt]:
        return (self.e11, self.e12, self.e21, self.e22)

    def __pow__(self, n: int) -> "GMat":
        if n < 0:
            return self.inv() ** (-n)
        result, base = IDENTITY, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __str__(self) -> str:
        return f"[[{self.e11},{self.e12}],[{self.e21},{self.e22}]]"


IDENTITY = GMat(ONE, ZERO, ZERO, ONE)
S_MAT = GMat(ZERO, ONE, -ONE, ZERO)
T_MAT = GMat(ONE, LAMBDA, ZERO, ONE)


def translation(x: GoldenInt) -> GMat:
    """[[1, x], [0, 1]]; T^k = translation(k*L)."""
    return GMat(ONE, x, ZERO, ONE)


@dataclass(frozen=True)
class ProjMat:
    """A GMat modulo sign, stored with canonical sign.

    Canonical: the first nonzero entry in row-major order has b > 0, or
    b == 0 and a > 0.
    """

    rep: GMat

    @staticmethod
    def of(m: GMat) -> "ProjMat":
        for e in m.entries():
            if e:
                if e.b < 0 or (e.b == 0 and e.a < 0):
                    m = -m
                break
        return ProjMat(m)

    def __mul__(self, other: "ProjMat") -> "ProjMat":
        return ProjMat.of(self.rep * other.rep)

    def inv(self) -> "ProjMat":
        return ProjMat.of(self.rep.inv())

    def __pow__(self, n: int) -> "ProjMat":
        return ProjMat.of(self.rep ** n)

    def is_identity(self) -> bool:
        return self.rep == IDENTITY

    def __str__(self) -> str:
        return str(self.rep)


PROJ_IDENTITY = ProjMat.of(IDENTITY)
PROJ_S = ProjMat.of(S_MAT)
PROJ_T = ProjMat.of(T_MAT)


# ---------------------------------------------------------------------------
# Words.

Letter = tuple[str, int]  # ("S" | "T", nonzero exponent)


@dataclass(frozen=True)
class Word:
    letters: tuple[Letter, ...]

    def __post_init__(self):
        for gen, exp in self.letters:
            if gen not in ("S", "T") or exp == 0:
                raise ValueError(f"bad letter {(gen, exp)}")
        for (g1, _), (g2, _) in zip(self.letters, self.letters[1:]):
            if g1 == g2:
                raise ValueError("word is not freely reduced")

    def __mul__(self, other: "Word") -> "Word":
        return word(list(self.letters) + list(other.letters))

    def inv(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(g if e == 1 else f"{g}^{e}" for g, e in self.letters)


def word(letters) -> Word:
    """Build a freely reduced Word from (gen, exp) pairs."""
    out: list[Letter] = []
    for gen, exp in letters:
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            merged = out[-1][1] + exp
            out.pop()
            if merged:
                out.append((gen, merged))
        else:
            out.append((gen, exp))
    return Word(tuple(out))


EMPTY_WORD = Word(())

_WORD_TOKEN = re.compile(r"([ST])(?:\^(-?\d+))?")


def parse_word(text: str) -> Word:
    pos, letters = 0, []
    for m in _WORD_TOKEN.finditer(text):
        if text[pos:m.start()].strip():
            raise ValueError(f"malformed word: {text!r}")
        letters.append((m.group(1), int(m.group(2) or 1)))
        pos = m.end()
    if text[pos:].strip() not in ("", "1"):
        raise ValueError(f"malformed word: {text!r}")
    return word(letters)


def eval_word_homogeneous(w: Word) -> GMat:
    m = IDENTITY
    for gen, exp in w.letters:
        if gen == "T":
            m = m * translation(GoldenInt(0, exp))
        else:
            m = m * (S_MAT ** (exp % 4))
    return m


def eval_word(w: Word) -> ProjMat:
    return ProjMat.of(eval_word_homogeneous(w))


# ---------------------------------------------------------------------------
# Word problem.

_MAX_REDUCTION_STEPS = 10_000


def decompose(m: GMat | ProjMat) -> Word:
    """Word in S, T evaluating to m projectively; NotInG5Error if impossible."""
    a = m.rep if isinstance(m, ProjMat) else m
    letters: list[Letter] = []
    lam = LAMBDA
    for _ in range(_MAX_REDUCTION_STEPS):
        if not a.e21:
            break
        pivot = lam * a.e21
        k0 = emb_ratio_round(a.e11, pivot)
        best_k, best_r = None, None
        for k in (k0, k0 - 1, k0 + 1):
            r = a.e11 - GoldenInt(0, k) * a.e21
            if best_r is None or emb_abs_less(r, best_r):
                best_k, best_r = k, r
        if not emb_abs_less(best_r, a.e21):
            raise NotInG5Error(
                f"no quotient reduces |e21| at {a} (candidates around {k0})")
        # a <- S^-1 T^-k a ; record T^k S on the word
        a = S_MAT.inv() * translation(GoldenInt(0, -best_k)) * a
        letters += [("T", best_k), ("S", 1)]
    else:
        raise NotInG5Error("reduction did not terminate")
    if a.e11 not in (ONE, -ONE) or a.e11 != a.e22:
        raise NotInG5Error(f"terminal triangular matrix {a} has non-trivial unit")
    sign = 1 if a.e11 == ONE else -1
    top = a.e12
    if top.a != 0:
        raise NotInG5Error(f"terminal translation {top} is not a multiple of L")
    letters.append(("T", sign * top.b))
    return word(letters)


def in_g5(m: GMat | ProjMat) -> bool:
    try:
        decompose(m)
        return True
    except NotInG5Error:
        return False


# ---------------------------------------------------------------------------
# Matrix text format.


def parse_matrix(text: str) -> GMat:
    m = re.match(
        r"^\s*\[\s*\[([^][,]+),([^][,]+)\]\s*,\s*\[([^][,]+),([^][,]+)\]\s*\]\s*$",
        text)
    if not m:
        raise ValueError(f"malformed matrix: {text!r}")
    return GMat(*(parse_golden(g) for g in m.groups()))


# ---------------------------------------------------------------------------
# Generator sets from the appendix word recipes.


def _s_word() -> Word:
    return word([("S", 1)])


def _conj(g: Word, x: Word) -> Word:
    return g * x * g.inv()


def _base_words(n: int) -> dict[str, Word]:
    """The standard named words built from T^n: A..H as used below."""
    s = _s_word()
    t1 = word([("T", 1)])
    a = word([("T", n)])
    b = _conj(s, a)
    c = _conj(t1, b)
    d = _conj(t1.inv(), _conj(s, a.inv()))
    e = a.inv() * a.inv() * b.inv() * c
    f = a * a * b * d
    g = _conj(s, e)
    h = _conj(s, f)
    return {"A": a, "B": b, "C": c, "D": d, "E": e, "F": f, "G": g, "H": h}


def _min_odd_prime_divisor(m: int) -> int | None:
    """Smallest odd prime divisor of an odd m, or None for m = 1."""
    d = 3
    while d * d <= m:
        if m % d == 0:
            return d
        d += 2
    return m if m > 1 else None


def delta_m_words(m: int) -> list[Word]:
    """The six normal-closure witness words for T^m.

    The last three are built from X = (GEGF)^r with 2r = 1 mod p for the
    smallest odd prime divisor p of m (r = 1 if there is none; the mod-mp
    residue table only applies when such a p exists).
    """
    if m < 1:
        raise ValueError("m must be positive")
    w = _base_words(m)
    p = _min_odd_prime_divisor(_odd_part(m))
    r = 1 if p is None else ((p + 1) // 2)  # minimal r with 2r = 1 (mod p)
    x = (w["G"] * w["E"] * w["G"] * w["F"])
    xs = EMPTY_WORD
    for _ in range(r):
        xs = xs * x
    s, t1 = _s_word(), word([("T", 1)])
    return [w["A"], w["B"], w["C"], _conj(s, xs), xs, _conj(t1, xs)]


def _odd_part(m: int) -> int:
    while m % 2 == 0:
        m //= 2
    return m


def delta_m(m: int) -> list[ProjMat]:
    return [eval_word(w) for w in delta_m_words(m)]


def elementary_generators(m: int) -> list[GMat]:
    """The six explicit det-1 matrices generating the order-p^6 group mod mp.

    These are the matrix *residue representatives*; unlike `delta_m` they need
    not lie in the group itself.
    """
    lam = LAMBDA
    lam2 = lam * lam
    lam3 = lam2 * lam
    mm = GoldenInt(m, 0)
    return [
        translation(mm * lam),
        GMat(ONE, ZERO, -(mm * lam), ONE),
        GMat(ONE - mm * lam2, mm * lam3, -(mm * lam), ONE + mm * lam2),
        translation(mm),
        GMat(ONE, ZERO, -mm, ONE),
        GMat(ONE - mm * lam, mm * lam2, -mm, ONE + mm * lam),
    ]


def omega_2() -> list[ProjMat]:
    """The four independent generators of the principal level-2 subgroup."""
    two_lam = GoldenInt(0, 2)
    one_2lam = GoldenInt(1, 2)
    two_2lam = GoldenInt(2, 2)
    mats = [
        translation(two_lam),
        GMat(ONE, ZERO, two_lam, ONE),
        GMat(one_2lam, two_2lam, two_lam, one_2lam),
        GMat(one_2lam, two_lam, two_2lam, one_2lam),
    ]
    return [ProjMat.of(m) for m in mats]


def appendix_b_words(m: int) -> list[Word]:
    """Five words in the normal closure of T^(2m), m odd: A, B, C, GE, T(GE)T^-1."""
    if m < 1 or m % 2 == 0:
        raise ValueError("m must be odd and positive")
    w = _base_words(2 * m)
    ge = w["G"] * w["E"]
    t1 = word([("T", 1)])
    return [w["A"], w["B"], w["C"], ge, _conj(t1, ge)]


def appendix_b_set(m: int) -> list[ProjMat]:
    return [eval_word(w) for w in appendix_b_words(m)]


def appendix_c_words(m: int) -> list[Word]:
    """Six words in the normal closure of T^m for 4 | m, built on Y = GEGF."""
    if m % 4 != 0:
        raise ValueError("m must be a multiple of 4")
    w = _base_words(m)
    y = w["G"] * w["E"] * w["G"] * w["F"]
    s, t1 = _s_word(), word([("T", 1)])
    a2 = word([("T", 2 * m)])
    return [a2, _conj(s, a2), _conj(t1, _conj(s, a2)), _conj(s, y), y, _conj(t1, y)]


def appendix_c_set(m: int) -> list[ProjMat]:
    return [eval_word(w) for w in appendix_c_words(m)]
