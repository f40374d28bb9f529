"""Congruence-subgroup decision pipeline and low-index census.

A finite-index subgroup K is handed over as a list of generator words.
Coset enumeration over the presentation <s, u | s^2 = u^5 = 1> (with
T = S*U) gives the index and the T-action on cosets, hence the geometric
level m.  The Wohlfahrt criterion reduces congruence to a finite check:
K is congruence iff G(M) <= K for M = m (m not divisible by 4) or 2m,
which holds iff [G5 : K] equals the index of the image of K in the
finite quotient G5/G(M).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import reduce
from itertools import permutations
from math import lcm

from sympy.combinatorics.fp_groups import FpGroup, coset_enumeration_r
from sympy.combinatorics.free_groups import free_group

from . import __version__
from .golden_ring import GoldenInt, Modulus, classify_rational_prime, gcd as golden_gcd
from .hecke_matrices import Word, eval_word, word
from .quotients import QuotientGroup, build_quotient, subgroup_closure


class UndecidedError(RuntimeError):
    """Raised when an enumeration cap is hit before a verdict is reached."""


DEFAULT_COSET_CAP = 100_000

_F, _s, _u = free_group("s u")
_PRESENTATION = FpGroup(_F, [_s**2, _u**5])


@dataclass(frozen=True)
class CosetTable:
    """Right action of S and T on the cosets of K; coset 0 is K itself."""

    perm_s: tuple[int, ...]
    perm_t: tuple[int, ...]

    def __post_init__(self):
        n = len(self.perm_s)
        if len(self.perm_t) != n:
            raise ValueError("permutation length mismatch")
        if any(self.perm_s[self.perm_s[i]] != i for i in range(n)):
            raise ValueError("S-action is not an involution")
        u = self.perm_u
        for i in range(n):
            j = i
            for _ in range(5):
                j = u[j]
            if j != i:
                raise ValueError("U-action does not have order dividing 5")
        if _orbit_of(0, (self.perm_s, self.perm_t)) != set(range(n)):
            raise ValueError("coset action is not transitive")

    @property
    def degree(self) -> int:
        return len(self.perm_s)

    @property
    def perm_u(self) -> tuple[int, ...]:
        # U = S T, acting on the right: first S, then T
        return tuple(self.perm_t[self.perm_s[i]] for i in range(self.degree))

    def apply_word(self, w: Word, point: int = 0) -> int:
        inv_s = self.perm_s
        inv_t = tuple(self.perm_t.index(i) for i in range(self.degree))
        for gen, exp in w.letters:
            perm = self.perm_s if gen == "S" else self.perm_t
            if exp < 0:
                perm = inv_s if gen == "S" else inv_t
            for _ in range(abs(exp)):
                point = perm[point]
        return point


def _orbit_of(start: int, perms) -> set[int]:
    seen = {start}
    frontier = [start]
    while frontier:
        i = frontier.pop()
        for p in perms:
            j = p[i]
            if j not in seen:
                seen.add(j)
                frontier.append(j)
    return seen


def _to_presentation_word(w: Word):
    """Rewrite a word in S, T as a word in s, u via T = s*u (s has order 2)."""
    out = _F.identity
    for gen, exp in w.letters:
        if gen == "S":
            out = out * _s**exp
        else:
            out = out * (_s * _u) ** exp
    return out


def coset_table(generators: list[Word], cap: int = DEFAULT_COSET_CAP) -> CosetTable:
    subgroup = [_to_presentation_word(w) for w in generators]
    try:
        table = coset_enumeration_r(_PRESENTATION, subgroup, max_cosets=cap)
    except ValueError as exc:
        raise UndecidedError(f"coset enumeration exceeded {cap} cosets") from exc
    table.compress()
    table.standardize()
    # columns follow table.A = [s, s^-1, u, u^-1]
    n = len(table.table)
    perm_s = tuple(table.table[i][0] for i in range(n))
    perm_u = tuple(table.table[i][2] for i in range(n))
    perm_t = tuple(perm_u[perm_s[i]] for i in range(n))
    return CosetTable(perm_s, perm_t)


def _cycle_lengths(perm: tuple[int, ...]) -> list[int]:
    seen = [False] * len(perm)
    out = []
    for i in range(len(perm)):
        if seen[i]:
            continue
        n, j = 0, i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            n += 1
        out.append(n)
    return out


def geometric_level_from_table(t: CosetTable) -> int:
    return lcm(*_cycle_lengths(t.perm_t))


def wohlfahrt_modulus(m: int) -> int:
    if m < 1:
        raise ValueError("level must be positive")
    return m if m % 4 else 2 * m


def schreier_generators(t: CosetTable) -> list[Word]:
    """Generators of the point-0 stabilizer from a spanning tree of the action."""
    n = t.degree
    gens = [("S", t.perm_s), ("T", t.perm_t)]
    reps: list[Word | None] = [None] * n
    reps[0] = word([])
    frontier = [0]
    tree: set[tuple[int, str]] = set()
    while frontier:
        i = frontier.pop(0)
        for name, perm in gens:
            j = perm[i]
            if reps[j] is None:
                reps[j] = reps[i] * word([(name, 1)])
                tree.add((i, name))
                frontier.append(j)
    out = []
    for i in range(n):
        for name, perm in gens:
            if (i, name) in tree:
                continue
            g = reps[i] * word([(name, 1)]) * reps[perm[i]].inv()
            if g.letters:
                out.append(g)
    return out


@dataclass(frozen=True)
class CongruenceReport:
    index: int
    geometric_level: int
    test_modulus: int
    quotient_order: int
    image_order: int
    verdict: str  # "congruence" | "not-congruence"
    algebraic_level: str | None = None

    @property
    def is_congruence(self) -> bool:
        return self.verdict == "congruence"

    def to_dict(self) -> dict:
        return {
            "version": __version__,
            "index": self.index,
            "geometric_level": self.geometric_level,
            "test_modulus": self.test_modulus,
            "quotient_order": self.quotient_order,
            "image_order": self.image_order,
            "verdict": self.verdict,
            "algebraic_level": self.algebraic_level,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "CongruenceReport":
        d = json.loads(text)
        return CongruenceReport(
            index=d["index"],
            geometric_level=d["geometric_level"],
            test_modulus=d["test_modulus"],
            quotient_order=d["quotient_order"],
            image_order=d["image_order"],
            verdict=d["verdict"],
            algebraic_level=d["algebraic_level"],
        )


def _image_order(generators: list[Word], modulus: Modulus) -> tuple[int, int]:
    q = build_quotient(modulus, projective=True)
    keys = [q.key_of(eval_word(w)) for w in generators]
    return q.order, subgroup_closure(q, keys).order


def _contains_kernel(generators: list[Word], index: int, modulus: Modulus) -> bool:
    qo, io = _image_order(generators, modulus)
    return qo == io * index


def is_congruence(generators: list[Word],
                  table: CosetTable | None = None) -> CongruenceReport:
    if table is None:
        table = coset_table(generators)
    index = table.degree
    m = geometric_level_from_table(table)
    big = wohlfahrt_modulus(m)
    qo, io = _image_order(generators, Modulus.rational(big))
    if qo == io * index:
        level = algebraic_level(generators, index, big)
        return CongruenceReport(index, m, big, qo, io, "congruence", str(level))
    return CongruenceReport(index, m, big, qo, io, "not-congruence")


def _ideal_divisors(n: int) -> list[GoldenInt]:
    """All ideal divisors of (n) in Z[L], one canonical generator each."""
    factors: dict[int, int] = {}
    x, p = n, 2
    while p * p <= x:
        while x % p == 0:
            factors[p] = factors.get(p, 0) + 1
            p_ = p
            x //= p_
        p += 1
    if x > 1:
        factors[x] = factors.get(x, 0) + 1
    prime_powers: list[list[GoldenInt]] = []
    for p, k in factors.items():
        cls = classify_rational_prime(p)
        mult = 2 if cls.kind == "ramified" else 1  # (5) = (2+L)^2 up to a unit
        for g in cls.factors:
            prime_powers.append([_golden_pow(g, e)
                                 for e in range(0, k * mult + 1)])
    divisors = [GoldenInt(1, 0)]
    for powers in prime_powers:
        divisors = [d * q for d in divisors for q in powers]
    return divisors


def _golden_pow(g: GoldenInt, e: int) -> GoldenInt:
    out = GoldenInt(1, 0)
    for _ in range(e):
        out = out * g
    return out


def algebraic_level(generators: list[Word], index: int, big: int) -> Modulus:
    """Smallest ideal (d) dividing (big) with G(d) contained in the subgroup."""
    passing = []
    for d in _ideal_divisors(big):
        if abs(d.norm()) == 1:
            if index == 1:
                passing.append(d)
            continue
        if _contains_kernel(generators, index, Modulus.ideal(d)):
            passing.append(d)
    if not passing:
        raise ValueError("no passing divisor; subgroup is not congruence at this modulus")
    level = reduce(golden_gcd, passing)
    return Modulus.ideal(level)


# ---------------------------------------------------------------------------
# Low-index census.


def _canonical(perm_s, perm_t, base: int = 0):
    """Relabel points by first appearance in a BFS from `base` (S before T)."""
    n = len(perm_s)
    order = [base]
    pos = {base: 0}
    i = 0
    while i < len(order):
        for perm in (perm_s, perm_t):
            j = perm[order[i]]
            if j not in pos:
                pos[j] = len(order)
                order.append(j)
        i += 1
    new_s = tuple(pos[perm_s[order[k]]] for k in range(n))
    new_t = tuple(pos[perm_t[order[k]]] for k in range(n))
    return new_s, new_t


def _perms_of_order_dividing(n: int, k: int):
    for p in permutations(range(n)):
        j = list(range(n))
        ok = True
        for _ in range(k):
            j = [p[x] for x in j]
        if j == list(range(n)):
            yield tuple(p)


def enumerate_index(n: int) -> list[CosetTable]:
    """One coset table per index-n subgroup (distinct stabilizers of point 0)."""
    if n < 1:
        raise ValueError("index must be positive")
    if n > 7:
        raise ValueError("census limited to index <= 7")
    seen = set()
    out = []
    for sigma_s in _perms_of_order_dividing(n, 2):
        for sigma_u in _perms_of_order_dividing(n, 5):
            sigma_t = tuple(sigma_u[sigma_s[i]] for i in range(n))
            if len(_orbit_of(0, (sigma_s, sigma_t))) != n:
                continue
            key = _canonical(sigma_s, sigma_t)
            if key in seen:
                continue
            seen.add(key)
            out.append(CosetTable(*key))
    return out


def is_normal_table(t: CosetTable) -> bool:
    """K is normal iff the marked-point choice does not change the subgroup."""
    base = _canonical(t.perm_s, t.perm_t, 0)
    return all(_canonical(t.perm_s, t.perm_t, i) == base
               for i in range(1, t.degree))
