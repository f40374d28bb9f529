"""Finite quotients of the Hecke group by principal congruence subgroups.

A quotient is materialised as the BFS closure of the images of S and T in
the ring of 2x2 residue matrices mod a `Modulus`, either homogeneously or
with +-I identified.  Elements are 8-tuples of canonical residue
coordinates (a, b per entry), so they hash cheaply and the closure engine
in `closure.py` applies unchanged.
"""

from __future__ import annotations

import hashlib
import struct
from array import array
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from .closure import ClosureCapExceeded, element_order, generated_closure
from .closure import normal_closure as _normal_closure_engine
from .golden_ring import (
    GoldenInt, Modulus, classify_rational_prime, rational_integer_below,
)
from .hecke_matrices import GMat, ProjMat, S_MAT, T_MAT

DEFAULT_RING_CAP = 1_000_000
DEFAULT_ELEMENT_CAP = 2_000_000

Key = tuple[int, int, int, int, int, int, int, int]


class QuotientCapError(RuntimeError):
    def __init__(self, partial_count: int, message: str | None = None):
        super().__init__(message or
                         f"quotient cap exceeded (partial count {partial_count})")
        self.partial_count = partial_count


def _make_mult(modulus: Modulus, projective: bool):
    red = modulus.reduce_pair

    def mult(x: Key, y: Key) -> Key:
        xa, xb, xc, xd, xe, xf, xg, xh = x
        ya, yb, yc, yd, ye, yf, yg, yh = y
        t = (
            red(xa * ya + xb * yb + xc * ye + xd * yf,
                xa * yb + xb * ya + xb * yb + xc * yf + xd * ye + xd * yf)
            + red(xa * yc + xb * yd + xc * yg + xd * yh,
                  xa * yd + xb * yc + xb * yd + xc * yh + xd * yg + xd * yh)
            + red(xe * ya + xf * yb + xg * ye + xh * yf,
                  xe * yb + xf * ya + xf * yb + xg * yf + xh * ye + xh * yf)
            + red(xe * yc + xf * yd + xg * yg + xh * yh,
                  xe * yd + xf * yc + xf * yd + xg * yh + xh * yg + xh * yh)
        )
        if projective:
            n = (red(-t[0], -t[1]) + red(-t[2], -t[3])
                 + red(-t[4], -t[5]) + red(-t[6], -t[7]))
            if n < t:
                return n
        return t

    return mult


@dataclass(frozen=True)
class QuotientGroup:
    modulus: Modulus
    projective: bool
    elements: frozenset[Key] | None  # None: ambient not enumerated (lazy)
    gen_S: Key
    gen_T: Key
    _mult: object = field(repr=False, compare=False)

    @property
    def order(self) -> int:
        if self.elements is None:
            raise ValueError("ambient group was not enumerated")
        return len(self.elements)

    @property
    def identity(self) -> Key:
        return self.key_of(GMat(GoldenInt(1, 0), GoldenInt(0, 0),
                                GoldenInt(0, 0), GoldenInt(1, 0)))

    def mult(self, x: Key, y: Key) -> Key:
        return self._mult(x, y)

    def key_of(self, m: GMat | ProjMat) -> Key:
        if isinstance(m, ProjMat):
            m = m.rep
        red = self.modulus.reduce_pair
        t: Key = (red(m.e11.a, m.e11.b) + red(m.e12.a, m.e12.b)
                  + red(m.e21.a, m.e21.b) + red(m.e22.a, m.e22.b))
        if self.projective:
            n = (red(-t[0], -t[1]) + red(-t[2], -t[3])
                 + red(-t[4], -t[5]) + red(-t[6], -t[7]))
            if n < t:
                return n
        return t

    def inv_key(self, x: Key) -> Key:
        # det = 1 mod modulus, so the inverse is the reduced adjugate
        red = self.modulus.reduce_pair
        t = (red(x[6], x[7]) + red(-x[2], -x[3])
             + red(-x[4], -x[5]) + red(x[0], x[1]))
        if self.projective:
            n = (red(-t[0], -t[1]) + red(-t[2], -t[3])
                 + red(-t[4], -t[5]) + red(-t[6], -t[7]))
            if n < t:
                return n
        return t

    def element_order(self, x: Key) -> int:
        return element_order(x, self.identity, self._mult)

    def order_histogram(self) -> Counter:
        return Counter(self.element_order(x) for x in self.elements)


@dataclass(frozen=True)
class SubgroupHandle:
    parent: QuotientGroup
    members: frozenset[Key]
    seeds: tuple[Key, ...] = ()

    @property
    def order(self) -> int:
        return len(self.members)


def _build_quotient_uncached(modulus: Modulus, projective: bool,
                             ring_cap: int, element_cap: int) -> QuotientGroup:
    if modulus.ring_size > ring_cap:
        raise QuotientCapError(
            0, f"residue ring size {modulus.ring_size} exceeds cap {ring_cap}")
    mult = _make_mult(modulus, projective)
    stub = QuotientGroup(modulus, projective, frozenset(), (), (), mult)
    gen_s, gen_t = stub.key_of(S_MAT), stub.key_of(T_MAT)
    try:
        elements = generated_closure(stub.identity, [gen_s, gen_t], mult,
                                     cap=element_cap)
    except ClosureCapExceeded as exc:
        raise QuotientCapError(exc.partial_count) from exc
    return QuotientGroup(modulus, projective, frozenset(elements),
                         gen_s, gen_t, mult)


@lru_cache(maxsize=64)
def _build_quotient_cached(modulus: Modulus, projective: bool,
                           ring_cap: int, element_cap: int) -> QuotientGroup:
    return _build_quotient_uncached(modulus, projective, ring_cap, element_cap)


def build_quotient(modulus: Modulus, projective: bool = True,
                   ring_cap: int = DEFAULT_RING_CAP,
                   element_cap: int = DEFAULT_ELEMENT_CAP,
                   cache_dir: str | Path | None = None) -> QuotientGroup:
    """BFS closure of {S, T} mod `modulus`.

    With `cache_dir` set, completed quotients are stored on disk keyed by a
    content hash and reloaded transparently.
    """
    if cache_dir is not None:
        path = Path(cache_dir) / _cache_name(modulus, projective)
        if path.exists():
            return _load_quotient(path, modulus, projective)
        q = _build_quotient_cached(modulus, projective, ring_cap, element_cap)
        path.parent.mkdir(parents=True, exist_ok=True)
        _save_quotient(q, path)
        return q
    return _build_quotient_cached(modulus, projective, ring_cap, element_cap)


def residue_ambient(modulus: Modulus, projective: bool = True) -> QuotientGroup:
    """Ambient handle for closures at moduli too large to enumerate fully."""
    mult = _make_mult(modulus, projective)
    stub = QuotientGroup(modulus, projective, None, (), (), mult)
    return QuotientGroup(modulus, projective, None,
                         stub.key_of(S_MAT), stub.key_of(T_MAT), mult)


_CACHE_MAGIC = b"HQC1"


def _cache_name(modulus: Modulus, projective: bool) -> str:
    tag = (f"v1|{modulus.kind}|{modulus.generator.a},{modulus.generator.b}"
           f"|{int(projective)}")
    return hashlib.sha256(tag.encode()).hexdigest()[:20] + ".quot"


def _save_quotient(q: QuotientGroup, path: Path) -> None:
    flat = array("q")
    flat.extend(q.gen_S)
    flat.extend(q.gen_T)
    for el in sorted(q.elements):
        flat.extend(el)
    with open(path, "wb") as fh:
        fh.write(_CACHE_MAGIC)
        fh.write(struct.pack("<Q", q.order))
        fh.write(flat.tobytes())


def _load_quotient(path: Path, modulus: Modulus, projective: bool) -> QuotientGroup:
    with open(path, "rb") as fh:
        if fh.read(4) != _CACHE_MAGIC:
            raise ValueError(f"bad quotient cache file {path}")
        (count,) = struct.unpack("<Q", fh.read(8))
        flat = array("q")
        flat.frombytes(fh.read())
    if len(flat) != 8 * (count + 2):
        raise ValueError(f"truncated quotient cache file {path}")
    keys = [tuple(flat[i:i + 8]) for i in range(0, len(flat), 8)]
    mult = _make_mult(modulus, projective)
    return QuotientGroup(modulus, projective, frozenset(keys[2:]),
                         keys[0], keys[1], mult)


# ---------------------------------------------------------------------------
# Subgroups.


def subgroup_closure(q: QuotientGroup, seeds) -> SubgroupHandle:
    """Smallest subgroup of q containing the seeds."""
    keys = tuple(_as_key(q, s) for s in seeds)
    members = generated_closure(q.identity, keys, q.mult)
    return SubgroupHandle(q, frozenset(members), keys)


def normal_closure(q: QuotientGroup, seeds) -> SubgroupHandle:
    """Smallest subgroup containing the seeds, closed under conjugation by S, T."""
    keys = tuple(_as_key(q, s) for s in seeds)
    conj = [(q.gen_S, q.inv_key(q.gen_S)), (q.gen_T, q.inv_key(q.gen_T))]
    members = _normal_closure_engine(q.identity, keys, q.mult, conj)
    return SubgroupHandle(q, frozenset(members), keys)


def _as_key(q: QuotientGroup, seed) -> Key:
    if isinstance(seed, (GMat, ProjMat)):
        return q.key_of(seed)
    return seed


def kernel_subgroup(q: QuotientGroup, m: Modulus) -> SubgroupHandle:
    """Elements of q congruent to I (homogeneous) or +-I (projective) mod m."""
    if not m.divides(q.modulus):
        raise ValueError(f"{m} does not divide {q.modulus}")
    red = m.reduce_pair
    ident = red(1, 0) + red(0, 0) + red(0, 0) + red(1, 0)
    targets = {ident}
    if q.projective:
        targets.add(red(-1, 0) + red(0, 0) + red(0, 0) + red(-1, 0))
    members = {
        x for x in q.elements
        if (red(x[0], x[1]) + red(x[2], x[3])
            + red(x[4], x[5]) + red(x[6], x[7])) in targets
    }
    return SubgroupHandle(q, frozenset(members))


def check_elementary_abelian(h: SubgroupHandle, p: int) -> bool:
    """True iff h is abelian with every non-identity element of order p."""
    n = h.order
    if n == 1:
        return True
    while n % p == 0:
        n //= p
    if n != 1:
        return False
    q = h.parent
    gens = h.seeds if h.seeds else tuple(h.members)
    if not h.seeds and len(gens) > 64:
        # large seedless subgroup: find a small generating set first
        gens = _generating_subset(q, h.members)
    for g in gens:
        if element_order(g, q.identity, q.mult) not in (1, p):
            return False
    for i, g in enumerate(gens):
        for k in gens[i + 1:]:
            if q.mult(g, k) != q.mult(k, g):
                return False
    return True


def _generating_subset(q: QuotientGroup, members: frozenset[Key]) -> tuple[Key, ...]:
    gens: list[Key] = []
    have = {q.identity}
    for x in sorted(members):
        if x not in have:
            gens.append(x)
            have = generated_closure(q.identity, gens, q.mult)
            if len(have) == len(members):
                break
    return tuple(gens)


# ---------------------------------------------------------------------------
# Index formula and its enumeration oracle.


def _prime_ideal_divisors(m: Modulus) -> list[tuple[GoldenInt, int]]:
    """Distinct prime ideal divisors of m with their residue field sizes N(P)."""
    n = rational_integer_below(m)
    out: list[tuple[GoldenInt, int]] = []
    d = 2
    rest = n
    rational_primes = []
    while d * d <= rest:
        if rest % d == 0:
            rational_primes.append(d)
            while rest % d == 0:
                rest //= d
        d += 1
    if rest > 1:
        rational_primes.append(rest)
    gen = m.generator
    for p in rational_primes:
        cls = classify_rational_prime(p)
        for f in cls.factors:
            if gen.divisible_by(f):
                out.append((f, abs(f.norm())))
    return out


def sl_index_formula(a: Modulus) -> int:
    """N(A)^3 prod over prime divisors P of A of (1 - N(P)^-2), exactly."""
    n = a.ring_size
    value = Fraction(n) ** 3
    for _, np in _prime_ideal_divisors(a):
        value *= 1 - Fraction(1, np * np)
    if value.denominator != 1:
        raise ArithmeticError(f"index formula for {a} is not integral")
    return value.numerator


def sl2_enumeration_order(m: Modulus) -> int:
    """|SL(2, Z[L]/m)| by direct counting; the oracle for the index formula."""
    residues = list(m.residues())
    index = {r: i for i, r in enumerate(residues)}
    size = len(residues)
    # pair_count[v] = number of (b, c) with b*c = v
    pair_count = [0] * size
    red = m.reduce_pair
    for (a1, b1) in residues:
        for (a2, b2) in residues:
            bb = b1 * b2
            v = red(a1 * a2 + bb, a1 * b2 + a2 * b1 + bb)
            pair_count[index[v]] += 1
    total = 0
    for (a1, b1) in residues:
        for (a2, b2) in residues:
            bb = b1 * b2
            det_needed = red(a1 * a2 + bb - 1, a1 * b2 + a2 * b1 + bb)
            total += pair_count[index[det_needed]]
    return total
