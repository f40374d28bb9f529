"""Classical modular-group analog of the quotient machinery, used as an oracle.

Everything here lives in SL(2, Z/n).  The same breadth-first closure engine
drives both this module and the Z[L] quotients, so agreement between the two
backends on the parallel lemma instances is a meaningful cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .closure import generated_closure, normal_closure as _normal_closure

Key = tuple[int, int, int, int]

DEFAULT_CAP = 2_000_000


def _make_mult(n: int):
    def mult(x: Key, y: Key) -> Key:
        a, b, c, d = x
        e, f, g, h = y
        return ((a * e + b * g) % n, (a * f + b * h) % n,
                (c * e + d * g) % n, (c * f + d * h) % n)
    return mult


@dataclass(frozen=True)
class IntQuotient:
    """SL(2, Z/n) with its generators T = (1 1; 0 1) and S = (0 1; -1 0)."""

    n: int
    elements: frozenset[Key]
    _mult: object = field(repr=False, compare=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Key:
        return (1 % self.n, 0, 0, 1 % self.n)

    def mult(self, x: Key, y: Key) -> Key:
        return self._mult(x, y)

    def mat(self, a: int, b: int, c: int, d: int) -> Key:
        return (a % self.n, b % self.n, c % self.n, d % self.n)

    @property
    def gen_t(self) -> Key:
        return self.mat(1, 1, 0, 1)

    @property
    def gen_s(self) -> Key:
        return self.mat(0, 1, -1, 0)


@lru_cache(maxsize=64)
def build_sl2_quotient(n: int, cap: int = DEFAULT_CAP) -> IntQuotient:
    if n < 1:
        raise ValueError("modulus must be positive")
    mult = _make_mult(n)
    ident = (1 % n, 0, 0, 1 % n)
    gens = [(1 % n, 1 % n, 0, 1 % n), (0, 1 % n, (-1) % n, 0)]
    elements = frozenset(generated_closure(ident, gens, mult, cap))
    return IntQuotient(n, elements, mult)


def _subgroup_closure(q: IntQuotient, seeds) -> frozenset[Key]:
    return generated_closure(q.identity, seeds, q.mult, DEFAULT_CAP)


def _closure_normal(q: IntQuotient, seeds) -> frozenset[Key]:
    conj = [(g, _inv(q, g)) for g in (q.gen_s, q.gen_t)]
    return _normal_closure(q.identity, seeds, q.mult, conj, DEFAULT_CAP)


def _inv(q: IntQuotient, x: Key) -> Key:
    a, b, c, d = x
    return (d % q.n, -b % q.n, -c % q.n, a % q.n)


def _pow(q: IntQuotient, x: Key, k: int) -> Key:
    out = q.identity
    for _ in range(k):
        out = q.mult(out, x)
    return out


def reduction_kernel_order(big: int, small: int) -> int:
    """|Gamma(small)/Gamma(big)| measured inside SL(2, Z/big)."""
    if big % small:
        raise ValueError("moduli must be nested")
    q = build_sl2_quotient(big)
    kernel = [x for x in q.elements
              if all(v % small == w % small for v, w in zip(x, (1, 0, 0, 1)))]
    return len(kernel)


def check_lemma_d1(p: int) -> bool:
    """The two unipotent families generate all of SL(2, p)."""
    q = build_sl2_quotient(p)
    gens = [q.mat(1, x, 0, 1) for x in range(1, p)]
    gens += [q.mat(1, 0, y, 1) for y in range(1, p)]
    closure = _subgroup_closure(q, gens)
    if len(closure) != q.order:
        return False
    # already the single pair U(1), L(1) suffices
    return len(_subgroup_closure(q, [q.mat(1, 1, 0, 1), q.mat(1, 0, 1, 1)])) == q.order


def check_lemma_d2(m: int, p: int) -> bool:
    """Normal closure of T^m mod mp is the full kernel of reduction to mod m."""
    q = build_sl2_quotient(m * p)
    closure = _closure_normal(q, [_pow(q, q.gen_t, m)])
    return len(closure) == reduction_kernel_order(m * p, m)


def d2_closure_order(m: int, p: int) -> int:
    q = build_sl2_quotient(m * p)
    return len(_closure_normal(q, [_pow(q, q.gen_t, m)]))


def check_wohlfahrt_instance(r: int, s: int) -> bool:
    """Normal closure of T^s together with Gamma(rs) is Gamma(s), mod rs."""
    q = build_sl2_quotient(r * s)
    closure = _closure_normal(q, [_pow(q, q.gen_t, s)])
    return len(closure) == reduction_kernel_order(r * s, s)


def check_d2_generators(m: int, p: int) -> bool:
    """U = T^m, V = S T^m S^-1, W = T V T^-1 generate the p^3 kernel when p | m."""
    if m % p:
        raise ValueError("requires p | m")
    q = build_sl2_quotient(m * p)
    t, s = q.gen_t, q.gen_s
    u = _pow(q, t, m)
    v = q.mult(q.mult(s, u), _inv(q, s))
    w = q.mult(q.mult(t, v), _inv(q, t))
    closure = _subgroup_closure(q, [u, v, w])
    if len(closure) != p ** 3:
        return False
    if len(closure) != reduction_kernel_order(m * p, m):
        return False
    # elementary abelian: generators commute and have order p
    for x in (u, v, w):
        if _pow(q, x, p) != q.identity:
            return False
        for y in (u, v, w):
            if q.mult(x, y) != q.mult(y, x):
                return False
    return True
