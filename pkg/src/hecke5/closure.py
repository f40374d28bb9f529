"""Generic breadth-first closure over a finite group given by hashable keys.

Both the Hecke-quotient and the modular-oracle backends drive the same three
routines; a backend only has to provide `mult`, an identity key, and (for
normal closures) the designated conjugating generators with their inverses.
"""

from __future__ import annotations

from collections import deque
from typing import Callable, Hashable, Iterable

Key = Hashable
Mult = Callable[[Key, Key], Key]


class ClosureCapExceeded(RuntimeError):
    def __init__(self, partial_count: int):
        super().__init__(f"closure exceeded element cap (partial count {partial_count})")
        self.partial_count = partial_count


def generated_closure(identity: Key, generators: Iterable[Key], mult: Mult,
                      cap: int | None = None) -> set[Key]:
    """The subgroup generated by `generators` (finite ambient assumed)."""
    gens = list(dict.fromkeys(generators))
    seen = {identity}
    frontier = deque([identity])
    while frontier:
        x = frontier.popleft()
        for g in gens:
            y = mult(x, g)
            if y not in seen:
                if cap is not None and len(seen) >= cap:
                    raise ClosureCapExceeded(len(seen))
                seen.add(y)
                frontier.append(y)
    return seen


def normal_closure(identity: Key, seeds: Iterable[Key], mult: Mult,
                   conjugators: list[tuple[Key, Key]],
                   cap: int | None = None) -> set[Key]:
    """Smallest subgroup containing `seeds` closed under the given conjugations.

    `conjugators` is a list of (g, g^-1) pairs; the result is the normal
    closure of the seeds when the conjugators generate the ambient group.
    """
    gens = list(dict.fromkeys(seeds))
    members = generated_closure(identity, gens, mult, cap)
    while True:
        new = []
        for x in members:
            for g, ginv in conjugators:
                y = mult(mult(g, x), ginv)
                if y not in members:
                    new.append(y)
        if not new:
            return members
        gens.extend(dict.fromkeys(new))
        members = generated_closure(identity, gens, mult, cap)


def element_order(x: Key, identity: Key, mult: Mult, cap: int = 1_000_000) -> int:
    n, y = 1, x
    while y != identity:
        y = mult(y, x)
        n += 1
        if n > cap:
            raise ClosureCapExceeded(n)
    return n
