"""Finite subgroups of GL2(Z/nZ) held as explicit element sets.

A :class:`MatGroup` is described by generators; its element set is filled
lazily by breadth-first closure and then kept as a lexicographically sorted
tuple of entry tuples plus a frozenset for membership.
"""

from __future__ import annotations

import itertools
import threading
from math import gcd
from typing import Iterable, Sequence

from .arith import factor, gl2_order, unit_group
from .config import limits
from .errors import (
    BadModulus,
    GroupTooLarge,
    InternalInconsistency,
    NotAbelianQuotient,
    NotInvertible,
    NotNormal,
)
from .modmat import Entries, Mat2, check_modulus, tdet, tinv, tmul, tpow

__all__ = [
    "MatGroup",
    "abelian_invariants",
    "closure",
    "commutator",
    "contains_conjugate_of",
    "contains_sl2",
    "crt_mat",
    "det_image",
    "derived_subgroup",
    "gl2",
    "gl2_order",
    "is_fiber_product_trivial",
    "normal_closure",
    "quotient_order_of",
    "reduce_group",
    "sl2",
    "sl_intersection",
]

ONE: Entries = (1, 0, 0, 1)


def _close(gens: Sequence[Entries], n: int, cap: int, seed: Iterable[Entries] = (ONE,)) -> set[Entries]:
    """Breadth-first closure of ``seed`` under right multiplication by ``gens``."""
    seen = set(seed)
    frontier = list(seen)
    while frontier:
        new = []
        for x in frontier:
            a, b, c, d = x
            for e, f, g, h in gens:
                y = ((a * e + b * g) % n, (a * f + b * h) % n, (c * e + d * g) % n, (c * f + d * h) % n)
                if y not in seen:
                    seen.add(y)
                    new.append(y)
            if len(seen) > cap:
                raise GroupTooLarge(f"closure mod {n} exceeds {cap} elements")
        frontier = new
    return seen


def _close_bounded(gens: Sequence[Entries], n: int, bound: int) -> set[Entries] | None:
    """Closure that gives up (returns None) as soon as it grows past ``bound``."""
    try:
        return _close(gens, n, bound)
    except GroupTooLarge:
        return None


class MatGroup:
    """A subgroup of GL2(Z/nZ) given by generators.

    The element set is computed on first use; ``order`` and membership rely on it.
    Two groups compare equal when they have the same modulus and element set.
    """

    def __init__(self, modulus: int, generators: Iterable[Mat2 | Sequence[int]], *, _elements=None):
        n = check_modulus(modulus)
        gens: list[Entries] = []
        for g in generators:
            if isinstance(g, Mat2):
                if g.modulus != n:
                    raise BadModulus(f"generator {g} has modulus {g.modulus}, expected {n}")
                entries = g.entries
            else:
                entries = tuple(int(v) % n for v in g)
            if gcd(tdet(entries, n), n) != 1:
                raise NotInvertible(f"generator {list(entries)} is not invertible mod {n}")
            gens.append(entries)
        if not gens:
            gens = [ONE]
        self.modulus = n
        self.gens: tuple[Entries, ...] = tuple(gens)
        self._lock = threading.Lock()
        self._elements: tuple[Entries, ...] | None = None
        self._set: frozenset[Entries] | None = None
        if _elements is not None:
            self._install(_elements)

    # -- element cache ------------------------------------------------------

    def _install(self, elements: Iterable[Entries]):
        elems = tuple(sorted(set(elements)))
        if gl2_order(self.modulus) % len(elems):
            raise InternalInconsistency(f"order {len(elems)} does not divide #GL2({self.modulus})")
        self._set = frozenset(elems)
        self._elements = elems

    def _fill(self):
        if self._elements is None:
            with self._lock:
                if self._elements is None:
                    self._install(_close(self.gens, self.modulus, limits().group_cap))

    @property
    def elements(self) -> tuple[Entries, ...]:
        self._fill()
        return self._elements

    @property
    def element_set(self) -> frozenset[Entries]:
        self._fill()
        return self._set

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def generators(self) -> tuple[Mat2, ...]:
        return tuple(Mat2(self.modulus, g) for g in self.gens)

    def matrices(self) -> list[Mat2]:
        return [Mat2(self.modulus, x) for x in self.elements]

    @classmethod
    def from_elements(cls, modulus: int, elements: Iterable[Entries | Mat2]) -> "MatGroup":
        """Wrap a known element set, choosing an irredundant generating set greedily."""
        n = check_modulus(modulus)
        elems = sorted({x.entries if isinstance(x, Mat2) else tuple(v % n for v in x) for x in elements})
        target = set(elems)
        if ONE not in target:
            raise ValueError("element set does not contain the identity")
        gens: list[Entries] = []
        current = {ONE}
        for x in elems:
            if x not in current:
                gens.append(x)
                current = _close(gens, n, len(target), seed=current)
        if current != target:
            raise ValueError("element set is not closed under multiplication")
        return cls(n, gens or [ONE], _elements=elems)

    # -- basic queries --------------------------------------------------------

    def __contains__(self, g) -> bool:
        if isinstance(g, Mat2):
            if g.modulus != self.modulus:
                return False
            g = g.entries
        return tuple(g) in self.element_set

    def __len__(self):
        return self.order

    def __eq__(self, other):
        if not isinstance(other, MatGroup):
            return NotImplemented
        return self.modulus == other.modulus and self.element_set == other.element_set

    def __hash__(self):
        return hash((self.modulus, self.element_set))

    def __repr__(self):
        order = len(self._elements) if self._elements is not None else "?"
        return f"MatGroup(mod {self.modulus}, {len(self.gens)} gens, order {order})"

    def is_subgroup_of(self, other: "MatGroup") -> bool:
        return self.modulus == other.modulus and all(g in other.element_set for g in self.gens)

    def is_normal_in(self, other: "MatGroup") -> bool:
        if not self.is_subgroup_of(other):
            return False
        n = self.modulus
        for g in other.gens:
            gi = tinv(g, n)
            for h in self.gens:
                if tmul(tmul(g, h, n), gi, n) not in self.element_set:
                    return False
        return True

    def is_abelian(self) -> bool:
        n = self.modulus
        return all(tmul(x, y, n) == tmul(y, x, n) for x, y in itertools.combinations(self.gens, 2))

    def index_in(self, other: "MatGroup") -> int:
        if not self.is_subgroup_of(other):
            raise ValueError("not a subgroup")
        return other.order // self.order

    def exponent(self) -> int:
        from math import lcm

        from .modmat import torder

        e = 1
        for x in self.elements:
            e = lcm(e, torder(x, self.modulus))
        return e


# -- constructors -------------------------------------------------------------


def closure(modulus: int, gens: Iterable[Mat2 | Sequence[int]], cap: int | None = None) -> MatGroup:
    """The subgroup generated by ``gens``, with its element set filled eagerly."""
    G = MatGroup(modulus, gens)
    G._install(_close(G.gens, G.modulus, limits().group_cap if cap is None else cap))
    return G


def _unit_generators(n: int) -> list[int]:
    gens: list[int] = []
    sub = {1}
    for u in unit_group(n):
        if u not in sub:
            gens.append(u)
            frontier = list(sub)
            while frontier:
                nxt = []
                for x in frontier:
                    for g in gens:
                        y = x * g % n
                        if y not in sub:
                            sub.add(y)
                            nxt.append(y)
                frontier = nxt
    return gens


def gl2(n: int) -> MatGroup:
    """GL2(Z/nZ), generated by S, T and diag(u, 1) for a set of unit generators u."""
    check_modulus(n)
    gens = [(0, n - 1, 1, 0), (1, 1, 0, 1)] + [(u, 0, 0, 1) for u in _unit_generators(n)]
    if gl2_order(n) > limits().group_cap:
        return MatGroup(n, gens)
    elems = [x for x in itertools.product(range(n), repeat=4) if gcd((x[0] * x[3] - x[1] * x[2]) % n, n) == 1]
    return MatGroup(n, gens, _elements=elems)


def sl2(n: int) -> MatGroup:
    """SL2(Z/nZ); reduction from SL2(Z) is onto, so S and T generate it."""
    check_modulus(n)
    gens = [(0, n - 1, 1, 0), (1, 1, 0, 1)]
    if gl2_order(n) > limits().group_cap:
        return MatGroup(n, gens)
    elems = [x for x in itertools.product(range(n), repeat=4) if (x[0] * x[3] - x[1] * x[2]) % n == 1 % n]
    return MatGroup(n, gens, _elements=elems)


def reduce_group(G: MatGroup, m: int) -> MatGroup:
    if m < 2 or G.modulus % m:
        raise BadModulus(f"{m} does not divide the modulus {G.modulus}")
    return MatGroup(m, [tuple(v % m for v in g) for g in G.gens])


# -- derived data ---------------------------------------------------------------


def commutator(x: Entries, y: Entries, n: int) -> Entries:
    """[x, y] = x y x^-1 y^-1."""
    return tmul(tmul(x, y, n), tmul(tinv(x, n), tinv(y, n), n), n)


def normal_closure(G: MatGroup, seeds: Iterable[Entries]) -> MatGroup:
    n = G.modulus
    gens = [s for s in dict.fromkeys(seeds) if s != ONE]
    elems = _close(gens, n, G.order) if gens else {ONE}
    conj = [(g, tinv(g, n)) for g in G.gens]
    changed = True
    while changed:
        changed = False
        for g, gi in conj:
            for h in list(gens):
                c = tmul(tmul(g, h, n), gi, n)
                if c not in elems:
                    gens.append(c)
                    elems = _close(gens, n, G.order, seed=elems)
                    changed = True
    return MatGroup(n, gens or [ONE], _elements=elems)


def derived_subgroup(G: MatGroup) -> MatGroup:
    """D(G), the normal closure of the commutators of pairs of generators."""
    n = G.modulus
    seeds = [commutator(x, y, n) for x, y in itertools.combinations(G.gens, 2)]
    return normal_closure(G, seeds)


def det_image(G: MatGroup) -> frozenset[int]:
    """{det g : g in G} as a set of residues, generated by the generators' determinants."""
    n = G.modulus
    dets = {tdet(g, n) for g in G.gens}
    image = {1 % n}
    frontier = list(image)
    while frontier:
        nxt = []
        for x in frontier:
            for d in dets:
                y = x * d % n
                if y not in image:
                    image.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(image)


def sl_intersection(G: MatGroup) -> MatGroup:
    n = G.modulus
    return MatGroup.from_elements(n, [x for x in G.elements if tdet(x, n) == 1 % n])


def contains_sl2(G: MatGroup) -> bool:
    n = G.modulus
    return (0, n - 1, 1, 0) in G.element_set and (1, 1, 0, 1) in G.element_set


def quotient_order_of(G: MatGroup, N: MatGroup, g: Entries | Mat2) -> int:
    """Order of the class of ``g`` in G/N."""
    n = G.modulus
    x = g.entries if isinstance(g, Mat2) else tuple(g)
    y, d = x, 1
    while y not in N.element_set:
        y = tmul(y, x, n)
        d += 1
        if d > G.order:
            raise InternalInconsistency("class order exceeds |G|")
    return d


def abelian_invariants(G: MatGroup, N: MatGroup) -> list[int]:
    """Invariant factors ``[d1, d2, ...]`` (d1 | d2 | ...) of the abelian quotient G/N.

    The p-primary part is read off from the number of classes killed by p^k for
    each k; those counts determine the partition of exponents exactly.
    """
    if G.modulus != N.modulus or not N.is_subgroup_of(G):
        raise NotNormal("N is not a subgroup of G")
    if not N.is_normal_in(G):
        raise NotNormal("N is not normal in G")
    n = G.modulus
    for x, y in itertools.combinations(G.gens, 2):
        if commutator(x, y, n) not in N.element_set:
            raise NotAbelianQuotient("G/N is not abelian")
    q = G.order // N.order
    if q == 1:
        return []

    reps: list[Entries] = []
    seen: set[Entries] = set()
    for x in G.elements:
        if x not in seen:
            reps.append(x)
            seen.update(tmul(x, h, n) for h in N.elements)
    if len(reps) != q:
        raise InternalInconsistency("coset count disagrees with |G|/|N|")

    factors_by_prime: dict[int, list[int]] = {}
    for p, e in factor(q).items():
        ranks = [0]
        for k in range(1, e + 1):
            killed = sum(1 for r in reps if tpow(r, p**k, n) in N.element_set)
            ranks.append(factor(killed).get(p, 0) if killed > 1 else 0)
        # ranks[k] - ranks[k-1] = number of cyclic p-factors of exponent >= k
        at_least = [ranks[k] - ranks[k - 1] for k in range(1, e + 1)]
        exps = []
        for k in range(1, e + 1):
            more = at_least[k] if k < e else 0
            exps += [k] * (at_least[k - 1] - more)
        factors_by_prime[p] = sorted(exps, reverse=True)

    width = max(len(v) for v in factors_by_prime.values())
    invariants = []
    for i in range(width):
        d = 1
        for p, exps in factors_by_prime.items():
            if i < len(exps):
                d *= p ** exps[i]
        invariants.append(d)
    invariants.sort()
    prod = 1
    for a, b in zip(invariants, invariants[1:]):
        if b % a:
            raise InternalInconsistency(f"invariants {invariants} do not form a divisibility chain")
    for d in invariants:
        prod *= d
    if prod != q:
        raise InternalInconsistency(f"invariants {invariants} multiply to {prod}, not {q}")
    return invariants


def _conjugator_candidates(n: int):
    yield ONE
    for x in itertools.product(range(n), repeat=4):
        if x != ONE and gcd((x[0] * x[3] - x[1] * x[2]) % n, n) == 1:
            yield x


def contains_conjugate_of(G: MatGroup, g: Mat2, *, prefilter: bool = True) -> Mat2 | None:
    """First c in GL2(n) (identity first, then lexicographic) with c g c^-1 in G.

    With ``prefilter`` the search is skipped when no element of G shares the
    determinant, trace and order of ``g``, which conjugation preserves.
    """
    from .modmat import torder

    n = G.modulus
    if g.modulus != n:
        raise BadModulus("matrix and group moduli differ")
    x = g.entries
    members = G.element_set
    if prefilter:
        sig = (tdet(x, n), (x[0] + x[3]) % n, torder(x, n))
        if not any(((y[0] + y[3]) % n == sig[1] and tdet(y, n) == sig[0]) and torder(y, n) == sig[2] for y in members):
            return None
    for c in _conjugator_candidates(n):
        if tmul(tmul(c, x, n), tinv(c, n), n) in members:
            return Mat2(n, c)
    return None


def crt_mat(x: Entries, m: int, y: Entries, n: int) -> Entries:
    """The matrix mod mn reducing to ``x`` mod m and ``y`` mod n (gcd(m, n) = 1)."""
    inv = pow(m, -1, n)
    return tuple((a + m * (((b - a) * inv) % n)) % (m * n) for a, b in zip(x, y))


def is_fiber_product_trivial(G: MatGroup, m: int, n: int) -> bool:
    """True iff G is the full product of its images mod m and mod n."""
    if m < 2 or n < 2 or gcd(m, n) != 1 or m * n != G.modulus:
        raise BadModulus(f"({m}, {n}) is not a coprime factorisation of {G.modulus}")
    return reduce_group(G, m).order * reduce_group(G, n).order == G.order


__all__ += ["_close", "_close_bounded", "ONE"]
