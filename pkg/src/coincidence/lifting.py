"""Lifting along the reduction maps GL2(Z/MZ) -> GL2(Z/mZ), m | M.

``group_split_liftable`` searches for a subgroup of GL2(M) mapping
isomorphically onto a given G <= GL2(m); ``sequence_splits`` asks the same
question inside a fixed H <= GL2(M), i.e. whether H -> H mod m splits.
Negative answers are exhaustive; a search that runs out of budget is reported
as exhausted and never as a proof.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from .config import limits
from .errors import BadModulus, SearchBudgetExceeded
from .matgroup import ONE, MatGroup, _close, _close_bounded, reduce_group
from .modmat import Entries, Mat2, check_modulus, tdet, tpow, torder

__all__ = [
    "LiftResult",
    "LiftStatus",
    "element_split_liftable",
    "full_preimage",
    "group_split_liftable",
    "irredundant_generators",
    "lift_fibers",
    "reduction_kernel",
    "sequence_splits",
]


class LiftStatus(str, enum.Enum):
    LIFTABLE = "liftable"
    NOT_LIFTABLE = "not_liftable"
    EXHAUSTED = "exhausted"


@dataclass(frozen=True)
class LiftResult:
    status: LiftStatus
    witness: Mat2 | MatGroup | None = None
    search_count: int = 0

    @property
    def liftable(self) -> bool:
        return self.status is LiftStatus.LIFTABLE


def _check_pair(M: int, m: int):
    check_modulus(M)
    if m < 2 or M % m or M == m:
        raise BadModulus(f"{m} must properly divide {M}")


def _fiber(x: Entries, m: int, M: int) -> list[Entries]:
    r = M // m
    out = []
    for t in itertools.product(range(r), repeat=4):
        y = tuple(a + m * s for a, s in zip(x, t))
        if gcd(tdet(y, M), M) == 1:
            out.append(y)
    return out


def reduction_kernel(M: int, m: int) -> MatGroup:
    """Kernel of GL2(M) -> GL2(m): the invertible matrices congruent to I mod m."""
    _check_pair(M, m)
    return MatGroup.from_elements(M, _fiber(ONE, m, M))


def lift_fibers(g: Mat2, M: int) -> list[Mat2]:
    """Every invertible matrix mod M reducing to ``g``, in lexicographic order."""
    m = g.modulus
    _check_pair(M, m)
    if not g.is_invertible():
        raise BadModulus(f"{g} is not invertible")
    return [Mat2(M, y) for y in _fiber(g.entries, m, M)]


def element_split_liftable(g: Mat2, M: int, *, within: MatGroup | None = None) -> LiftResult:
    """Search the fiber over ``g`` for a lift of the same order."""
    m = g.modulus
    _check_pair(M, m)
    d = torder(g.entries, m)
    count = 0
    for y in _fiber(g.entries, m, M):
        if within is not None and y not in within.element_set:
            continue
        count += 1
        if tpow(y, d, M) == ONE:
            return LiftResult(LiftStatus.LIFTABLE, Mat2(M, y), count)
    return LiftResult(LiftStatus.NOT_LIFTABLE, None, count)


def irredundant_generators(G: MatGroup) -> tuple[list[Entries], list[int]]:
    """Drop generators already in the span of the earlier ones.

    Returns the kept generators and the orders of the successive partial spans.
    """
    n = G.modulus
    kept: list[Entries] = []
    sizes: list[int] = []
    span = {ONE}
    for g in G.gens:
        if g not in span:
            kept.append(g)
            span = _close(kept, n, G.order, seed=span)
            sizes.append(len(span))
    if not kept:
        kept, sizes = [ONE], [1]
    return kept, sizes


def group_split_liftable(
    G: MatGroup,
    M: int,
    *,
    within: MatGroup | None = None,
    budget: int | None = None,
    samples: int = 16,
    seed: int | None = None,
) -> LiftResult:
    """Look for G' <= GL2(M) (inside ``within`` when given) mapping isomorphically onto G.

    Depth-first over one lift per generator. A branch is cut as soon as the
    closure of the lifts chosen so far is larger than the span of the
    corresponding generators, which is exactly the failure of injectivity.
    """
    m = G.modulus
    _check_pair(M, m)
    if within is not None and within.modulus != M:
        raise BadModulus("`within` must live mod M")
    budget = limits().search_budget if budget is None else budget
    rng = random.Random(limits().seed if seed is None else seed)

    # element obstruction: a lift of G carries an equal-order lift of each of its elements
    probes = list(G.gens) + rng.sample(G.elements, min(samples, G.order))
    count = 0
    for x in dict.fromkeys(probes):
        res = element_split_liftable(Mat2(m, x), M, within=within)
        count += res.search_count
        if not res.liftable:
            return LiftResult(LiftStatus.NOT_LIFTABLE, None, count)

    gens, sizes = irredundant_generators(G)
    candidates = []
    for x in gens:
        d = torder(x, m)
        fiber = _fiber(x, m, M)
        if within is not None:
            fiber = [y for y in fiber if y in within.element_set]
        candidates.append([y for y in fiber if tpow(y, d, M) == ONE])

    chosen: list[Entries] = []

    def search(depth: int):
        nonlocal count
        if depth == len(gens):
            return True
        for y in candidates[depth]:
            if count >= budget:
                raise SearchBudgetExceeded
            count += 1
            chosen.append(y)
            if _close_bounded(chosen, M, sizes[depth]) is not None and search(depth + 1):
                return True
            chosen.pop()
        return False

    try:
        found = search(0)
    except SearchBudgetExceeded:
        return LiftResult(LiftStatus.EXHAUSTED, None, count)
    if not found:
        return LiftResult(LiftStatus.NOT_LIFTABLE, None, count)
    witness = MatGroup(M, chosen)
    return LiftResult(LiftStatus.LIFTABLE, witness, count)


def sequence_splits(H: MatGroup, m: int, *, budget: int | None = None) -> MatGroup | None:
    """A complement C <= H to K = ker(H -> H mod m), or None when the sequence does not split.

    Searches coset representatives of K inside H for the generators of the
    quotient, pruning a branch once the partial closure meets K nontrivially.
    Raises SearchBudgetExceeded instead of answering when the budget runs out.
    """
    M = H.modulus
    _check_pair(M, m)
    budget = limits().search_budget if budget is None else budget

    def red(x: Entries) -> Entries:
        return tuple(v % m for v in x)

    fibers: dict[Entries, list[Entries]] = {}
    for h in H.elements:
        fibers.setdefault(red(h), []).append(h)
    kernel = frozenset(fibers.get((1, 0, 0, 1 % m), ()))
    Q = reduce_group(H, m)
    qgens, _ = irredundant_generators(Q)
    qgens = [q for q in qgens if q != (1, 0, 0, 1)]
    if not qgens:
        return MatGroup(M, [ONE])

    candidates = []
    for q in qgens:
        d = torder(q, m)
        candidates.append([h for h in fibers[q] if tpow(h, d, M) == ONE])

    chosen: list[Entries] = []
    count = 0

    def meets_kernel(elems: Iterable[Entries]) -> bool:
        return any(x in kernel and x != ONE for x in elems)

    def search(depth: int):
        nonlocal count
        if depth == len(qgens):
            return True
        for y in candidates[depth]:
            if count >= budget:
                raise SearchBudgetExceeded(f"complement search exceeded {budget} closures")
            count += 1
            chosen.append(y)
            span = _close_bounded(chosen, M, Q.order)
            if span is not None and not meets_kernel(span) and search(depth + 1):
                return True
            chosen.pop()
        return False

    if not search(0):
        return None
    C = MatGroup(M, chosen)
    if C.order != Q.order or meets_kernel(C.elements):
        raise AssertionError("complement failed verification")
    return C


def _layer_generators(p: int, s: int, k: int) -> list[Entries]:
    """I + p^t E_ij for s <= t < k; they generate ker(GL2(p^k) -> GL2(p^s))."""
    M = p**k
    out = []
    for t in range(s, k):
        q = p**t
        for i in range(4):
            e = [0, 0, 0, 0]
            e[i] = q
            out.append(((1 + e[0]) % M, e[1], e[2], (1 + e[3]) % M))
    return out


def full_preimage(G: MatGroup, M: int) -> MatGroup:
    """The full preimage of G <= GL2(m) in GL2(M)."""
    m = G.modulus
    if M == m:
        return G
    _check_pair(M, m)
    lifted = [tuple(g) for g in G.gens]
    from .arith import factor

    fm, fM = factor(m), factor(M)
    if len(fM) == 1 and set(fm) == set(fM):
        (p, k), = fM.items()
        kernel_gens = _layer_generators(p, fm[p], k)
    else:
        kernel_gens = list(reduction_kernel(M, m).gens)
    return MatGroup(M, lifted + kernel_gens)
