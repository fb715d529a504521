"""p-adic images given by a finite level, and their index sequences.

A ``PAdicImage`` is a subgroup G_s of GL2(Z/p^s) standing for its full
preimage in GL2(Z_p); levels below s are reductions and levels above s are
full preimages. Orders of the levels below s are computed with a sift through
the congruence filtration, so images far larger than the element cap can be
profiled without being enumerated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .arith import gl2_order, is_prime, totient
from .config import limits
from .errors import BadModulus, GroupTooLarge, InternalInconsistency
from .lifting import full_preimage
from .matgroup import ONE, MatGroup, _close, det_image, reduce_group
from .modmat import Entries, check_modulus, tinv, tmul, tpow

__all__ = [
    "IndexProfile",
    "PAdicImage",
    "RatioCheck",
    "adelic_index_lower_bound",
    "check_ratio_sequence",
    "detect_vertical_coincidences",
    "index_profile",
    "level_image",
    "level_orders",
    "monotone_ratio_check",
]


@dataclass(frozen=True)
class PAdicImage:
    p: int
    depth: int
    base_group: MatGroup = field(compare=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise BadModulus(f"{self.p} is not prime")
        if self.depth < 1:
            raise BadModulus("depth must be at least 1")
        if self.base_group.modulus != self.p**self.depth:
            raise BadModulus(
                f"base group lives mod {self.base_group.modulus}, expected {self.p}^{self.depth}"
            )

    @property
    def modulus(self) -> int:
        return self.p**self.depth


@dataclass(frozen=True)
class IndexProfile:
    p: int
    levels: int
    orders: tuple[int, ...]
    i: tuple[int, ...]
    j: tuple[int, ...]
    ell: tuple[int, ...]
    u: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "orders": list(self.orders),
            "i": list(self.i),
            "j": list(self.j),
            "ell": list(self.ell),
            "u": list(self.u),
        }


@dataclass(frozen=True)
class RatioCheck:
    passed: bool
    first_violation: int | None = None  # level k where u_{k+1} does not divide u_k


# -- congruence-filtration sift -------------------------------------------------


class _LayerSift:
    """Generating data for a subgroup of ker(GL2(p^s) -> GL2(p)).

    Layer t holds elements congruent to I mod p^t whose images in
    (I + p^t M2) / (I + p^{t+1} M2) ~ F_p^4 are kept in echelon form. The
    structure is closed under p-th powers and commutators, so the group it
    generates has order p^(total basis size), and the layer sizes are the
    orders of the successive congruence quotients.
    """

    def __init__(self, p: int, s: int):
        self.p, self.s, self.n = p, s, p**s
        self.layers: list[list[tuple[int, tuple[int, ...], Entries]]] = [[] for _ in range(s)]

    def _depth(self, g: Entries) -> int:
        diff = (g[0] - 1, g[1], g[2], g[3] - 1)
        t = 0
        q = self.p
        while t < self.s and all(x % q == 0 for x in diff):
            t += 1
            q *= self.p
        return t

    def _vector(self, g: Entries, t: int) -> list[int]:
        q = self.p**t
        diff = (g[0] - 1, g[1], g[2], g[3] - 1)
        return [(x // q) % self.p for x in diff]

    def sift(self, g: Entries) -> Entries | None:
        """Reduce g through the layers; return the leftover (new basis element) or None."""
        p, n = self.p, self.n
        while True:
            t = self._depth(g)
            if t >= self.s:
                return None
            if t == 0:
                raise InternalInconsistency("sifted element is not congruent to I mod p")
            v = self._vector(g, t)
            for piv, _, b in self.layers[t]:
                c = v[piv]
                if c:
                    g = tmul(g, tpow(b, p - c, n), n)
                    v = self._vector(g, t) if self._depth(g) == t else [0, 0, 0, 0]
            if any(v):
                piv = next(i for i, x in enumerate(v) if x)
                # normalize so the pivot coordinate is 1
                g = tpow(g, pow(v[piv], -1, p), n)
                self.layers[t].append((piv, tuple(self._vector(g, t)), g))
                return g

    def add(self, g: Entries):
        queue = [g]
        while queue:
            new = self.sift(queue.pop())
            if new is None:
                continue
            queue.append(tpow(new, self.p, self.n))
            for layer in self.layers:
                for _, _, b in layer:
                    queue.append(_commutator(new, b, self.n))

    def layer_sizes(self) -> list[int]:
        """Sizes (as exponents of p) of the quotients at layers 1..s-1."""
        return [len(self.layers[t]) for t in range(1, self.s)]


def _commutator(x: Entries, y: Entries, n: int) -> Entries:
    return tmul(tmul(tinv(x, n), tinv(y, n), n), tmul(x, y, n), n)


def level_orders(G: MatGroup, p: int) -> list[int]:
    """[|G mod p|, |G mod p^2|, ..., |G|] for G <= GL2(p^s), without enumerating G."""
    n = G.modulus
    s = 0
    while p ** (s + 1) <= n and n % p ** (s + 1) == 0:
        s += 1
    if p**s != n:
        raise BadModulus(f"{n} is not a power of {p}")
    gens = list(G.gens) or [ONE]

    # coset representatives of ker(G -> G mod p), indexed by the residue mod p
    reps: dict[Entries, Entries] = {tuple(v % p for v in ONE): ONE}
    frontier = [ONE]
    schreier: list[Entries] = []
    while frontier:
        nxt = []
        for r in frontier:
            for x in gens:
                y = tmul(r, x, n)
                key = tuple(v % p for v in y)
                if key in reps:
                    schreier.append(tmul(y, tinv(reps[key], n), n))
                else:
                    reps[key] = y
                    nxt.append(y)
        frontier = nxt
    bottom = len(reps)
    if s == 1:
        return [bottom]
    sift = _LayerSift(p, s)
    for g in schreier:
        sift.add(g)
    out = [bottom]
    for e in sift.layer_sizes():
        out.append(out[-1] * p**e)
    return out


# -- levels and profiles --------------------------------------------------------


def level_image(X: PAdicImage, k: int) -> MatGroup:
    """G_k: the reduction of the base group when k <= depth, its full preimage above."""
    if k < 1:
        raise BadModulus("level must be at least 1")
    M = check_modulus(X.p**k)
    if k == X.depth:
        return X.base_group
    if k < X.depth:
        return reduce_group(X.base_group, M)
    size = level_orders(X.base_group, X.p)[-1] * X.p ** (4 * (k - X.depth))
    if size > limits().group_cap:
        raise GroupTooLarge(f"level {k} has {size} elements, above the cap")
    return full_preimage(X.base_group, M)


def _divides(a: int, b: int) -> bool:
    return b % a == 0


def index_profile(X: PAdicImage, kmax: int) -> IndexProfile:
    """Indices i_k = [GL2 : G_k], j_k = [units : det G_k], ell_k = i_k / j_k, and u_k = i_{k+1}/i_k."""
    if kmax < 2:
        raise BadModulus("kmax must be at least 2")
    p, s = X.p, X.depth
    check_modulus(p**kmax)
    low = level_orders(X.base_group, p)
    dets = det_image(X.base_group)
    orders, i_seq, j_seq, ell_seq = [], [], [], []
    for k in range(1, kmax + 1):
        q = p**k
        if k <= s:
            order = low[k - 1]
            ndet = len({d % q for d in dets})
        else:
            order = low[-1] * p ** (4 * (k - s))
            ndet = len(dets) * p ** (k - s)
        total = gl2_order(q)
        if total % order or totient(q) % ndet:
            raise InternalInconsistency(f"level {k}: Lagrange fails")
        i_k, j_k = total // order, totient(q) // ndet
        if i_k % j_k:
            raise InternalInconsistency(f"level {k}: j_k={j_k} does not divide i_k={i_k}")
        orders.append(order)
        i_seq.append(i_k)
        j_seq.append(j_k)
        ell_seq.append(i_k // j_k)
    u = []
    for k in range(kmax - 1):
        if not _divides(i_seq[k], i_seq[k + 1]):
            raise InternalInconsistency(f"i_{k + 1} does not divide i_{k + 2}")
        ratio = i_seq[k + 1] // i_seq[k]
        if not _divides(ratio, p**4):
            raise InternalInconsistency(f"u_{k + 1}={ratio} does not divide p^4")
        u.append(ratio)
    return IndexProfile(p, kmax, tuple(orders), tuple(i_seq), tuple(j_seq), tuple(ell_seq), tuple(u))


def detect_vertical_coincidences(X: PAdicImage, kmax: int | None = None) -> list[int]:
    """Levels k with G_k isomorphic to G_{k+1}, i.e. u_k = p^4.

    A coincidence at level k forces one at every lower level (from 2 when p = 2);
    a profile contradicting this raises InternalInconsistency.
    """
    if kmax is None:
        kmax = max(2, X.depth + 1)
    prof = index_profile(X, kmax)
    p = X.p
    hits = [k + 1 for k, r in enumerate(prof.u) if r == p**4]
    floor = 1 if p != 2 else 2
    for k in hits:
        for lower in range(floor, k):
            if prof.u[lower - 1] != p**4:
                raise InternalInconsistency(
                    f"coincidence at level {k} without one at level {lower}"
                )
    return hits


def check_ratio_sequence(p: int, u: Sequence[int]) -> RatioCheck:
    """u_{k+1} | u_k from k = 1 (odd p) or k = 2 (p = 2) on; u is 1-indexed."""
    start = 1 if p != 2 else 2
    for k in range(start, len(u)):
        if u[k - 1] % u[k]:
            return RatioCheck(False, k)
    return RatioCheck(True, None)


def monotone_ratio_check(X: PAdicImage, kmax: int) -> RatioCheck:
    if kmax < 3:
        return RatioCheck(False, None)
    return check_ratio_sequence(X.p, index_profile(X, kmax).u)


def adelic_index_lower_bound(p: int, k: int) -> int:
    """Power of p forced into the adelic index by G_{p^k} ~ G_{p^{k+1}}."""
    if not is_prime(p) or k < 1:
        raise BadModulus("need a prime p and k >= 1")
    if p == 2:
        return max(2**4, 2 ** (4 * k - 1))
    return p ** (4 * k)
