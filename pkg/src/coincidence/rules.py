"""Obstruction rules for coincidences F(E[m]) = F(E[n]) (or F(E[m]) = F(E'[n])).

Each rule reads a ``CurveRecord`` and either obstructs the query, records
that its constraint holds (possibly vacuously, when its hypotheses are not
met), or reports which record field it would need. Rules never treat a
missing field as permission or as obstruction.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import gcd, lcm
from typing import Callable, Iterable, Mapping

from .arith import factor, is_prime, sl2_order, totient, vp
from .errors import BadModulus, MalformedRecord, NotLarge
from .matgroup import MatGroup, contains_conjugate_of, contains_sl2, derived_subgroup, reduce_group
from .modmat import T, torder

__all__ = [
    "Bound",
    "CMData",
    "CurveRecord",
    "CyclotomicData",
    "CyclotomicRequirement",
    "Finding",
    "IdealData",
    "LargeImageAnalysis",
    "LocalData",
    "ObstructionReport",
    "Reduction",
    "Verdict",
    "audit",
    "cyclotomic_requirement",
    "large_image_analysis",
    "ramification_bound",
]


# -- record types ------------------------------------------------------------------


class Reduction(str, enum.Enum):
    GOOD = "good"
    GOOD_ORDINARY = "good_ordinary"
    GOOD_SUPERSINGULAR = "good_supersingular"
    MULT_SPLIT = "multiplicative_split"
    MULT_NONSPLIT = "multiplicative_nonsplit"
    ADDITIVE = "additive"  # potential good reduction unknown
    ADDITIVE_POT_GOOD = "additive_potentially_good"
    ADDITIVE_NOT_POT_GOOD = "additive_not_potentially_good"

    @property
    def is_good(self) -> bool:
        return self in (Reduction.GOOD, Reduction.GOOD_ORDINARY, Reduction.GOOD_SUPERSINGULAR)

    @property
    def is_multiplicative(self) -> bool:
        return self in (Reduction.MULT_SPLIT, Reduction.MULT_NONSPLIT)

    @property
    def is_additive(self) -> bool:
        return self in (Reduction.ADDITIVE, Reduction.ADDITIVE_POT_GOOD, Reduction.ADDITIVE_NOT_POT_GOOD)


@dataclass(frozen=True)
class IdealData:
    e: int
    reduction: Reduction
    v_j: int | None = None  # valuation of j(E) at the ideal


@dataclass(frozen=True)
class LocalData:
    p: int
    ideals: tuple[IdealData, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise MalformedRecord(f"local: {self.p} is not prime")
        if not self.ideals:
            raise MalformedRecord(f"local: no ideal listed above {self.p}")
        for ideal in self.ideals:
            if ideal.e < 1:
                raise MalformedRecord(f"local: ramification index {ideal.e} above {self.p}")


@dataclass(frozen=True)
class CMData:
    field_is_K_of_j: bool


@dataclass(frozen=True)
class CyclotomicData:
    """How F meets Q(mu_{p^oo}).

    ``trivial_through``: largest k with F meet Q(zeta_{p^k}) = Q (None means every k).
    ``r``: largest r with Q(zeta_{p^r}) inside F.
    """

    trivial_through: int | None
    r: int

    def trivial_at(self, k: int) -> bool:
        return self.trivial_through is None or k <= self.trivial_through


@dataclass(frozen=True)
class CurveRecord:
    name: str = ""
    field_disc_primes: frozenset[int] | None = None
    conductor_norm_primes: frozenset[int] | None = None
    local: Mapping[int, LocalData] | None = None
    cm: CMData | None = None
    cyclotomic_trivial: Mapping[int, CyclotomicData] | None = None
    zeta_in_F: frozenset[int] | None = None
    cyclotomic_disjoint: bool | None = None
    images: Mapping[int, MatGroup] | None = field(default=None, compare=False)
    entanglement_set: frozenset[int] | None = None
    j_cube_root_in_F: bool | None = None

    def __post_init__(self):
        for label in ("field_disc_primes", "conductor_norm_primes", "entanglement_set"):
            primes = getattr(self, label)
            if primes is not None and not all(is_prime(q) for q in primes):
                raise MalformedRecord(f"{label}: entries must be primes")
        if self.local is not None:
            for p, loc in self.local.items():
                if loc.p != p:
                    raise MalformedRecord(f"local: entry keyed {p} describes {loc.p}")
        if self.images is not None:
            for m, G in self.images.items():
                if G.modulus != m:
                    raise MalformedRecord(f"images: level {m} holds a group mod {G.modulus}")
        if self.cyclotomic_trivial is not None:
            for p, cyc in self.cyclotomic_trivial.items():
                if not is_prime(p) or cyc.r < 0:
                    raise MalformedRecord(f"cyclotomic_trivial: bad entry for {p}")
                # zeta_p in F (p odd) makes F meet Q(zeta_p) nontrivially and ramifies p
                if p != 2 and cyc.r >= 1:
                    if cyc.trivial_at(1):
                        raise MalformedRecord(f"cyclotomic_trivial[{p}]: r >= 1 contradicts trivial_through")
                    if self.field_disc_primes is not None and p not in self.field_disc_primes:
                        raise MalformedRecord(f"cyclotomic_trivial[{p}]: r >= 1 but {p} is unramified in F")
        if self.zeta_in_F is not None and any(z < 1 for z in self.zeta_in_F):
            raise MalformedRecord("zeta_in_F: entries must be positive")

    def has_zeta(self, n: int) -> bool | None:
        """Whether zeta_n lies in F; ``zeta_in_F`` lists the roots of unity of F up to divisors."""
        if n in (1, 2):
            return True
        if self.zeta_in_F is None:
            return None
        return any(z % n == 0 for z in self.zeta_in_F)

    def image_at(self, level: int) -> MatGroup | None:
        """The mod-``level`` image, reduced from any supplied multiple of ``level``."""
        if level < 2 or not self.images:
            return None
        if level in self.images:
            return self.images[level]
        for M in sorted(self.images):
            if M % level == 0:
                return reduce_group(self.images[M], level)
        return None

    def r_at(self, p: int) -> int | None:
        if self.cyclotomic_trivial is not None and p in self.cyclotomic_trivial:
            return self.cyclotomic_trivial[p].r
        if self.field_disc_primes is not None and p not in self.field_disc_primes and p != 2:
            return 0
        return None


# -- ramification tables -----------------------------------------------------------


class Bound(str, enum.Enum):
    """Ramification of F(E[m])/F at an ideal above p, for p not dividing m."""

    UNRAMIFIED = "unramified"
    TAME = "tame"  # v_p(t) = 0
    VP_AT_MOST_1 = "vp_at_most_1"
    VP_AT_MOST_3 = "vp_at_most_3"


def ramification_bound(reduction: Reduction, p: int) -> Bound:
    if reduction.is_good:
        return Bound.UNRAMIFIED
    if reduction.is_multiplicative:
        if p != 2 or reduction is Reduction.MULT_SPLIT:
            return Bound.TAME
        return Bound.VP_AT_MOST_1
    if p > 3:
        return Bound.TAME
    if p == 3:
        if reduction is Reduction.ADDITIVE_NOT_POT_GOOD:
            return Bound.TAME
        # potentially good, or unknown: the looser of the two bounds
        return Bound.VP_AT_MOST_1
    return Bound.VP_AT_MOST_3


@dataclass(frozen=True)
class CyclotomicRequirement:
    bound: Bound
    requirement: str
    holds: bool


def cyclotomic_requirement(bound: Bound, p: int, k: int, e: int) -> CyclotomicRequirement:
    """Whether F(zeta_{p^k}) can sit inside F(E[m]) under ``bound`` when e_p(F/Q) = e."""
    if not is_prime(p) or k < 1 or e < 1:
        raise BadModulus("need a prime p, k >= 1 and e >= 1")
    if bound is Bound.UNRAMIFIED:
        phi = totient(p**k)
        return CyclotomicRequirement(bound, f"phi({p}^{k}) = {phi} divides e", e % phi == 0)
    slack = {Bound.TAME: 1, Bound.VP_AT_MOST_1: 2, Bound.VP_AT_MOST_3: 4}[bound]
    need = k - slack
    return CyclotomicRequirement(bound, f"v_{p}(e) >= {need}", vp(e, p) >= need)


# -- report -----------------------------------------------------------------------------


class Verdict(str, enum.Enum):
    OBSTRUCTED = "obstructed"
    SATISFIED = "constraint_satisfied"
    NOT_APPLICABLE = "not_applicable"


CITATIONS = {
    "R1": "Thm. coincidence-ramified-or-bad-reduction",
    "R2": "Cor. coincidence-and-reduction",
    "R3": "Cor. greatest-prime-divisor-coincidence",
    "R4": "Cor. vertical-coincidence-and-trivial-intersection",
    "R5": "Thm. ramification-and-vertical-coincidence",
    "R6": "Prop. coincidence-CM",
    "R7": "Thm. large-image-m-odd / Thm. coincidence-72-divides-m",
    "R8": "Thm. T-and-vertical-coincidence",
    "R9": "Lemma cyclic-subfield-order",
    "J3": "Lemma cube-root-of-j",
    "S": "Lemma primes-in-S",
    "R1'": "Thm. coincidence-and-reduction-two-curves",
    "R2'": "Thm. vertical-coincidence-two-curves",
    "R3'": "Thm. ramified-or-bad-reduction-two-curves",
    "R4'": "Thm. large-image-two-curves",
}
RULE_ORDER = list(CITATIONS)


@dataclass(frozen=True)
class Finding:
    rule: str
    subject: str
    verdict: Verdict
    detail: str
    missing: str | None = None

    @property
    def citation(self) -> str:
        return f"{self.rule} / {CITATIONS[self.rule]}"

    @property
    def key(self) -> tuple[str, str]:
        return self.rule, self.subject

    def to_json(self) -> dict:
        out = {
            "rule": self.rule,
            "subject": self.subject,
            "verdict": self.verdict.value,
            "detail": self.detail,
            "citation": self.citation,
        }
        if self.missing:
            out["missing"] = self.missing
        return out


@dataclass(frozen=True)
class ObstructionReport:
    m: int
    n: int
    two_curves: bool
    findings: tuple[Finding, ...]

    @property
    def obstructed(self) -> bool:
        return any(f.verdict is Verdict.OBSTRUCTED for f in self.findings)

    @property
    def overall(self) -> Verdict:
        return Verdict.OBSTRUCTED if self.obstructed else Verdict.SATISFIED

    def by_rule(self, rule: str) -> list[Finding]:
        return [f for f in self.findings if f.rule == rule]

    def to_json(self) -> dict:
        return {
            "query": [self.m, self.n],
            "two_curves": self.two_curves,
            "overall": self.overall.value,
            "findings": [f.to_json() for f in self.findings],
        }

    def render(self) -> str:
        side = "F(E'[n])" if self.two_curves else "F(E[n])"
        lines = [f"query F(E[{self.m}]) = {side.replace('n', str(self.n))}: {self.overall.value}"]
        for f in self.findings:
            tag = f.verdict.value.upper()
            extra = f" [missing: {f.missing}]" if f.missing else ""
            lines.append(f"  {tag:<22} {f.citation:<60} {f.subject}: {f.detail}{extra}")
        return "\n".join(lines)


def _obstructed(rule, subject, detail):
    return Finding(rule, subject, Verdict.OBSTRUCTED, detail)


def _ok(rule, subject, detail):
    return Finding(rule, subject, Verdict.SATISFIED, detail)


def _missing(rule, subject, field_name, detail=""):
    return Finding(rule, subject, Verdict.NOT_APPLICABLE, detail or f"needs {field_name}", field_name)


# -- large images -----------------------------------------------------------------------


@dataclass(frozen=True)
class LargeImageAnalysis:
    contains_sl2: bool
    derived_is_sl2: bool
    abelian_part: str  # "full_cyclotomic" or "cyclotomic_plus_z3"


def large_image_analysis(G: MatGroup) -> LargeImageAnalysis:
    """For odd m and SL2(m) <= G: is D(G) all of SL2(m), and what is the abelian part of F(E[m])."""
    m = G.modulus
    if m % 2 == 0 or m < 3:
        raise BadModulus(f"level must be odd and at least 3, got {m}")
    if not contains_sl2(G):
        raise NotLarge(f"the group does not contain SL2({m})")
    full = derived_subgroup(G).order == sl2_order(m)
    if not full and m % 3:
        raise AssertionError("derived subgroup is proper although 3 does not divide m")
    return LargeImageAnalysis(True, full, "full_cyclotomic" if full else "cyclotomic_plus_z3")


# -- helpers ----------------------------------------------------------------------------------


def _primes(x: int) -> set[int]:
    return set(factor(x)) if x > 1 else set()


def _reduction_condition(k: int, p: int) -> tuple[str, Callable[[Reduction], bool | None]] | None:
    """Reduction type forced at ideals above p by F(zeta_{p^k}) inside F(E[m]), p prime to m."""
    if k == 1:
        return "bad reduction", lambda red: not red.is_good
    if k == 2 and p == 2:
        return "additive or non-split multiplicative reduction", (
            lambda red: red.is_additive or red is Reduction.MULT_NONSPLIT
        )

    def pot_good(red: Reduction) -> bool | None:
        if red is Reduction.ADDITIVE:
            return None
        return red is Reduction.ADDITIVE_POT_GOOD

    if (k == 2 and p == 3) or (k in (3, 4) and p == 2):
        return "additive potentially good reduction", pot_good
    return None


def _cyclic_degree(p: int, k: int) -> int:
    """Largest cyclic quotient of (Z/p^k)^*."""
    if p != 2:
        return totient(p**k)
    if k <= 1:
        return 1
    return max(2, 2 ** (k - 2))


@dataclass(frozen=True)
class _Step:
    """F(E[p^low]) = F(E[p^high]); ``floor`` is the lowest level the index theorem extends it to."""

    p: int
    low: int
    high: int

    @property
    def floor(self) -> int:
        return 1 if self.p != 2 else min(self.low, 2)


def _vertical_steps(m: int, n: int, rec: CurveRecord):
    """For each p dividing both m and n to different powers: a step, or a reason there is none."""
    pure = len(_primes(m) | _primes(n)) == 1
    out = []
    for p in sorted(_primes(m) & _primes(n)):
        a, b = sorted((vp(m, p), vp(n, p)))
        if a == b:
            continue
        subject = f"p={p}"
        if pure or (rec.entanglement_set is not None and p not in rec.entanglement_set):
            out.append((subject, _Step(p, a, b), None))
        elif rec.entanglement_set is None:
            out.append((subject, None, "entanglement_set"))
        else:
            out.append((subject, None, f"{p} lies in the entanglement set"))
    return out


def _no_step(rule: str, subject: str, reason: str) -> Finding:
    if reason == "entanglement_set":
        return _missing(rule, subject, reason, "cannot isolate the p-part of the query")
    return _ok(rule, subject, f"hypothesis not met: {reason}")


# -- single-curve rules ----------------------------------------------------------------------


def _rule_divisibility(rule, m, n, recs: list[CurveRecord]) -> list[Finding]:
    out = []
    for p in sorted(_primes(m) | _primes(n)):
        if vp(m, p) == vp(n, p):
            continue
        subject = f"p={p}"
        if p == 2:
            out.append(_ok(rule, subject, "p = 2 is always allowed"))
            continue
        allowed, lacking = False, None
        for label in ("field_disc_primes", "conductor_norm_primes"):
            for rec in recs:
                primes = getattr(rec, label)
                if primes is None:
                    lacking = lacking or label
                elif p in primes:
                    allowed = True
        if allowed:
            out.append(_ok(rule, subject, f"{p} divides the discriminant or conductor norm"))
        elif lacking:
            out.append(_missing(rule, subject, lacking))
        else:
            out.append(_obstructed(rule, subject, f"{p} divides neither 2, Delta_F nor N(f_E)"))
    return out


def _reduction_rule(rule, m, n, rec_reduction: CurveRecord, rec_field: CurveRecord, orient: str) -> list[Finding]:
    """p | n, p prime to m: the reduction at ideals above p is constrained by v_p(n)."""
    out = []
    for p in sorted(_primes(n) - _primes(m)):
        k = vp(n, p)
        subject = f"p={p}{orient}"
        if rec_field.field_disc_primes is None:
            out.append(_missing(rule, subject, "field_disc_primes"))
            continue
        unramified = p not in rec_field.field_disc_primes
        if p == 2 and k == 1:
            out.append(_ok(rule, subject, "zeta_2 lies in F, no constraint"))
            continue
        cond = _reduction_condition(k, p)
        if unramified and cond is None:
            out.append(_obstructed(rule, subject, f"v_{p}(n) = {k} is impossible with {p} prime to m*Delta_F"))
            continue
        loc = None if rec_reduction.local is None else rec_reduction.local.get(p)
        if loc is None:
            out.append(_missing(rule, subject, "local", f"needs reduction data above {p}"))
            continue
        # ideals where the constraint is in force: all of them if p is unramified in F,
        # otherwise those whose e is prime to phi(p^k)
        ideals = [I for I in loc.ideals if unramified or gcd(I.e, totient(p**k)) == 1]
        if not ideals:
            out.append(_ok(rule, subject, f"{p} ramifies in F and no ideal has e prime to phi({p}^{k})"))
            continue
        if cond is None:
            out.append(_obstructed(rule, subject, f"v_{p}(n) = {k} is impossible at an ideal with e prime to phi"))
            continue
        label, test = cond
        results = [test(I.reduction) for I in ideals]
        if any(r is False for r in results):
            out.append(_obstructed(rule, subject, f"v_{p}(n) = {k} requires {label} above {p}"))
        elif any(r is None for r in results):
            out.append(_missing(rule, subject, "local", "potential good reduction unknown"))
        else:
            out.append(_ok(rule, subject, f"{label} above {p} as required"))
    return out


def _rule_greatest_prime(m, n, rec) -> list[Finding]:
    out = []
    for small, big, orient in ((m, n, ""), (n, m, " (swapped)")):
        if small < 2:
            continue
        top = max(_primes(small))
        for p in sorted(q for q in _primes(big) if q > top):
            k = vp(big, p)
            subject = f"p={p}{orient}"
            r = rec.r_at(p)
            if r is None:
                out.append(_missing("R3", subject, "cyclotomic_trivial"))
                continue
            if k <= r:
                out.append(_ok("R3", subject, f"hypothesis not met: zeta_{p}^{k} lies in F"))
                continue
            pow2 = (small & (small - 1)) == 0
            if k == 1:
                out.append(_ok("R3", subject, f"v_{p} = 1"))
            elif pow2 and p == 3 and ((r == 0 and k <= 2) or r == k - 1):
                out.append(_ok("R3", subject, f"(2^j, 3) exception with r = {r}, k = {k}"))
            else:
                out.append(_obstructed("R3", subject, f"v_{p} = {k} > 1 with r = {r}"))
    return out


def _rule_trivial_intersection(steps, rec) -> list[Finding]:
    out = []
    for subject, step, reason in steps:
        if step is None:
            out.append(_no_step("R4", subject, reason))
            continue
        p = step.p
        if p == 2:
            out.append(_ok("R4", subject, "p = 2 is allowed"))
            continue
        cyc = None if rec.cyclotomic_trivial is None else rec.cyclotomic_trivial.get(p)
        if cyc is None:
            out.append(_missing("R4", subject, "cyclotomic_trivial"))
        elif cyc.trivial_at(step.floor):
            out.append(_obstructed("R4", subject, f"F meets Q(zeta_{p}^{step.floor}) trivially and p is odd"))
        else:
            out.append(_ok("R4", subject, f"hypothesis not met: F meets Q(zeta_{p}) nontrivially"))
    return out


def _rule_supersingular(steps, rec) -> list[Finding]:
    out = []
    for subject, step, reason in steps:
        if step is None:
            out.append(_no_step("R5", subject, reason))
            continue
        p = step.p
        if step.floor != 1:
            out.append(_ok("R5", subject, f"hypothesis not met: the query does not reach F(E[{p}])"))
            continue
        loc = None if rec.local is None else rec.local.get(p)
        if loc is None:
            out.append(_missing("R5", subject, "local", f"needs reduction data above {p}"))
            continue
        k = step.high
        bad = [I for I in loc.ideals if I.reduction is Reduction.GOOD_SUPERSINGULAR and I.e % p ** (k - 1)]
        if bad:
            out.append(_obstructed("R5", subject, f"supersingular above {p} with {p}^{k - 1} not dividing e"))
        elif any(I.reduction is Reduction.GOOD for I in loc.ideals):
            out.append(_missing("R5", subject, "local", "ordinary or supersingular unknown"))
        else:
            out.append(_ok("R5", subject, "no supersingular ideal with small e"))
    return out


def _rule_cm(steps, rec) -> list[Finding]:
    out = []
    for subject, step, reason in steps:
        if step is None:
            out.append(_no_step("R6", subject, reason))
        elif rec.cm is None:
            out.append(_missing("R6", subject, "cm"))
        elif not rec.cm.field_is_K_of_j:
            out.append(_ok("R6", subject, "hypothesis not met: F is not K(j(E))"))
        elif step.p == 2 and step.low == 1 and step.high == 2:
            out.append(_ok("R6", subject, "(2, 4) is the one allowed step"))
        else:
            out.append(_obstructed("R6", subject, f"CM over K(j): no step beyond (2, 4), got ({step.p}^{step.low}, {step.p}^{step.high})"))
    return out


def _large_image_rule(rule, m, n, image: MatGroup | None, rec: CurveRecord, subject: str, with_72: bool) -> list[Finding]:
    out = []
    if m % 2 == 1 and m >= 3 and m % n and rec.has_zeta(n) is not True:
        if rec.has_zeta(n) is None:
            out.append(_missing(rule, subject, "zeta_in_F"))
        elif image is None:
            out.append(_missing(rule, subject, "images", f"needs the image mod {m}"))
        elif not contains_sl2(image):
            out.append(_ok(rule, subject, f"hypothesis not met: image mod {m} does not contain SL2"))
        else:
            info = large_image_analysis(image)
            if m % 3 or info.derived_is_sl2:
                out.append(_obstructed(rule, subject, f"image mod {m} is large and its abelian part is F(zeta_{m})"))
            elif rec.cyclotomic_disjoint:
                deg = totient(lcm(m, n)) // totient(m)
                if deg in (1, 3):
                    out.append(_ok(rule, subject, f"F(zeta_{n}) fits in a cubic extension of F(zeta_{m})"))
                else:
                    out.append(_obstructed(rule, subject, f"[F(zeta_lcm) : F(zeta_{m})] = {deg} is not 1 or 3"))
            else:
                out.append(_ok(rule, subject, "3 | m and D(G) has index 3 in SL2"))
    elif with_72 and m % 72 == 0:
        if image is None:
            out.append(_missing(rule, subject, "images", f"needs the image mod {m}"))
        elif not contains_sl2(image):
            out.append(_ok(rule, subject, f"hypothesis not met: image mod {m} does not contain SL2"))
        elif m % n == 0 or rec.has_zeta(n):
            out.append(_ok(rule, subject, f"zeta_{n} lies in F(zeta_{m})"))
        elif rec.cyclotomic_disjoint:
            out.append(_obstructed(rule, subject, f"F(zeta_{n}) is not inside F(zeta_{m})"))
        else:
            out.append(_missing(rule, subject, "cyclotomic_disjoint"))
    return out


def _rule_large_image(m, n, rec) -> list[Finding]:
    out = []
    for a, b, orient in ((m, n, ""), (n, m, " (swapped)")):
        out += _large_image_rule("R7", a, b, rec.image_at(a), rec, f"level {a}{orient}", True)
    return out


def _rule_T(steps, rec) -> list[Finding]:
    out = []
    for subject, step, reason in steps:
        if step is None:
            out.append(_no_step("R8", subject, reason))
            continue
        p = step.p
        # Tate parametrization: multiplicative reduction with p prime to 2 v(j) puts T in the image
        if p != 2 and rec.local is not None:
            tate = [
                I
                for loc in rec.local.values()
                for I in loc.ideals
                if I.reduction.is_multiplicative and I.v_j is not None and I.v_j % p
            ]
            if tate:
                out.append(_obstructed("R8", subject, f"multiplicative reduction with {p} prime to 2 v(j)"))
                continue
        q = p if p >= 5 else p * p
        e = vp(q, p)
        if not (step.floor <= e < step.high):
            out.append(_ok("R8", subject, f"hypothesis not met: the query does not force F(E[{q}]) = F(E[{p * q}])"))
            continue
        G = rec.image_at(q)
        if G is None:
            out.append(_missing("R8", subject, "images", f"needs the image mod {q}"))
        elif contains_conjugate_of(G, T(q)) is not None:
            out.append(_obstructed("R8", subject, f"image mod {q} contains a conjugate of T"))
        else:
            out.append(_ok("R8", subject, f"image mod {q} contains no conjugate of T"))
    return out


def _rule_element_orders(m, n, rec) -> list[Finding]:
    out = []
    for a, b, orient in ((m, n, ""), (n, m, " (swapped)")):
        for p in sorted(_primes(b)):
            k = vp(b, p)
            if k <= vp(a, p):
                continue
            subject = f"p={p}{orient}"
            d = _cyclic_degree(p, k)
            if d == 1:
                out.append(_ok("R9", subject, "trivial cyclic degree"))
                continue
            cyc = None if rec.cyclotomic_trivial is None else rec.cyclotomic_trivial.get(p)
            if cyc is None:
                out.append(_missing("R9", subject, "cyclotomic_trivial"))
                continue
            if not cyc.trivial_at(k):
                out.append(_ok("R9", subject, f"hypothesis not met: F meets Q(zeta_{p}^{k})"))
                continue
            if a == 1:
                orders = {1}  # F(E[1]) = F
            else:
                G = rec.image_at(a)
                if G is None:
                    out.append(_missing("R9", subject, "images", f"needs the image mod {a}"))
                    continue
                orders = {torder(g, a) for g in G.elements}
            if any(o % d == 0 for o in orders):
                out.append(_ok("R9", subject, f"some element of the image mod {a} has order divisible by {d}"))
            else:
                out.append(_obstructed("R9", subject, f"no element of the image mod {a} has order divisible by {d}"))
    return out


def _rule_cube_root(rec) -> list[Finding]:
    if rec.j_cube_root_in_F is None:
        return []
    G = rec.image_at(3)
    if rec.j_cube_root_in_F and G is not None and contains_sl2(G):
        raise MalformedRecord("j_cube_root_in_F contradicts SL2(3) inside the image mod 3")
    where = "F" if rec.j_cube_root_in_F else "a nontrivial extension"
    return [_ok("J3", "3", f"F(j^(1/3)) lies in F(E[3]); cube root generates {where}")]


def _subquery(m, n, rec) -> list[Finding]:
    S = rec.entanglement_set
    if S is None:
        return []

    def part(x):
        return 1 if x == 1 else _prod(p ** vp(x, p) for p in _primes(x) if p in S)

    mS, nS = part(m), part(n)
    if mS == nS or (mS, nS) == (m, n):
        return []
    sub = _single(mS, nS, rec, nested=True)
    tag = f"sub({mS},{nS})"
    out = [_ok("S", tag, f"F(E[{mS}]) = F(E[{nS}]) is implied")]
    out += [Finding(f.rule, f"{tag} {f.subject}", f.verdict, f.detail, f.missing) for f in sub]
    return out


def _prod(xs: Iterable[int]) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


def _single(m, n, rec, nested=False) -> list[Finding]:
    steps = _vertical_steps(m, n, rec)
    out = []
    out += _rule_divisibility("R1", m, n, [rec])
    out += _reduction_rule("R2", m, n, rec, rec, "")
    out += _reduction_rule("R2", n, m, rec, rec, " (swapped)")
    out += _rule_greatest_prime(m, n, rec)
    out += _rule_trivial_intersection(steps, rec)
    out += _rule_supersingular(steps, rec)
    out += _rule_cm(steps, rec)
    out += _rule_large_image(m, n, rec)
    out += _rule_T(steps, rec)
    out += _rule_element_orders(m, n, rec)
    out += _rule_cube_root(rec)
    if not nested:
        out += _subquery(m, n, rec)
    return out


# -- two curves -------------------------------------------------------------------------------


def _two(m, n, rec, rec2) -> list[Finding]:
    if (
        rec.field_disc_primes is not None
        and rec2.field_disc_primes is not None
        and rec.field_disc_primes != rec2.field_disc_primes
    ):
        raise MalformedRecord("the two records disagree on field_disc_primes of the common field F")
    out = []
    # zeta_n in F(E[m]) constrains E; zeta_m in F(E'[n]) constrains E'
    out += _reduction_rule("R1'", m, n, rec, rec, "")
    out += _reduction_rule("R1'", n, m, rec2, rec, " (swapped)")
    pure = len(_primes(m) | _primes(n)) == 1
    if pure and m != n and min(m, n) > 1:
        (p,) = _primes(m)
        k = min(vp(m, p), vp(n, p))
        subject = f"p={p}"
        cyc = None if rec.cyclotomic_trivial is None else rec.cyclotomic_trivial.get(p)
        if p == 2:
            out.append(_ok("R2'", subject, "p = 2 is allowed"))
        elif cyc is None:
            out.append(_missing("R2'", subject, "cyclotomic_trivial"))
        elif cyc.trivial_at(k):
            out.append(_obstructed("R2'", subject, f"F meets Q(zeta_{p}^{k}) trivially and p is odd"))
        else:
            out.append(_ok("R2'", subject, f"hypothesis not met: F meets Q(zeta_{p}^{k})"))
    out += _rule_divisibility("R3'", m, n, [rec, rec2])
    out += _large_image_rule("R4'", m, n, rec.image_at(m), rec, f"level {m}", False)
    out += _large_image_rule("R4'", n, m, rec2.image_at(n), rec, f"level {n} (swapped)", False)
    return out


def audit(m: int, n: int, rec: CurveRecord, rec2: CurveRecord | None = None) -> ObstructionReport:
    """Apply every rule to the query F(E[m]) = F(E[n]), or F(E[m]) = F(E'[n]) when ``rec2`` is given."""
    if m < 1 or n < 1:
        raise MalformedRecord("query levels must be positive")
    findings = _single(m, n, rec) if rec2 is None else _two(m, n, rec, rec2)
    findings.sort(key=lambda f: RULE_ORDER.index(f.rule))
    return ObstructionReport(m, n, rec2 is not None, tuple(findings))
