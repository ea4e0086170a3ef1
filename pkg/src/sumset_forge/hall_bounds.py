"""Hall-marriage machinery and projection-side lower bounds.

The R parameter, the SDR certificate behind the 2s+R-3 bound on |A'+A'|, and
the (a, b, c)-refined bound 2s+R-3+c.  The matching is plain augmenting-path
bipartite matching with deterministic iteration order (family index ascending,
ground element ascending) so certificates are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence, Union

from .sumset_engine import IntegerSet, sumset_int


class BoundViolation(AssertionError):
    """A certified lower bound failed; this is a reportable counterexample."""


@dataclass(frozen=True)
class SdrCertificate:
    """One distinct representative per family member; representative i belongs
    to family set i."""

    family: tuple[tuple[str, IntegerSet], ...]
    representatives: tuple[int, ...]

    def __post_init__(self):
        seen = set()
        for (label, s), r in zip(self.family, self.representatives):
            if r not in s:
                raise ValueError(f"representative {r} not in family set {label}")
            if r in seen:
                raise ValueError(f"representative {r} repeated")
            seen.add(r)

    def __len__(self) -> int:
        return len(self.representatives)


@dataclass(frozen=True)
class HallViolator:
    """An index subset I with |union of G_i over I| < |I|."""

    indices: tuple[int, ...]
    union_size: int


@dataclass(frozen=True)
class IntervalProfile:
    s: int
    max_a: int
    r: int
    a: int
    b: int
    c: int


def find_sdr(family: Sequence[IntegerSet],
             labels: Sequence[str] | None = None
             ) -> Union[SdrCertificate, HallViolator]:
    """A system of distinct representatives for the family, or a Hall violator.

    Augmenting-path matching; on failure the alternating-reachability set from
    the unmatched family index is the violator.
    """
    if labels is None:
        labels = [str(i) for i in range(len(family))]
    owner: dict[int, int] = {}           # ground element -> family index
    assigned: dict[int, int] = {}        # family index -> ground element

    def augment(i: int, seen: set[int]) -> bool:
        for e in family[i]:
            if e in seen:
                continue
            seen.add(e)
            if e not in owner or augment(owner[e], seen):
                owner[e] = i
                assigned[i] = e
                return True
        return False

    for i in range(len(family)):
        seen: set[int] = set()
        if not augment(i, seen):
            # everything in `seen` is matched and owned by the reachable sets
            indices = tuple(sorted({i} | {owner[e] for e in seen}))
            return HallViolator(indices, len(seen))
    return SdrCertificate(tuple((lab, s) for lab, s in zip(labels, family)),
                          tuple(assigned[i] for i in range(len(family))))


def _require_normalized(aset: IntegerSet) -> None:
    if 0 not in aset:
        raise ValueError("0 must be a member")
    g = 0
    for m in aset:
        g = gcd(g, m)
    if len(aset) >= 2 and g != 1:
        raise ValueError(f"gcd of nonzero elements is {g}, expected 1")


def r_parameter(aset: IntegerSet) -> int:
    """R = min(max a_i - s + 3, s); always 2 <= R <= s for s >= 2."""
    if 0 not in aset:
        raise ValueError("0 must be a member")
    s = len(aset)
    if s < 2:
        raise ValueError("need at least two elements")
    return min(aset.max() - s + 3, s)


def lemma2_family(aset: IntegerSet) -> tuple[list[IntegerSet], list[str]]:
    """The translated-copy family whose SDR certifies |A'+A'| >= 2s+R-3:
    s-1 copies of a_1+A', two copies of a_i+A' for 2 <= i <= R, one for i > R."""
    s = len(aset)
    r = r_parameter(aset)
    members = aset.members()
    bound = 2 * aset.max() + 1
    family, labels = [], []
    for idx, a in enumerate(members, start=1):
        copies = s - 1 if idx == 1 else (2 if idx <= r else 1)
        shifted = IntegerSet(bound, aset.bits << a)
        for t in range(copies):
            family.append(shifted)
            labels.append(f"{a}+A'#{t}")
    return family, labels


def lemma2_certificate(aset: IntegerSet) -> SdrCertificate:
    """SDR certificate of size 2s+R-3 inside A'+A'; its existence is the
    content of the bound and must never fail under the preconditions."""
    _require_normalized(aset)
    s = len(aset)
    r = r_parameter(aset)
    family, labels = lemma2_family(aset)
    out = find_sdr(family, labels)
    if isinstance(out, HallViolator):
        raise BoundViolation(
            f"SDR absent for A'={aset.members()}: violator {out.indices}")
    assert len(out) == 2 * s + r - 3
    return out


def abc_parameters(aset: IntegerSet) -> IntervalProfile:
    """The (a, b, c) missing-element profile refining the 2s+R-3 bound.

    a: largest integer with >= a elements of [0, 2a-1] missing from A' (0 if
    none); b: same for [s+R-2b-2, s+R-3]; c: number missing from the middle
    interval [2a, s+R-2b-3].  Requires max a_i = s+R-3.
    """
    _require_normalized(aset)
    s = len(aset)
    r = r_parameter(aset)
    top = aset.max()
    if top != s + r - 3:
        raise ValueError(f"max a_i = {top} != s+R-3 = {s + r - 3}; "
                         "(a,b,c) is undefined on the saturated branch")

    def missing(lo: int, hi: int) -> int:
        return sum(1 for m in range(lo, hi + 1) if m not in aset)

    # scan intervals stay inside [0, s+R-3]
    a = 0
    for cand in range((top + 1) // 2, 0, -1):
        if missing(0, 2 * cand - 1) >= cand:
            a = cand
            break
    # the b-window must stay disjoint from [0, 2a-1]; the three intervals
    # partition [0, s+R-3], which is what makes a+b+c = R-2 come out exact
    b = 0
    for cand in range((top + 1) // 2, 0, -1):
        lo = s + r - 2 * cand - 2
        if lo >= 2 * a and missing(lo, s + r - 3) >= cand:
            b = cand
            break
    c = missing(2 * a, s + r - 2 * b - 3)
    return IntervalProfile(s=s, max_a=top, r=r, a=a, b=b, c=c)


def prop5_bound(aset: IntegerSet) -> int:
    """The refined lower bound 2s+R-3+c; raises BoundViolation if |A'+A'|
    falls below it (must never happen under the preconditions)."""
    profile = abc_parameters(aset)
    bound = 2 * profile.s + profile.r - 3 + profile.c
    actual = len(sumset_int(aset, aset))
    if actual < bound:
        raise BoundViolation(
            f"|A'+A'| = {actual} < {bound} for A'={aset.members()}")
    return bound
