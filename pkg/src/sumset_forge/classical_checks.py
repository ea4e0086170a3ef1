"""Executable oracles for the background theorems and coset-confinement results.

Every check reports `applicable` (did the hypothesis hold) separately from
`holds` (did the conclusion hold); a violation only counts when the hypothesis
genuinely held.  Threshold comparisons (3/2, 3/4, 2N/3+1, ...) are done by
integer cross-multiplication, never floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Any, Optional

from .group_core import ResidueSet, Subgroup, containing_coset, subgroups
from .sumset_engine import IntegerSet, is_arithmetic_progression, sumset, sumset_int


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    applicable: bool
    holds: Optional[bool] = None
    witness: Any = None

    @property
    def violated(self) -> bool:
        return self.applicable and self.holds is False


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def check_cauchy_davenport(a: ResidueSet, b: ResidueSet) -> CheckOutcome:
    """|A+B| >= min(p, |A|+|B|-1) in Z/pZ, p prime."""
    name = "cauchy_davenport"
    if not a or not b:
        raise ValueError("empty input set")
    p = a.modulus
    if not _is_prime(p):
        return CheckOutcome(name, applicable=False, witness="composite modulus")
    size = len(sumset(a, b))
    bound = min(p, len(a) + len(b) - 1)
    return CheckOutcome(name, True, size >= bound, witness=(size, bound))


def check_ap_criterion(a: IntegerSet) -> CheckOutcome:
    """|A+A| <= 2|A|-1 forces A to be an arithmetic progression."""
    name = "ap_criterion"
    if not a:
        raise ValueError("empty input set")
    if len(sumset_int(a, a)) > 2 * len(a) - 1:
        return CheckOutcome(name, applicable=False)
    ap = is_arithmetic_progression(a)
    return CheckOutcome(name, True, ap is not None, witness=ap)


def check_freiman_3k4(a: IntegerSet) -> CheckOutcome:
    """|A+A| = 2k-1+b <= 3k-4 puts A inside an AP of length k+b."""
    name = "freiman_3k4"
    k = len(a)
    if k <= 2:
        raise ValueError(f"need |A| > 2, got {k}")
    m = len(sumset_int(a, a))
    b = m - (2 * k - 1)
    if m > 3 * k - 4:
        return CheckOutcome(name, applicable=False)
    ms = a.members()
    step = 0
    for prev, cur in zip(ms, ms[1:]):
        step = gcd(step, cur - prev)
    length = (ms[-1] - ms[0]) // step + 1 if step else 1
    return CheckOutcome(name, True, length <= k + b,
                        witness=(ms[0], step, length))


def kneser_decomposition(a: ResidueSet, b: ResidueSet) -> CheckOutcome:
    """|A+B| = |A+H| + |B+H| - |H| with H = stabilizer(A+B), when |A+B| < |A|+|B|."""
    from .sumset_engine import stabilizer

    name = "kneser"
    if not a or not b:
        raise ValueError("empty input set")
    s = sumset(a, b)
    if len(s) >= len(a) + len(b):
        return CheckOutcome(name, applicable=False)
    h = stabilizer(s)
    he = h.element_set()
    lhs = len(s)
    rhs = len(sumset(a, he)) + len(sumset(b, he)) - h.order
    return CheckOutcome(name, True, lhs == rhs, witness=h)


def _coset_witness(a: ResidueSet, b: ResidueSet,
                   order_bound_num: int, order_bound_den: int,
                   bound_ref_size: int) -> Optional[tuple[Subgroup, int]]:
    """Least subgroup H with den*|H| < num*ref and A+B inside one coset of H."""
    s = sumset(a, b)
    for h in subgroups(a.group):
        if order_bound_den * h.order >= order_bound_num * bound_ref_size:
            continue
        rep = containing_coset(s, h)
        if rep is not None:
            return (h, rep)
    return None


def prop1_single_coset(a: ResidueSet, b: ResidueSet) -> CheckOutcome:
    """With |A| >= |B|, |A+B| < (3/2)|A| and |B| > (3/4)|A|: A+B lies in a
    single coset of some H with |H| < (3/2)|A|."""
    name = "prop1_single_coset"
    if not a or not b:
        raise ValueError("empty input set")
    if len(a) < len(b):
        raise ValueError("requires |A| >= |B|")
    na, nb = len(a), len(b)
    ns = len(sumset(a, b))
    if not (2 * ns < 3 * na and 4 * nb > 3 * na):
        return CheckOutcome(name, applicable=False)
    w = _coset_witness(a, b, 3, 2, na)
    return CheckOutcome(name, True, w is not None, witness=w)


def prop2_single_coset(a: ResidueSet, b: ResidueSet) -> CheckOutcome:
    """|A+B| < 2|B| and |B| < (3/4)|A|: A+B lies in a single coset of some H
    with |H| < 2|B|."""
    name = "prop2_single_coset"
    if not a or not b:
        raise ValueError("empty input set")
    na, nb = len(a), len(b)
    ns = len(sumset(a, b))
    if not (ns < 2 * nb and 4 * nb < 3 * na):
        return CheckOutcome(name, applicable=False)
    w = _coset_witness(a, b, 2, 1, nb)
    return CheckOutcome(name, True, w is not None, witness=w)


def lemma1_all_differences(a: IntegerSet) -> CheckOutcome:
    """A in [0,N-1] with |A| >= 2N/3 + 1 realizes every difference 1 <= delta < |A|."""
    name = "lemma1_all_differences"
    n = a.bound
    size = len(a)
    if 3 * size < 2 * n + 3:
        return CheckOutcome(name, applicable=False)
    for delta in range(1, size):
        if not (a.bits >> delta) & a.bits:
            return CheckOutcome(name, True, False, witness=delta)
    return CheckOutcome(name, True, True)


def check_lev_bound(u: IntegerSet, v: IntegerSet) -> CheckOutcome:
    """|U+V| >= min(u_s + t, s + 2t - 3) for V a subset of U with min U = 0 and
    gcd of nonzero elements 1; when U != V and u_s = s + t - 2, additionally
    |U+V| >= u_s + t."""
    name = "lev_bound"
    if not u or not v:
        return CheckOutcome(name, applicable=False, witness="empty input")
    if not v.issubset(u):
        return CheckOutcome(name, applicable=False, witness="V not a subset of U")
    if u.min() != 0:
        return CheckOutcome(name, applicable=False, witness="min U != 0")
    g = 0
    for m in u:
        g = gcd(g, m)
    if g != 1:
        return CheckOutcome(name, applicable=False, witness=f"gcd {g} != 1")
    s, t, us = len(u), len(v), u.max()
    size = len(sumset_int(u, v))
    ok = size >= min(us + t, s + 2 * t - 3)
    if u.bits != v.bits and us == s + t - 2:
        ok = ok and size >= us + t
    return CheckOutcome(name, True, ok, witness=(size, us, s, t))
