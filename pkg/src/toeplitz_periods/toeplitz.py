"""Toeplitz matrix descriptors and walk-ensured certificates.

A descriptor T_n<S;T> fixes the order n and two nonempty offset sets
S, T inside [1, n-1]; the matrix has a 1 at (i, j) exactly when j - i
lies in S or i - j lies in T.  This module holds the descriptor type,
the gcd quantities d = gcd(S u T) and d+ = gcd(S + T) that control
periods, and the sufficient conditions under which a descriptor is
certified walk-ensured (every displacement allowed by congruence is
eventually realized by walks between all vertex pairs at once).

Everything here is plain integer arithmetic; matrices never enter.
The exact decision procedure that settles the cases these rules leave
open lives in the engine module.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Union


class SpecFormatError(ValueError):
    """A descriptor string failed to parse."""


@dataclass(frozen=True)
class ToeplitzSpec:
    """Descriptor T_n<S;T>; offsets are stored sorted and duplicate-free.

    S holds the upward offsets (superdiagonals), T the downward ones.
    Either set may be empty at this level; operations that need gcd
    data require both nonempty and say so.
    """

    n: int
    S: tuple[int, ...]
    T: tuple[int, ...]

    def __init__(self, n: int, S: Iterable[int] = (), T: Iterable[int] = ()):
        S = tuple(sorted(set(S)))
        T = tuple(sorted(set(T)))
        if n < 2:
            raise ValueError(f"order must be at least 2, got {n}")
        for name, vals in (("S", S), ("T", T)):
            for v in vals:
                if not 1 <= v <= n - 1:
                    raise ValueError(f"{name} offset {v} outside [1, {n - 1}]")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "T", T)

    def to_string(self) -> str:
        s = ",".join(str(v) for v in self.S)
        t = ",".join(str(v) for v in self.T)
        return f"n={self.n};S={s};T={t}"

    @classmethod
    def from_string(cls, text: str) -> "ToeplitzSpec":
        """Parse "n=<int>;S=<comma ints>;T=<comma ints>"; whitespace ignored."""
        compact = "".join(text.split())
        parts = compact.split(";")
        if len(parts) != 3:
            raise SpecFormatError(f"expected three ;-separated fields: {text!r}")
        seen: dict[str, str] = {}
        for part in parts:
            key, eq, value = part.partition("=")
            if not eq or key not in ("n", "S", "T") or key in seen:
                raise SpecFormatError(f"bad field {part!r} in {text!r}")
            seen[key] = value
        if set(seen) != {"n", "S", "T"}:
            raise SpecFormatError(f"need fields n, S and T: {text!r}")

        def ints(value: str, label: str) -> list[int]:
            if value == "":
                return []
            try:
                return [int(v) for v in value.split(",")]
            except ValueError:
                raise SpecFormatError(f"bad {label} list {value!r} in {text!r}") from None

        try:
            n = int(seen["n"])
        except ValueError:
            raise SpecFormatError(f"bad order {seen['n']!r} in {text!r}") from None
        try:
            return cls(n, ints(seen["S"], "S"), ints(seen["T"], "T"))
        except ValueError as exc:
            raise SpecFormatError(str(exc)) from None

    def __str__(self) -> str:
        return self.to_string()


@dataclass(frozen=True)
class GcdProfile:
    """The gcd data of a descriptor with both offset sets nonempty.

    d divides d_plus (every s + t is a difference of sums of elements
    of S u T), and d = gcd(d_plus, s1) holds as a consequence; both are
    asserted in the test suite rather than assumed here.
    """

    d: int
    d_plus: int
    s1: int
    t1: int
    s_max: int
    t_max: int


def gcd_profile(spec: ToeplitzSpec) -> GcdProfile:
    """d = gcd(S u T), d+ = gcd of all pairwise sums s + t, and extremes."""
    if not spec.S or not spec.T:
        raise ValueError("gcd profile needs both offset sets nonempty")
    d = math.gcd(*spec.S, *spec.T)
    d_plus = math.gcd(*(s + t for s in spec.S for t in spec.T))
    return GcdProfile(
        d=d,
        d_plus=d_plus,
        s1=spec.S[0],
        t1=spec.T[0],
        s_max=spec.S[-1],
        t_max=spec.T[-1],
    )


class Verdict(enum.Enum):
    PROVEN_WALK_ENSURED = "ProvenWalkEnsured"
    PROVEN_BY_EXACT_DECISION = "ProvenByExactDecision"
    NOT_WALK_ENSURED = "NotWalkEnsured"
    UNKNOWN = "Unknown"


class Rule(enum.Enum):
    STAR = "Star"
    COPRIME_PAIR = "CoprimePair"
    MAIN1 = "Main1"
    EXTENSION_CHAIN = "ExtensionChain"
    EXACT_DECISION = "ExactDecision"


Witness = Union[int, tuple, None]


@dataclass(frozen=True)
class Certificate:
    """Outcome of a walk-ensured query, with the rule that settled it.

    Witness payload by rule:
      STAR            (min S + max T, max S + min T), the two bounded sums
      COPRIME_PAIR    the coprime pair (s, t)
      MAIN1           the minima (s1, t1)
      EXTENSION_CHAIN growth steps: ("base", s, t) then ("S"|"T", value)
      EXACT_DECISION  the stabilization threshold M
    """

    verdict: Verdict
    rule: Optional[Rule] = None
    witness: Witness = None

    def __post_init__(self):
        if self.verdict is Verdict.PROVEN_WALK_ENSURED:
            if self.rule is None or self.witness is None:
                raise ValueError("a proven certificate needs rule and witness")

    @property
    def walk_ensured(self) -> Optional[bool]:
        """True/False when settled, None while unknown."""
        if self.verdict in (Verdict.PROVEN_WALK_ENSURED, Verdict.PROVEN_BY_EXACT_DECISION):
            return True
        if self.verdict is Verdict.NOT_WALK_ENSURED:
            return False
        return None


def check_star(spec: ToeplitzSpec) -> bool:
    """min S + max T <= n and max S + min T <= n."""
    prof = gcd_profile(spec)
    return prof.s1 + prof.t_max <= spec.n and prof.s_max + prof.t1 <= spec.n


def check_coprime_pair(spec: ToeplitzSpec) -> Optional[tuple[int, int]]:
    """Lexicographically least (s, t) with s + t <= n and gcd(s, t) = 1."""
    if not spec.S or not spec.T:
        raise ValueError("coprime pair check needs both offset sets nonempty")
    for s in spec.S:
        for t in spec.T:
            if s + t <= spec.n and math.gcd(s, t) == 1:
                return (s, t)
    return None


def check_main1(spec: ToeplitzSpec) -> bool:
    """min S + min T <= n and max(max S, max T) <= n - gcd(min S, min T)."""
    prof = gcd_profile(spec)
    if prof.s1 + prof.t1 > spec.n:
        return False
    return max(prof.s_max, prof.t_max) <= spec.n - math.gcd(prof.s1, prof.t1)


def _gcd_update(d: int, d_plus: int, s_star: int, s_ref: int) -> tuple[int, int]:
    # gcd(S* u T) = gcd(d, s* - s) and gcd(S* + T) = gcd(d+, s* - s) for
    # s a member of the side being extended; gcd(x, 0) = x covers s* = s.
    return math.gcd(d, s_star - s_ref), math.gcd(d_plus, s_star - s_ref)


def gcd_after_extension(
    profile: GcdProfile, s_star: int, s_ref: int
) -> tuple[int, int]:
    """(new d, new d+) after adjoining offset s_star to the side of s_ref.

    s_ref must already belong to the extended side; the result does not
    depend on which member is used, a fact the oracle re-checks.
    """
    return _gcd_update(profile.d, profile.d_plus, s_star, s_ref)


def extension_chain(spec: ToeplitzSpec) -> Optional[tuple]:
    """Grow the full descriptor from a short base pair, if possible.

    A base pair (s, t) with s + t <= n is walk-ensured on its own; any
    offset bounded by n - d may then be adjoined without losing the
    property, d being the gcd of the offsets collected so far.  Offsets
    are attempted in ascending value across both sides, re-trying the
    deferred ones until a pass adds nothing.  Every admissible base
    pair is tried before giving up.
    """
    items = sorted([(s, "S") for s in spec.S] + [(t, "T") for t in spec.T])
    for s0 in spec.S:
        for t0 in spec.T:
            if s0 + t0 > spec.n:
                continue
            d, d_plus = math.gcd(s0, t0), s0 + t0
            steps: list[tuple] = [("base", s0, t0)]
            pending = list(items)
            pending.remove((s0, "S"))
            pending.remove((t0, "T"))
            while pending:
                kept = []
                added = False
                for value, side in pending:
                    if value <= spec.n - d:
                        ref = s0 if side == "S" else t0
                        d, d_plus = _gcd_update(d, d_plus, value, ref)
                        steps.append((side, value))
                        added = True
                    else:
                        kept.append((value, side))
                pending = kept
                if not added:
                    break
            if not pending:
                return tuple(steps)
    return None


def certify_walk_ensured(spec: ToeplitzSpec) -> Certificate:
    """Try the sufficient conditions in fixed order; never disproves.

    Order: the two-sided sum bound, then a coprime short pair, then the
    minima rule, then the extension chain.  A miss on all four returns
    UNKNOWN; only the engine's exact decision can return a negative.
    """
    prof = gcd_profile(spec)
    if check_star(spec):
        witness = (prof.s1 + prof.t_max, prof.s_max + prof.t1)
        return Certificate(Verdict.PROVEN_WALK_ENSURED, Rule.STAR, witness)
    pair = check_coprime_pair(spec)
    if pair is not None:
        return Certificate(Verdict.PROVEN_WALK_ENSURED, Rule.COPRIME_PAIR, pair)
    if check_main1(spec):
        return Certificate(
            Verdict.PROVEN_WALK_ENSURED, Rule.MAIN1, (prof.s1, prof.t1)
        )
    chain = extension_chain(spec)
    if chain is not None:
        return Certificate(Verdict.PROVEN_WALK_ENSURED, Rule.EXTENSION_CHAIN, chain)
    return Certificate(Verdict.UNKNOWN)


def tail_extension_applicable(spec: ToeplitzSpec, s_star: int) -> bool:
    """True iff n - gcd(S u T) < s_star < n.

    Offsets in that window touch only the corner of the matrix; such an
    extension is guaranteed to leave the period unchanged.
    """
    if not spec.S and not spec.T:
        raise ValueError("tail extension window needs some offsets")
    d = math.gcd(*spec.S, *spec.T)
    return spec.n - d < s_star < spec.n
