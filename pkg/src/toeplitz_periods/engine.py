"""Period and competition analysis of Boolean Toeplitz matrices.

Ground truth throughout is direct power iteration: the m-th Boolean
power sequence of any matrix repeats, and the first repeat pins down
the least transient (index) and least period.  On top of that sit the
competition sequence B_m = A^m (A^T)^m, the congruence-class limit it
converges to in the walk-ensured case, an exact decision procedure for
the walk-ensured property itself, and appliers for the structural
rules that transfer a known period to larger matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Optional

from .boolmat import (
    BoolMatrix,
    CapExceededError,
    PowerSequence,
    _right_multiplier,
    _row_selectors,
    from_toeplitz,
)
from .digraph import Digraph, contract, has_source_or_sink
from .toeplitz import (
    Certificate,
    GcdProfile,
    Rule,
    ToeplitzSpec,
    Verdict,
    certify_walk_ensured,
    gcd_profile,
)
from .walksets import p_set, r_set

__all__ = [
    "CapExceededError",
    "TheoremViolationError",
    "CompetitionResult",
    "PeriodReport",
    "matrix_period",
    "competition_analysis",
    "predicted_limit",
    "limits_match",
    "decide_walk_ensured_exact",
    "period_via_theorem",
    "superset_same_period",
    "sink_source_same_period",
    "analyze",
]


class TheoremViolationError(RuntimeError):
    """A rule application contradicted the brute-force ground truth."""


def matrix_period(
    a: BoolMatrix, max_power: Optional[int] = None
) -> tuple[int, int]:
    """(index, period): least M and p with A^m = A^(m+p) for all m >= M.

    Found by scanning A^1, A^2, ... with a first-occurrence map; the
    scan is capped (order-dependent default) and overrunning the cap
    raises rather than returning something unverified.
    """
    return PowerSequence(a).cycle(max_power)


@dataclass(frozen=True)
class CompetitionResult:
    """Transient and period of B_m = A^m (A^T)^m, plus its limit.

    limit is the eventual constant value of the sequence when the
    period is 1 and None otherwise.
    """

    index: int
    period: int
    limit: Optional[BoolMatrix]


def _divisors(x: int) -> list[int]:
    return [k for k in range(1, x + 1) if x % k == 0]


def _competition(a: BoolMatrix, powers: PowerSequence, max_power: Optional[int]):
    """Competition analysis given the power sequence of a.

    B_m is a function of A^m alone, so it inherits eventual
    periodicity from the power cycle (index al, period pl): the least
    period of B divides pl and its transient is at most al.  A raw
    first-repeat scan of B values would not do: B is not driven by a
    fixed multiplication, so an accidental early repeat need not
    continue.  Instead B_1..B_{al+pl-1} are computed and the minimal
    period and transient are read off inside that window.
    """
    al, pl = powers.cycle(max_power)
    at = a.transpose()
    left = _row_selectors(a)
    step_right = _right_multiplier(at)

    b: list[Optional[BoolMatrix]] = [None] * (al + pl)
    b[1] = a @ at
    for m in range(2, al + pl):
        prev = b[m - 1]
        mid = BoolMatrix(
            _or_rows(prev.rows, cols) for cols in left
        )
        b[m] = step_right(mid)

    def fold(i: int) -> int:
        return i if i < al + pl else al + (i - al) % pl

    period = next(
        k
        for k in _divisors(pl)
        if all(b[m] == b[fold(m + k)] for m in range(al, al + pl))
    )
    index = al
    while index > 1 and b[index - 1] == b[fold(index - 1 + period)]:
        index -= 1
    limit = b[index] if period == 1 else None
    return CompetitionResult(index=index, period=period, limit=limit)


def _or_rows(rows: tuple[int, ...], cols: tuple[int, ...]) -> int:
    acc = 0
    for c in cols:
        acc |= rows[c]
    return acc


def competition_analysis(
    a: BoolMatrix,
    max_power: Optional[int] = None,
    *,
    powers: Optional[PowerSequence] = None,
) -> CompetitionResult:
    """Least q and p with B_m = B_(m+p) for all m >= q, B_m = A^m (A^T)^m."""
    if powers is None:
        powers = PowerSequence(a)
    elif powers.base != a:
        raise ValueError("power sequence belongs to a different matrix")
    return _competition(a, powers, max_power)


def predicted_limit(spec: ToeplitzSpec) -> Optional[BoolMatrix]:
    """Congruence-class matrix: (x, y) = 1 iff x = y mod d+, diagonal included.

    This is the claimed competition limit only while d+ <= n; beyond
    that no limit shape is claimed and None is returned.
    """
    prof = gcd_profile(spec)
    if prof.d_plus > spec.n:
        return None
    n = spec.n
    rows = []
    for i in range(1, n + 1):
        r = 0
        for j in range(1, n + 1):
            if (j - i) % prof.d_plus == 0:
                r |= 1 << (j - 1)
        rows.append(r)
    return BoolMatrix(rows)


def limits_match(
    actual: BoolMatrix, predicted: BoolMatrix, *, ignore_diagonal: bool = False
) -> bool:
    """Bit-exact comparison; optionally mask the diagonal off both sides."""
    if actual.n != predicted.n:
        return False
    if not ignore_diagonal:
        return actual == predicted
    return all(
        x & ~(1 << i) == y & ~(1 << i)
        for i, (x, y) in enumerate(zip(actual.rows, predicted.rows))
    )


def _decide(
    spec: ToeplitzSpec,
    prof: GcdProfile,
    powers: PowerSequence,
    al: int,
    pl: int,
) -> tuple[bool, Optional[int]]:
    """Exact walk-ensured decision over one congruence-vs-realized window.

    Congruence sets repeat in the length with period d+/d, realized
    sets with period pl from al on; agreement on every length in
    [al, al + lcm(pl, d+/d)) is therefore equivalent to agreement on
    all lengths from al on, and al itself serves as the threshold
    witness.
    """
    span = lcm(pl, prof.d_plus // prof.d)
    for i in range(al, al + span):
        if p_set(spec, i) != r_set(powers.power(i)):
            return False, None
    return True, al


def decide_walk_ensured_exact(
    spec: ToeplitzSpec,
    max_power: Optional[int] = None,
    *,
    powers: Optional[PowerSequence] = None,
) -> tuple[bool, Optional[int]]:
    """Decide the walk-ensured property; on True also return a threshold M."""
    prof = gcd_profile(spec)
    if powers is None:
        powers = PowerSequence(from_toeplitz(spec))
    al, pl = powers.cycle(max_power)
    return _decide(spec, prof, powers, al, pl)


def period_via_theorem(
    spec: ToeplitzSpec, max_power: Optional[int] = None
) -> Optional[tuple[int, Certificate]]:
    """Period d+/d with a certificate, for walk-ensured descriptors.

    Sufficient rules are tried first; if they abstain the exact
    decision settles it.  None when the descriptor is not walk-ensured
    (the formula is not claimed there).
    """
    prof = gcd_profile(spec)
    cert = certify_walk_ensured(spec)
    if cert.verdict is Verdict.UNKNOWN:
        ok, threshold = decide_walk_ensured_exact(spec, max_power)
        if not ok:
            return None
        cert = Certificate(
            Verdict.PROVEN_BY_EXACT_DECISION, Rule.EXACT_DECISION, threshold
        )
    return prof.d_plus // prof.d, cert


def _require_walk_ensured(spec: ToeplitzSpec, max_power: Optional[int]) -> None:
    cert = certify_walk_ensured(spec)
    if cert.verdict is Verdict.UNKNOWN:
        ok, _ = decide_walk_ensured_exact(spec, max_power)
        if not ok:
            raise ValueError(f"{spec} is not walk-ensured")


def superset_same_period(
    spec: ToeplitzSpec,
    spec_star: ToeplitzSpec,
    max_power: Optional[int] = None,
) -> Optional[int]:
    """Transfer the period to an offset superset with the same gcd(S + T).

    Requires the base walk-ensured and S <= S*, T <= T* at equal order;
    returns d+/d (the shared period) when gcd(S + T) is preserved,
    None when it is not (no claim then).
    """
    if spec_star.n != spec.n:
        raise ValueError("order mismatch")
    if not (set(spec.S) <= set(spec_star.S) and set(spec.T) <= set(spec_star.T)):
        raise ValueError("offset sets do not extend the base")
    _require_walk_ensured(spec, max_power)
    prof = gcd_profile(spec)
    prof_star = gcd_profile(spec_star)
    if prof_star.d_plus != prof.d_plus:
        return None
    return prof.d_plus // prof.d


def sink_source_same_period(
    spec: ToeplitzSpec,
    b: BoolMatrix,
    max_power: Optional[int] = None,
) -> Optional[int]:
    """Period transfer to any entrywise-larger matrix via the added arcs.

    The arcs of b missing from the base matrix are contracted modulo
    d = gcd(S u T); a source or sink there guarantees b keeps the base
    period.  The conclusion is verified against direct iteration on b
    and a mismatch raises TheoremViolationError.  None when the
    contraction has neither source nor sink (no claim).
    """
    a = from_toeplitz(spec)
    if b.n != a.n:
        raise ValueError("order mismatch")
    if not a.dominated_by(b):
        raise ValueError("base matrix is not dominated by the extension")
    _require_walk_ensured(spec, max_power)
    prof = gcd_profile(spec)
    added = Digraph(b.and_not(a))
    if not has_source_or_sink(contract(added, prof.d)):
        return None
    _, base_period = matrix_period(a, max_power)
    _, ext_period = matrix_period(b, max_power)
    if ext_period != base_period:
        raise TheoremViolationError(
            f"extension of {spec} changed the period: "
            f"{base_period} -> {ext_period}"
        )
    return ext_period


@dataclass(frozen=True)
class PeriodReport:
    """Everything the analyzer knows about one descriptor.

    limit_matrix is present exactly when the competition period is 1.
    certificate is never UNKNOWN here: when the sufficient rules
    abstain the exact decision fills in a positive or negative verdict.
    """

    spec: ToeplitzSpec
    profile: GcdProfile
    matrix_index: int
    matrix_period: int
    competition_index: int
    competition_period: int
    limit_matrix: Optional[BoolMatrix]
    certificate: Certificate

    @property
    def walk_ensured(self) -> bool:
        return bool(self.certificate.walk_ensured)


def analyze(spec: ToeplitzSpec, max_power: Optional[int] = None) -> PeriodReport:
    """Full analysis: period data, competition data, walk-ensured status."""
    prof = gcd_profile(spec)
    powers = PowerSequence(from_toeplitz(spec))
    al, pl = powers.cycle(max_power)
    comp = _competition(powers.base, powers, max_power)
    cert = certify_walk_ensured(spec)
    if cert.verdict is Verdict.UNKNOWN:
        ok, threshold = _decide(spec, prof, powers, al, pl)
        if ok:
            cert = Certificate(
                Verdict.PROVEN_BY_EXACT_DECISION, Rule.EXACT_DECISION, threshold
            )
        else:
            cert = Certificate(Verdict.NOT_WALK_ENSURED, Rule.EXACT_DECISION)
    return PeriodReport(
        spec=spec,
        profile=prof,
        matrix_index=al,
        matrix_period=pl,
        competition_index=comp.index,
        competition_period=comp.period,
        limit_matrix=comp.limit,
        certificate=cert,
    )
