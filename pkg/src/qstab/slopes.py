"""The set of slopes of semistable modules of a Euclidean quiver.

For a weight ``theta`` the engine decides which of the three shapes the
category of semistables at slope mu(delta) has, then either

* enumerates the finitely many slopes, testing preprojective and
  preinjective ladder positions level by level until every base root is
  covered by a termination certificate, or
* returns an explicit infinite family of semistable preprojectives whose
  slopes increase towards mu(delta).

Preinjectives are handled by running the preprojective scan on the
opposite quiver with the negated weight: duality swaps submodules and
quotients and negates every slope.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import ceil, floor
from typing import Sequence

from .ar import PREPROJECTIVE, Position, guaranteed_hom, preprojective_component, tube_system
from .errors import DimensionMismatch, NotRegularCase, ResourceLimit
from .quiver import DimVector, Quiver, defect, euler_form
from .roots import _require_euclidean, base_roots, ladder_decompose
from .stability import is_semistable_dim, slope

DEFAULT_BOUND = 50


# -- trivial cardinalities ---------------------------------------------------------


@dataclass(frozen=True)
class Cardinality:
    """``One(a)``, ``Two(a, b)`` or ``More``."""

    kind: str
    values: tuple[Fraction, ...] = ()

    def __str__(self) -> str:
        if self.kind == "More":
            return "More"
        return f"{self.kind}({', '.join(format_slope(v) for v in self.values)})"


def trivial_cardinality(q: Quiver, theta: Sequence[int]) -> Cardinality:
    theta = _check_weight(q, theta)
    values = sorted(set(theta))
    if len(values) == 1:
        return Cardinality("One", (Fraction(values[0]),))
    if len(values) == 2:
        low, high = values
        # an arrow from a high vertex to a low one gives a semistable
        # module of slope (low + high) / 2
        if not any(theta[s] == high and theta[t] == low for s, t in q.arrow_indices):
            return Cardinality("Two", (Fraction(low), Fraction(high)))
    return Cardinality("More")


# -- the category at slope mu(delta) ------------------------------------------


class CaseTag(str, Enum):
    DYNKIN = "DynkinCategory"
    TAME = "TameCategory"
    REGULAR = "RegularCategory"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class MuDeltaCase:
    tag: CaseTag
    bound: int | None = None
    witness: DimVector | None = None
    reason: str = ""

    def __str__(self) -> str:
        if self.tag is CaseTag.INCONCLUSIVE:
            return f"Inconclusive({self.bound})"
        return self.tag.value


def _check_weight(q: Quiver, theta: Sequence[int]) -> tuple[int, ...]:
    theta = tuple(int(t) for t in theta)
    if len(theta) != q.n:
        raise DimensionMismatch(f"weight needs {q.n} entries, got {len(theta)}")
    return theta


def _neg(theta: Sequence[int]) -> tuple[int, ...]:
    return tuple(-t for t in theta)


def _ladder(alpha: DimVector, delta: DimVector, n: int) -> DimVector:
    return tuple(a + n * d for a, d in zip(alpha, delta))


def _search_mu_delta_witness(q: Quiver, theta: Sequence[int], bound: int) -> tuple[DimVector | None, bool]:
    """First semistable preprojective of slope mu(delta), scanning ladder levels 0..bound.

    Returns ``(witness, exhausted)``; ``exhausted`` is False when the scan
    stopped early on the resource cap.
    """
    delta = q.delta
    mu_d = slope(theta, delta)
    candidates = [a for a in base_roots(q).preprojective if slope(theta, a) == mu_d]
    for n in range(bound + 1):
        for alpha in candidates:
            try:
                verdict = is_semistable_dim(q, theta, _ladder(alpha, delta, n))
            except ResourceLimit:
                return None, False
            if verdict.semistable:
                return _ladder(alpha, delta, n), True
    return None, True


def _mu_delta_case(q: Quiver, theta: tuple[int, ...], bound: int):
    delta = _require_euclidean(q)
    mu_d = slope(theta, delta)
    if not is_semistable_dim(q, theta, delta).semistable:
        return MuDeltaCase(CaseTag.DYNKIN, reason="generic delta-representation is unstable"), None, None
    wit_p, _ = _search_mu_delta_witness(q, theta, bound)
    wit_i, _ = _search_mu_delta_witness(q.opposite(), _neg(theta), bound)
    if wit_p is not None or wit_i is not None:
        wit = wit_p if wit_p is not None else wit_i
        side = "preprojective" if wit_p is not None else "preinjective"
        return (
            MuDeltaCase(CaseTag.TAME, witness=wit, reason=f"semistable {side} {list(wit)} of slope mu(delta)"),
            wit_p,
            wit_i,
        )

    roots = base_roots(q)
    if all(slope(theta, a) < mu_d for a in roots.preprojective) and all(
        slope(theta, a) > mu_d for a in roots.preinjective
    ):
        return (
            MuDeltaCase(
                CaseTag.REGULAR,
                reason="preprojective base slopes < mu(delta) < preinjective base slopes",
            ),
            None,
            None,
        )
    return MuDeltaCase(CaseTag.INCONCLUSIVE, bound=bound, reason="no witness within bound"), None, None


def classify_mu_delta(q: Quiver, theta: Sequence[int], bound: int = DEFAULT_BOUND) -> MuDeltaCase:
    theta = _check_weight(q, theta)
    return _mu_delta_case(q, theta, bound)[0]


# -- reports -----------------------------------------------------------------------


def format_slope(s: Fraction) -> str:
    s = Fraction(s)
    return f"{s.numerator}/{s.denominator}"


def parse_slope(text: str) -> Fraction:
    num, _, den = text.partition("/")
    return Fraction(int(num), int(den or 1))


@dataclass(frozen=True)
class SlopeSetReport:
    mu_delta: Fraction
    case: MuDeltaCase
    verdict: str
    slopes: tuple[Fraction, ...] = ()
    witnesses: dict = field(default_factory=dict)
    family_base: DimVector | None = None
    family: tuple[tuple[DimVector, Fraction], ...] = ()
    certificates: tuple[str, ...] = ()
    bound: int = DEFAULT_BOUND

    @property
    def finite(self) -> bool:
        return self.verdict == "finite"

    @property
    def infinite(self) -> bool:
        return self.verdict == "infinite"

    def to_json(self) -> dict:
        out: dict = {
            "mu_delta": format_slope(self.mu_delta),
            "case": self.case.tag.value,
            "verdict": self.verdict,
        }
        if self.case.reason:
            out["case_reason"] = self.case.reason
        if self.verdict == "infinite":
            out["family_base"] = list(self.family_base)
            out["family"] = [list(d) for d, _ in self.family]
            out["family_slopes"] = [format_slope(s) for _, s in self.family]
        else:
            out["slopes"] = [format_slope(s) for s in self.slopes]
            out["witnesses"] = {format_slope(s): list(self.witnesses[s]) for s in self.slopes}
        if self.verdict == "inconclusive":
            out["bound"] = self.bound
        out["certificates"] = list(self.certificates)
        return out

    def to_text(self) -> str:
        lines = [f"mu(delta) = {format_slope(self.mu_delta)}", f"case: {self.case}"]
        if self.case.reason:
            lines.append(f"case reason: {self.case.reason}")
        if self.verdict == "infinite":
            lines.append("verdict: infinite")
            lines.append(f"family base: {list(self.family_base)}")
            for d, s in self.family:
                lines.append(f"  family member {list(d)} slope {format_slope(s)}")
        else:
            lines.append(f"verdict: {self.verdict}")
            if self.verdict == "inconclusive":
                lines.append(f"bound: {self.bound}")
            lines.append("slopes: " + ", ".join(format_slope(s) for s in self.slopes))
            for s in self.slopes:
                lines.append(f"  {format_slope(s)} witnessed by {list(self.witnesses[s])}")
        for c in self.certificates:
            lines.append(f"certificate: {c}")
        return "\n".join(lines)


# -- the preprojective scan --------------------------------------------------------


@dataclass
class _ScanResult:
    semistable: list[DimVector]
    certificates: list[str]
    complete: bool
    killed: list[DimVector] = field(default_factory=list)


def _first_slope_level(alpha_num, alpha_size, delta_num, delta_size, bound_slope: Fraction) -> int:
    """Least n >= 0 from which (a + n t) / (b + n s) stays below ``bound_slope``.

    Only called when the ladder decreases towards t / s < bound_slope.
    """
    gap = bound_slope * delta_size - delta_num
    n = floor((alpha_num - bound_slope * alpha_size) / gap) + 1
    return max(0, n)


def _scan_preprojectives(
    q: Quiver,
    theta: tuple[int, ...],
    delta_semistable: bool,
    seeds: list[DimVector],
    bound: int,
    dual: bool = False,
) -> _ScanResult:
    """Scan the preprojective component level by level.

    With ``dual=True`` the quiver and weight are the opposite quiver and the
    negated weight, and the records are phrased for the original preinjectives.
    """
    side = "preinjective" if dual else "preprojective"
    delta = q.delta
    mu_d = slope(theta, delta)
    t_delta, s_delta = sum(t * x for t, x in zip(theta, delta)), sum(delta)
    comp = preprojective_component(q)
    bases = base_roots(q).preprojective
    killers: list[tuple[DimVector, int, Fraction]] = [(m, comp.level_of(m), slope(theta, m)) for m in seeds]
    seen: dict[DimVector, set[int]] = {a: set() for a in bases}
    certified: dict[DimVector, str] = {}
    semistable: list[DimVector] = []
    killed: list[DimVector] = []
    kills = {"delta": 0, "sub": 0}
    certificates: list[str] = []

    def certify(alpha: DimVector, level: int) -> str | None:
        mu_a = slope(theta, alpha)
        if delta_semistable and mu_a == mu_d:
            return f"{side} base {list(alpha)}: every ladder slope equals mu(delta), already attained"
        if delta_semistable and mu_a > mu_d:
            if dual:
                return (
                    f"{side} base {list(alpha)}: the generic delta-module of larger slope "
                    f"{format_slope(-mu_d)} maps into all levels"
                )
            return (
                f"{side} base {list(alpha)}: all levels map onto the generic delta-module "
                f"of smaller slope {format_slope(mu_d)}"
            )
        for m, m_level, mu_m in sorted(killers, key=lambda k: (k[1], k[0])):
            if m_level > level:
                continue
            if mu_a < mu_d:
                if mu_m < mu_d:
                    continue
                n_slope = 0
            else:
                if mu_m <= mu_d:
                    continue
                a_num = sum(t * x for t, x in zip(theta, alpha))
                n_slope = _first_slope_level(a_num, sum(alpha), t_delta, s_delta, mu_m)
            step = -defect(q, m)
            n_hom = max(0, ceil(Fraction(1 - euler_form(q, m, alpha), step)))
            n0 = max(n_slope, n_hom)
            if all(k in seen[alpha] for k in range(n0)):
                hom = f"Hom >= {euler_form(q, m, alpha)} + {step}n"
                if dual:
                    return (
                        f"{side} base {list(alpha)}: levels n >= {n0} map nonzero onto "
                        f"semistable {list(m)} of smaller slope {format_slope(-mu_m)} ({hom})"
                    )
                return (
                    f"{side} base {list(alpha)}: levels n >= {n0} receive a nonzero map from "
                    f"semistable {list(m)} of larger slope {format_slope(mu_m)} ({hom})"
                )
        return None

    for level, dims in comp.levels():
        for alpha in bases:
            if alpha not in certified:
                cert = certify(alpha, level)
                if cert is not None:
                    certified[alpha] = cert
        if len(certified) == len(bases):
            break
        for x in dims:
            alpha, n = ladder_decompose(q, x)
            if alpha in certified:
                continue
            if n > bound:
                certificates.extend(certified[a] for a in bases if a in certified)
                pending = [list(a) for a in bases if a not in certified]
                certificates.append(f"{side} bases {pending} not certified by ladder level {bound}")
                return _ScanResult(semistable, certificates, False, killed)
            seen[alpha].add(n)
            mu_x = slope(theta, x)
            here = Position(PREPROJECTIVE, x, level)
            if delta_semistable and mu_x > mu_d:
                kills["delta"] += 1
                killed.append(x)
                continue
            if any(
                mu_m > mu_x and guaranteed_hom(q, Position(PREPROJECTIVE, m, lm), here) >= 1
                for m, lm, mu_m in killers
            ):
                kills["sub"] += 1
                killed.append(x)
                continue
            if is_semistable_dim(q, theta, x).semistable:
                killers.append((x, level, mu_x))
                semistable.append(x)
    certificates.extend(certified[a] for a in bases)
    if kills["delta"] or kills["sub"]:
        certificates.append(
            f"{side} scan: {kills['delta']} positions ruled out by the delta-module, "
            f"{kills['sub']} by Hom from/to known semistables"
        )
    return _ScanResult(semistable, certificates, True, killed)


# -- the infinite family -----------------------------------------------------------


def _family(q: Quiver, theta: tuple[int, ...], count: int) -> list[tuple[DimVector, Fraction]]:
    delta = q.delta
    bases = base_roots(q).preprojective
    out = []
    for n in range(count):
        best = max(bases, key=lambda a: (slope(theta, _ladder(a, delta, n)), [-x for x in a]))
        d = _ladder(best, delta, n)
        out.append((d, slope(theta, d)))
    return out


def infinite_family(q: Quiver, theta: Sequence[int], count: int) -> list[tuple[DimVector, Fraction]]:
    """First ``count`` members of the certified infinite family.

    At ladder level ``n`` the member is the preprojective ``alpha + n delta``
    of largest slope.  Every submodule of it is a sum of preprojectives on
    levels at most ``n``, whose slopes are at most the level maximum because
    all ladders climb towards mu(delta); so each member is semistable.
    """
    theta = _check_weight(q, theta)
    case = classify_mu_delta(q, theta)
    if case.tag is not CaseTag.REGULAR:
        raise NotRegularCase(f"mu(delta) category is {case}, not RegularCategory")
    if count < 0:
        raise ValueError("count must be nonnegative")
    return _family(q, theta, count)


# -- the engine --------------------------------------------------------------------


def _witnesses(dims: list[DimVector], theta: Sequence[int]) -> dict[Fraction, DimVector]:
    out: dict[Fraction, DimVector] = {}
    for d in dims:
        s = slope(theta, d)
        if s not in out or d < out[s]:
            out[s] = d
    return out


def compute_slope_set(
    q: Quiver, theta: Sequence[int], bound: int = DEFAULT_BOUND, family_count: int = 3
) -> SlopeSetReport:
    delta = _require_euclidean(q)
    theta = _check_weight(q, theta)
    mu_d = slope(theta, delta)
    case, wit_p, wit_i = _mu_delta_case(q, theta, bound)
    certificates = [f"mu(delta) case: {case} ({case.reason})"]

    card = trivial_cardinality(q, theta)
    if card.kind != "More":
        simples = [tuple(int(i == j) for j in range(q.n)) for i in range(q.n)]
        wit = _witnesses(simples, theta)
        certificates.append(f"weight shape gives |X| = {len(card.values)}: {card}")
        return SlopeSetReport(mu_d, case, "finite", tuple(sorted(wit)), wit, certificates=tuple(certificates), bound=bound)

    if case.tag is CaseTag.REGULAR:
        family = _family(q, theta, family_count)
        certificates.append(
            "every level-maximal preprojective is semistable and the level maxima "
            "increase strictly towards mu(delta)"
        )
        return SlopeSetReport(
            mu_d,
            case,
            "infinite",
            family_base=_family(q, theta, 1)[0][0],
            family=tuple(family),
            certificates=tuple(certificates),
            bound=bound,
        )

    found: list[DimVector] = []
    delta_semistable = case.tag is not CaseTag.DYNKIN
    if delta_semistable:
        found.append(delta)
    for tube in tube_system(q):
        for i in range(tube.rank):
            for j in range(1, tube.rank):
                d = _tube_position(tube, i, j)
                if is_semistable_dim(q, theta, d).semistable:
                    found.append(d)
    certificates.append("tube positions of quasi-length >= rank contribute at most mu(delta)")

    if case.tag is CaseTag.INCONCLUSIVE:
        wit = _witnesses(found, theta)
        return SlopeSetReport(
            mu_d, case, "inconclusive", tuple(sorted(wit)), wit, certificates=tuple(certificates), bound=bound
        )

    pre = _scan_preprojectives(
        q, theta, delta_semistable, [wit_p] if wit_p else [], bound
    )
    inj = _scan_preprojectives(
        q.opposite(), _neg(theta), delta_semistable, [wit_i] if wit_i else [], bound, dual=True
    )
    found += pre.semistable + inj.semistable
    certificates += pre.certificates + inj.certificates
    wit = _witnesses(found, theta)
    verdict = "finite" if pre.complete and inj.complete else "inconclusive"
    return SlopeSetReport(mu_d, case, verdict, tuple(sorted(wit)), wit, certificates=tuple(certificates), bound=bound)


def _tube_position(tube, start: int, length: int) -> DimVector:
    total = tube.quasi_simples[start]
    for t in range(1, length):
        total = tuple(a + b for a, b in zip(total, tube.quasi_simples[(start + t) % tube.rank]))
    return total
