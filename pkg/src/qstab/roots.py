"""Positive roots of Euclidean quivers below the minimal imaginary root."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .errors import NegativeEntry, NotABaseRoot, NotARoot, NotTame
from .quiver import DimVector, Quiver, defect, tits_form


class RootClass(str, Enum):
    PREPROJECTIVE = "Preprojective"
    REGULAR = "Regular"
    PREINJECTIVE = "Preinjective"


@dataclass(frozen=True)
class BaseRoots:
    preprojective: tuple[DimVector, ...]
    regular: tuple[DimVector, ...]
    preinjective: tuple[DimVector, ...]

    def all(self) -> tuple[DimVector, ...]:
        return tuple(sorted(self.preprojective + self.regular + self.preinjective))

    def to_json(self) -> dict:
        return {
            "preprojective": [list(d) for d in self.preprojective],
            "regular": [list(d) for d in self.regular],
            "preinjective": [list(d) for d in self.preinjective],
        }


def _require_euclidean(q: Quiver) -> DimVector:
    if not q.quiver_type.is_euclidean:
        raise NotTame(f"needs a Euclidean quiver, got {q.quiver_type}")
    return q.delta


def real_roots_below_delta(q: Quiver) -> list[DimVector]:
    """All d with 0 < d < delta and q(d) = 1, in lexicographic order.

    Exhaustive scan of the box [0, delta].  Partial vectors are pruned with a
    lower bound on the Tits form: with the undecided coordinates free in
    their ranges, q can only drop by the off-diagonal terms they touch.
    """
    delta = _require_euclidean(q)
    n = q.n
    c = q.euler_matrix
    out: list[DimVector] = []

    def rec(prefix: list[int], value: int) -> None:
        k = len(prefix)
        if k == n:
            d = tuple(prefix)
            if value == 1 and any(d) and d != delta:
                out.append(d)
            return
        # contribution of coordinate k against the already fixed prefix
        for x in range(delta[k] + 1):
            cross = sum(prefix[i] * (c[i][k] + c[k][i]) for i in range(k))
            new = value + x * x + x * cross
            if new - _remaining_drop(q, prefix + [x], delta) > 1:
                continue
            prefix.append(x)
            rec(prefix, new)
            prefix.pop()

    rec([], 0)
    return out


def _remaining_drop(q: Quiver, prefix: list[int], delta: DimVector) -> int:
    """Upper bound on how much the undecided coordinates can lower q."""
    k = len(prefix)
    s = q.symmetrized
    drop = 0
    for j in range(k, q.n):
        # negative cross terms of j with fixed and with later free coordinates
        fixed = sum(-s[i][j] * prefix[i] for i in range(k))
        free = sum(-s[i][j] * delta[i] for i in range(j + 1, q.n))
        drop += delta[j] * (fixed + free)
    return drop


def is_real_root(q: Quiver, d: Sequence[int]) -> bool:
    _require_euclidean(q)
    d = _positive(q, d)
    return tits_form(q, d) == 1


def is_imaginary_root(q: Quiver, d: Sequence[int]) -> bool:
    delta = _require_euclidean(q)
    d = _positive(q, d)
    m = d[0] // delta[0]
    return m >= 1 and all(x == m * y for x, y in zip(d, delta))


def classify_root(q: Quiver, d: Sequence[int]) -> RootClass:
    d = q.check_dim(d)
    if not (is_real_root(q, d) or is_imaginary_root(q, d)):
        raise NotARoot(f"{d} is not a positive root")
    df = defect(q, d)
    if df < 0:
        return RootClass.PREPROJECTIVE
    if df > 0:
        return RootClass.PREINJECTIVE
    return RootClass.REGULAR


def base_roots(q: Quiver) -> BaseRoots:
    cached = q.__dict__.get("_base_roots")
    if cached is not None:
        return cached
    groups: dict[RootClass, list[DimVector]] = {c: [] for c in RootClass}
    for d in real_roots_below_delta(q):
        groups[classify_root(q, d)].append(d)
    result = BaseRoots(
        tuple(groups[RootClass.PREPROJECTIVE]),
        tuple(groups[RootClass.REGULAR]),
        tuple(groups[RootClass.PREINJECTIVE]),
    )
    q.__dict__["_base_roots"] = result
    return result


def ladder_dim(q: Quiver, base: Sequence[int], n: int) -> DimVector:
    base = q.check_dim(base)
    if n < 0:
        raise ValueError("ladder level must be nonnegative")
    if base not in base_roots(q).all():
        raise NotABaseRoot(f"{base} is not a real root below delta")
    return tuple(b + n * x for b, x in zip(base, q.delta))


def ladder_decompose(q: Quiver, d: Sequence[int]) -> tuple[DimVector, int]:
    """Split a positive real root as ``base + n * delta`` with ``base < delta``."""
    d = q.check_dim(d)
    delta = q.delta
    n = min(x // y for x, y in zip(d, delta))
    base = tuple(x - n * y for x, y in zip(d, delta))
    if not any(base):
        raise NotARoot(f"{d} is a multiple of delta")
    if not all(b <= y for b, y in zip(base, delta)):
        raise NotARoot(f"{d} does not reduce to a root below delta")
    return base, n


def _positive(q: Quiver, d: Sequence[int]) -> DimVector:
    d = q.check_dim(d)
    if any(x < 0 for x in d):
        raise NegativeEntry(f"{d} has a negative entry")
    if not any(d):
        raise NotARoot("the zero vector is not a root")
    return d
