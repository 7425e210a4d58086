"""Slopes and semistability of generic representations.

Semistability of the general representation of dimension ``d`` is decided
from the generic subdimension vectors of ``d``: ``e`` is a subdimension
vector of every representation of dimension ``d`` iff
``<e', d - e> >= 0`` for every generic subdimension vector ``e'`` of ``e``.

Why this answers the question about modules: the representation space of
``d`` is irreducible and the semistable locus is open in it, so some
representation of dimension ``d`` is semistable iff a general one is, and a
general representation has exactly the generic subdimension vectors.  For a
rigid indecomposable (a real Schur root) the general representation *is*
that module; for ``d = delta`` it is a module in a homogeneous tube.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import prod
from typing import Callable, Sequence

import numpy as np

from .errors import DimensionMismatch, NegativeEntry, NotSupportedDim, ResourceLimit, ZeroDimVector
from .quiver import DimVector, Quiver, defect, tits_form

DEFAULT_MAX_BOX = 5_000_000


def max_box() -> int:
    """Work cap for the subdimension recursion (``QSTAB_MAX_BOX``).

    The recursion for ``d`` visits every pair ``e' <= e <= d``, so the
    guarded volume is that of the pair box, ``prod C(d_i + 2, 2)``.
    """
    raw = os.environ.get("QSTAB_MAX_BOX")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return DEFAULT_MAX_BOX


class Status(str, Enum):
    SEMISTABLE = "Semistable"
    STABLE = "Stable"
    UNSTABLE = "Unstable"


@dataclass(frozen=True)
class StabilityVerdict:
    status: Status
    slope: Fraction
    violator: DimVector | None = None

    @property
    def semistable(self) -> bool:
        return self.status is not Status.UNSTABLE

    @property
    def stable(self) -> bool:
        return self.status is Status.STABLE


def slope(theta: Sequence[int], d: Sequence[int]) -> Fraction:
    if len(theta) != len(d):
        raise DimensionMismatch("weight and dimension vector differ in length")
    if any(x < 0 for x in d):
        raise NegativeEntry(f"{tuple(d)} has a negative entry")
    size = sum(d)
    if size == 0:
        raise ZeroDimVector("slope of the zero vector is undefined")
    return Fraction(sum(t * x for t, x in zip(theta, d)), size)


def theta_shift(theta: Sequence[int], a: Fraction | int) -> Callable[[Sequence[int]], Fraction]:
    """The linear form ``d -> theta(d) - a * |d|``.

    Its value is zero exactly on slope ``a`` and nonpositive exactly on
    slopes at most ``a``.  The coefficients are exposed as ``.coefficients``.
    """
    a = Fraction(a)
    coeffs = tuple(Fraction(t) - a for t in theta)

    def form(d: Sequence[int]) -> Fraction:
        return sum((c * x for c, x in zip(coeffs, d)), Fraction(0))

    form.coefficients = coeffs
    return form


def generic_subdims(q: Quiver, d: Sequence[int]) -> frozenset[DimVector]:
    """Dimension vectors of subrepresentations common to all representations of ``d``.

    Includes ``0`` and ``d``.  Memoized per quiver.
    """
    d = q.check_dim(d)
    if any(x < 0 for x in d):
        raise NegativeEntry(f"{d} has a negative entry")
    volume = prod((x + 1) * (x + 2) // 2 for x in d)
    if volume > max_box():
        raise ResourceLimit(f"subdimension search for {d} needs volume {volume}, cap is {max_box()}")
    return _subdims(q, d)


def _box(d: DimVector) -> np.ndarray:
    """All ``e`` with ``0 <= e <= d``, one per row, in lexicographic order."""
    grids = np.indices(tuple(x + 1 for x in d), dtype=np.int64)
    return grids.reshape(len(d), -1).T


def _subdims(q: Quiver, d: DimVector) -> frozenset[DimVector]:
    sets: dict = q._subdim_memo.setdefault("sets", {})
    hit = sets.get(d)
    if hit is None:
        hit = frozenset(map(tuple, _subdim_rows(q, d).tolist()))
        sets[d] = hit
    return hit


def _subdim_rows(q: Quiver, d: DimVector) -> np.ndarray:
    memo: dict = q._subdim_memo.setdefault("rows", {})
    hit = memo.get(d)
    if hit is not None:
        return hit
    box = _box(d)
    # row k of w is C (d - e_k), so <e', d - e_k> = e' . w_k
    w = (np.asarray(d, dtype=np.int64) - box) @ np.asarray(q.euler_matrix, dtype=np.int64).T
    keep = np.zeros(len(box), dtype=bool)
    keep[0] = keep[-1] = True
    candidates = np.nonzero((box * w).sum(axis=1) >= 0)[0]
    for k in candidates[(candidates > 0) & (candidates < len(box) - 1)]:
        subs = _subdim_rows(q, tuple(box[k].tolist()))
        keep[k] = (subs @ w[k]).min() >= 0
    result = box[keep]
    memo[d] = result
    return result


def generic_quotient_dims(q: Quiver, d: Sequence[int]) -> frozenset[DimVector]:
    d = q.check_dim(d)
    return frozenset(tuple(x - y for x, y in zip(d, e)) for e in generic_subdims(q, d))


def _supported(q: Quiver, d: DimVector) -> bool:
    qt = q.quiver_type
    if qt.is_dynkin:
        return tits_form(q, d) == 1
    if qt.is_euclidean:
        delta = q.delta
        if d == delta:
            return True
        if tits_form(q, d) != 1:
            return False
        # regular real roots are Schur only below delta (quasi-length < rank)
        return defect(q, d) != 0 or all(x <= y for x, y in zip(d, delta))
    return False


def is_semistable_dim(
    q: Quiver, theta: Sequence[int], d: Sequence[int], *, generic: bool = False
) -> StabilityVerdict:
    """Semistability verdict for the general representation of dimension ``d``.

    Without ``generic=True`` the input must be a real Schur root or
    ``delta``, where the general representation is the indecomposable one
    the caller means.  With ``generic=True`` any ``d`` is accepted and the
    answer is whether *some* representation of dimension ``d`` is
    semistable.
    """
    d = q.check_dim(d)
    if len(theta) != q.n:
        raise DimensionMismatch(f"weight needs {q.n} entries")
    if any(x < 0 for x in d):
        raise NegativeEntry(f"{d} has a negative entry")
    if not any(d):
        raise ZeroDimVector("zero dimension vector")
    if not generic and not _supported(q, d):
        raise NotSupportedDim(f"{d} is neither a real Schur root nor delta of {q.quiver_type}")
    mu = slope(theta, d)
    best = None
    tie = False
    for e in generic_subdims(q, d):
        if not any(e) or e == d:
            continue
        s = slope(theta, e)
        if s == mu:
            tie = True
        # ties go to the largest subdimension, then lexicographic order
        key = (s, sum(e), tuple(-x for x in e))
        if best is None or key > best:
            best = key
    best = None if best is None else (best[0], tuple(-x for x in best[2]))
    if best is not None and best[0] > mu:
        return StabilityVerdict(Status.UNSTABLE, mu, best[1])
    if tie:
        return StabilityVerdict(Status.SEMISTABLE, mu)
    return StabilityVerdict(Status.STABLE, mu)


def is_stable_dim(q: Quiver, theta: Sequence[int], d: Sequence[int], *, generic: bool = False) -> bool:
    return is_semistable_dim(q, theta, d, generic=generic).stable
