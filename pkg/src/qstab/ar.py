"""Auslander-Reiten combinatorics of a Euclidean quiver.

Tubes are recovered from the regular roots below delta; the preprojective
component is knitted from the projectives with the inverse Coxeter
transform.  Positions in the AR quiver carry enough data for
:func:`guaranteed_hom` to decide when Ext^1 is forced to vanish.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import count
from typing import Iterator

import sympy

from .errors import IndexOutOfRange, InternalInconsistency, UnknownClass
from .quiver import TAU, DimVector, Quiver, coxeter_apply, euler_form
from .roots import _require_euclidean, base_roots


@dataclass(frozen=True)
class Tube:
    rank: int
    quasi_simples: tuple[DimVector, ...]

    def to_json(self) -> dict:
        return {"rank": self.rank, "quasi_simples": [list(d) for d in self.quasi_simples]}


@dataclass(frozen=True)
class TubeSystem:
    tubes: tuple[Tube, ...]

    def __len__(self) -> int:
        return len(self.tubes)

    def __iter__(self) -> Iterator[Tube]:
        return iter(self.tubes)

    def to_json(self) -> list[dict]:
        return [t.to_json() for t in self.tubes]


def _add(a: DimVector, b: DimVector) -> DimVector:
    return tuple(x + y for x, y in zip(a, b))


def _leq(a: DimVector, b: DimVector) -> bool:
    return all(x <= y for x, y in zip(a, b))


def tube_system(q: Quiver) -> TubeSystem:
    """Peel tubes off the regular roots below delta.

    A componentwise-minimal remaining regular root is quasi-simple.  Its
    Coxeter orbit gives the tube; the rank is the first orbit length whose
    partial sum reaches delta.  All consecutive sums of that tube are then
    removed and the process repeats.
    """
    cached = q.__dict__.get("_tube_system")
    if cached is not None:
        return cached
    delta = _require_euclidean(q)
    remaining = set(base_roots(q).regular)
    tubes = []
    while remaining:
        minimal = sorted(
            d for d in remaining if not any(e != d and _leq(e, d) for e in remaining)
        )
        start = minimal[0]
        orbit = [start]
        total = start
        while total != delta:
            nxt = coxeter_apply(q, orbit[-1], TAU)
            total = _add(total, nxt)
            orbit.append(nxt)
            if len(orbit) > q.n or not _leq(total, delta):
                raise InternalInconsistency(f"Coxeter orbit of {start} never sums to delta")
        if coxeter_apply(q, orbit[-1], TAU) != start:
            raise InternalInconsistency(f"orbit of {start} is not cyclic of length {len(orbit)}")
        rank = len(orbit)
        if rank == 1:
            raise InternalInconsistency("a real root cannot be quasi-simple in a homogeneous tube")
        tube = Tube(rank, tuple(orbit))
        for i in range(rank):
            for j in range(1, rank):
                d = _consecutive_sum(tube, i, j)
                if d not in remaining:
                    raise InternalInconsistency(f"{d} missing while peeling tube of {start}")
                remaining.discard(d)
        tubes.append(tube)
    tubes.sort(key=lambda t: min(t.quasi_simples))
    result = TubeSystem(tuple(_rotate_to_min(t) for t in tubes))
    q.__dict__["_tube_system"] = result
    return result


def _rotate_to_min(t: Tube) -> Tube:
    k = t.quasi_simples.index(min(t.quasi_simples))
    qs = t.quasi_simples[k:] + t.quasi_simples[:k]
    return Tube(t.rank, qs)


def _consecutive_sum(tube: Tube, start: int, length: int) -> DimVector:
    total = tuple(0 for _ in tube.quasi_simples[0])
    for t in range(length):
        total = _add(total, tube.quasi_simples[(start + t) % tube.rank])
    return total


def regular_dim(ts: TubeSystem, tube_index: int, i: int, j: int) -> DimVector:
    """Dimension of the module of quasi-length ``j`` with quasi-socle ``E_i`` (1-based ``i``).

    Uniserial in the tube, its regular composition factors are
    ``E_i, tau^-1 E_i, ...``, which walk the quasi-simple list backwards.
    """
    if not 0 <= tube_index < len(ts.tubes):
        raise IndexOutOfRange(f"no tube {tube_index}")
    tube = ts.tubes[tube_index]
    if not 1 <= i <= tube.rank:
        raise IndexOutOfRange(f"quasi-simple index {i} outside 1..{tube.rank}")
    if j < 1:
        raise IndexOutOfRange("quasi-length must be at least 1")
    total = tuple(0 for _ in tube.quasi_simples[0])
    for t in range(j):
        total = _add(total, tube.quasi_simples[(i - 1 - t) % tube.rank])
    return total


# -- preprojective component -----------------------------------------------------


class PreprojectiveComponent:
    """Lazily knitted preprojective component.

    Level ``k`` holds ``tau^-k P_i`` for every vertex ``i``.  Irreducible maps
    never decrease the level, so ``Hom(X, Y) != 0`` forces
    ``level(X) <= level(Y)``.
    """

    def __init__(self, q: Quiver):
        _require_euclidean(q)
        self.q = q
        c = sympy.Matrix(q.euler_matrix)
        # rows of C^{-1} are the projective dimension vectors
        cinv = c.inv()
        self._levels: list[tuple[DimVector, ...]] = [
            tuple(tuple(int(x) for x in cinv.row(i)) for i in range(q.n))
        ]
        self._where: dict[DimVector, int] = {d: 0 for d in self._levels[0]}
        _, self._phi_inv = q.coxeter_matrices

    def level(self, k: int) -> tuple[DimVector, ...]:
        while len(self._levels) <= k:
            nxt = tuple(
                tuple(int(x) for x in self._phi_inv * sympy.Matrix(d)) for d in self._levels[-1]
            )
            for d in nxt:
                self._where[d] = len(self._levels)
            self._levels.append(nxt)
        return self._levels[k]

    def levels(self) -> Iterator[tuple[int, tuple[DimVector, ...]]]:
        for k in count():
            yield k, self.level(k)

    def level_of(self, d: DimVector) -> int:
        """Knitting level of a preprojective dimension vector."""
        # total dimension grows at least linearly along tau^-1 orbits
        cap = 4 * self.q.n * (sum(d) + 1)
        while d not in self._where:
            k = len(self._levels)
            if k > cap:
                raise UnknownClass(f"{d} is not a preprojective dimension vector")
            self.level(k)
        return self._where[d]


def preprojective_component(q: Quiver) -> PreprojectiveComponent:
    comp = q.__dict__.get("_preprojective_component")
    if comp is None:
        comp = PreprojectiveComponent(q)
        q.__dict__["_preprojective_component"] = comp
    return comp


# -- Hom lower bounds -------------------------------------------------------------

PREPROJECTIVE = "preprojective"
REGULAR = "regular"
PREINJECTIVE = "preinjective"


@dataclass(frozen=True)
class Position:
    """An indecomposable located in the AR quiver.

    ``level`` is the knitting level for preprojectives (distance from the
    projectives) and the co-level for preinjectives (distance from the
    injectives).  Regular positions carry no level.
    """

    kind: str
    dim: DimVector
    level: int | None = None


def guaranteed_hom(q: Quiver, src: Position, tgt: Position) -> int:
    """A lower bound for dim Hom(src, tgt) that never overestimates.

    Returns ``<src, tgt>`` when Ext^1(src, tgt) = D Hom(tgt, tau src) must
    vanish by directedness, and 0 when nothing is known.
    """
    for p in (src, tgt):
        if p.kind not in (PREPROJECTIVE, REGULAR, PREINJECTIVE):
            raise UnknownClass(f"unknown AR class {p.kind!r}")
    if src == tgt:
        return max(1, euler_form(q, src.dim, tgt.dim))
    order = {PREPROJECTIVE: 0, REGULAR: 1, PREINJECTIVE: 2}
    a, b = order[src.kind], order[tgt.kind]
    if a > b:
        # Hom(I, P or R) = 0 and Hom(R, P) = 0
        return 0
    vanishing = False
    if a < b:
        vanishing = True
    elif src.kind == PREPROJECTIVE:
        # no path from tgt back to tau src, which sits one level below src
        vanishing = src.level is not None and tgt.level is not None and tgt.level >= src.level
    elif src.kind == PREINJECTIVE:
        vanishing = src.level is not None and tgt.level is not None and tgt.level <= src.level
    if not vanishing:
        return 0
    return max(0, euler_form(q, src.dim, tgt.dim))
