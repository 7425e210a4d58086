"""Explicit representations over small prime fields.

This is the ground truth the generic machinery is tested against: random
matrix representations, Hom dimensions by exact rank over F_p, literal
enumeration of all subrepresentations, and the slope test applied to them.
It is slow by design and guarded against inputs that would not finish.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Sequence

import numpy as np

from .errors import FieldMismatch, GenericityNotFound, InternalInconsistency, NegativeEntry, ResourceLimit
from .quiver import DimVector, Quiver, defect, tits_form
from .stability import Status, StabilityVerdict, slope

MAX_ENUM_DIM = 8
ENUM_FIELDS = (2, 3)


@dataclass(frozen=True)
class ExplicitRep:
    """A representation: one ``(d_target x d_source)`` matrix per arrow."""

    quiver: Quiver
    dimension: DimVector
    field: int
    matrices: tuple[np.ndarray, ...]

    def __post_init__(self):
        for (s, t), m in zip(self.quiver.arrow_indices, self.matrices):
            if m.shape != (self.dimension[t], self.dimension[s]):
                raise ValueError(f"matrix shape {m.shape} does not match dimensions")

    def transpose(self) -> "ExplicitRep":
        """The dual representation of the opposite quiver."""
        return ExplicitRep(
            self.quiver.opposite(),
            self.dimension,
            self.field,
            tuple(np.ascontiguousarray(m.T) for m in self.matrices),
        )


def random_rep(q: Quiver, d: Sequence[int], p: int, seed: int) -> ExplicitRep:
    d = q.check_dim(d)
    if any(x < 0 for x in d):
        raise NegativeEntry(f"{d} has a negative entry")
    rng = np.random.default_rng(seed)
    mats = tuple(rng.integers(0, p, size=(d[t], d[s]), dtype=np.int64) for s, t in q.arrow_indices)
    return ExplicitRep(q, d, p, mats)


# -- linear algebra mod p --------------------------------------------------------------


def rref_mod_p(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p and its pivot columns."""
    a = np.array(a, dtype=np.int64) % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        a[[r, k]] = a[[k, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        others = np.nonzero(a[:, c])[0]
        for i in others:
            if i != r:
                a[i] = (a[i] - a[i, c] * a[r]) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank_mod_p(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return len(rref_mod_p(a, p)[1])


def hom_dim(m: ExplicitRep, n: ExplicitRep) -> int:
    """dim Hom(M, N) as the kernel of (phi_i) -> (phi_t M_a - N_a phi_s)."""
    if m.field != n.field:
        raise FieldMismatch(f"F_{m.field} versus F_{n.field}")
    if m.quiver != n.quiver:
        raise FieldMismatch("representations of different quivers")
    q, p = m.quiver, m.field
    dm, dn = m.dimension, n.dimension
    offsets, total = [], 0
    for i in range(q.n):
        offsets.append(total)
        total += dn[i] * dm[i]
    if total == 0:
        return 0
    blocks = []
    for (s, t), ma, na in zip(q.arrow_indices, m.matrices, n.matrices):
        # equation entries (r, c) of phi_t M_a - N_a phi_s, an (dn[t] x dm[s]) matrix
        eq = np.zeros((dn[t] * dm[s], total), dtype=np.int64)
        for r in range(dn[t]):
            for c in range(dm[s]):
                row = r * dm[s] + c
                for k in range(dm[t]):
                    eq[row, offsets[t] + r * dm[t] + k] += ma[k, c]
                for k in range(dn[s]):
                    eq[row, offsets[s] + k * dm[s] + c] -= na[r, k]
        blocks.append(eq)
    if not blocks:
        return total
    return total - rank_mod_p(np.vstack(blocks), p)


def end_dim(m: ExplicitRep) -> int:
    return hom_dim(m, m)


# -- subspace enumeration -----------------------------------------------------------


@lru_cache(maxsize=None)
def _subspaces(p: int, m: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Every subspace of F_p^m, each as its RREF basis."""
    out = []
    for r in range(m + 1):
        for piv in combinations(range(m), r):
            free = [(i, c) for i, pc in enumerate(piv) for c in range(pc + 1, m) if c not in piv]
            for vals in product(range(p), repeat=len(free)):
                rows = [[0] * m for _ in range(r)]
                for i, pc in enumerate(piv):
                    rows[i][pc] = 1
                for (i, c), v in zip(free, vals):
                    rows[i][c] = v
                out.append(tuple(tuple(row) for row in rows))
    return tuple(out)


def _span(vectors: list[np.ndarray], dim: int, p: int) -> np.ndarray:
    if not vectors:
        return np.zeros((0, dim), dtype=np.int64)
    return rref_mod_p(np.vstack(vectors), p)[0]


def _supspaces(w: np.ndarray, dim: int, p: int):
    """Bases of all subspaces of F_p^dim containing the row space of ``w`` (in RREF)."""
    pivots = [int(np.nonzero(row)[0][0]) for row in w]
    complement = [c for c in range(dim) if c not in pivots]
    for sub in _subspaces(p, len(complement)):
        extra = np.zeros((len(sub), dim), dtype=np.int64)
        for i, row in enumerate(sub):
            for j, v in enumerate(row):
                extra[i, complement[j]] = v
        yield np.vstack([w, extra]) if len(sub) else w


def _check_enumerable(m: ExplicitRep) -> None:
    if sum(m.dimension) > MAX_ENUM_DIM or m.field not in ENUM_FIELDS:
        raise ResourceLimit(
            f"subrepresentation enumeration needs total dimension <= {MAX_ENUM_DIM} over F_2 or F_3"
        )


def submodules(m: ExplicitRep):
    """Yield every subrepresentation as a tuple of per-vertex bases (RREF rows)."""
    _check_enumerable(m)
    q, p, d = m.quiver, m.field, m.dimension
    incoming: list[list[tuple[int, np.ndarray]]] = [[] for _ in range(q.n)]
    for (s, t), mat in zip(q.arrow_indices, m.matrices):
        incoming[t].append((s, mat))
    order = q.topological_order
    chosen: dict[int, np.ndarray] = {}

    def rec(k: int):
        if k == len(order):
            yield tuple(chosen[i] for i in range(q.n))
            return
        i = order[k]
        images = [(mat @ row) % p for s, mat in incoming[i] for row in chosen[s]]
        w = _span(images, d[i], p)
        for u in _supspaces(w, d[i], p):
            chosen[i] = u
            yield from rec(k + 1)
        chosen.pop(i, None)

    yield from rec(0)


def subdims_bruteforce(m: ExplicitRep) -> frozenset[DimVector]:
    return frozenset(tuple(len(b) for b in sub) for sub in submodules(m))


def _verdict_from_subdims(subs, theta: Sequence[int], d: DimVector) -> StabilityVerdict:
    mu = slope(theta, d)
    proper = [e for e in subs if any(e) and e != d]
    worst = max(proper, key=lambda e: (slope(theta, e), sum(e), tuple(-x for x in e)), default=None)
    if worst is not None and slope(theta, worst) > mu:
        return StabilityVerdict(Status.UNSTABLE, mu, worst)
    if any(slope(theta, e) == mu for e in proper):
        return StabilityVerdict(Status.SEMISTABLE, mu)
    return StabilityVerdict(Status.STABLE, mu)


def _quotient_status(m: ExplicitRep, theta: Sequence[int]) -> Status:
    """Quotient-side test: M is semistable iff every proper quotient has slope >= mu(M)."""
    d = m.dimension
    mu = slope(theta, d)
    # quotients of M are duals of submodules of the transpose
    quots = [e for e in subdims_bruteforce(m.transpose()) if any(e) and e != d]
    if any(slope(theta, f) < mu for f in quots):
        return Status.UNSTABLE
    if any(slope(theta, f) == mu for f in quots):
        return Status.SEMISTABLE
    return Status.STABLE


def semistable_bruteforce(m: ExplicitRep, theta: Sequence[int]) -> StabilityVerdict:
    """Slope (semi)stability of an explicit representation, by enumeration.

    Computed on submodules and re-derived on quotients; a mismatch raises.
    """
    if len(theta) != m.quiver.n:
        raise ValueError("weight length does not match the quiver")
    verdict = _verdict_from_subdims(subdims_bruteforce(m), theta, m.dimension)
    if _quotient_status(m, theta) is not verdict.status:
        raise InternalInconsistency("submodule and quotient tests disagree")
    return verdict


# -- genericity ---------------------------------------------------------------------


def _homogeneous_delta(m: ExplicitRep) -> bool:
    """No proper nonzero subrepresentation of defect zero (so not in a tube of rank > 1)."""
    q, d = m.quiver, m.dimension
    return not any(any(e) and e != d and defect(q, e) == 0 for e in subdims_bruteforce(m))


def verify_generic(q: Quiver, d: Sequence[int], p: int, attempts: int = 200, seed: int = 0) -> ExplicitRep:
    """A random representation certified to be general in its representation space.

    Rigid representations (``dim End = q(d)``, i.e. no self-extensions) have
    open orbit and are accepted for any ``d``.  For ``d = delta`` the draw
    must be a brick with no regular proper subrepresentation, which over
    F_2 / F_3 is checked by enumeration; over larger fields only the brick
    condition is checked.
    """
    d = q.check_dim(d)
    target = tits_form(q, d)
    is_delta = q.quiver_type.is_euclidean and d == q.delta
    if target <= 0 and not is_delta:
        raise GenericityNotFound(0)
    for k in range(attempts):
        rep = random_rep(q, d, p, seed + k)
        e = end_dim(rep)
        if is_delta:
            if e != 1:
                continue
            if sum(d) <= MAX_ENUM_DIM and p in ENUM_FIELDS and not _homogeneous_delta(rep):
                continue
            return rep
        if e == target:
            return rep
    raise GenericityNotFound(attempts)


def verdict_json(v: StabilityVerdict) -> dict:
    out = {"status": v.status.value, "slope": f"{Fraction(v.slope).numerator}/{Fraction(v.slope).denominator}"}
    if v.violator is not None:
        out["violator"] = list(v.violator)
    return out
