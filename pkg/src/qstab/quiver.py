"""Quivers, their Euler form, type detection and the Coxeter transform.

Dimension vectors are plain tuples of ints indexed like ``Quiver.vertices``.
All linear algebra is exact (integers, or sympy rationals for kernels and
inverses); nothing here ever touches floating point.
"""

from __future__ import annotations

import json
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property, reduce
from math import gcd
from typing import Iterable, Sequence

import sympy

from .errors import (
    CyclicQuiver,
    DimensionMismatch,
    DisconnectedQuiver,
    DuplicateVertex,
    MalformedInput,
    NonIntegralResult,
    NotTame,
)

DimVector = tuple[int, ...]

TAU = "tau"
TAU_INVERSE = "tau_inverse"


@dataclass(frozen=True)
class QuiverType:
    """Dynkin / Euclidean / Wild, with the ADE series and rank when known."""

    kind: str
    series: str | None = None
    rank: int | None = None

    @property
    def is_dynkin(self) -> bool:
        return self.kind == "Dynkin"

    @property
    def is_euclidean(self) -> bool:
        return self.kind == "Euclidean"

    @property
    def is_wild(self) -> bool:
        return self.kind == "Wild"

    def label(self) -> str:
        if self.kind == "Wild":
            return "Wild"
        tilde = "~" if self.kind == "Euclidean" else ""
        return f"{self.series}{tilde}{self.rank}"

    def __str__(self) -> str:
        if self.kind == "Wild":
            return "Wild"
        return f"{self.kind}({self.label()})"


@dataclass(frozen=True, eq=True)
class Quiver:
    """A finite acyclic quiver.

    ``arrows`` holds ``(source, target)`` vertex identifiers; parallel arrows
    are repeated.  Validation happens in ``__post_init__``.
    """

    vertices: tuple[str, ...]
    arrows: tuple[tuple[str, str], ...]
    allow_disconnected: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple((s, t) for s, t in self.arrows))
        if not self.vertices:
            raise MalformedInput("a quiver needs at least one vertex")
        seen = set()
        for v in self.vertices:
            if v in seen:
                raise DuplicateVertex(f"vertex {v!r} listed twice")
            seen.add(v)
        for s, t in self.arrows:
            if s not in seen or t not in seen:
                raise MalformedInput(f"arrow {s!r}->{t!r} references an unknown vertex")
        # raises CyclicQuiver
        self.topological_order
        if not self.allow_disconnected and not self.is_connected:
            raise DisconnectedQuiver("underlying graph is not connected")
        # per-quiver memo for the generic subdimension recursion
        object.__setattr__(self, "_subdim_memo", {})

    # -- basic structure -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def arrow_indices(self) -> tuple[tuple[int, int], ...]:
        return tuple((self.index[s], self.index[t]) for s, t in self.arrows)

    @cached_property
    def topological_order(self) -> tuple[int, ...]:
        """Vertex indices, sources first (Kahn)."""
        indeg = [0] * self.n
        succ: list[list[int]] = [[] for _ in range(self.n)]
        for s, t in self.arrow_indices:
            if s == t:
                raise CyclicQuiver(f"loop at vertex {self.vertices[s]!r}")
            indeg[t] += 1
            succ[s].append(t)
        queue = deque(i for i in range(self.n) if indeg[i] == 0)
        order = []
        while queue:
            i = queue.popleft()
            order.append(i)
            for t in succ[i]:
                indeg[t] -= 1
                if indeg[t] == 0:
                    queue.append(t)
        if len(order) != self.n:
            raise CyclicQuiver("the quiver has an oriented cycle")
        return tuple(order)

    @cached_property
    def is_connected(self) -> bool:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for s, t in self.arrow_indices:
            adj[s].add(t)
            adj[t].add(s)
        stack, reached = [0], {0}
        while stack:
            for j in adj[stack.pop()]:
                if j not in reached:
                    reached.add(j)
                    stack.append(j)
        return len(reached) == self.n

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, tuple((t, s) for s, t in self.arrows), self.allow_disconnected)

    def to_document(self) -> dict:
        return {"vertices": list(self.vertices), "arrows": [[s, t] for s, t in self.arrows]}

    def check_dim(self, d: Iterable[int]) -> DimVector:
        d = tuple(int(x) for x in d)
        if len(d) != self.n:
            raise DimensionMismatch(f"expected {self.n} entries, got {len(d)}")
        return d

    # -- bilinear forms ----------------------------------------------------

    @cached_property
    def euler_matrix(self) -> tuple[tuple[int, ...], ...]:
        """C[i][j] = [i == j] - #arrows(i -> j); rows index the first argument."""
        m = [[int(i == j) for j in range(self.n)] for i in range(self.n)]
        for s, t in self.arrow_indices:
            m[s][t] -= 1
        return tuple(tuple(row) for row in m)

    @cached_property
    def symmetrized(self) -> tuple[tuple[int, ...], ...]:
        c = self.euler_matrix
        return tuple(tuple(c[i][j] + c[j][i] for j in range(self.n)) for i in range(self.n))

    @cached_property
    def quiver_type(self) -> QuiverType:
        return _classify(self)

    @cached_property
    def delta(self) -> DimVector:
        if not self.quiver_type.is_euclidean:
            raise NotTame(f"quiver of type {self.quiver_type} has no minimal imaginary root")
        return _radical_generator(self)

    @cached_property
    def coxeter_matrices(self) -> tuple[sympy.Matrix, sympy.Matrix]:
        c = sympy.Matrix(self.euler_matrix)
        phi = -c.inv() * c.T
        return phi, phi.inv()


def parse_quiver(text: str | bytes | dict, *, allow_disconnected: bool = False) -> Quiver:
    """Build a :class:`Quiver` from its JSON document (text or decoded dict)."""
    if isinstance(text, dict):
        doc = text
    else:
        try:
            doc = json.loads(text)
        except (json.JSONDecodeError, UnicodeDecodeError, TypeError) as exc:
            raise MalformedInput(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise MalformedInput("quiver document must be a JSON object")
    vertices = doc.get("vertices")
    arrows = doc.get("arrows", [])
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise MalformedInput('"vertices" must be a list of strings')
    if not isinstance(arrows, list):
        raise MalformedInput('"arrows" must be a list of [source, target] pairs')
    pairs = []
    for a in arrows:
        if not (isinstance(a, list) and len(a) == 2 and all(isinstance(x, str) for x in a)):
            raise MalformedInput(f"bad arrow entry {a!r}")
        pairs.append((a[0], a[1]))
    return Quiver(tuple(vertices), tuple(pairs), allow_disconnected=allow_disconnected)


def euler_form(q: Quiver, d: Sequence[int], e: Sequence[int]) -> int:
    """<d, e> = dim Hom - dim Ext^1 for modules of dimension d and e."""
    d, e = q.check_dim(d), q.check_dim(e)
    total = sum(x * y for x, y in zip(d, e))
    for s, t in q.arrow_indices:
        total -= d[s] * e[t]
    return total


def tits_form(q: Quiver, d: Sequence[int]) -> int:
    return euler_form(q, d, d)


def classify_type(q: Quiver) -> QuiverType:
    if not q.is_connected:
        raise DisconnectedQuiver("type classification needs a connected quiver")
    return q.quiver_type


def minimal_imaginary_root(q: Quiver) -> DimVector:
    return q.delta


def defect(q: Quiver, d: Sequence[int]) -> int:
    return euler_form(q, q.delta, d)


def coxeter_apply(q: Quiver, d: Sequence[int], direction: str = TAU) -> DimVector:
    """Apply the Coxeter transform (``tau``) or its inverse to ``d``.

    The matrix is ``-C^{-1} C^T``: it is the one satisfying
    ``<e, tau d> = -<d, e>`` for non-projective ``d``.
    """
    d = q.check_dim(d)
    phi, phi_inv = q.coxeter_matrices
    if direction == TAU:
        m = phi
    elif direction == TAU_INVERSE:
        m = phi_inv
    else:
        raise ValueError(f"direction must be {TAU!r} or {TAU_INVERSE!r}")
    out = m * sympy.Matrix(d)
    if not all(x.is_integer for x in out):
        raise NonIntegralResult(f"Coxeter image of {d} is not integral")
    return tuple(int(x) for x in out)


# -- type detection ----------------------------------------------------------


def _leading_minors_positive(s: sympy.Matrix) -> bool:
    return all(s[:k, :k].det() > 0 for k in range(1, s.rows + 1))


def _radical_basis(q: Quiver) -> list[sympy.Matrix]:
    return sympy.Matrix(q.symmetrized).nullspace()


def _primitive_positive(v: sympy.Matrix) -> DimVector | None:
    den = reduce(lambda a, b: a * b // gcd(a, b), (sympy.fraction(x)[1] for x in v), 1)
    ints = [int(x * den) for x in v]
    if all(x < 0 for x in ints):
        ints = [-x for x in ints]
    if not all(x > 0 for x in ints):
        return None
    g = reduce(gcd, ints)
    return tuple(x // g for x in ints)


def _radical_generator(q: Quiver) -> DimVector:
    basis = _radical_basis(q)
    if len(basis) != 1:
        raise NotTame("radical of the symmetrized Euler form is not one-dimensional")
    gen = _primitive_positive(basis[0])
    if gen is None:
        raise NotTame("radical is not spanned by a positive vector")
    return gen


def _classify(q: Quiver) -> QuiverType:
    s = sympy.Matrix(q.symmetrized)
    graph = _graph_shape(q)
    if _leading_minors_positive(s):
        return QuiverType("Dynkin", *_dynkin_series(q.n, graph))
    if not q.is_connected:
        return QuiverType("Wild")
    basis = s.nullspace()
    # A connected symmetric generalized Cartan matrix is affine iff its
    # kernel contains a strictly positive vector.
    if len(basis) == 1 and _primitive_positive(basis[0]) is not None:
        return QuiverType("Euclidean", *_euclidean_series(q.n, graph))
    return QuiverType("Wild")


def _graph_shape(q: Quiver) -> tuple[Counter, list[list[int]]]:
    edges = Counter(frozenset(a) for a in q.arrow_indices)
    adj: list[list[int]] = [[] for _ in range(q.n)]
    for e in edges:
        i, j = tuple(e)
        adj[i].append(j)
        adj[j].append(i)
    return edges, adj


def _arms(adj: list[list[int]], center: int) -> list[int]:
    lengths = []
    for start in adj[center]:
        prev, cur, length = center, start, 1
        while len(adj[cur]) == 2:
            nxt = adj[cur][0] if adj[cur][1] == prev else adj[cur][1]
            prev, cur, length = cur, nxt, length + 1
        lengths.append(length)
    return sorted(lengths)


def _dynkin_series(n: int, graph) -> tuple[str | None, int | None]:
    _, adj = graph
    branch = [i for i in range(n) if len(adj[i]) >= 3]
    if not branch:
        return "A", n
    arms = _arms(adj, branch[0])
    if arms[:2] == [1, 1]:
        return "D", n
    return {(1, 2, 2): ("E", 6), (1, 2, 3): ("E", 7), (1, 2, 4): ("E", 8)}.get(tuple(arms), (None, n))


def _euclidean_series(n: int, graph) -> tuple[str | None, int | None]:
    edges, adj = graph
    if n == 2:
        return "A", 1
    degrees = sorted(len(a) for a in adj)
    if all(x == 2 for x in degrees):
        return "A", n - 1
    if degrees[-1] == 4 or degrees[-2:] == [3, 3]:
        return "D", n - 1
    center = next(i for i in range(n) if len(adj[i]) == 3)
    shape = {(2, 2, 2): ("E", 6), (1, 3, 3): ("E", 7), (1, 2, 5): ("E", 8)}
    return shape.get(tuple(_arms(adj, center)), (None, n - 1))
