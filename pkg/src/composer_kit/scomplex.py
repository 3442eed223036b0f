"""The simplicial set of relations.

An n-simplex carries a column set for each vertex and, for every nonempty
set W of surviving vertices, a set of fundamental tuples of dimension
|W|-1.  A fundamental tuple of dimension n is a flat tuple of (n+1)!
labels; its j-th block of n! entries is the projection e_j.

Relations are the compact form: a minimal simplex is recovered from its
vertex relation through h_n.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping

DIM_CAP = 8

FundamentalTuple = tuple  # flat tuple of labels, length (n+1)!


def fsig_size(n: int) -> int:
    if n < 0:
        raise ValueError("dimension must be >= 0")
    return math.factorial(n + 1)


@lru_cache(maxsize=None)
def _dim_by_len() -> dict:
    return {math.factorial(n + 1): n for n in range(DIM_CAP + 2)}


def dim_of(a: tuple) -> int:
    try:
        return _dim_by_len()[len(a)]
    except KeyError:
        raise ValueError(f"length {len(a)} is not a factorial") from None


@lru_cache(maxsize=None)
def fsig_pattern(n: int) -> tuple[int, ...]:
    """Which vertex column each fundamental entry draws from."""
    return h_map(tuple(range(n + 1)))


def h_map(t: tuple) -> tuple:
    """Expand a vertex tuple into its fundamental tuple."""
    t = tuple(t)
    if len(t) == 1:
        return t
    out = []
    for j in range(len(t)):
        out.extend(h_map(t[:j] + t[j + 1:]))
    return tuple(out)


def _h_inv_raw(a: tuple) -> tuple:
    n = dim_of(a)
    if n == 0:
        return (a[0],)
    tail = _h_inv_raw(proj_e(a, 0))
    head = _h_inv_raw(proj_e(a, n))[0]
    return (head,) + tail


def h_inv(a: tuple) -> tuple:
    t = _h_inv_raw(a)
    if h_map(t) != tuple(a):
        raise ValueError("tuple is not subcomponent-simplicial")
    return t


def is_subcomponent_simplicial(a: tuple) -> bool:
    return h_map(_h_inv_raw(a)) == tuple(a)


def proj_e(a: tuple, j: int) -> tuple:
    n = dim_of(a)
    if n == 0:
        raise ValueError("a vertex has no projections")
    if not 0 <= j <= n:
        raise ValueError(f"projection index {j} out of range for dimension {n}")
    size = math.factorial(n)
    return tuple(a[j * size:(j + 1) * size])


def degen_c(a: tuple, j: int) -> tuple:
    n = dim_of(a)
    if not 0 <= j <= n:
        raise ValueError(f"degeneracy index {j} out of range for dimension {n}")
    if n == 0:
        return (a[0], a[0])
    out = []
    for k in range(j):
        out.extend(degen_c(proj_e(a, k), j - 1))
    out.extend(a)
    out.extend(a)
    for k in range(j + 1, n + 1):
        out.extend(degen_c(proj_e(a, k), j))
    return tuple(out)


def project_to(a: tuple, keep: Iterable[int]) -> tuple:
    """Project onto the surviving vertex positions, dropping the highest first."""
    keep = set(keep)
    n = dim_of(a)
    for v in sorted(set(range(n + 1)) - keep, reverse=True):
        a = proj_e(a, v)
    return a


def is_component_simplicial(a: tuple) -> bool:
    n = dim_of(a)
    if n <= 1:
        return True
    faces = [proj_e(a, p) for p in range(n + 1)]
    for q in range(n + 1):
        for p in range(q):
            if proj_e(faces[q], p) != proj_e(faces[p], q - 1):
                return False
    return True


# -- relations ---------------------------------------------------------------

@dataclass(frozen=True)
class Relation:
    arity: int
    columns: tuple[frozenset, ...]
    rows: frozenset

    def __post_init__(self):
        if len(self.columns) != self.arity:
            raise ValueError("one column per coordinate")
        for r in self.rows:
            if len(r) != self.arity:
                raise ValueError(f"row {r} has the wrong arity")
            for t, v in enumerate(r):
                if v not in self.columns[t]:
                    raise ValueError(f"label {v} missing from column {t}")

    @classmethod
    def from_rows(cls, rows: Iterable[tuple], columns=None) -> "Relation":
        rows = frozenset(tuple(r) for r in rows)
        if columns is None:
            if not rows:
                raise ValueError("columns are needed for an empty relation")
            arity = len(next(iter(rows)))
            if any(len(r) != arity for r in rows):
                raise ValueError("rows have different arities")
            columns = tuple(frozenset(r[t] for r in rows) for t in range(arity))
        columns = tuple(frozenset(c) for c in columns)
        return cls(len(columns), columns, rows)

    @property
    def n(self) -> int:
        return self.arity - 1

    def sorted_rows(self) -> list[tuple]:
        return sorted(self.rows)

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.sorted_rows())

    def face(self, p: int) -> "Relation":
        return Relation.from_rows((r[:p] + r[p + 1:] for r in self.rows),
                                  self.columns[:p] + self.columns[p + 1:])

    def degeneracy(self, p: int) -> "Relation":
        return Relation.from_rows((r[:p + 1] + r[p:] for r in self.rows),
                                  self.columns[:p + 1] + self.columns[p:])

    def pullback(self, g) -> "Relation":
        """The relation of the simplicial image along a monotone map."""
        g = tuple(g)
        return Relation.from_rows((tuple(r[v] for v in g) for r in self.rows),
                                  tuple(self.columns[v] for v in g))


# -- simplices -----------------------------------------------------------------

def _subsets(n: int):
    for size in range(1, n + 2):
        for w in itertools.combinations(range(n + 1), size):
            yield w


@dataclass(frozen=True)
class SSimplex:
    """An n-simplex: vertex columns plus element sets for every subface.

    Nodes are keyed by the sorted tuple of surviving vertices.
    """

    fsig: tuple[frozenset, ...]
    nodes: Mapping[tuple, frozenset] = field(hash=False)

    def __post_init__(self):
        object.__setattr__(self, "fsig", tuple(frozenset(c) for c in self.fsig))
        nodes = {tuple(w): frozenset(tuple(a) for a in els) for w, els in self.nodes.items()}
        n = len(self.fsig) - 1
        if n > DIM_CAP:
            raise ValueError(f"dimension {n} exceeds the cap {DIM_CAP}")
        missing = [w for w in _subsets(n) if w not in nodes]
        if missing:
            raise ValueError(f"missing nodes {missing[:3]}")
        object.__setattr__(self, "nodes", nodes)

    @property
    def dim(self) -> int:
        return len(self.fsig) - 1

    @property
    def elements(self) -> frozenset:
        return self.nodes[tuple(range(self.dim + 1))]

    def node(self, w) -> frozenset:
        return self.nodes[tuple(sorted(w))]

    def key(self):
        return (self.fsig, tuple(sorted((w, tuple(sorted(els))) for w, els in self.nodes.items())))

    def __eq__(self, other):
        return isinstance(other, SSimplex) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def check_coherence(self) -> bool:
        """Every element projects into the corresponding face node."""
        for w, els in self.nodes.items():
            if len(w) == 1:
                if any(a[0] not in self.fsig[w[0]] for a in els):
                    return False
                continue
            for a in els:
                for p in range(len(w)):
                    sub = w[:p] + w[p + 1:]
                    if proj_e(a, p) not in self.nodes[sub]:
                        return False
        return True


def face(y: SSimplex, j: int) -> SSimplex:
    n = y.dim
    if n < 1:
        raise ValueError("a vertex has no faces")
    if not 0 <= j <= n:
        raise ValueError(f"face index {j} out of range")
    nodes = {w: y.nodes[tuple(v if v < j else v + 1 for v in w)] for w in _subsets(n - 1)}
    return SSimplex(y.fsig[:j] + y.fsig[j + 1:], nodes)


def degeneracy(y: SSimplex, j: int) -> SSimplex:
    n = y.dim
    if not 0 <= j <= n:
        raise ValueError(f"degeneracy index {j} out of range")
    nodes = {}
    for w in _subsets(n + 1):
        down = tuple(sorted({v if v <= j else v - 1 for v in w}))
        els = y.nodes[down]
        if j in w and j + 1 in w:
            pos = w.index(j)
            els = frozenset(degen_c(a, pos) for a in els)
        nodes[w] = els
    return SSimplex(y.fsig[:j + 1] + y.fsig[j:], nodes)


def signature(y: SSimplex) -> list[frozenset]:
    """Element sets of the faces d_0 y, ..., d_n y."""
    n = y.dim
    return [y.nodes[tuple(v for v in range(n + 1) if v != j)] for j in range(n + 1)]


def is_e_simplicial(y: SSimplex) -> bool:
    """Vacuously true in dimensions 0 and 1."""
    return all(is_component_simplicial(a) for a in y.elements)


def is_subface_simplicial(y: SSimplex) -> bool:
    return all(is_component_simplicial(a) for els in y.nodes.values() for a in els)


def hull_tuples(faces: list[frozenset]) -> set[tuple]:
    """Component-simplicial tuples with components drawn from the given sets."""
    n = len(faces) - 1
    out = set()

    def rec(chosen):
        q = len(chosen)
        if q == n + 1:
            out.add(tuple(x for b in chosen for x in b))
            return
        for b in faces[q]:
            if n == 1 or all(proj_e(b, p) == proj_e(chosen[p], q - 1) for p in range(q)):
                rec(chosen + [b])

    if n >= 1:
        rec([])
    return out


def e_hull(y: SSimplex) -> SSimplex:
    if y.dim < 2:
        raise ValueError("the hull is defined from dimension 2")
    nodes = dict(y.nodes)
    nodes[tuple(range(y.dim + 1))] = frozenset(hull_tuples(signature(y)))
    return SSimplex(y.fsig, nodes)


def _fsig_product(cols: tuple[frozenset, ...]) -> frozenset:
    n = len(cols) - 1
    pattern = fsig_pattern(n)
    return frozenset(itertools.product(*(sorted(cols[c]) for c in pattern)))


def t_min(T: Iterable[tuple], fsig) -> SSimplex:
    T = frozenset(tuple(a) for a in T)
    if not T:
        raise ValueError("T must be nonempty")
    fsig = tuple(frozenset(c) for c in fsig)
    n = len(fsig) - 1
    nodes = {w: frozenset(project_to(a, w) for a in T) for w in _subsets(n)}
    return SSimplex(fsig, nodes)


def t_max(T: Iterable[tuple], fsig) -> SSimplex:
    T = frozenset(tuple(a) for a in T)
    if not T:
        raise ValueError("T must be nonempty")
    fsig = tuple(frozenset(c) for c in fsig)
    n = len(fsig) - 1
    nodes = {w: _fsig_product(tuple(fsig[v] for v in w)) for w in _subsets(n)}
    nodes[tuple(range(n + 1))] = T
    return SSimplex(fsig, nodes)


def max_simplex(fsig) -> SSimplex:
    fsig = tuple(frozenset(c) for c in fsig)
    n = len(fsig) - 1
    return SSimplex(fsig, {w: _fsig_product(tuple(fsig[v] for v in w)) for w in _subsets(n)})


def minimal_simplex(R: Relation) -> SSimplex:
    if not R.rows:
        raise ValueError("R must be nonempty")
    nodes = {w: frozenset(h_map(tuple(r[v] for v in w)) for r in R.rows) for w in _subsets(R.n)}
    return SSimplex(R.columns, nodes)


def vertex_relation(y: SSimplex) -> Relation:
    if not is_subface_simplicial(y):
        raise ValueError("vertex relation needs a subface-simplicial simplex")
    return Relation.from_rows((h_inv(a) for a in y.elements), y.fsig)


def po_leq(y: SSimplex, z: SSimplex) -> bool:
    """Node-wise inclusion for simplices over the same columns."""
    return y.fsig == z.fsig and all(y.nodes[w] <= z.nodes[w] for w in y.nodes)
