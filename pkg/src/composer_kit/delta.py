"""Combinatorics of the simplex category.

Maps [k] -> [m] are stored densely as value tuples.  A strictly increasing
map and the subset it enumerates are interchangeable; helpers convert both
ways.  Everything here is immutable and pure.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence


@dataclass(frozen=True)
class MonotoneMap:
    """A non-decreasing function [dom_size-1] -> [cod_size-1]."""

    values: tuple[int, ...]
    cod_size: int

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if not self.values:
            raise ValueError("a map needs a nonempty domain")
        if self.cod_size < 1:
            raise ValueError("codomain must be nonempty")
        for a, b in zip(self.values, self.values[1:]):
            if b < a:
                raise ValueError(f"not monotone: {self.values}")
        if self.values[0] < 0 or self.values[-1] >= self.cod_size:
            raise ValueError(f"values {self.values} outside [0,{self.cod_size - 1}]")

    @property
    def dom_size(self) -> int:
        return len(self.values)

    def __call__(self, t: int) -> int:
        return self.values[t]

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    def is_injective(self) -> bool:
        return all(a < b for a, b in zip(self.values, self.values[1:]))

    def is_surjective(self) -> bool:
        return set(self.values) == set(range(self.cod_size))

    def image(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.values)))

    def __repr__(self):
        return f"{self.__class__.__name__}({self.values}, cod={self.cod_size})"


class StrictMap(MonotoneMap):
    """A strictly increasing map; equivalently a subset of its codomain."""

    def __post_init__(self):
        super().__post_init__()
        if not self.is_injective():
            raise ValueError(f"not strictly increasing: {self.values}")

    @classmethod
    def from_subset(cls, subset: Iterable[int], cod_size: int) -> "StrictMap":
        return cls(tuple(sorted(set(subset))), cod_size)

    def subset(self) -> frozenset[int]:
        return frozenset(self.values)


def as_map(f, cod_size: int | None = None) -> MonotoneMap:
    if isinstance(f, MonotoneMap):
        return f
    vals = tuple(f)
    return MonotoneMap(vals, cod_size if cod_size is not None else max(vals) + 1)


def identity(k: int) -> StrictMap:
    return StrictMap(tuple(range(k + 1)), k + 1)


def coface(p: int, k: int) -> StrictMap:
    """The face map [k-1] -> [k] skipping p."""
    if not 0 <= p <= k:
        raise ValueError(f"coface index {p} out of range for [{k}]")
    return StrictMap(tuple(t if t < p else t + 1 for t in range(k)), k + 1)


def codegeneracy(p: int, k: int) -> MonotoneMap:
    """The degeneracy map [k+1] -> [k] hitting p twice."""
    if not 0 <= p <= k:
        raise ValueError(f"codegeneracy index {p} out of range for [{k}]")
    return MonotoneMap(tuple(t if t <= p else t - 1 for t in range(k + 2)), k + 1)


def compose_maps(f: MonotoneMap, g: MonotoneMap) -> MonotoneMap:
    """g after f."""
    if f.cod_size != g.dom_size:
        raise ValueError(f"cannot compose: cod {f.cod_size} != dom {g.dom_size}")
    vals = tuple(g.values[v] for v in f.values)
    if isinstance(f, StrictMap) and isinstance(g, StrictMap):
        return StrictMap(vals, g.cod_size)
    return MonotoneMap(vals, g.cod_size)


def all_monotone(k: int, m: int) -> list[tuple[int, ...]]:
    """All monotone [k] -> [m] as value tuples, in lexicographic order."""
    return list(itertools.combinations_with_replacement(range(m + 1), k + 1))


def all_strict(k: int, m: int) -> list[tuple[int, ...]]:
    return list(itertools.combinations(range(m + 1), k + 1))


# -- standard form ---------------------------------------------------------

def standard_form(f: MonotoneMap) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Faces i_1 > ... > i_q and degeneracies j_1 < ... < j_p with
    f = d_{i_1} ... d_{i_q} s_{j_1} ... s_{j_p}."""
    f = as_map(f)
    degens = tuple(t for t in range(f.dom_size - 1) if f.values[t] == f.values[t + 1])
    missing = sorted(set(range(f.cod_size)) - set(f.values), reverse=True)
    return tuple(missing), degens


def recompose(faces: Sequence[int], degens: Sequence[int], dom_size: int) -> MonotoneMap:
    """Inverse of standard_form given the domain size."""
    k = dom_size - 1
    out = identity(k)
    # rightmost operator acts first
    for j in reversed(degens):
        k -= 1
        out = compose_maps(out, codegeneracy(j, k))
    for i in reversed(faces):
        k += 1
        out = compose_maps(out, coface(i, k))
    return MonotoneMap(out.values, out.cod_size)


_OP = re.compile(r"([ds])_?(\d+)")


def operator_map(word: str, dim: int) -> MonotoneMap:
    """Map g with (word)(x) = x.g for x of dimension dim, e.g. 's_3d_1d_4'.

    The rightmost letter acts first, as with operators on simplices.
    """
    ops = _OP.findall(word.replace(" ", ""))
    if not ops:
        raise ValueError(f"no operators in {word!r}")
    g = identity(dim)
    k = dim
    # x.g after applying op: d_p -> g.coface, s_p -> g.codegeneracy
    for kind, idx in reversed(ops):
        p = int(idx)
        if kind == "d":
            g = compose_maps(coface(p, k), g)
            k -= 1
        else:
            g = compose_maps(codegeneracy(p, k), g)
            k += 1
    return MonotoneMap(g.values, g.cod_size)


# -- sharp / flat / complements ----------------------------------------------

def sharp(f: MonotoneMap) -> StrictMap:
    f = as_map(f)
    k = f.dom_size - 1
    return StrictMap(tuple(v + t for t, v in enumerate(f.values)), f.cod_size + k)


def flat(g: MonotoneMap) -> MonotoneMap:
    g = as_map(g)
    if not g.is_injective():
        raise ValueError(f"flat needs a strictly increasing map, got {g.values}")
    k = g.dom_size - 1
    return MonotoneMap(tuple(v - t for t, v in enumerate(g.values)), g.cod_size - k)


def complement(lam: MonotoneMap) -> MonotoneMap:
    """The complementary vertex function of lam: [j] -> [k+1]."""
    lam = as_map(lam)
    j = lam.dom_size - 1
    k = lam.cod_size - 2
    if k < 0:
        raise ValueError("complement needs codomain [k+1] with k >= 0")
    total = j + k + 2
    taken = set(sharp(lam).values)
    rest = tuple(t for t in range(total) if t not in taken)
    return flat(StrictMap(rest, total))


def histogram(f: MonotoneMap) -> tuple[int, ...]:
    f = as_map(f)
    counts = [0] * f.cod_size
    for v in f.values:
        counts[v] += 1
    return tuple(counts)


def reconstruct(hg: Sequence[int]) -> MonotoneMap:
    """Prefix sums of a histogram of the complementary map."""
    if any(h < 0 for h in hg):
        raise ValueError(f"negative histogram entry in {tuple(hg)}")
    if len(hg) < 2:
        raise ValueError("histogram needs at least two entries")
    sums = list(itertools.accumulate(hg))
    return MonotoneMap(tuple(sums[:-1]), sums[-1] + 1)


# -- sum splitting, extension, joint factorization----------------------------

def sum_split(g: StrictMap, g2: StrictMap) -> tuple[StrictMap, StrictMap, StrictMap]:
    g, g2 = as_map(g), as_map(g2)
    if g.cod_size != g2.cod_size:
        raise ValueError("maps must share a codomain")
    if not (g.is_injective() and g2.is_injective()):
        raise ValueError("sum_split needs strictly increasing maps")
    if set(g.values) | set(g2.values) != set(range(g.cod_size)):
        raise ValueError("images must cover the codomain")
    common = sorted(set(g.values) & set(g2.values))
    if not common:
        raise ValueError("images must intersect")
    pos = {v: t for t, v in enumerate(g.values)}
    pos2 = {v: t for t, v in enumerate(g2.values)}
    f = StrictMap(tuple(pos[v] for v in common), g.dom_size)
    f2 = StrictMap(tuple(pos2[v] for v in common), g2.dom_size)
    return f, f2, StrictMap(tuple(common), g.cod_size)


def _extension_ok(f: MonotoneMap, g: MonotoneMap) -> bool:
    if f.dom_size != g.dom_size:
        return False
    if f.values[0] > g.values[0]:
        return False
    for t in range(f.dom_size - 1):
        if f.values[t + 1] - f.values[t] > g.values[t + 1] - g.values[t]:
            return False
    return (f.cod_size - 1 - f.values[-1]) <= (g.cod_size - 1 - g.values[-1])


def extend(f: StrictMap, g: StrictMap) -> StrictMap:
    """Canonical strictly increasing h with h.f = g.

    Between consecutive values of f the gaps are filled just above the
    previous g value; below f(0) h is the identity.
    """
    f, g = as_map(f), as_map(g)
    if not _extension_ok(f, g):
        raise ValueError(f"no extension of {f.values} along {g.values}")
    n = f.cod_size - 1
    out = []
    p = -1
    for t in range(n + 1):
        while p + 1 < f.dom_size and f.values[p + 1] <= t:
            p += 1
        out.append(t if p < 0 else g.values[p] + t - f.values[p])
    return StrictMap(tuple(out), g.cod_size)


def extend_all(f: StrictMap, g: StrictMap) -> list[StrictMap]:
    f, g = as_map(f), as_map(g)
    n = f.cod_size - 1
    out = []
    for h in itertools.combinations(range(g.cod_size), n + 1):
        if all(h[a] == b for a, b in zip(f.values, g.values)):
            out.append(StrictMap(h, g.cod_size))
    return out


def joint_extend(f: StrictMap, g: StrictMap, alpha: StrictMap, beta: StrictMap) -> StrictMap:
    """The gamma with gamma.f = alpha and gamma.g = beta."""
    f, g, alpha, beta = (as_map(x) for x in (f, g, alpha, beta))
    if f.cod_size != g.cod_size or alpha.cod_size != beta.cod_size:
        raise ValueError("codomains must agree")
    if f.dom_size != alpha.dom_size or g.dom_size != beta.dom_size:
        raise ValueError("domain sizes must agree")
    if sorted(f.values + g.values) != list(range(f.cod_size)):
        raise ValueError("f and g must partition their codomain")
    if set(alpha.values) & set(beta.values):
        raise ValueError("alpha and beta images must be disjoint")
    for p, fp in enumerate(f.values):
        for q, gq in enumerate(g.values):
            if (fp < gq) != (alpha.values[p] < beta.values[q]):
                raise ValueError("order-compatibility fails")
    out = [0] * f.cod_size
    for p, fp in enumerate(f.values):
        out[fp] = alpha.values[p]
    for q, gq in enumerate(g.values):
        out[gq] = beta.values[q]
    return StrictMap(tuple(out), alpha.cod_size)


# -- comb-trios ----------------------------------------------------------------

def positions_in(sub: Iterable[int], whole: Iterable[int]) -> tuple[int, ...]:
    """Order-collapse: positions of sub inside sorted whole."""
    idx = {v: t for t, v in enumerate(sorted(whole))}
    return tuple(sorted(idx[v] for v in sub))


@dataclass(frozen=True)
class CombTrio:
    m: int
    X: tuple[int, ...]
    A: tuple[int, ...]
    A2: tuple[int, ...]

    def __post_init__(self):
        parts = [self.X, self.A, self.A2]
        if any(not p for p in parts):
            raise ValueError("trio blocks must be nonempty")
        if sorted(self.X + self.A + self.A2) != list(range(self.m + 1)):
            raise ValueError("trio blocks must partition [m]")
        if self.m != self.j + self.j2 + self.k + 2:
            raise ValueError("dimension mismatch")

    @property
    def k(self):
        return len(self.X) - 1

    @property
    def j(self):
        return len(self.A) - 1

    @property
    def j2(self):
        return len(self.A2) - 1

    def pair(self, first, second) -> tuple[MonotoneMap, MonotoneMap]:
        """The complementary pair recording first and second inside their union."""
        union = tuple(first) + tuple(second)
        n = len(union)
        a = flat(StrictMap(positions_in(first, union), n))
        b = flat(StrictMap(positions_in(second, union), n))
        return a, b

    def pairs(self):
        """(mu, lam), (mu2, lam2), (gamma, gamma2): X vs A, X vs A2, A vs A2."""
        return self.pair(self.X, self.A), self.pair(self.X, self.A2), self.pair(self.A, self.A2)


def comb_trio_from_pairs(pair1, pair2) -> list[CombTrio]:
    """All comb-trios whose X/A and X/A2 pairs are the given ones."""
    mu, lam = (as_map(x) for x in pair1)
    mu2, lam2 = (as_map(x) for x in pair2)
    if complement(lam).values != mu.values or complement(lam2).values != mu2.values:
        raise ValueError("pairs must be complementary")
    if mu.dom_size != mu2.dom_size:
        raise ValueError("pairs must share k")
    k = mu.dom_size - 1
    j = lam.dom_size - 1
    j2 = lam2.dom_size - 1
    m = j + j2 + k + 2
    ms, ms2 = sharp(mu).values, sharp(mu2).values
    xi = tuple(ms[q] + ms2[q] - q for q in range(k + 1))
    ls = sharp(lam).values
    want = (mu2.values, lam2.values)
    out = []
    for tau in extend_all(StrictMap(ms, j + k + 2), StrictMap(xi, m + 1)):
        A = tuple(tau.values[v] for v in ls)
        A2 = tuple(sorted(set(range(m + 1)) - set(xi) - set(A)))
        trio = CombTrio(m, xi, A, A2)
        got = trio.pair(trio.X, trio.A2)
        if (got[0].values, got[1].values) == want:
            out.append(trio)
    return sorted(set(out), key=lambda t: (t.X, t.A, t.A2))


# -- ordered partitions ----------------------------------------------------------

@dataclass(frozen=True)
class OrderedPartition:
    m: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(sorted(b)) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if any(not b for b in blocks):
            raise ValueError("blocks must be nonempty")
        if sorted(v for b in blocks for v in b) != list(range(self.m + 1)):
            raise ValueError("blocks must partition [m]")

    @property
    def n(self):
        return len(self.blocks) - 1

    @property
    def k_sizes(self):
        return tuple(len(b) - 1 for b in self.blocks)

    def h(self, a: int, b: int) -> StrictMap:
        """Position map of block a inside block a union block b."""
        union = self.blocks[a] + self.blocks[b]
        return StrictMap(positions_in(self.blocks[a], union), len(union))


def subpartition(p: OrderedPartition, B: Iterable[int]) -> OrderedPartition:
    B = sorted(set(B))
    if not B:
        raise ValueError("B must be nonempty")
    union = [v for t in B for v in p.blocks[t]]
    blocks = tuple(positions_in(p.blocks[t], union) for t in B)
    return OrderedPartition(len(union) - 1, blocks)


def partition_from_h(k_sizes: Sequence[int], h0i: Sequence[StrictMap]) -> OrderedPartition:
    """An ordered partition whose block-0 position maps are the given h_{0,i}."""
    k_sizes = list(k_sizes)
    n = len(k_sizes) - 1
    if len(h0i) != n or n < 1:
        raise ValueError("need one h_{0,i} for each i in 1..n")
    hs = []
    for i, h in enumerate(h0i, start=1):
        h = as_map(h, k_sizes[0] + k_sizes[i] + 2)
        h = StrictMap(h.values, k_sizes[0] + k_sizes[i] + 2)
        if h.dom_size != k_sizes[0] + 1:
            raise ValueError(f"h_0{i} has the wrong domain")
        hs.append(h)
    m = k_sizes[0] + k_sizes[1] + 1
    a0 = hs[0]
    blocks = {0: a0.values, 1: tuple(t for t in range(m + 1) if t not in set(a0.values))}
    for i in range(2, n + 1):
        new_m = m + k_sizes[i] + 1
        summed = tuple(x + y for x, y in zip(flat(a0).values, flat(hs[i - 1]).values))
        new_a0 = sharp(MonotoneMap(summed, new_m - k_sizes[0] + 1))
        u = extend(a0, new_a0)
        for t in range(1, i):
            blocks[t] = tuple(u.values[v] for v in blocks[t])
        a0 = new_a0
        blocks[0] = a0.values
        used = {v for t in range(i) for v in blocks[t]}
        blocks[i] = tuple(v for v in range(new_m + 1) if v not in used)
        m = new_m
    return OrderedPartition(m, tuple(blocks[t] for t in range(n + 1)))


def sigma_image(A: Iterable[int], k: int) -> tuple[int, ...]:
    """Image of the subset A under the degeneracy map hitting k twice."""
    A = sorted(set(A))
    if k in A and k + 1 in A:
        raise ValueError(f"{A} contains both {k} and {k + 1}")
    return tuple(v if v <= k else v - 1 for v in A)


# -- horns in Delta[m] -------------------------------------------------------

def delta_horn_fill(lams, i: int) -> MonotoneMap:
    """Unique mu: [k+1] -> [m] with mu.coface(p) = lam_p for each present p."""
    if isinstance(lams, Mapping):
        faces = {p: as_map(v) for p, v in lams.items() if v is not None}
    else:
        faces = {p: as_map(v) for p, v in enumerate(lams) if v is not None and p != i}
    faces.pop(i, None)
    if len(faces) < 2:
        raise ValueError("need at least two faces to determine a filler")
    ps = sorted(faces)
    cods = {f.cod_size for f in faces.values()}
    doms = {f.dom_size for f in faces.values()}
    if len(cods) != 1 or len(doms) != 1:
        raise ValueError("faces must share domain and codomain")
    k = doms.pop() - 1
    p, q = ps[0], ps[1]
    lp, lq = faces[p].values, faces[q].values
    vals = lp[:p] + (lq[p],) + lp[p:]
    try:
        mu = MonotoneMap(vals, cods.pop())
    except ValueError as e:
        raise ValueError(f"horn is not compatible: {e}") from None
    for r, lam in faces.items():
        if compose_maps(coface(r, k + 1), mu).values != lam.values:
            raise ValueError(f"horn is not compatible at face {r}")
    return mu
