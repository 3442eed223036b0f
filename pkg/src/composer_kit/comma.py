"""Complementary subfaces and the complex C^x.

Fix x in C_k.  A j-simplex of C^x is a pair (z, mu) with z in C_{j+k+1}
and mu: [k] -> [j+1] monotone such that the subface of z on the vertices
mu#(t) = t + mu(t) is x.  The complementary map lam: [j] -> [k+1] picks
out the other vertices, and the operators are

    d^x_p(z) = d_{lam#(p)}(z),    s^x_p(z) = s_{lam#(p)}(z).

Witnesses are stored as host indices plus the vertex positions of x.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .delta import MonotoneMap, StrictMap, complement, flat, sharp
from .verify import TruncatedComplex, check_truncated_composer, identity_violations


def subface(C: TruncatedComplex, m: int, z: int, positions: Iterable[int]) -> int:
    """The face of z spanned by the given vertices (highest deletions first)."""
    keep = set(positions)
    for v in sorted(set(range(m + 1)) - keep, reverse=True):
        z = C.d(m, z, v)
        m -= 1
    return z


def face_word(m: int, positions: Iterable[int]) -> str:
    drop = sorted(set(range(m + 1)) - set(positions))
    return "".join(f"d{v}" for v in drop) or "id"


@dataclass(frozen=True)
class CplWitness:
    z: int
    x_pos: tuple  # mu#: where x sits among the vertices of z
    j: int
    k: int

    @property
    def mu(self) -> MonotoneMap:
        return flat(StrictMap(self.x_pos, self.j + self.k + 2))

    @property
    def lam(self) -> MonotoneMap:
        return complement(self.mu)

    @property
    def other_pos(self) -> tuple:
        return tuple(v for v in range(self.j + self.k + 2) if v not in self.x_pos)


def witnesses(C: TruncatedComplex, k: int, x: int, j: int):
    """Every (z, mu) in C^x_j, in host order then by position."""
    m = j + k + 1
    out = []
    from itertools import combinations
    for z in range(C.size(m)):
        for pos in combinations(range(m + 1), k + 1):
            if subface(C, m, z, pos) == x:
                out.append(CplWitness(z, pos, j, k))
    return out


def cx_face(C: TruncatedComplex, w: CplWitness, p: int) -> CplWitness:
    if w.j < 1 or not 0 <= p <= w.j:
        raise ValueError("face index out of range")
    r = w.other_pos[p]
    pos = tuple(v - (v > r) for v in w.x_pos)
    return CplWitness(C.d(w.j + w.k + 1, w.z, r), pos, w.j - 1, w.k)


def cx_degen(C: TruncatedComplex, w: CplWitness, p: int) -> CplWitness:
    if not 0 <= p <= w.j:
        raise ValueError("degeneracy index out of range")
    r = w.other_pos[p]
    pos = tuple(v + (v > r) for v in w.x_pos)
    return CplWitness(C.s(w.j + w.k + 1, w.z, r), pos, w.j + 1, w.k)


def build_cx(C: TruncatedComplex, k: int, x: int, bound: int) -> TruncatedComplex:
    if not 0 <= x < C.size(k):
        raise ValueError(f"no simplex {x} in dimension {k}")
    if bound + k + 1 > C.top_dim:
        raise ValueError("host complex is not deep enough")
    levels = {j: witnesses(C, k, x, j) for j in range(bound + 1)}
    Cx = TruncatedComplex.from_functions(
        bound, lambda j: levels[j],
        lambda w, j, p: cx_face(C, w, p), lambda w, j, p: cx_degen(C, w, p),
        kind="cx", meta={"host": C, "x": (k, x)})
    return Cx


def restrict(C: TruncatedComplex, keep: Callable) -> TruncatedComplex:
    """The subcomplex of simplices passing ``keep``; raises if not closed."""
    keys = [[w for w in C.keys[m] if keep(w)] for m in range(C.top_dim + 1)]
    sets = [set(ks) for ks in keys]

    def face_fn(w, m, p):
        f = C.keys[m - 1][C.d(m, C.index[m][w], p)]
        if f not in sets[m - 1]:
            raise ValueError(f"not closed under faces: {w}")
        return f

    def degen_fn(w, m, p):
        s = C.keys[m + 1][C.s(m, C.index[m][w], p)]
        if s not in sets[m + 1]:
            raise ValueError(f"not closed under degeneracies: {w}")
        return s

    return TruncatedComplex.from_functions(C.top_dim, lambda m: keys[m], face_fn, degen_fn,
                                           kind=C.kind, meta=C.meta)


def in_cx_plus(w: CplWitness) -> bool:
    return w.mu.values[-1] == w.j + 1


def membership_L(w: CplWitness, t: int) -> bool:
    return w.lam.values[0] > t


def membership_R(w: CplWitness, t: int) -> bool:
    return w.lam.values[-1] < w.k + 1 - t


def membership_L_by_positions(w: CplWitness, t: int) -> bool:
    return set(range(t + 1)) <= set(w.x_pos)


def membership_R_by_positions(w: CplWitness, t: int) -> bool:
    top = w.j + w.k + 1
    return set(range(top - t, top + 1)) <= set(w.x_pos)


def subcomplex(Cx: TruncatedComplex, which: str, t: int = 0) -> TruncatedComplex:
    tests = {"plus": in_cx_plus,
             "L": lambda w: membership_L(w, t),
             "R": lambda w: membership_R(w, t)}
    if which not in tests:
        raise ValueError("which is 'plus', 'L' or 'R'")
    return restrict(Cx, tests[which])


def ex_image(C: TruncatedComplex, w: CplWitness) -> tuple:
    """E^x(z): the complementary face of z together with lam."""
    return subface(C, w.j + w.k + 1, w.z, w.other_pos), w.lam.values


def ex_is_simplicial(Cx: TruncatedComplex) -> bool:
    C = Cx.meta["host"]
    for j in range(Cx.top_dim + 1):
        for w in Cx.keys[j]:
            y, lam = ex_image(C, w)
            if j >= 1:
                for p in range(j + 1):
                    y2, lam2 = ex_image(C, cx_face(C, w, p))
                    if y2 != C.d(j, y, p) or lam2 != lam[:p] + lam[p + 1:]:
                        return False
            if j < Cx.top_dim:
                for p in range(j + 1):
                    y2, lam2 = ex_image(C, cx_degen(C, w, p))
                    if y2 != C.s(j, y, p) or lam2 != lam[:p + 1] + lam[p:]:
                        return False
    return True


def build_cx_F(Cx: TruncatedComplex, D: TruncatedComplex, F: Sequence[Sequence[int]]) -> TruncatedComplex:
    """Pairs (z, v) with the complement of x in z equal to F(v).

    F[m][v] is the image in the host of v in D_m.  Pairs are validated
    when the complex is built.
    """
    C = Cx.meta["host"]
    top = min(Cx.top_dim, D.top_dim)
    levels = []
    for j in range(top + 1):
        by_image: dict = {}
        for v in range(D.size(j)):
            by_image.setdefault(F[j][v], []).append(v)
        levels.append([(w, v) for w in Cx.keys[j]
                       for v in by_image.get(ex_image(C, w)[0], ())])

    def face_fn(pair, j, p):
        w, v = pair
        return cx_face(C, w, p), D.d(j, v, p)

    def degen_fn(pair, j, p):
        w, v = pair
        return cx_degen(C, w, p), D.s(j, v, p)

    return TruncatedComplex.from_functions(top, lambda j: levels[j], face_fn, degen_fn,
                                           kind="cxF", meta={"host": C})


def vertex_of(C: TruncatedComplex, w: CplWitness, t: int) -> tuple:
    """Vert_t^x(z): x together with the t-th vertex outside x.

    Returns (host index in dimension k+1, face word, positions of x in it).
    """
    if not 0 <= t <= w.j:
        raise ValueError("vertex index out of range")
    keep = tuple(sorted(w.x_pos + (w.other_pos[t],)))
    m = w.j + w.k + 1
    idx = subface(C, m, w.z, keep)
    return idx, face_word(m, keep), tuple(keep.index(v) for v in w.x_pos)


def check_cx_composer(C: TruncatedComplex, k: int, x: int, n: int, i: int, depth: int = 2,
                      which: str = "cx", t: int = 0) -> dict:
    bound = C.top_dim - k - 1
    Cx = build_cx(C, k, x, bound)
    if which != "cx":
        Cx = subcomplex(Cx, which, t)
    report = check_truncated_composer(Cx, n, i, depth)
    report["complex"] = which
    report["identities"] = identity_violations(Cx)
    if report["identities"]:
        report["status"] = "fail"
    return report
