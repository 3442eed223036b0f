"""Finite truncated complexes and unique-filler checks.

A ``TruncatedComplex`` stores simplices per dimension as opaque keys with
face and degeneracy index tables.  Constructors cover relation complexes
(keys are monotone maps into [n]), Delta[n], nerves of finite categories
and coskeleta.  Horns are enumerated by backtracking over shared faces,
so the cost tracks the number of compatible families rather than the
full product of face sets.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from . import modelgen
from .delta import all_monotone
from .scomplex import Relation, SSimplex, degeneracy, face


# -- the complex ---------------------------------------------------------------

class TruncatedComplex:
    def __init__(self, top_dim: int, keys: Sequence[Sequence[Hashable]],
                 faces: Sequence[Sequence[tuple]], degens: Sequence[Sequence[tuple]],
                 payload: Sequence[Sequence] | None = None, kind: str = "generic", meta=None):
        self.top_dim = top_dim
        self.keys = [list(k) for k in keys]
        self.index = [{k: j for j, k in enumerate(ks)} for ks in self.keys]
        if any(len(ix) != len(ks) for ix, ks in zip(self.index, self.keys)):
            raise ValueError("duplicate simplex keys")
        self.faces = [list(f) for f in faces]
        self.degens = [list(s) for s in degens]
        self.payload = payload
        self.kind = kind
        self.meta = meta or {}
        self._by_face = {}

    @classmethod
    def from_functions(cls, top_dim: int, simplices: Callable[[int], Iterable],
                       face_fn: Callable, degen_fn: Callable, payload_fn: Callable | None = None,
                       kind: str = "generic", meta=None) -> "TruncatedComplex":
        keys = [list(simplices(m)) for m in range(top_dim + 1)]
        index = [{k: j for j, k in enumerate(ks)} for ks in keys]
        faces = [[()] * len(keys[0])]
        for m in range(1, top_dim + 1):
            faces.append([tuple(index[m - 1][face_fn(k, m, p)] for p in range(m + 1))
                          for k in keys[m]])
        degens = []
        for m in range(top_dim):
            degens.append([tuple(index[m + 1][degen_fn(k, m, j)] for j in range(m + 1))
                           for k in keys[m]])
        degens.append([None] * len(keys[top_dim]))
        payload = None
        if payload_fn is not None:
            payload = [[payload_fn(k, m) for k in keys[m]] for m in range(top_dim + 1)]
        return cls(top_dim, keys, faces, degens, payload, kind, meta)

    def size(self, m: int) -> int:
        return len(self.keys[m])

    def total(self) -> int:
        return sum(len(k) for k in self.keys)

    def d(self, m: int, idx: int, p: int) -> int:
        return self.faces[m][idx][p]

    def s(self, m: int, idx: int, j: int) -> int:
        if m >= self.top_dim:
            raise ValueError("no degeneracies out of the top dimension")
        return self.degens[m][idx][j]

    def degenerate(self, m: int) -> set[int]:
        if m == 0:
            return set()
        return {row[j] for row in self.degens[m - 1] for j in range(m)}

    def nondegenerate_count(self) -> int:
        return sum(self.size(m) - len(self.degenerate(m)) for m in range(self.top_dim + 1))

    def by_face(self, m: int, p: int) -> dict:
        """Simplices of dimension m grouped by their p-th face."""
        key = (m, p)
        if key not in self._by_face:
            groups: dict = {}
            for idx, fs in enumerate(self.faces[m]):
                groups.setdefault(fs[p], []).append(idx)
            self._by_face[key] = groups
        return self._by_face[key]

    def truncate(self, m: int) -> "TruncatedComplex":
        if m > self.top_dim:
            raise ValueError("cannot truncate above the top dimension")
        degens = self.degens[:m] + [[None] * len(self.keys[m])]
        payload = self.payload[:m + 1] if self.payload else None
        return TruncatedComplex(m, self.keys[:m + 1], self.faces[:m + 1], degens,
                                payload, self.kind, self.meta)


def identity_violations(C: TruncatedComplex, limit: int = 20) -> list[str]:
    """Check all simplicial identities as index equations."""
    bad = []
    for m in range(2, C.top_dim + 1):
        for x, fs in enumerate(C.faces[m]):
            for j in range(1, m + 1):
                for i in range(j):
                    if C.d(m - 1, fs[j], i) != C.d(m - 1, fs[i], j - 1):
                        bad.append(f"d{i}d{j} != d{j - 1}d{i} at ({m},{x})")
    for m in range(C.top_dim):
        for x, ss in enumerate(C.degens[m]):
            fs_up = [C.faces[m + 1][ss[j]] for j in range(m + 1)]
            for j in range(m + 1):
                for i in range(m + 2):
                    got = fs_up[j][i]
                    if i < j:
                        want = C.s(m - 1, C.d(m, x, i), j - 1) if m >= 1 else None
                    elif i in (j, j + 1):
                        want = x
                    else:
                        want = C.s(m - 1, C.d(m, x, i - 1), j) if m >= 1 else None
                    if want is not None and got != want:
                        bad.append(f"d{i}s{j} wrong at ({m},{x})")
            if m + 1 < C.top_dim:
                for j in range(m + 1):
                    for i in range(j + 1):
                        if C.s(m + 1, ss[j], i) != C.s(m + 1, ss[i], j + 1):
                            bad.append(f"s{i}s{j} != s{j + 1}s{i} at ({m},{x})")
            if len(bad) >= limit:
                return bad[:limit]
    return bad[:limit]


# -- constructors --------------------------------------------------------------

def _omit(g: tuple, p: int) -> tuple:
    return g[:p] + g[p + 1:]


def _repeat(g: tuple, j: int) -> tuple:
    return g[:j + 1] + g[j:]


def delta_complex(n: int, top_dim: int) -> TruncatedComplex:
    """Delta[n] truncated at top_dim; simplices are monotone maps into [n]."""
    return TruncatedComplex.from_functions(
        top_dim, lambda m: all_monotone(m, n),
        lambda g, m, p: _omit(g, p), lambda g, m, j: _repeat(g, j),
        kind="delta", meta={"n": n})


def relation_complex(R: Relation | Iterable[tuple], top_dim: int | None = None) -> TruncatedComplex:
    """The complex of simplicial images of a relation, keyed by maps.

    Columns count as formally distinct, so distinct maps give distinct
    simplices.  The payload of g is the image relation as a frozenset.
    """
    if not isinstance(R, Relation):
        R = Relation.from_rows(R)
    rows = R.rows
    n = R.n
    top = n if top_dim is None else top_dim
    return TruncatedComplex.from_functions(
        top, lambda m: all_monotone(m, n),
        lambda g, m, p: _omit(g, p), lambda g, m, j: _repeat(g, j),
        payload_fn=lambda g, m: modelgen.image(rows, g),
        kind="relation", meta={"n": n, "relation": R})


def simplex_count(n: int) -> int:
    """Simplices of dimension at most n in the complex of one n-simplex."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return 1 + sum(math.comb(n + 1, p) ** 2 for p in range(1, n + 1))


def _image_simplex(y: SSimplex, g: tuple, memo: dict) -> SSimplex:
    if g in memo:
        return memo[g]
    n = y.dim
    for j in range(len(g) - 1):
        if g[j] == g[j + 1]:
            out = degeneracy(_image_simplex(y, _omit(g, j + 1), memo), j)
            break
    else:
        if len(g) == n + 1:
            out = y
        else:
            v = next(v for v in range(n + 1) if v not in g)
            up = tuple(sorted(g + (v,)))
            out = face(_image_simplex(y, up, memo), up.index(v))
    memo[g] = out
    return out


def generate_complex(y: SSimplex) -> TruncatedComplex:
    """All simplicial images of y up to its dimension, deduplicated structurally."""
    n = y.dim
    memo: dict = {}
    keys, canon = [], {}
    for m in range(n + 1):
        seen: dict = {}
        level = []
        for g in all_monotone(m, n):
            k = _image_simplex(y, g, memo).key()
            if k not in seen:
                seen[k] = len(level)
                level.append(g)
            canon[g] = level[seen[k]]
        keys.append(level)
    index = [{g: j for j, g in enumerate(ks)} for ks in keys]
    faces = [[()] * len(keys[0])]
    for m in range(1, n + 1):
        faces.append([tuple(index[m - 1][canon[_omit(g, p)]] for p in range(m + 1))
                      for g in keys[m]])
    degens = [[tuple(index[m + 1][canon[_repeat(g, j)]] for j in range(m + 1)) for g in keys[m]]
              for m in range(n)]
    degens.append([None] * len(keys[n]))
    payload = [[memo[g] for g in ks] for ks in keys]
    return TruncatedComplex(n, keys, faces, degens, payload, kind="scomplex", meta={"n": n})


# -- categories and nerves -----------------------------------------------------

@dataclass
class FiniteCategory:
    """Objects, named arrows with (source, target), and a composition table.

    ``compose[(g, f)]`` is g after f.  Identities are named in ``ids``.
    """
    objects: tuple
    arrows: Mapping[Hashable, tuple]
    compose: Mapping[tuple, Hashable]
    ids: Mapping[Hashable, Hashable]

    def after(self, g, f):
        return self.compose[(g, f)]

    def check(self) -> None:
        for (g, f), h in self.compose.items():
            if self.arrows[f][1] != self.arrows[g][0]:
                raise ValueError(f"{g} after {f} is not composable")
            if self.arrows[h] != (self.arrows[f][0], self.arrows[g][1]):
                raise ValueError(f"{g} after {f} has the wrong ends")
        for f, (a, b) in self.arrows.items():
            if self.after(f, self.ids[a]) != f or self.after(self.ids[b], f) != f:
                raise ValueError(f"identity law fails at {f}")

    def is_epic(self, f) -> bool:
        a, b = self.arrows[f]
        for g, h in itertools.product(self.arrows, repeat=2):
            if self.arrows[g][0] == b and self.arrows[h][0] == b and self.arrows[g][1] == self.arrows[h][1]:
                if g != h and self.after(g, f) == self.after(h, f):
                    return False
        return True

    @classmethod
    def from_poset(cls, elements: Sequence, leq: Callable) -> "FiniteCategory":
        arrows = {(a, b): (a, b) for a in elements for b in elements if leq(a, b)}
        comp = {((b, c), (a, b)): (a, c) for (a, b) in arrows for (b2, c) in arrows if b == b2}
        return cls(tuple(elements), arrows, comp, {a: (a, a) for a in elements})

    @classmethod
    def from_monoid(cls, elements: Sequence, mult: Callable, unit) -> "FiniteCategory":
        arrows = {e: ("*", "*") for e in elements}
        comp = {(g, f): mult(g, f) for g in elements for f in elements}
        return cls(("*",), arrows, comp, {"*": unit})


def nerve(cat: FiniteCategory, top_dim: int) -> TruncatedComplex:
    """Simplices of dimension m >= 1 are chains of m composable arrows, first arrow first."""
    def simplices(m):
        if m == 0:
            return [(o,) for o in cat.objects]
        out = []

        def rec(chain):
            if len(chain) == m:
                out.append(tuple(chain))
                return
            for f, (a, b) in cat.arrows.items():
                if not chain or cat.arrows[chain[-1]][1] == a:
                    rec(chain + [f])

        rec([])
        return out

    def face_fn(ch, m, p):
        if m == 1:
            a, b = cat.arrows[ch[0]]
            return (b,) if p == 0 else (a,)
        if p == 0:
            return ch[1:]
        if p == m:
            return ch[:-1]
        return ch[:p - 1] + (cat.after(ch[p], ch[p - 1]),) + ch[p + 1:]

    def degen_fn(ch, m, j):
        if m == 0:
            return (cat.ids[ch[0]],)
        obj = cat.arrows[ch[j]][0] if j < m else cat.arrows[ch[-1]][1]
        return ch[:j] + (cat.ids[obj],) + ch[j:]

    return TruncatedComplex.from_functions(top_dim, simplices, face_fn, degen_fn,
                                           kind="nerve", meta={"category": cat})


# -- horns ---------------------------------------------------------------------

def horns(C: TruncatedComplex, m: int, i: int):
    """Yield every compatible family of faces (slot -> index) with slot i absent."""
    slots = [p for p in range(m + 1) if p != i]
    lower = m - 1
    if not slots:
        return
    if lower == 0:
        for v in range(C.size(0)):
            yield {slots[0]: v}
        return

    def rec(k, chosen):
        if k == len(slots):
            yield dict(chosen)
            return
        q = slots[k]
        if k == 0:
            pool = range(C.size(lower))
        else:
            p0 = slots[0]
            pool = C.by_face(lower, p0).get(C.d(lower, chosen[p0], q - 1), ())
        for x in pool:
            if all(C.d(lower, x, p) == C.d(lower, chosen[p], q - 1) for p in slots[1:k]):
                chosen[q] = x
                yield from rec(k + 1, chosen)
                del chosen[q]

    yield from rec(0, {})


def random_horn(C: TruncatedComplex, m: int, i: int, rng: random.Random, tries: int = 200):
    slots = [p for p in range(m + 1) if p != i]
    lower = m - 1
    for _ in range(tries):
        chosen = {}
        for k, q in enumerate(slots):
            if k == 0:
                pool = list(range(C.size(lower)))
            elif lower == 0:
                pool = list(range(C.size(0)))
            else:
                p0 = slots[0]
                pool = [x for x in C.by_face(lower, p0).get(C.d(lower, chosen[p0], q - 1), ())
                        if all(C.d(lower, x, p) == C.d(lower, chosen[p], q - 1) for p in slots[1:k])]
            if not pool:
                break
            chosen[q] = rng.choice(pool)
        else:
            return chosen
    return None


def _filler_index(C: TruncatedComplex, m: int, i: int) -> dict:
    table: dict = {}
    for w, fs in enumerate(C.faces[m]):
        table.setdefault(fs[:i] + fs[i + 1:], []).append(w)
    return table


def horn_check(C: TruncatedComplex, m: int, i: int, sample: int | None = None,
               seed: int = 0, max_witnesses: int = 10) -> dict:
    """Is the horn map at (m, i) a bijection?  Lists failing horns."""
    table = _filler_index(C, m, i)
    if sample is None:
        family = horns(C, m, i)
    else:
        rng = random.Random(seed)
        family = (h for h in (random_horn(C, m, i, rng) for _ in range(sample)) if h is not None)
    checked, witnesses = 0, []
    failures = 0
    for h in family:
        checked += 1
        key = tuple(h[p] for p in sorted(h))
        fillers = table.get(key, [])
        if len(fillers) != 1:
            failures += 1
            if len(witnesses) < max_witnesses:
                witnesses.append({"horn": [C.keys[m - 1][h[p]] for p in sorted(h)],
                                  "fillers": len(fillers)})
    return {"check": "horn", "dimension": m, "slot": i,
            "status": "pass" if failures == 0 else "fail",
            "counts": {"horns": checked, "failing": failures}, "witnesses": witnesses}


# -- relation-complex specifics -------------------------------------------------

def relation_join(faces: Mapping[int, frozenset], m: int) -> frozenset:
    """Rows of length m+1 whose faces at the given slots all lie in the given sets."""
    slots = sorted(faces)
    p, q = slots[0], slots[1]
    out = set()
    for t in modelgen.pq_fillers_pair(faces[p], faces[q], p, q):
        if all(_omit(t, r) in faces[r] for r in slots[2:]):
            out.add(t)
    return frozenset(out)


def composition_check(C: TruncatedComplex, n: int, i: int) -> dict:
    """Every (n+1)-simplex equals the composite built from its horn."""
    m = n + 1
    bad = []
    for w in range(C.size(m)):
        fs = C.faces[m][w]
        faces = {p: C.payload[n][fs[p]] for p in range(m + 1) if p != i}
        if relation_join(faces, m) != C.payload[m][w]:
            bad.append(C.keys[m][w])
    return {"check": "composition", "dimension": m, "slot": i,
            "status": "pass" if not bad else "fail",
            "counts": {"simplices": C.size(m), "failing": len(bad)},
            "witnesses": [list(g) for g in bad[:10]]}


def _det_scan(level, keys, deg, p, q):
    fail_d, fail_nd, wit = 0, 0, []
    for x, S in enumerate(level):
        if not modelgen.is_pq_determinate_rel(S, p, q):
            if x in deg:
                fail_d += 1
            else:
                fail_nd += 1
            if len(wit) < 10:
                wit.append(list(keys[x]))
    return fail_d, fail_nd, wit


def determinacy_report(C: TruncatedComplex, conds, jobs: int = 1) -> list[dict]:
    """Scan every simplex of each condition's dimension, degenerate ones included.

    With jobs > 1 the conditions are scanned in worker processes.
    """
    cs = [c for c in sorted(modelgen.rules_closure(getattr(conds, "determinacy", conds)),
                            key=lambda c: (-c.m, c.p, c.q)) if c.m <= C.top_dim]
    args = [(C.payload[c.m], C.keys[c.m], C.degenerate(c.m), c.p, c.q) for c in cs]
    if jobs > 1 and len(cs) > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_det_scan, *zip(*args)))
    else:
        results = [_det_scan(*a) for a in args]
    out = []
    for c, (fail_d, fail_nd, wit) in zip(cs, results):
        out.append({"check": "determinacy", "condition": str(c), "dimension": c.m,
                    "status": "pass" if fail_d + fail_nd == 0 else "fail",
                    "counts": {"simplices": C.size(c.m), "failing": fail_d + fail_nd,
                               "degenerate": fail_d, "nondegenerate": fail_nd},
                    "witnesses": wit})
    return out


def check_truncated_composer(C: TruncatedComplex, n: int, i: int, depth: int = 2,
                             sample: int | None = None, seed: int = 0, jobs: int = 1) -> dict:
    """Horn bijections for n < m <= min(top, n+depth), plus for relation
    complexes the degenerate-composition check and the determinacy
    characterization.  The verdict is the conjunction of all records."""
    if C.top_dim < n + 1:
        raise ValueError("need simplices one dimension above n")
    records = []
    for m in range(n + 1, min(C.top_dim, n + depth) + 1):
        records.append(horn_check(C, m, i, sample, seed))
    if C.kind == "relation":
        records.append(composition_check(C, n, i))
        records.extend(determinacy_report(C, modelgen.required_conditions(n, i), jobs))
    ok = all(r["status"] == "pass" for r in records)
    return {"check": "composer", "n": n, "slot": i, "status": "pass" if ok else "fail",
            "records": records}


def check_hypergroupoid(C: TruncatedComplex, n: int, depth: int = 2,
                        sample: int | None = None, seed: int = 0, jobs: int = 1) -> dict:
    if C.top_dim < n + 1:
        raise ValueError("need simplices one dimension above n")
    records = []
    for m in range(n + 1, min(C.top_dim, n + depth) + 1):
        for i in range(m + 1):
            records.append(horn_check(C, m, i, sample, seed + 7919 * m + i))
    if C.kind == "relation":
        for i in range(n + 2):
            for rec in determinacy_report(C, modelgen.required_conditions(n, i), jobs):
                rec["slot"] = i
                records.append(rec)
    ok = all(r["status"] == "pass" for r in records)
    return {"check": "hypergroupoid", "n": n, "status": "pass" if ok else "fail",
            "records": records}


# -- coskeleta -----------------------------------------------------------------

def coskeleton(C: TruncatedComplex, m_target: int) -> TruncatedComplex:
    """Extend by simplicial kernels: new k-simplices are compatible face families."""
    keys = [list(k) for k in C.keys]
    faces = [list(f) for f in C.faces]
    degens = [list(s) for s in C.degens[:C.top_dim]]
    for k in range(C.top_dim + 1, m_target + 1):
        lower = k - 1
        tmp = TruncatedComplex(lower, keys, faces, degens + [[None] * len(keys[lower])])
        fams = []
        for h in horns_full(tmp, k):
            fams.append(h)
        level_keys = [("kernel",) + f for f in fams]
        idx = {f: j for j, f in enumerate(fams)}
        keys.append(level_keys)
        faces.append(list(fams))
        rows = []
        for x in range(len(keys[lower])):
            fs = faces[lower][x] if lower >= 1 else ()
            row = []
            for j in range(lower + 1):
                fam = []
                for p in range(k + 1):
                    if p < j:
                        fam.append(degens[lower - 1][fs[p]][j - 1])
                    elif p in (j, j + 1):
                        fam.append(x)
                    else:
                        fam.append(degens[lower - 1][fs[p - 1]][j])
                row.append(idx[tuple(fam)])
            rows.append(tuple(row))
        degens.append(rows)
    degens.append([None] * len(keys[m_target]))
    return TruncatedComplex(m_target, keys, faces, degens, None, "coskeleton", C.meta)


def horns_full(C: TruncatedComplex, k: int):
    """All compatible families (x_0, ..., x_k) of (k-1)-simplices."""
    lower = k - 1
    out = []

    def rec(chosen):
        q = len(chosen)
        if q == k + 1:
            out.append(tuple(chosen))
            return
        if q == 0 or lower == 0:
            pool = range(C.size(lower))
        else:
            pool = C.by_face(lower, 0).get(C.d(lower, chosen[0], q - 1), ())
        for x in pool:
            if lower == 0 or all(C.d(lower, x, p) == C.d(lower, chosen[p], q - 1) for p in range(1, q)):
                rec(chosen + [x])

    rec([])
    return out


def isomorphic_levels(A: TruncatedComplex, B: TruncatedComplex, m: int) -> bool:
    """Same face structure at m, given matching keys below (compared via faces)."""
    def sig(C, d):
        if d == 0:
            return sorted(map(repr, C.keys[0]))
        return sorted(tuple(repr(C.keys[d - 1][f]) for f in fs) for fs in C.faces[d])
    return A.size(m) == B.size(m) and (m == 0 or sig(A, m) == sig(B, m))


# -- partial simplices and extended fillers -------------------------------------

def delsub_of_face(B: Iterable[int], w: int) -> frozenset:
    B = set(B)
    if w not in B:
        raise ValueError(f"{w} is not in the deletion subset")
    return frozenset({t for t in B if t < w} | {t - 1 for t in B if t > w})


def is_type_p(B: Iterable[int], n: int, i: int) -> int | None:
    for p, t in enumerate(sorted(B), start=1):
        if t == i + p - 1:
            return p
    return None


@dataclass
class PartialSimplex:
    m: int
    known: dict
    deletion: frozenset = None

    def __post_init__(self):
        self.known = dict(self.known)
        missing = frozenset(p for p in range(self.m + 1) if p not in self.known)
        if self.deletion is None:
            self.deletion = missing
        elif frozenset(self.deletion) != missing:
            raise ValueError("deletion subset must be the complement of the known slots")
        self.deletion = frozenset(self.deletion)

    def check(self, C: TruncatedComplex) -> None:
        low = self.m - 1
        for q in self.known:
            for p in self.known:
                if p < q and low >= 1 and C.d(low, self.known[q], p) != C.d(low, self.known[p], q - 1):
                    raise ValueError(f"known faces {p} and {q} are incompatible")

    def face_partial(self, C: TruncatedComplex, w: int) -> "PartialSimplex":
        """The partial simplex d_w z, with faces read off the known ones."""
        low = self.m - 1
        known = {}
        for s in range(self.m):
            if s < w and s in self.known:
                known[s] = C.d(low, self.known[s], w - 1)
            elif s >= w and s + 1 in self.known:
                known[s] = C.d(low, self.known[s + 1], w)
        return PartialSimplex(self.m - 1, known)


def _search_fillers(C: TruncatedComplex, ps: PartialSimplex) -> list[int]:
    slots = sorted(ps.known)
    if not slots:
        return list(range(C.size(ps.m)))
    p0 = slots[0]
    pool = C.by_face(ps.m, p0).get(ps.known[p0], [])
    return [w for w in pool if all(C.faces[ps.m][w][p] == ps.known[p] for p in slots[1:])]


def extended_fill(C: TruncatedComplex, ps: PartialSimplex, n: int, i: int,
                  log: list | None = None, path: str = "") -> int:
    """Fill a partial simplex face by face, then by one composition.

    Type 1 (smallest missing slot is i): fill the largest missing face first.
    Type p > 1: fill the smallest missing face (type p-1 for (n,i)), then
    the rest is type p-1 for (n+1,i+1).  Other deletion subsets fall back
    to a uniqueness-checked search when the size bounds allow it.
    """
    if log is None:
        log = []
    ps.check(C)
    B = sorted(ps.deletion)
    if not B:
        hits = _search_fillers(C, ps)
        if len(hits) != 1:
            raise ValueError("known faces do not determine a simplex")
        return hits[0]
    if len(B) == 1:
        b = B[0]
        if not i <= b <= i + (ps.m - 1 - n):
            raise ValueError(f"slot {b} is not a composition slot at dimension {ps.m}")
        hits = _search_fillers(C, ps)
        if len(hits) != 1:
            raise ValueError(f"{len(hits)} fillers at slot {b}")
        log.append({"fill": path or "z", "dimension": ps.m, "slot": b,
                    "by": f"({ps.m - 1},{b})-composition"})
        return hits[0]
    p = is_type_p(B, n, i)
    if p is None:
        if len(B) > ps.m - (n + 2):
            raise ValueError("deletion subset has no type and is too large")
        hits = _search_fillers(C, ps)
        if len(hits) != 1:
            raise ValueError(f"{len(hits)} fillers in the coskeletal range")
        log.append({"fill": path or "z", "dimension": ps.m, "slot": None, "by": "coskeleton"})
        return hits[0]
    if p == 1:
        w, n2, i2 = B[-1], n, i
    else:
        w, n2, i2 = B[0], n + 1, i + 1
    sub = ps.face_partial(C, w)
    fw = extended_fill(C, sub, n, i, log, f"d{w}" + path)
    known = dict(ps.known)
    known[w] = fw
    return extended_fill(C, PartialSimplex(ps.m, known), n2, i2, log, path)


def is_A_cancelling(C: TruncatedComplex, m: int, w: int, A: Iterable[int], i: int) -> bool:
    A = set(A)
    if i not in A or not A < set(range(m + 1)):
        raise ValueError("need i in A and A a proper subset of the slots")
    keep = sorted((set(range(m + 1)) - A) | {i})
    mine = tuple(C.faces[m][w][p] for p in keep)
    return not any(tuple(C.faces[m][v][p] for p in keep) == mine
                   for v in range(C.size(m)) if v != w)
