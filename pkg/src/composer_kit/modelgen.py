"""Model construction for relation complexes.

Determinacy conditions (p,q).m and their rule closure, the per-slot
condition sets, anchored covers and the least anchor-complete
enlargement, overlap tests and the hypergroupoid block generator.

Everything here works on plain label tuples.  A simplicial image of a
relation R along a monotone g: [m] -> [n] is the set {t o g : t in R}.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .scomplex import Relation


# -- conditions ----------------------------------------------------------------

@dataclass(frozen=True, order=True)
class DetCondition:
    p: int
    q: int
    m: int

    def __post_init__(self):
        if not 0 <= self.p < self.q <= self.m:
            raise ValueError(f"need 0 <= p < q <= m, got ({self.p},{self.q}).{self.m}")

    def __str__(self):
        return f"{self.p},{self.q}.{self.m}"

    @classmethod
    def parse(cls, s: str) -> "DetCondition":
        m = re.fullmatch(r"\s*\(?\s*(\d+)\s*,\s*(\d+)\s*\)?\s*\.\s*(\d+)\s*", s)
        if not m:
            raise ValueError(f"bad determinacy condition {s!r}")
        return cls(*map(int, m.groups()))


@dataclass(frozen=True, order=True)
class SurCondition:
    j: int
    m: int

    def __post_init__(self):
        if not 0 <= self.j <= self.m:
            raise ValueError(f"need 0 <= j <= m, got {self.j}-sur.{self.m}")

    def __str__(self):
        return f"{self.j}-sur.{self.m}"

    @classmethod
    def parse(cls, s: str) -> "SurCondition":
        m = re.fullmatch(r"\s*(\d+)\s*-\s*sur\s*\.\s*(\d+)\s*", s)
        if not m:
            raise ValueError(f"bad surjectivity condition {s!r}")
        return cls(*map(int, m.groups()))


@dataclass(frozen=True)
class ConditionSet:
    determinacy: frozenset = field(default_factory=frozenset)
    surjectivity: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "determinacy", frozenset(
            c if isinstance(c, DetCondition) else DetCondition(*c) for c in self.determinacy))
        object.__setattr__(self, "surjectivity", frozenset(
            c if isinstance(c, SurCondition) else SurCondition(*c) for c in self.surjectivity))

    @classmethod
    def parse(cls, items: Iterable[str]) -> "ConditionSet":
        det, sur = set(), set()
        for s in items:
            if "sur" in s:
                sur.add(SurCondition.parse(s))
            else:
                det.add(DetCondition.parse(s))
        return cls(frozenset(det), frozenset(sur))

    def closed(self) -> "ConditionSet":
        return ConditionSet(frozenset(rules_closure(self.determinacy)), self.surjectivity)

    def is_closed(self) -> bool:
        return set(rules_closure(self.determinacy)) == set(self.determinacy)

    def strings(self) -> list[str]:
        return [str(c) for c in sorted(self.surjectivity)] + [str(c) for c in sorted(self.determinacy)]

    def __str__(self):
        return "{" + ", ".join(self.strings()) + "}"


def apply_rules(c: DetCondition) -> list[tuple[str, DetCondition]]:
    p, q, m = c.p, c.q, c.m
    out = []
    if p >= 2:
        out.append(("rule1", DetCondition(p - 1, q - 1, m - 1)))
    if q - p >= 3:
        out.append(("rule2", DetCondition(p, q - 1, m - 1)))
    if q <= m - 2:
        out.append(("rule3", DetCondition(p, q, m - 1)))
    return out


def rules_closure(conds: Iterable[DetCondition]) -> set[DetCondition]:
    out = set()
    stack = [c if isinstance(c, DetCondition) else DetCondition(*c) for c in conds]
    while stack:
        c = stack.pop()
        if c in out:
            continue
        out.add(c)
        stack.extend(d for _, d in apply_rules(c))
    return out


def det_family(n: int) -> list[DetCondition]:
    """All (p,q).n with q-p in {2,3}, in lexicographic order."""
    return [DetCondition(p, q, n) for p in range(n + 1) for q in (p + 2, p + 3) if q <= n]


def det_diagram(n: int) -> dict:
    """Every family from level n down to 2, with all rule arrows between them."""
    nodes = [c for m in range(n, 1, -1) for c in det_family(m)]
    arrows = [(str(c), rule, str(d)) for c in nodes for rule, d in apply_rules(c)]
    terminal = [str(c) for c in nodes if not apply_rules(c)]
    return {"nodes": [str(c) for c in nodes], "arrows": arrows, "terminal": terminal}


def required_conditions(n: int, i: int) -> ConditionSet:
    if n < 2:
        raise ValueError("n must be at least 2")
    if not 0 <= i <= n + 1:
        raise ValueError(f"slot {i} out of range [0,{n + 1}]")
    if i == 0:
        sur, det = [0, 1], [(1, 2)]
    elif i == 1:
        sur, det = [1], [(0, 2)]
    elif i < n:
        sur, det = [i, i - 1], [(i - 2, i + 1)]
    elif i == n:
        sur, det = [n - 1], [(n - 2, n)]
    else:
        sur, det = [n, n - 1], [(n - 2, n - 1), (n - 1, n)]
    return ConditionSet(frozenset(DetCondition(p, q, n) for p, q in det),
                        frozenset(SurCondition(j, n) for j in sur)).closed()


# -- relation-level determinacy --------------------------------------------------

def image(rows: Iterable[tuple], g: Sequence[int]) -> frozenset:
    return frozenset(tuple(t[v] for v in g) for t in rows)


def _omit(t: tuple, p: int) -> tuple:
    return t[:p] + t[p + 1:]


def pq_fillers_pair(faces_p: Iterable[tuple], faces_q: Iterable[tuple], p: int, q: int):
    """Yield each t with t minus p in faces_p and t minus q in faces_q."""
    by_rest: dict = {}
    for v in set(faces_q):
        by_rest.setdefault(_omit(v, p), []).append(v)
    for u in set(faces_p):
        for v in by_rest.get(_omit(u, q - 1), ()):
            yield v[:q] + (u[q - 1],) + v[q:]


def pq_fillers(S: Iterable[tuple], p: int, q: int):
    """Yield every filler of a (p,q)-partial element of the image S."""
    S = set(S)
    yield from pq_fillers_pair({_omit(s, p) for s in S}, {_omit(s, q) for s in S}, p, q)


def det_failures(S: Iterable[tuple], p: int, q: int) -> list[tuple]:
    S = frozenset(S)
    return sorted(set(t for t in pq_fillers(S, p, q) if t not in S))


def is_pq_determinate_rel(S: Iterable[tuple], p: int, q: int) -> bool:
    return not det_failures(S, p, q)


# -- anchored covers and enlargement -------------------------------------------

def anchored_cover(b: Sequence, a: Sequence, deleted: Iterable[int] | None = None,
                   via: Sequence[int] | None = None) -> tuple:
    """Put b back over the anchor a.

    Either ``via`` is the monotone map b was projected along (b = t o via),
    or ``deleted`` lists the positions of a that b skips.
    """
    a = tuple(a)
    b = tuple(b)
    if via is None:
        deleted = set(deleted or ())
        if any(not 0 <= d < len(a) for d in deleted):
            raise ValueError("deleted position out of range")
        kept = [k for k in range(len(a)) if k not in deleted]
        if len(kept) != len(b):
            raise ValueError("arity mismatch between b, the deletion and the anchor")
        via = kept
    via = tuple(via)
    if len(via) != len(b) or any(not 0 <= v < len(a) for v in via):
        raise ValueError("arity mismatch between b, the map and the anchor")
    out = list(a)
    for k, v in enumerate(via):
        if via.index(v) != k and out[v] != b[k]:
            raise ValueError("b is not constant on the fibres of the map")
        out[v] = b[k]
    return tuple(out)


@dataclass
class EnlargeResult:
    relation: Relation
    anchor: tuple
    added: list = field(default_factory=list)  # (row, condition, image, filler)
    rounds: int = 0

    def to_dict(self) -> dict:
        return {
            "anchor": list(self.anchor),
            "rows": [list(r) for r in self.relation.sorted_rows()],
            "rounds": self.rounds,
            "added": [{"row": list(r), "condition": str(c), "image": list(g), "filler": list(f)}
                      for r, c, g, f in self.added],
        }


def _det_conditions(conds) -> list[DetCondition]:
    dets = getattr(conds, "determinacy", conds)
    return sorted(rules_closure(dets), key=lambda c: (c.m, c.p, c.q))


def enlarge_with_trace(R: Relation, a: Sequence, conds) -> EnlargeResult:
    """Least superset of R that holds an a-anchored cover of every filler.

    For each condition (p,q).m and each injective g: [m] -> [n], every
    (p,q)-filler t of the image of the current relation along g must have
    its anchored cover in the result.  Repeats until nothing is added.
    """
    a = tuple(a)
    if a not in R.rows:
        raise ValueError(f"anchor {a} is not a row of R")
    n = R.n
    rows = set(R.rows)
    dets = [c for c in _det_conditions(conds) if c.m <= n]
    result = EnlargeResult(R, a)
    while True:
        result.rounds += 1
        new = {}
        for c in dets:
            for g in itertools.combinations(range(n + 1), c.m + 1):
                S = image(rows, g)
                for t in sorted(set(pq_fillers(S, c.p, c.q))):
                    cover = anchored_cover(t, a, via=g)
                    if cover not in rows and cover not in new:
                        new[cover] = (c, g, t)
        if not new:
            break
        for cover in sorted(new):
            c, g, t = new[cover]
            result.added.append((cover, c, g, t))
        rows |= set(new)
    result.relation = Relation.from_rows(rows, R.columns if _covers(R, rows) else None)
    return result


def _covers(R: Relation, rows) -> bool:
    return all(v in R.columns[k] for r in rows for k, v in enumerate(r))


def enlarge(R: Relation, a: Sequence, conds) -> Relation:
    return enlarge_with_trace(R, a, conds).relation


def is_anchor_complete(R: Relation, a: Sequence, conds) -> bool:
    return not enlarge_with_trace(R, a, conds).added


# -- overlap characterization --------------------------------------------------

@dataclass(frozen=True)
class Overlap:
    kind: str  # "disjoint", "interval" or "multiple"
    positions: tuple
    interval: tuple | None = None


def overlap_classify(t: Sequence, t2: Sequence) -> Overlap:
    if len(t) != len(t2):
        raise ValueError("arity mismatch")
    pos = tuple(k for k in range(len(t)) if t[k] == t2[k])
    if not pos:
        return Overlap("disjoint", pos)
    if pos == tuple(range(pos[0], pos[-1] + 1)):
        return Overlap("interval", pos, (pos[0], pos[-1]))
    return Overlap("multiple", pos)


def model_check_overlap(R: Relation | Iterable[tuple], mode: str = "i0"):
    """(ok, witness).  i0: every pair overlaps on at most one interval.
    in1: additionally that interval ends at the last position."""
    if mode not in ("i0", "in1"):
        raise ValueError("mode is 'i0' or 'in1'")
    rows = sorted(R.rows if isinstance(R, Relation) else set(map(tuple, R)))
    for s, t in itertools.combinations(rows, 2):
        ov = overlap_classify(s, t)
        if ov.kind == "multiple":
            return False, (s, t, ov)
        if mode == "in1" and ov.kind == "interval" and ov.interval[1] != len(s) - 1:
            return False, (s, t, ov)
    return True, None


# -- hypergroupoid blocks ------------------------------------------------------

def block_stride(n: int) -> int:
    return (n + 1) * (n + 2) // 2


def hypergroupoid_blocks(n: int, nblocks: int) -> Relation:
    """Blocks of n+1 rows over disjoint label ranges.

    Row r of block b keeps the tail of the base row bS..bS+n and replaces
    its first r coordinates by fresh consecutive labels.
    """
    if n < 3 or nblocks < 1:
        raise ValueError("need n >= 3 and at least one block")
    S = block_stride(n)
    rows = []
    for b in range(nblocks):
        base = list(range(b * S, b * S + n + 1))
        nxt = b * S + n + 1
        rows.append(tuple(base))
        for r in range(1, n + 1):
            rows.append(tuple(range(nxt, nxt + r)) + tuple(base[r:]))
            nxt += r
        assert nxt == (b + 1) * S
    return Relation.from_rows(rows)


def check_conditions(R: Relation | Iterable[tuple], conds) -> dict:
    """Failing images per determinacy condition, over every monotone g.

    Surjectivity conditions hold in every relation complex (an image's
    face is the image along the composite map), so only determinacy is
    scanned.  Returns {condition string: [(g, degenerate?), ...]}.
    """
    rows = R.rows if isinstance(R, Relation) else frozenset(map(tuple, R))
    n = len(next(iter(rows))) - 1
    fails = {}
    for c in _det_conditions(conds):
        bad = []
        for g in itertools.combinations_with_replacement(range(n + 1), c.m + 1):
            if not is_pq_determinate_rel(image(rows, g), c.p, c.q):
                bad.append((g, len(set(g)) < len(g)))
        fails[str(c)] = bad
    return fails
