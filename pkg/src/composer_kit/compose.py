"""(n,i)-composition over the simplicial set of relations.

Elements are flat fundamental tuples (see ``scomplex``).  Partial elements
are dicts from face slots to tuples; ``compatible`` means
e_p(a_q) == e_{q-1}(a_p) for every pair of present slots p < q.

Empty element sets are legal everywhere.  Predicates quantified over
elements or partial elements are vacuously true when there are none.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .scomplex import (
    SSimplex,
    _subsets,
    degeneracy,
    dim_of,
    face,
    is_component_simplicial,
    is_e_simplicial,
    proj_e,
    signature,
)


# -- partial elements ----------------------------------------------------------

def _compatible(entries: Mapping[int, tuple]) -> bool:
    slots = sorted(entries)
    for qi, q in enumerate(slots):
        for p in slots[:qi]:
            if proj_e(entries[q], p) != proj_e(entries[p], q - 1):
                return False
    return True


@dataclass(frozen=True)
class PartialElement:
    entries: Mapping[int, tuple]
    host: SSimplex | None = field(default=None, compare=False)

    def __post_init__(self):
        entries = {int(p): tuple(a) for p, a in dict(self.entries).items()}
        if not entries:
            raise ValueError("a partial element needs at least one entry")
        dims = {dim_of(a) for a in entries.values()}
        if len(dims) != 1:
            raise ValueError("entries must share one dimension")
        object.__setattr__(self, "entries", entries)
        if not _compatible(entries):
            raise ValueError("entries are not pairwise compatible")

    @property
    def entry_dim(self) -> int:
        return dim_of(next(iter(self.entries.values())))

    def slots(self) -> tuple[int, ...]:
        return tuple(sorted(self.entries))


def partial_elements(faces: Mapping[int, Iterable[tuple]]):
    """Yield every compatible choice of one element per slot (a dict)."""
    slots = sorted(faces)
    pools = {p: sorted(faces[p]) for p in slots}

    def rec(k, chosen):
        if k == len(slots):
            yield dict(chosen)
            return
        q = slots[k]
        for b in pools[q]:
            if all(proj_e(b, p) == proj_e(chosen[p], q - 1) for p in slots[:k]):
                chosen[q] = b
                yield from rec(k + 1, chosen)
                del chosen[q]

    yield from rec(0, {})


def unique_filler(pe: PartialElement | Mapping[int, tuple], i: int) -> tuple:
    """The missing entry b_i of a partial element over every slot but i."""
    entries = pe.entries if isinstance(pe, PartialElement) else dict(pe)
    if not isinstance(pe, PartialElement) and not _compatible(entries):
        raise ValueError("entries are not pairwise compatible")
    n = dim_of(next(iter(entries.values())))
    if sorted(entries) != [p for p in range(n + 2) if p != i]:
        raise ValueError(f"entries must cover every slot of [{n + 1}] except {i}")
    out = []
    for p in range(n + 2):
        if p < i:
            out.extend(proj_e(entries[p], i - 1))
        elif p > i:
            out.extend(proj_e(entries[p], i))
    return tuple(out)


def complete_tuple(entries: Mapping[int, tuple], i: int) -> tuple:
    """The whole tuple (b_0, ..., b_i, ..., b_{n+1}) for a partial element."""
    bi = unique_filler(entries, i)
    n = dim_of(bi)
    out = []
    for p in range(n + 2):
        out.extend(bi if p == i else entries[p])
    return tuple(out)


def pq_fill(y: SSimplex | None, b_p: tuple, b_q: tuple, p: int, q: int) -> tuple:
    """The unique component-simplicial tuple with e_p = b_p and e_q = b_q.

    Built face by face: for r < p the face b_r is pinned by its faces at
    p-1 and q-1, for p < r < q by p and q-1, and for r > q by p and q.
    ``y`` is only used to check the slots against its dimension.
    """
    if not p < q:
        raise ValueError("need p < q")
    d = dim_of(b_p) + 1
    if y is not None and y.dim != d:
        raise ValueError("entries do not match the host dimension")
    if q > d or dim_of(b_q) != d - 1:
        raise ValueError("slot or dimension out of range")
    if d >= 2 and proj_e(b_q, p) != proj_e(b_p, q - 1):
        raise ValueError("b_p and b_q are not compatible")
    return _merge(b_p, b_q, p, q, d)


def _merge(b_p, b_q, p, q, d):
    if d == 1:
        return tuple(b_p) + tuple(b_q)
    blocks = []
    for r in range(d + 1):
        if r == p:
            blocks.append(tuple(b_p))
        elif r == q:
            blocks.append(tuple(b_q))
        elif r < p:
            blocks.append(_merge(proj_e(b_p, r), proj_e(b_q, r), p - 1, q - 1, d - 1))
        elif r < q:
            blocks.append(_merge(proj_e(b_p, r - 1), proj_e(b_q, r), p, q - 1, d - 1))
        else:
            blocks.append(_merge(proj_e(b_p, r - 1), proj_e(b_q, r - 1), p, q, d - 1))
    out = tuple(x for b in blocks for x in b)
    if not is_component_simplicial(out):
        raise ValueError("b_p and b_q admit no component-simplicial filler")
    return out


# -- horns and composites ------------------------------------------------------

@dataclass(frozen=True)
class OpenHorn:
    n: int
    i: int
    faces: Mapping[int, SSimplex]

    def __post_init__(self):
        faces = dict(self.faces)
        want = [p for p in range(self.n + 2) if p != self.i]
        if sorted(faces) != want:
            raise ValueError(f"horn needs faces at {want}")
        if any(f.dim != self.n for f in faces.values()):
            raise ValueError("horn faces must have dimension n")
        for q in want:
            for p in want:
                if p < q and face(faces[q], p) != face(faces[p], q - 1):
                    raise ValueError(f"faces {p} and {q} are incompatible")
        object.__setattr__(self, "faces", faces)


def horn_of(w: SSimplex, i: int) -> OpenHorn:
    return OpenHorn(w.dim - 1, i, {p: face(w, p) for p in range(w.dim + 1) if p != i})


def comp_ni(h: OpenHorn) -> SSimplex:
    n, i, faces = h.n, h.i, h.faces
    top = n + 1
    fsig = []
    for v in range(top + 1):
        p = next(p for p in range(top + 1) if p not in (v, i))
        fsig.append(faces[p].fsig[v - (v > p)])
    elems = set()
    for pe in partial_elements({p: faces[p].elements for p in faces}):
        full = complete_tuple(pe, i)
        if is_component_simplicial(full):
            elems.add(full)
    nodes = {}
    everything = tuple(range(top + 1))
    for w in _subsets(top):
        if w == everything:
            nodes[w] = frozenset(elems)
            continue
        missing = [p for p in everything if p not in w and p != i]
        if missing:
            p = missing[0]
            nodes[w] = faces[p].node(tuple(v - (v > p) for v in w))
        else:
            nodes[w] = frozenset(proj_e(a, i) for a in elems)
    return SSimplex(tuple(fsig), nodes)


def is_i_surjective(y: SSimplex, i: int) -> bool:
    """Vacuously true when d_i(y) has no elements."""
    if y.dim < 1:
        raise ValueError("surjectivity needs dimension >= 1")
    hit = {proj_e(a, i) for a in y.elements}
    return set(face(y, i).elements) <= hit


def is_composition(w: SSimplex, i: int) -> bool:
    """The three clauses checked directly."""
    if w.dim < 1 or not 0 <= i <= w.dim:
        raise ValueError("slot out of range")
    if not is_e_simplicial(w):
        return False
    sig = signature(w)
    di = sig[i]
    for pe in partial_elements({p: sig[p] for p in range(w.dim + 1) if p != i}):
        full = complete_tuple(pe, i)
        if proj_e(full, i) not in di or full not in w.elements:
            return False
    return is_i_surjective(w, i)


def expansion_compare(w: SSimplex, i: int) -> dict:
    report = {"dimension": w.dim, "slot": i}
    if not is_e_simplicial(w) or not is_i_surjective(w, i):
        report.update(status="precondition-failed", equal=False)
        return report
    try:
        wt = comp_ni(horn_of(w, i))
    except ValueError as exc:
        report.update(status="precondition-failed", equal=False, reason=str(exc))
        return report
    di, dit = face(w, i), face(wt, i)
    same_sig = signature(di) == signature(dit)
    top_sub = w.elements <= wt.elements
    face_sub = di.elements <= dit.elements
    report.update(
        status="ok" if same_sig and top_sub and face_sub else "inclusion-failed",
        same_signature=same_sig,
        top_included=top_sub,
        face_included=face_sub,
        top_equal=w.elements == wt.elements,
        face_equal=di.elements == dit.elements,
        equal=w == wt,
    )
    return report


# -- determinacy ---------------------------------------------------------------

def is_A_determinate(y: SSimplex, A: Iterable[int]) -> bool:
    """Every A-indexed partial element fills inside y.

    Vacuously true when there are no A-indexed partial elements.
    Cost is the size of the join over the faces in A.
    """
    A = sorted(set(A))
    n = y.dim
    if len(A) < 2 or len(A) > n or any(not 0 <= p <= n for p in A):
        raise ValueError(f"A must have at least 2 and at most {n} slots in [{n}]")
    sig = signature(y)
    p, q = A[0], A[1]
    for pe in partial_elements({r: sig[r] for r in A}):
        try:
            a = pq_fill(None, pe[p], pe[q], p, q)
        except ValueError:
            continue
        if any(proj_e(a, r) != pe[r] for r in A[2:]):
            continue
        if a not in y.elements:
            return False
    return True


def is_pq_determinate(y: SSimplex, p: int, q: int) -> bool:
    return is_A_determinate(y, (p, q))


def degenerate_composition_check(y: SSimplex, k: int, i: int) -> bool:
    return is_composition(degeneracy(y, k), i)


# -- array filling -------------------------------------------------------------

@dataclass
class FillResult:
    n: int
    i: int
    steps: list = field(default_factory=list)
    complete: bool = False
    stuck_rows: tuple = ()

    def table(self) -> str:
        lines = [f"{'step':>4}  {'row':>3}  rule"]
        for s in self.steps:
            row = "-" if s["row"] is None else str(s["row"])
            lines.append(f"{s['step']:>4}  {row:>3}  {s['rule']}")
        if not self.complete:
            lines.append("stuck at rows " + ",".join(map(str, self.stuck_rows)))
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {"n": self.n, "i": self.i, "complete": self.complete,
                "stuck_rows": list(self.stuck_rows), "steps": list(self.steps)}


def _cell_partner(r: int, c: int) -> int:
    return c if c < r else c + 1


def fill_array(conditions, seed, n: int, i: int) -> FillResult:
    """Fill the rows of an (n+1)-dimensional array symbolically.

    Rows 0..n+1 are the faces b_r of a would-be element; cell (r, c) is the
    shared entry e_c(b_r), which is the same datum as its mirror cell.
    Row i is produced last by (n,i)-composition.  ``seed`` lists known
    cells as (row, col) pairs, or bare row numbers for whole rows.

    A row is filled by j-sur when its only known cell is column j, and by
    (p,q).n once columns p and q are known.  Determinacy goes first,
    rows ascending; otherwise the surjectivity move that unlocks the most
    determinacy moves is taken.
    """
    sur = {j for j, m in _sur_pairs(conditions) if m == n}
    det = sorted((p, q) for p, q, m in _det_triples(conditions) if m == n)
    rows = range(n + 2)
    known: dict[int, set[int]] = {r: set() for r in rows}
    filled: set[int] = set()

    def mark_cell(r, c):
        known[r].add(c)
        other = _cell_partner(r, c)
        known[other].add(r if r < other else r - 1)

    def mark_row(r):
        filled.add(r)
        for c in range(n + 1):
            mark_cell(r, c)

    result = FillResult(n, i)
    given = []
    for item in seed:
        if isinstance(item, int):
            mark_row(item)
            given.append(f"row {item}")
        else:
            r, c = item
            if not (0 <= r <= n + 1 and 0 <= c <= n):
                raise ValueError(f"cell {item} out of range")
            mark_cell(r, c)
            given.append(f"({r},{c})")
    for r in rows:
        if len(known[r]) == n + 1:
            filled.add(r)
    if all(r in filled for r in rows):
        result.complete = True
        return result

    def log(row, rule):
        result.steps.append({"step": len(result.steps) + 1, "row": row, "rule": rule})

    if given:
        log(None, "given " + " ".join(given))

    def det_move(r, cells):
        for p, q in det:
            if p in cells and q in cells:
                return f"({p},{q}).{n}"
        return None

    while True:
        open_rows = [r for r in rows if r not in filled and r != i]
        if not open_rows:
            break
        move = None
        for r in open_rows:
            rule = det_move(r, known[r])
            if rule:
                move = (r, rule)
                break
        if move is None:
            best = None
            for r in open_rows:
                if len(known[r]) == 1:
                    j = next(iter(known[r]))
                    if j in sur:
                        score = _lookahead(r, known, filled, det, n, i)
                        if best is None or score > best[0]:
                            best = (score, r, f"{j}-sur.{n}")
            if best is not None:
                move = (best[1], best[2])
        if move is None:
            result.stuck_rows = tuple(open_rows)
            return result
        mark_row(move[0])
        log(move[0], move[1])
    if i not in filled:
        mark_row(i)
        log(i, f"({n},{i})-comp")
    result.complete = True
    return result


def _lookahead(r, known, filled, det, n, i):
    trial = {k: set(v) for k, v in known.items()}
    for c in range(n + 1):
        trial[r].add(c)
        other = _cell_partner(r, c)
        trial[other].add(r if r < other else r - 1)
    open_rows = [s for s in trial if s not in filled and s != r and s != i]
    unlocked = sum(1 for s in open_rows if any(p in trial[s] and q in trial[s] for p, q in det))
    spread = sum(1 for s in open_rows
                 if any(b - a in (2, 3) for a in trial[s] for b in trial[s] if a < b))
    return (unlocked, spread, -r)


def _det_triples(conditions):
    for c in getattr(conditions, "determinacy", conditions):
        if hasattr(c, "p"):
            yield c.p, c.q, c.m
        elif isinstance(c, tuple) and len(c) == 3:
            yield c


def _sur_pairs(conditions):
    for c in getattr(conditions, "surjectivity", ()):
        if hasattr(c, "j"):
            yield c.j, c.m
        else:
            yield tuple(c)
