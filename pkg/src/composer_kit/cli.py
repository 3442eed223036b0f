"""Command-line front end.

Exit codes: 0 pass, 1 verification failure, 2 input error.  JSON output
is deterministic for identical inputs; ``--timing`` adds wall-clock time
and therefore opts out of that.
"""
from __future__ import annotations

import json
import math
import sys
import time
from pathlib import Path

import click

from . import delta, modelgen, verify
from .scomplex import Relation

SCHEMA = "composer-kit/1"


class InputError(Exception):
    pass


# -- relation files --------------------------------------------------------------

def relation_to_json(R: Relation, labels=None) -> dict:
    out = {"schema": SCHEMA, "arity": R.arity, "rows": [list(r) for r in R.sorted_rows()]}
    if labels:
        out["labels"] = labels
    return out


def parse_relation(data: dict) -> tuple[Relation, list, dict | None]:
    """Returns the relation, the rows in file order, and any label map."""
    if not isinstance(data, dict) or "rows" not in data:
        raise InputError("relation file needs a 'rows' array")
    if data.get("schema", SCHEMA) != SCHEMA:
        raise InputError(f"unsupported schema {data.get('schema')!r}")
    rows = data["rows"]
    if not isinstance(rows, list) or not rows:
        raise InputError("'rows' must be a nonempty array")
    arity = data.get("arity", len(rows[0]) if isinstance(rows[0], list) else None)
    order = []
    for r in rows:
        if not isinstance(r, list) or len(r) != arity:
            raise InputError(f"row {r!r} does not have arity {arity}")
        if not all(isinstance(v, int) and not isinstance(v, bool) and v >= 0 for v in r):
            raise InputError(f"row {r!r} must hold non-negative integers")
        order.append(tuple(r))
    return Relation.from_rows(order), order, data.get("labels")


def read_relation(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None
    return parse_relation(data)


def emit(obj, fmt: str, text_fn=None, out=None):
    if fmt == "json":
        s = json.dumps(obj, indent=2) + "\n"
    else:
        s = (text_fn(obj) if text_fn else _text_generic(obj)) + "\n"
    if out:
        Path(out).write_text(s, encoding="utf-8")
    else:
        click.echo(s, nl=False)


def _text_generic(obj, indent=0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}{k}:")
                lines.append(_text_generic(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and not _flat_list(v):
                lines.append(f"{pad}-")
                lines.append(_text_generic(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(obj))
    return "\n".join(lines)


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v) -> str:
    if isinstance(v, list):
        if v and all(isinstance(x, str) for x in v):
            return ", ".join(v)
        return "(" + ",".join(map(str, v)) + ")"
    return str(v)


def _run(fn):
    """Map InputError and ValueError to exit code 2."""
    try:
        return fn()
    except (InputError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


def _ints(s: str) -> tuple[int, ...]:
    s = s.strip().strip("()[]")
    if not s:
        return ()
    try:
        return tuple(int(x) for x in s.replace(" ", "").split(","))
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {s!r}") from None


format_option = click.option("--format", "fmt", type=click.Choice(["json", "text"]),
                             default="json", show_default=True)


@click.group()
def main():
    """Composer models, relation complexes and unique-filler checks."""


# -- enlarge ---------------------------------------------------------------------

@main.command()
@click.argument("file")
@click.option("--anchor", "anchor", type=int, default=0, show_default=True,
              help="Index of the anchor row, in file order.")
@click.option("--n", "n", type=int, default=None, help="Dimension; defaults to arity - 1.")
@click.option("--i", "i", type=int, required=True, help="Composition slot.")
@click.option("-o", "--output", default=None, help="Write the enlarged relation file here.")
@click.option("--timing", is_flag=True)
@format_option
def enlarge(file, anchor, n, i, output, timing, fmt):
    """Least anchor-complete enlargement of a relation."""
    def go():
        R, order, labels = read_relation(file)
        nn = R.n if n is None else n
        if nn != R.n:
            raise InputError(f"--n {nn} does not match arity {R.arity}")
        if not 0 <= anchor < len(order):
            raise InputError(f"no row {anchor}; the file has {len(order)} rows")
        t0 = time.perf_counter()
        conds = modelgen.required_conditions(nn, i)
        res = modelgen.enlarge_with_trace(R, order[anchor], conds)
        rel = relation_to_json(res.relation, labels)
        report = {"schema": SCHEMA, "command": "enlarge",
                  "args": {"file": str(file), "anchor": anchor, "n": nn, "i": i},
                  "conditions": conds.strings(),
                  "input_rows": len(R), "output_rows": len(res.relation),
                  "additions": len(res.added), "trace": res.to_dict()["added"],
                  "relation": rel}
        if timing:
            report["timing"] = round(time.perf_counter() - t0, 4)
        if output:
            Path(output).write_text(json.dumps(rel, indent=2) + "\n", encoding="utf-8")
        emit(report, fmt, _enlarge_text)
    _run(go)


def _enlarge_text(rep) -> str:
    lines = [f"conditions: {', '.join(rep['conditions'])}",
             f"rows: {rep['input_rows']} -> {rep['output_rows']}"]
    for r in rep["relation"]["rows"]:
        lines.append("  (" + ",".join(map(str, r)) + ")")
    for a in rep["trace"]:
        lines.append(f"added ({','.join(map(str, a['row']))}) for {a['condition']} "
                     f"on image ({','.join(map(str, a['image']))})")
    return "\n".join(lines)


# -- verify ------------------------------------------------------------------------

@main.command("verify")
@click.argument("file", required=False)
@click.option("--delta", "delta_n", type=int, default=None, help="Check Delta[N] instead of a file.")
@click.option("--n", "n", type=int, default=None)
@click.option("--i", "i", type=int, default=None, help="Composer slot; omit with --hypergroupoid.")
@click.option("--depth", type=int, default=1, show_default=True,
              help="Check dimensions n+1 .. n+depth.")
@click.option("--hypergroupoid", is_flag=True, help="Check every slot.")
@click.option("--sample", type=int, default=None, help="Random horns per (dimension, slot).")
@click.option("--jobs", type=int, default=1, show_default=True)
@click.option("--timing", is_flag=True)
@format_option
def verify_cmd(file, delta_n, n, i, depth, hypergroupoid, sample, jobs, timing, fmt):
    """Check unique horn fillers and, for relations, the determinacy conditions."""
    def go():
        if (file is None) == (delta_n is None):
            raise InputError("give a relation file or --delta N")
        if depth < 1:
            raise InputError("--depth must be at least 1")
        if not hypergroupoid and i is None:
            raise InputError("--i is required unless --hypergroupoid is given")
        t0 = time.perf_counter()
        if file is not None:
            R, _, _ = read_relation(file)
            nn = R.n if n is None else n
            if nn != R.n:
                raise InputError(f"--n {nn} does not match arity {R.arity}")
            C = verify.relation_complex(R, nn + depth)
            source = str(file)
        else:
            if n is None:
                raise InputError("--n is required with --delta")
            nn = n
            C = verify.delta_complex(delta_n, nn + depth)
            source = f"delta[{delta_n}]"
        if hypergroupoid:
            rep = verify.check_hypergroupoid(C, nn, depth, sample=sample, jobs=jobs)
        else:
            if not 0 <= i <= nn + 1:
                raise InputError(f"--i must lie in [0,{nn + 1}]")
            rep = verify.check_truncated_composer(C, nn, i, depth, sample=sample, jobs=jobs)
        report = {"schema": SCHEMA, "command": "verify",
                  "args": {"source": source, "n": nn, "i": i, "depth": depth,
                           "hypergroupoid": hypergroupoid, "sample": sample},
                  "status": rep["status"],
                  "records": [_record(r) for r in rep["records"]]}
        if timing:
            report["timing"] = round(time.perf_counter() - t0, 4)
        emit(report, fmt, _verify_text)
        return rep["status"] == "pass"
    ok = _run(go)
    sys.exit(0 if ok else 1)


def _record(r) -> dict:
    out = {"name": r["check"] + (f" {r['condition']}" if "condition" in r else ""),
           "dimension": r["dimension"], "slot": r.get("slot"), "status": r["status"],
           "counts": r["counts"], "witnesses": r["witnesses"]}
    return out


def _verify_text(rep) -> str:
    lines = [f"status: {rep['status']}"]
    for r in rep["records"]:
        counts = " ".join(f"{k}={v}" for k, v in r["counts"].items())
        slot = "-" if r["slot"] is None else r["slot"]
        lines.append(f"{r['status']:<4}  {r['name']:<20} dim={r['dimension']} slot={slot}  {counts}")
    return "\n".join(lines)


# -- count / model -------------------------------------------------------------------

@main.command()
@click.argument("n", type=int)
@click.option("--generate", is_flag=True, help="Also build the complex and compare (n <= 6).")
@format_option
def count(n, generate, fmt):
    """Simplex counts for the complex of one n-simplex."""
    def go():
        if n < 1:
            raise InputError("n must be at least 1")
        report = {"schema": SCHEMA, "command": "count", "n": n,
                  "total": verify.simplex_count(n),
                  "nondegenerate": 2 ** (n + 1) - 1,
                  "by_dimension": [math.comb(n + m + 1, m + 1) for m in range(n + 1)]}
        if generate:
            if n > 6:
                raise InputError("--generate is limited to n <= 6")
            from .scomplex import minimal_simplex
            C = verify.generate_complex(minimal_simplex(Relation.from_rows([tuple(range(n + 1))])))
            report["generated"] = C.total()
            report["generated_nondegenerate"] = C.nondegenerate_count()
        emit(report, fmt)
    _run(go)


@main.command()
@click.argument("n", type=int)
@click.argument("blocks", type=int)
@click.option("-o", "--output", default=None)
@format_option
def model(n, blocks, output, fmt):
    """Hypergroupoid block model, self-checked before it is written."""
    def go():
        R = modelgen.hypergroupoid_blocks(n, blocks)
        ok0, _ = modelgen.model_check_overlap(R, "i0")
        ok1, _ = modelgen.model_check_overlap(R, "in1")
        failing = {}
        for i in range(n + 2):
            for c, bad in modelgen.check_conditions(R, modelgen.required_conditions(n, i)).items():
                if bad:
                    failing[c] = len(bad)
        ok = ok0 and ok1 and not failing
        rel = relation_to_json(R)
        if output and ok:
            Path(output).write_text(json.dumps(rel, indent=2) + "\n", encoding="utf-8")
        report = dict(rel)
        report.update({"command": "model", "n": n, "blocks": blocks,
                       "stride": modelgen.block_stride(n),
                       "self_check": {"overlap_i0": ok0, "overlap_in1": ok1,
                                      "failing_conditions": failing,
                                      "status": "pass" if ok else "fail"}})
        emit(report, fmt, _model_text)
        return ok
    ok = _run(go)
    sys.exit(0 if ok else 1)


def _model_text(rep) -> str:
    lines = ["(" + ",".join(map(str, r)) + ")" for r in rep["rows"]]
    lines.append(f"self-check: {rep['self_check']['status']}")
    return "\n".join(lines)


# -- delta tools ------------------------------------------------------------------------

@main.group("delta")
def delta_group():
    """Simplex-category tools."""


@delta_group.command("complement")
@click.argument("text")
@format_option
def d_complement(text, fmt):
    """Complement of a vertex function, e.g. "0,1,1,2 -> [2]"."""
    def go():
        if "->" not in text:
            raise InputError("expected 'values -> [k+1]'")
        vals, cod = text.split("->")
        cod = cod.strip().strip("[]")
        lam = delta.MonotoneMap(_ints(vals), int(cod) + 1)
        mu = delta.complement(lam)
        emit({"schema": SCHEMA, "command": "delta complement",
              "lam": list(lam.values), "lam_cod": lam.cod_size - 1,
              "lam_sharp": list(delta.sharp(lam).values),
              "mu": list(mu.values), "mu_cod": mu.cod_size - 1,
              "mu_sharp": list(delta.sharp(mu).values)}, fmt)
    _run(go)


@delta_group.command("sum-split")
@click.argument("g")
@click.argument("g2")
@format_option
def d_sum_split(g, g2, fmt):
    """Split two covering strict maps through their common image."""
    def go():
        a, b = _ints(g), _ints(g2)
        cod = max(a + b) + 1
        f, f2, h = delta.sum_split(delta.StrictMap(a, cod), delta.StrictMap(b, cod))
        emit({"schema": SCHEMA, "command": "delta sum-split", "g": list(a), "g2": list(b),
              "f": list(f.values), "f2": list(f2.values), "h": list(h.values)}, fmt)
    _run(go)


@delta_group.command("histogram")
@click.argument("g")
@click.option("--cod", type=int, required=True, help="Top of the codomain [cod].")
@format_option
def d_histogram(g, cod, fmt):
    """Rebuild the complementary map from a histogram."""
    def go():
        gm = delta.MonotoneMap(_ints(g), cod + 1)
        hg = delta.histogram(gm)
        f = delta.reconstruct(hg)
        emit({"schema": SCHEMA, "command": "delta histogram", "g": list(gm.values),
              "histogram": list(hg), "f": list(f.values), "f_cod": f.cod_size - 1}, fmt)
    _run(go)


@delta_group.command("comb-trio")
@click.argument("mu")
@click.argument("lam")
@click.argument("mu2")
@click.argument("lam2")
@click.option("--k", type=int, required=True)
@format_option
def d_comb_trio(mu, lam, mu2, lam2, k, fmt):
    """All comb-trios with the given X/A and X/A2 complementary pairs."""
    def go():
        lm, lm2 = _ints(lam), _ints(lam2)
        p1 = (delta.MonotoneMap(_ints(mu), len(lm) + 1), delta.MonotoneMap(lm, k + 2))
        p2 = (delta.MonotoneMap(_ints(mu2), len(lm2) + 1), delta.MonotoneMap(lm2, k + 2))
        trios = delta.comb_trio_from_pairs(p1, p2)
        emit({"schema": SCHEMA, "command": "delta comb-trio",
              "trios": [{"m": t.m, "X": list(t.X), "A": list(t.A), "A2": list(t.A2)} for t in trios]},
             fmt)
    _run(go)


@delta_group.command("partition")
@click.argument("blocks")
@click.option("--sub", default=None, help="Block indices of a subpartition, e.g. 0,2.")
@format_option
def d_partition(blocks, sub, fmt):
    """Ordered partition from blocks like "1,2,8,10|4,12,14,16|..."."""
    def go():
        bl = tuple(_ints(b) for b in blocks.split("|"))
        m = sum(len(b) for b in bl) - 1
        P = delta.OrderedPartition(m, bl)
        out = {"schema": SCHEMA, "command": "delta partition", "m": P.m, "n": P.n,
               "blocks": [list(b) for b in P.blocks],
               "h0": [list(P.h(0, i).values) for i in range(1, P.n + 1)]}
        if sub:
            S = delta.subpartition(P, _ints(sub))
            out["sub"] = {"m": S.m, "blocks": [list(b) for b in S.blocks]}
        emit(out, fmt)
    _run(go)


@delta_group.command("partition-from-h")
@click.option("--k", "ks", required=True, help="Block sizes minus one, e.g. 2,1,1,2.")
@click.option("--h", "hs", multiple=True, required=True, help="h_{0,i} values, one per i.")
@format_option
def d_partition_from_h(ks, hs, fmt):
    """Build an ordered partition containing the given h_{0,i}."""
    def go():
        k = _ints(ks)
        maps = [delta.StrictMap(_ints(h), k[0] + k[t] + 2) for t, h in enumerate(hs, start=1)]
        P = delta.partition_from_h(k, maps)
        emit({"schema": SCHEMA, "command": "delta partition-from-h", "m": P.m,
              "blocks": [list(b) for b in P.blocks]}, fmt)
    _run(go)


@delta_group.command("rules-closure")
@click.argument("conditions", nargs=-1, required=True)
@format_option
def d_rules_closure(conditions, fmt):
    """Close determinacy conditions like "2,5.7" under the three rules."""
    def go():
        cs = [modelgen.DetCondition.parse(c) for c in conditions]
        closed = sorted(modelgen.rules_closure(cs), key=lambda c: (-c.m, c.p, c.q))
        levels = {}
        for c in closed:
            levels.setdefault(str(c.m), []).append(str(c))
        emit({"schema": SCHEMA, "command": "delta rules-closure",
              "input": [str(c) for c in cs], "closure": [str(c) for c in closed],
              "by_dimension": levels}, fmt)
    _run(go)


@delta_group.command("operator")
@click.argument("word")
@click.option("--dim", type=int, required=True)
@format_option
def d_operator(word, dim, fmt):
    """The monotone map of an operator word such as s_3d_1d_4."""
    def go():
        g = delta.operator_map(word, dim)
        faces, degens = delta.standard_form(g)
        emit({"schema": SCHEMA, "command": "delta operator", "word": word, "dim": dim,
              "map": list(g.values), "cod": g.cod_size - 1,
              "faces": list(faces), "degeneracies": list(degens)}, fmt)
    _run(go)


if __name__ == "__main__":
    main()
