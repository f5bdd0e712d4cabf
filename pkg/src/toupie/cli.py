"""Command-line front end.

Reads a presentation from a JSON file, runs one computation or consistency
check, and prints a deterministic report in text or JSON form.  Exit status:
0 for a clean run, 1 when a check finds a violation or a dual construction is
refused, 2 for usage or input errors.

Input schema::

    {
      "vertices": ["0", "m", "w"],
      "arrows": [{"name": "a1", "src": "0", "dst": "m"}, ...],
      "relations": [[{"coeff": "1", "path": ["a1", "a2"]},
                     {"coeff": "-1/2", "path": ["b1", "b2"]}], ...],
      "order": ["a1", "b1"]
    }

`order` is optional and ranks branches of equal length by first arrow.
Coefficients are exact rationals written as ``"n"`` or ``"n/d"``.
"""

from __future__ import annotations

import argparse
import difflib
import hashlib
import json
import os
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path as FilePath
from typing import Optional

from . import __version__
from .ainf import (
    ExtAlgebra,
    TorCoalgebra,
    algebra_table,
    coalgebra_table,
    stasheff_algebra_defects,
    stasheff_coalgebra_defects,
)
from .anick import AnickResolution, betti_numbers
from .chains import ChainGraph
from .duality import (
    HypothesesError,
    double_dual,
    gr_algebra,
    ideal_equal,
    yoneda_presentation,
)
from .morse import BarSDR
from .presentation import (
    FormalSum,
    Presentation,
    Quiver,
    branches_of,
    validate_toupie,
)
from .random_presentations import random_presentation
from .rewriting import build_groebner

_COMMAND_NAMES = (
    "validate",
    "branches",
    "tips",
    "chains",
    "betti",
    "resolution-check",
    "sdr-check",
    "tor-coalgebra",
    "ext-products",
    "stasheff",
    "yoneda",
    "gr",
    "double-dual",
    "oracle-diff",
)

_RATIONAL = re.compile(r"^-?\d+(?:/[1-9]\d*)?$")


class InputError(Exception):
    """Malformed input file or job description; maps to exit status 2."""


@dataclass(frozen=True)
class JobSpec:
    """One resolved invocation: what to read, what to run, how to report."""

    input_path: str
    command: str
    degree: int = 5
    arity: int = 5
    format: str = "text"
    golden: Optional[str] = None
    seed: Optional[int] = None

    def __post_init__(self):
        if self.command not in _COMMAND_NAMES:
            raise ValueError(f"unknown command {self.command!r}")
        if self.degree < 1:
            raise ValueError("degree bound must be >= 1")
        if self.arity < 1:
            raise ValueError("arity bound must be >= 1")
        if self.format not in ("text", "json"):
            raise ValueError(f"unknown format {self.format!r}")


# ---------------------------------------------------------------------------
# input parsing


def _expect(cond, where: str, msg: str):
    if not cond:
        raise InputError(f"{where}: {msg}")


def parse_presentation(data, where: str = "input") -> Presentation:
    """Build a Presentation from decoded JSON, annotating errors with the
    path of the offending element (e.g. ``file.json.relations[1][0].coeff``)."""
    _expect(isinstance(data, dict), where, "expected a JSON object")
    extra = sorted(set(data) - {"vertices", "arrows", "relations", "order"})
    _expect(not extra, where, f"unknown keys {extra}")
    for key in ("vertices", "arrows", "relations"):
        _expect(key in data, where, f"missing key {key!r}")

    verts = data["vertices"]
    _expect(isinstance(verts, list) and verts, f"{where}.vertices", "expected a nonempty list")
    for i, v in enumerate(verts):
        _expect(isinstance(v, str), f"{where}.vertices[{i}]", "expected a string")
    _expect(len(set(verts)) == len(verts), f"{where}.vertices", "duplicate vertex names")

    raw_arrows = data["arrows"]
    _expect(isinstance(raw_arrows, list), f"{where}.arrows", "expected a list")
    arrows = []
    seen = set()
    for i, item in enumerate(raw_arrows):
        loc = f"{where}.arrows[{i}]"
        _expect(isinstance(item, dict), loc, "expected an object")
        extra = sorted(set(item) - {"name", "src", "dst"})
        _expect(not extra, loc, f"unknown keys {extra}")
        for key in ("name", "src", "dst"):
            _expect(key in item, loc, f"missing key {key!r}")
            _expect(isinstance(item[key], str), f"{loc}.{key}", "expected a string")
        for key in ("src", "dst"):
            _expect(item[key] in set(verts), f"{loc}.{key}", f"unknown vertex {item[key]!r}")
        _expect(item["name"] not in seen, f"{loc}.name", f"duplicate arrow name {item['name']!r}")
        seen.add(item["name"])
        arrows.append((item["name"], item["src"], item["dst"]))
    quiver = Quiver(tuple(verts), tuple(arrows))

    raw_rels = data["relations"]
    _expect(isinstance(raw_rels, list), f"{where}.relations", "expected a list")
    relations = []
    for i, terms in enumerate(raw_rels):
        loc = f"{where}.relations[{i}]"
        _expect(isinstance(terms, list) and terms, loc, "expected a nonempty list of terms")
        rel = FormalSum()
        for j, term in enumerate(terms):
            tloc = f"{loc}[{j}]"
            _expect(isinstance(term, dict), tloc, "expected an object")
            extra = sorted(set(term) - {"coeff", "path"})
            _expect(not extra, tloc, f"unknown keys {extra}")
            for key in ("coeff", "path"):
                _expect(key in term, tloc, f"missing key {key!r}")
            coeff = term["coeff"]
            _expect(
                isinstance(coeff, str) and _RATIONAL.match(coeff),
                f"{tloc}.coeff",
                'expected an exact rational written "n" or "n/d"',
            )
            names = term["path"]
            _expect(
                isinstance(names, list) and names,
                f"{tloc}.path",
                "expected a nonempty list of arrow names",
            )
            for k, nm in enumerate(names):
                _expect(isinstance(nm, str), f"{tloc}.path[{k}]", "expected a string")
                _expect(nm in quiver.arrow_by_name, f"{tloc}.path[{k}]", f"unknown arrow {nm!r}")
            try:
                path = quiver.path(*names)
            except ValueError as err:
                raise InputError(f"{tloc}.path: {err}") from err
            rel.add_term(path, Fraction(coeff))
        _expect(not rel.is_zero, loc, "terms cancel to zero")
        relations.append(rel)

    order = data.get("order", [])
    _expect(isinstance(order, list), f"{where}.order", "expected a list")
    for i, nm in enumerate(order):
        _expect(
            isinstance(nm, str) and nm in quiver.arrow_by_name,
            f"{where}.order[{i}]",
            f"unknown arrow {nm!r}",
        )
    return Presentation(quiver, tuple(relations), order=tuple(order))


# ---------------------------------------------------------------------------
# serialization


def relation_payload(rel: FormalSum) -> list:
    return [{"coeff": str(c), "path": list(p.names)} for p, c in rel.items()]


def presentation_payload(pres) -> dict:
    """Schema-shaped dict for a Presentation or a derived presentation; the
    output can be fed back through ``parse_presentation`` unchanged."""
    q = pres.quiver
    out = {
        "vertices": list(q.vertices),
        "arrows": [{"name": a.name, "src": a.src, "dst": a.dst} for a in q.arrows],
        "relations": [relation_payload(r) for r in pres.relations],
    }
    if pres.order:
        out["order"] = list(pres.order)
    return out


def chain_payload(word) -> list:
    return [list(letter.names) for letter in word]


def _tensor_terms(fs: FormalSum) -> list:
    return [
        {"coeff": str(c), "factors": [chain_payload(w) for w in key]}
        for key, c in fs.items()
    ]


def _chain_terms(fs: FormalSum) -> list:
    return [{"coeff": str(c), "chain": chain_payload(w)} for w, c in fs.items()]


def build_report(job: JobSpec, digest: str, status: str, result: dict) -> dict:
    return {
        "tool": {"name": "toupie", "version": __version__},
        "command": job.command,
        "input": {"path": job.input_path, "sha256": digest},
        "parameters": {"degree": job.degree, "arity": job.arity, "seed": job.seed},
        "status": status,
        "result": result,
    }


def render_report(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    params = report["parameters"]
    lines = [
        "toupie " + report["tool"]["version"],
        "command: " + report["command"],
        "input: {} sha256={}".format(report["input"]["path"], report["input"]["sha256"]),
        "parameters: " + " ".join(f"{k}={params[k]}" for k in sorted(params)),
        "status: " + report["status"],
    ]
    result = report["result"]
    for key in sorted(result):
        lines.append(f"{key}: {json.dumps(result[key], sort_keys=True)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands


def _groebner(pres: Presentation):
    validate_toupie(pres.quiver)
    return build_groebner(pres)


def cmd_validate(job: JobSpec, pres: Presentation):
    source, sink = validate_toupie(pres.quiver)
    gd = build_groebner(pres)
    result = {
        "source": source,
        "sink": sink,
        "vertices": len(pres.quiver.vertices),
        "arrows": len(pres.quiver.arrows),
        "branch_lengths": sorted((len(b) for b in branches_of(pres.quiver)), reverse=True),
        "relations": {"monomial": len(gd.mono_tips), "nonmonomial": len(gd.nonmono_rows)},
        "dimension": gd.dim,
    }
    return "ok", result


def cmd_branches(job: JobSpec, pres: Presentation):
    gd = _groebner(pres)
    in_nonmono = {b for _, rel in gd.nonmono_rows for b in rel.terms}
    rows = []
    for b in sorted(branches_of(pres.quiver), key=pres.branch_order_key()):
        classes = []
        if len(b) == 1:
            classes.append("arrow")
        if any(b.contains(t) for t in gd.mono_tips):
            classes.append("monomial")
        if b in in_nonmono:
            classes.append("nonmonomial")
        if not classes:
            classes.append("plain")
        rows.append({"arrows": list(b.names), "length": len(b), "classes": classes})
    return "ok", {"branches": rows}


def cmd_tips(job: JobSpec, pres: Presentation):
    gd = _groebner(pres)
    result = {
        "monomial": [list(t.names) for t in gd.mono_tips],
        "nonmonomial": [
            {"tip": list(t.names), "relation": relation_payload(rel)}
            for t, rel in gd.nonmono_rows
        ],
        "dimension": gd.dim,
    }
    return "ok", result


def cmd_chains(job: JobSpec, pres: Presentation):
    gd = _groebner(pres)
    cg = ChainGraph(gd)
    by_degree, counts = {}, []
    for d in range(job.degree + 1):
        layer = cg.chains(d)
        counts.append(len(layer))
        by_degree[str(d)] = [chain_payload(w) for w in layer]
        if not layer:
            break
    return "ok", {"counts": counts, "by_degree": by_degree}


def cmd_betti(job: JobSpec, pres: Presentation):
    gd = _groebner(pres)
    ranks = betti_numbers(gd, job.degree)
    # chains nest, so past the first empty degree every rank stays zero
    while len(ranks) > 1 and ranks[-1] == 0 and ranks[-2] == 0:
        ranks.pop()
    return "ok", {"betti": ranks}


def cmd_resolution_check(job: JobSpec, pres: Presentation):
    gd = _groebner(pres)
    rep = AnickResolution(gd).check(job.degree)
    ok = rep["square_zero"] and rep["augmented"] and rep["minimal"]
    result = {
        "max_degree": job.degree,
        "square_zero": rep["square_zero"],
        "augmented": rep["augmented"],
        "minimal": rep["minimal"],
        "betti": betti_numbers(gd, job.degree),
        "violations": rep["violations"],
    }
    return ("ok" if ok else "violation"), result


def cmd_sdr_check(job: JobSpec, pres: Presentation):
    gd = _groebner(pres)
    bad = BarSDR(gd).verify(job.degree)
    return ("ok" if not bad else "violation"), {
        "max_degree": job.degree,
        "violations": bad,
    }


def cmd_tor_coalgebra(job: JobSpec, pres: Presentation):
    gd = _groebner(pres)
    tor = TorCoalgebra(gd)
    table = coalgebra_table(tor, job.arity)
    out = {}
    for n in range(2, job.arity + 1):
        rows = []
        for chain in tor.all_chains():
            fs = table.get(n, {}).get(chain)
            if fs is None or fs.is_zero:
                continue
            rows.append({"chain": chain_payload(chain), "terms": _tensor_terms(fs)})
        out[str(n)] = rows
    return "ok", {"coproducts": out}


def _product_rows(ext: ExtAlgebra, table: dict, n_max: int) -> dict:
    out = {}
    for n in range(2, n_max + 1):
        rows = []
        for tup in ext.composable_tuples(n):
            fs = table.get(n, {}).get(tup)
            if fs is None or fs.is_zero:
                continue
            rows.append({"args": [chain_payload(w) for w in tup], "terms": _chain_terms(fs)})
        out[str(n)] = rows
    return out


def cmd_ext_products(job: JobSpec, pres: Presentation):
    gd = _groebner(pres)
    ext = ExtAlgebra(TorCoalgebra(gd))
    table = algebra_table(ext, job.arity)
    return "ok", {"products": _product_rows(ext, table, job.arity)}


def _stasheff_payload(gd, arity: int) -> dict:
    tor = TorCoalgebra(gd)
    ext = ExtAlgebra(tor)
    ctab = coalgebra_table(tor, arity)
    atab = algebra_table(ext, arity)
    cbad = stasheff_coalgebra_defects(ctab, tor.all_chains(), arity)
    tuples = {n: ext.composable_tuples(n) for n in range(2, arity + 1)}
    abad = stasheff_algebra_defects(atab, tuples, arity)
    return {
        "coalgebra_defects": [
            {"arity": n, "chain": chain_payload(c), "defect": _tensor_terms(fs)}
            for n, c, fs in cbad
        ],
        "algebra_defects": [
            {"arity": n, "args": [chain_payload(w) for w in tup], "defect": _chain_terms(fs)}
            for n, tup, fs in abad
        ],
    }


def _subjects(job: JobSpec, gd) -> list:
    out = [("input", gd)]
    if job.seed is not None:
        out.append((f"seed-{job.seed}", build_groebner(random_presentation(job.seed))))
    return out


def cmd_stasheff(job: JobSpec, pres: Presentation):
    gd = _groebner(pres)
    result, clean = {}, True
    for label, g in _subjects(job, gd):
        payload = _stasheff_payload(g, job.arity)
        clean = clean and not payload["coalgebra_defects"] and not payload["algebra_defects"]
        result[label] = payload
    return ("ok" if clean else "violation"), result


def _refusal_payload(gd, err: HypothesesError, job: JobSpec) -> dict:
    """Refusals still ship the operation tables so the structure that broke
    the construction stays inspectable."""
    ext = ExtAlgebra(TorCoalgebra(gd))
    table = algebra_table(ext, job.arity)
    return {"reasons": list(err.reasons), "products": _product_rows(ext, table, job.arity)}


def cmd_yoneda(job: JobSpec, pres: Presentation):
    gd = _groebner(pres)
    try:
        dual = yoneda_presentation(pres)
    except HypothesesError as err:
        return "refused", _refusal_payload(gd, err, job)
    return "ok", {
        "provenance": dual.provenance,
        "presentation": presentation_payload(dual),
    }


def cmd_gr(job: JobSpec, pres: Presentation):
    gd = _groebner(pres)
    graded = gr_algebra(pres)
    gdim = build_groebner(graded.presentation()).dim
    result = {
        "provenance": graded.provenance,
        "presentation": presentation_payload(graded),
        "dimension": {"input": gd.dim, "gr": gdim},
    }
    return ("ok" if gdim == gd.dim else "violation"), result


def cmd_double_dual(job: JobSpec, pres: Presentation):
    gd = _groebner(pres)
    try:
        dd = double_dual(pres)
    except HypothesesError as err:
        return "refused", _refusal_payload(gd, err, job)
    graded = gr_algebra(pres)
    eq = ideal_equal(dd, graded)
    result = {
        "matches_gr": eq,
        "presentation": presentation_payload(dd),
        "gr_presentation": presentation_payload(graded),
    }
    return ("ok" if eq else "violation"), result


def cmd_oracle_diff(job: JobSpec, pres: Presentation):
    gd = _groebner(pres)
    result, clean = {}, True
    for label, g in _subjects(job, gd):
        tor = TorCoalgebra(g)
        chains = tor.all_chains()
        mismatches = []
        for n in range(2, job.arity + 1):
            for chain in chains:
                closed = tor.closed_delta(n, chain)
                transfer = tor.transfer_delta(n, chain)
                if closed != transfer:
                    mismatches.append(
                        {
                            "arity": n,
                            "chain": chain_payload(chain),
                            "closed": _tensor_terms(closed),
                            "transfer": _tensor_terms(transfer),
                        }
                    )
        sdr_bad = BarSDR(g).verify(job.degree)
        clean = clean and not mismatches and not sdr_bad
        result[label] = {
            "chains_checked": len(chains),
            "coproduct_mismatches": mismatches,
            "sdr_violations": sdr_bad,
        }
    return ("ok" if clean else "violation"), result


_HANDLERS = {
    "validate": cmd_validate,
    "branches": cmd_branches,
    "tips": cmd_tips,
    "chains": cmd_chains,
    "betti": cmd_betti,
    "resolution-check": cmd_resolution_check,
    "sdr-check": cmd_sdr_check,
    "tor-coalgebra": cmd_tor_coalgebra,
    "ext-products": cmd_ext_products,
    "stasheff": cmd_stasheff,
    "yoneda": cmd_yoneda,
    "gr": cmd_gr,
    "double-dual": cmd_double_dual,
    "oracle-diff": cmd_oracle_diff,
}


# ---------------------------------------------------------------------------
# driver


def _check_golden(path_str: str, out_bytes: bytes) -> int:
    golden = FilePath(path_str)
    if not golden.exists():
        golden.write_bytes(out_bytes)
        print(f"toupie: golden file written: {path_str}", file=sys.stderr)
        return 0
    want = golden.read_bytes()
    if want == out_bytes:
        return 0
    diff = difflib.unified_diff(
        want.decode("utf-8", "replace").splitlines(keepends=True),
        out_bytes.decode("utf-8", "replace").splitlines(keepends=True),
        fromfile=path_str,
        tofile="current",
    )
    sys.stderr.writelines(diff)
    print(f"toupie: report differs from golden file {path_str}", file=sys.stderr)
    return 1


def _run(job: JobSpec) -> int:
    try:
        raw = FilePath(job.input_path).read_bytes()
    except OSError as err:
        raise InputError(f"{job.input_path}: {err.strerror or err}") from err
    digest = hashlib.sha256(raw).hexdigest()
    try:
        data = json.loads(raw.decode("utf-8"))
    except UnicodeDecodeError as err:
        raise InputError(f"{job.input_path}: not UTF-8 ({err})") from err
    except json.JSONDecodeError as err:
        raise InputError(f"{job.input_path}:{err.lineno}:{err.colno}: {err.msg}") from err
    pres = parse_presentation(data, where=job.input_path)

    try:
        status, result = _HANDLERS[job.command](job, pres)
    except ValueError as err:
        # domain checks (shape validation, duplicate relations, ...) land here
        status, result = "violation", {"reason": str(err)}

    report = build_report(job, digest, status, result)
    out = render_report(report, job.format)
    sys.stdout.write(out)
    code = 0 if status == "ok" else 1
    if job.golden is not None:
        code = max(code, _check_golden(job.golden, out.encode("utf-8")))
    return code


def _resolve(flag_value, env_name: str, default, convert=None):
    if flag_value is not None:
        return flag_value
    raw = os.environ.get(env_name)
    if raw is None:
        return default
    if convert is None:
        return raw
    try:
        return convert(raw)
    except ValueError as err:
        raise InputError(f"{env_name}={raw!r}: expected an integer") from err


def make_job(args: argparse.Namespace) -> JobSpec:
    try:
        return JobSpec(
            input_path=args.input,
            command=args.command,
            degree=_resolve(args.degree, "TOUPIE_DEGREE", 5, int),
            arity=_resolve(args.arity, "TOUPIE_ARITY", 5, int),
            format=_resolve(args.format, "TOUPIE_FORMAT", "text"),
            golden=_resolve(args.golden, "TOUPIE_GOLDEN", None),
            seed=_resolve(args.seed, "TOUPIE_SEED", None, int),
        )
    except ValueError as err:
        raise InputError(str(err)) from err


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="toupie",
        description="Exact homological computations for single-source, single-sink quiver presentations.",
    )
    parser.add_argument("command", metavar="COMMAND", help="one of: " + ", ".join(_COMMAND_NAMES))
    parser.add_argument("input", metavar="INPUT", help="presentation JSON file")
    parser.add_argument(
        "--degree", type=int, default=None,
        help="homological degree bound (default 5; env TOUPIE_DEGREE)",
    )
    parser.add_argument(
        "--arity", type=int, default=None,
        help="operation arity bound (default 5; env TOUPIE_ARITY)",
    )
    parser.add_argument(
        "--format", choices=("text", "json"), default=None,
        help="report format (default text; env TOUPIE_FORMAT)",
    )
    parser.add_argument(
        "--golden", default=None,
        help="golden report file: compare byte-for-byte, write it if absent (env TOUPIE_GOLDEN)",
    )
    parser.add_argument(
        "--seed", type=int, default=None,
        help="also exercise the generated presentation for this seed where supported (env TOUPIE_SEED)",
    )
    args = parser.parse_args(argv)
    try:
        return _run(make_job(args))
    except InputError as err:
        print(f"toupie: error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
