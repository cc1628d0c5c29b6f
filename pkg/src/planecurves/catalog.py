"""Curated examples with expected invariants, and a verifier that reruns each
through the full pipeline."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field, fields
from fractions import Fraction
from importlib import resources
from math import comb
from typing import Optional

from .arrangements import (LineSet, arrangement_report, fermat_arrangement, finite_plane_lines,
                           parse_line_file)
from .cubic_group import NodalCubic, verify_construction
from .field_arith import DEFAULT_EXT_BOUND, gf, parse_field
from .invariants import (CurveReport, build_report, format_sequence, h_constant, parse_sequence,
                         sigma_k)
from .polynomial import implicitize, parse_poly, random_poly
from .resolution import analyze_curve
from .sequences import homaloidal_reduce

KINDS = ("curve", "finite_plane", "fermat", "lines", "nodal", "cubic", "cremona", "sequence")
_MULTI = ("source", "description", "anchor", "expect_flags")


class CatalogError(ValueError):
    pass


@dataclass
class CatalogEntry:
    id: str
    kind: str
    source: list
    field: Optional[str] = None
    primes: Optional[list] = None
    components: Optional[int] = None
    expect_sequence: Optional[str] = None
    expect_H: Optional[Fraction] = None
    expect_flags: dict = dc_field(default_factory=dict)
    description: str = ""
    anchor: str = ""


@dataclass
class EntryResult:
    id: str
    passed: bool
    mismatches: list
    observed: dict
    anchor: str = ""
    error: Optional[str] = None


# --- parsing ------------------------------------------------------------

def _parse_flags(text: str) -> dict:
    out = {}
    for tok in text.split():
        key, sep, val = tok.partition("=")
        if not sep:
            raise CatalogError(f"flag {tok!r} is not key=value")
        out[key] = val
    return out


def _kv(words) -> dict:
    return _parse_flags(" ".join(words))


def _finish(raw: dict, lineno: int) -> CatalogEntry:
    try:
        kind = raw["kind"][0]
        ident = raw["id"][0]
    except KeyError as exc:
        raise CatalogError(f"entry ending at line {lineno} lacks {exc}") from None
    if kind not in KINDS:
        raise CatalogError(f"{ident}: unknown kind {kind!r}")
    unknown = set(raw) - {f.name for f in fields(CatalogEntry)}
    if unknown:
        raise CatalogError(f"{ident}: unknown keys {sorted(unknown)}")
    e = CatalogEntry(id=ident, kind=kind, source=raw.get("source", []))
    e.field = raw["field"][0] if "field" in raw else None
    if "primes" in raw:
        e.primes = [int(p) for p in raw["primes"][0].replace(",", " ").split()]
    if "components" in raw:
        e.components = int(raw["components"][0])
    if "expect_sequence" in raw:
        e.expect_sequence = raw["expect_sequence"][0]
    if "expect_H" in raw:
        e.expect_H = Fraction(raw["expect_H"][0])
    e.expect_flags = _parse_flags(" ".join(raw.get("expect_flags", [])))
    e.description = " ".join(raw.get("description", []))
    e.anchor = " ".join(raw.get("anchor", []))
    _validate(e)
    return e


def _validate(e: CatalogEntry):
    """Expected data must be self-consistent."""
    if e.expect_sequence is not None and e.expect_H is not None:
        seq = parse_sequence(e.expect_sequence)
        if seq.r and h_constant(seq) != e.expect_H:
            raise CatalogError(f"{e.id}: expect_H {e.expect_H} does not match {e.expect_sequence}")


def parse_catalog(text: str) -> list:
    entries, raw, last = [], None, None
    for n, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0].rstrip() if not line.lstrip().startswith("#") else ""
        if not body.strip():
            continue
        if body[0].isspace():
            if raw is None or last is None:
                raise CatalogError(f"line {n}: continuation without a key")
            raw[last].append(body.strip())
            continue
        key, sep, val = body.partition(":")
        key = key.strip()
        if not sep:
            raise CatalogError(f"line {n}: expected 'key: value'")
        if key == "id":
            if raw is not None:
                entries.append(_finish(raw, n))
            raw = {}
        elif raw is None:
            raise CatalogError(f"line {n}: field before the first 'id:'")
        raw[key] = [val.strip()] if val.strip() else []
        last = key
    if raw is not None:
        entries.append(_finish(raw, len(text.splitlines())))
    ids = [e.id for e in entries]
    if len(set(ids)) != len(ids):
        raise CatalogError("duplicate entry ids")
    return entries


def default_catalog_text() -> str:
    return resources.files("planecurves").joinpath("data/catalog.txt").read_text()


def load_catalog(path=None) -> list:
    if path is None:
        return parse_catalog(default_catalog_text())
    with open(path) as fh:
        return parse_catalog(fh.read())


# --- generators -----------------------------------------------------------

def random_nodal_curve(d: int, field=None, seed: int = 0, retries: int = 5,
                       ext_bound: int = DEFAULT_EXT_BOUND):
    """Implicitize random degree-d maps P^1 -> P^2 until the image has exactly
    C(d-1,2) ordinary nodes.  Returns ``(F, report, attempts)``; the last
    attempt is returned even when no trial was generic."""
    K = field or gf(101)
    nodes = comb(d - 1, 2)
    out = None
    for attempt in range(1, retries + 1):
        rng = random.Random(seed * 7919 + attempt)
        forms = [random_poly(K, ("s", "t"), d, rng) for _ in range(3)]
        try:
            F, e = implicitize(*forms, seed=seed)
        except ValueError:
            continue
        if e != 1 or F.degree() != d:
            continue
        rep = analyze_curve(F, ext_bound=ext_bound, seed=seed, components=1)
        out = (F, rep, attempt)
        if rep.sequence.mults == [2] * nodes and rep.sequence.actual_mults == [2] * nodes:
            return out
    if out is None:
        raise ValueError(f"no nondegenerate degree-{d} map in {retries} tries")
    return out


# --- observation ------------------------------------------------------------

def _render(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def report_flags(rep: CurveReport) -> dict:
    seq = rep.sequence
    obs = {
        "sequence": format_sequence(seq),
        "H": _render(rep.H),
        "H_actual": _render(rep.H_actual),
        "genus": _render(rep.genus_sum),
        "euler": _render(rep.euler_normalization),
        "delta": _render(rep.delta_total),
        "mu": _render(rep.mu_total),
        "actual": str(len(seq.actual_mults)),
        "r": str(seq.r),
    }
    for k, v in rep.sigma.items():
        obs[f"sigma{k}"] = str(v)
    for name, chk in rep.checks.items():
        obs[f"check:{name}"] = chk.status
        if chk.margin is not None:
            obs[f"margin:{name}"] = str(chk.margin)
    if rep.records:
        obs["ordinary"] = _render(all(r.ordinary for r in rep.records))
        obs["points"] = "|".join(sorted(str(r.point) for r in rep.records))
        obs["delta_each"] = "|".join(sorted({str(r.delta) for r in rep.records}))
        obs["mu_each"] = "|".join(sorted({str(r.milnor) for r in rep.records}))
        by_m = {}
        for r in rep.records:
            by_m.setdefault(r.mult_sequence_at_point[0], set()).add(r.branches)
        for m, bs in by_m.items():
            obs[f"branches@{m}"] = "|".join(str(b) for b in sorted(bs))
    if rep.field_used is not None:
        obs["field"] = str(rep.field_used)
    for k, v in rep.info.items():
        if isinstance(v, (bool, str, int)):
            obs[f"info:{k}"] = _render(v)
    return obs


def _same(expected: str, observed: Optional[str]) -> bool:
    if observed is None:
        return False
    if "|" in expected or "|" in observed:
        return sorted(expected.split("|")) == sorted(observed.split("|"))
    try:
        return Fraction(expected) == Fraction(observed)
    except (ValueError, ZeroDivisionError):
        return expected == observed


def _arith_consistency(rep: CurveReport) -> list:
    """Identity sigma_k = r*H + k*r for every computed k."""
    seq = rep.sequence
    bad = []
    if seq.r:
        for k in rep.sigma:
            if rep.sigma[k] != seq.r * rep.H + k * seq.r or rep.sigma[k] != sigma_k(seq, k):
                bad.append(f"sigma identity fails at k={k}")
    return bad


def entry_report(e: CatalogEntry, ext_bound: int = DEFAULT_EXT_BOUND, seed: int = 0):
    """The CurveReport behind a curve, arrangement, nodal or sequence entry, else None."""
    if e.kind == "curve":
        K = parse_field(e.field or "Q")
        factors = [parse_poly(line, K) for line in e.source]
        return analyze_curve(declared_factors=factors, primes=e.primes, ext_bound=ext_bound,
                             seed=seed, components=e.components or len(factors))
    if e.kind in ("finite_plane", "fermat", "lines"):
        return arrangement_report(_lineset(e, ext_bound))
    if e.kind == "nodal":
        args = _kv(e.source)
        K = parse_field(e.field or "GF(101)")
        _, rep, attempts = random_nodal_curve(int(args["d"]), K, seed=int(args.get("seed", seed)),
                                              ext_bound=ext_bound)
        rep.info["attempts"] = attempts
        return rep
    if e.kind == "sequence":
        return build_report(parse_sequence(" ".join(e.source), s=e.components))
    return None


def _observe(e: CatalogEntry, ext_bound: int, seed: int) -> tuple:
    """(observed flag dict, extra mismatches)."""
    rep = entry_report(e, ext_bound, seed)
    if rep is not None:
        obs = report_flags(rep)
        if "t_vector" in rep.info:
            obs["t_vector"] = ",".join(f"{k}:{v}" for k, v in sorted(rep.info["t_vector"].items()))
        if "attempts" in rep.info:
            obs["attempts"] = str(rep.info["attempts"])
        return obs, _arith_consistency(rep)
    if e.kind == "cubic":
        K = parse_field(e.field or "Q")
        A = NodalCubic(K)
        derived, checks = verify_construction(_kv(e.source), A)
        obs = {k: A.render(v) for k, v in derived.items()}
        obs["order_F1"] = _render(A.order(A.coerce(0)))
        obs["checks"] = "pass" if all(c.passed for c in checks) else "fail"
        return obs, []
    if e.kind == "cremona":
        res = homaloidal_reduce(parse_sequence(" ".join(e.source)))
        obs = {"chain": "->".join(format_sequence(s) for s in res.chain),
               "success": _render(res.success),
               "sequence": format_sequence(res.chain[-1])}
        return obs, []
    raise CatalogError(f"unknown kind {e.kind}")


def _lineset(e: CatalogEntry, ext_bound: int) -> LineSet:
    if e.kind == "finite_plane":
        args = _kv(e.source)
        drop = args.get("drop")
        drop = tuple(int(c) for c in drop.split(",")) if drop else None
        return finite_plane_lines(int(args["q"]), drop_through=drop)
    if e.kind == "fermat":
        args = _kv(e.source)
        return fermat_arrangement(int(args["n"]), parse_field(e.field or "Q"), ext_bound)
    return parse_line_file(f"field: {e.field}\n" + "\n".join(e.source))


def verify_entry(e: CatalogEntry, ext_bound: int = DEFAULT_EXT_BOUND, seed: int = 0) -> EntryResult:
    try:
        obs, bad = _observe(e, ext_bound, seed)
    except Exception as exc:  # pipeline errors are reported per entry
        return EntryResult(e.id, False, [f"{type(exc).__name__}: {exc}"], {}, e.anchor,
                           error=type(exc).__name__)
    bad = list(bad)
    if e.expect_sequence is not None and not _same_sequence(e.expect_sequence, obs.get("sequence")):
        bad.append(f"sequence: expected {e.expect_sequence}, got {obs.get('sequence')}")
    if e.expect_H is not None and not _same(str(e.expect_H), obs.get("H")):
        bad.append(f"H: expected {e.expect_H}, got {obs.get('H')}")
    for key, val in e.expect_flags.items():
        if not _same(val, obs.get(key)):
            bad.append(f"{key}: expected {val}, got {obs.get(key)}")
    return EntryResult(e.id, not bad, bad, obs, e.anchor)


def _same_sequence(expected: str, observed: Optional[str]) -> bool:
    if observed is None:
        return False
    a, b = parse_sequence(expected), parse_sequence(observed)
    return a.d == b.d and sorted(a.entries) == sorted(b.entries)


def _verify_packed(args):
    e, ext_bound, seed = args
    return verify_entry(e, ext_bound, seed)


@dataclass
class CatalogSummary:
    results: list

    @property
    def total(self) -> int:
        return len(self.results)

    @property
    def failed(self) -> list:
        return [r for r in self.results if not r.passed]

    @property
    def ok(self) -> bool:
        return not self.failed


def verify_all(entries=None, ext_bound: int = DEFAULT_EXT_BOUND, parallel: bool = False,
               seed: int = 0, only=None) -> CatalogSummary:
    entries = load_catalog() if entries is None else entries
    if only:
        entries = [e for e in entries if e.id in set(only)]
    jobs = [(e, ext_bound, seed) for e in entries]
    if parallel and len(jobs) > 1:
        with ProcessPoolExecutor() as pool:
            results = list(pool.map(_verify_packed, jobs))
    else:
        results = [_verify_packed(j) for j in jobs]
    return CatalogSummary(sorted(results, key=lambda r: r.id))
