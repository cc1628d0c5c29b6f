"""Numerical invariants of multiplicity sequences and the inequality suite.

Everything here is pure arithmetic on :class:`MultSeq` values; exact
rationals are :class:`fractions.Fraction`.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional


@dataclass(frozen=True)
class MultSeq:
    """(d; m_1, ..., m_r) with actual/infinitely-near flags.

    ``entries`` holds ``(m, actual)`` pairs and is kept sorted by descending
    multiplicity, actual points first within a multiplicity.
    """

    d: int
    entries: tuple = ()
    s: Optional[int] = None
    genus_list: Optional[tuple] = None

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("degree must be positive")
        ents = tuple(sorted(((int(m), bool(a)) for m, a in self.entries),
                            key=lambda e: (-e[0], not e[1])))
        if any(m < 2 for m, _ in ents):
            raise ValueError("multiplicities must be at least 2")
        object.__setattr__(self, "entries", ents)
        if self.genus_list is not None:
            gl = tuple(int(g) for g in self.genus_list)
            if any(g < 0 for g in gl):
                raise ValueError("genera must be nonnegative")
            if self.s is None:
                object.__setattr__(self, "s", len(gl))
            elif len(gl) != self.s:
                raise ValueError("genus_list length must equal s")
            object.__setattr__(self, "genus_list", gl)
        if self.s is not None and self.s < 1:
            raise ValueError("component count must be positive")

    @classmethod
    def from_mults(cls, d, mults, s=None, genus_list=None, actual=True):
        return cls(d, tuple((m, actual) for m in mults), s, genus_list)

    @property
    def r(self) -> int:
        return len(self.entries)

    @property
    def mults(self) -> list:
        return [m for m, _ in self.entries]

    @property
    def actual_mults(self) -> list:
        return [m for m, a in self.entries if a]

    def n(self, j: int) -> int:
        """Number of entries of multiplicity j."""
        return sum(1 for m, _ in self.entries if m == j)

    def counts(self) -> dict:
        return dict(Counter(self.mults))

    @property
    def max_mult(self) -> int:
        return max(self.mults) if self.entries else 0

    @property
    def mean_mult(self) -> Fraction:
        if not self.entries:
            raise ValueError("empty sequence")
        return Fraction(sum(self.mults), self.r)

    def with_components(self, s=None, genus_list=None) -> "MultSeq":
        return MultSeq(self.d, self.entries, s, genus_list)

    def __str__(self):
        return format_sequence(self)


# --- sequence text --------------------------------------------------------

_ENTRY = re.compile(r"^(~?)(\d+)(?:\^(\d+))?$")


def parse_sequence(text: str, s=None, genus_list=None) -> MultSeq:
    """Parse ``"8;3^7"``; a ``~`` prefix marks infinitely near entries."""
    src = text.strip()
    if ";" in src:
        head, tail = src.split(";", 1)
    else:
        head, tail = src, ""
    try:
        d = int(head.strip())
    except ValueError:
        raise ValueError(f"bad degree in sequence {text!r}") from None
    entries = []
    for part in tail.split(","):
        part = part.strip().replace(" ", "")
        if not part:
            continue
        m = _ENTRY.match(part)
        if not m:
            raise ValueError(f"bad sequence entry {part!r}")
        mult, count = int(m.group(2)), int(m.group(3) or 1)
        if count < 1:
            raise ValueError(f"bad repeat count in {part!r}")
        entries += [(mult, not m.group(1))] * count
    return MultSeq(d, tuple(entries), s, genus_list)


def format_sequence(seq: MultSeq) -> str:
    groups = []
    for m, a in seq.entries:
        if groups and groups[-1][0] == (m, a):
            groups[-1][1] += 1
        else:
            groups.append([(m, a), 1])
    parts = []
    for (m, a), c in groups:
        tag = "" if a else "~"
        parts.append(f"{tag}{m}" if c == 1 else f"{tag}{m}^{c}")
    return f"{seq.d};" + ",".join(parts) if parts else str(seq.d)


# --- basic invariants -----------------------------------------------------

def h_constant(seq: MultSeq) -> Fraction:
    if seq.r == 0:
        raise ValueError("H-constant of an empty sequence")
    return Fraction(seq.d ** 2 - sum(m * m for m in seq.mults), seq.r)


def h_constant_actual(seq: MultSeq) -> Fraction:
    act = seq.actual_mults
    if not act:
        raise ValueError("no actual singular points")
    return Fraction(seq.d ** 2 - sum(m * m for m in act), len(act))


def sigma_k(seq: MultSeq, k: int) -> int:
    return seq.d ** 2 - sum(m * m for m in seq.mults) + k * seq.r


def sigma_k_actual(seq: MultSeq, k: int) -> int:
    act = seq.actual_mults
    return seq.d ** 2 - sum(m * m for m in act) + k * len(act)


def genus_sum(seq: MultSeq) -> int:
    """Sum of the genera of the normalized components (may come out negative)."""
    if seq.s is None:
        raise ValueError("component count s is unknown")
    d = seq.d
    return comb(d - 1, 2) - sum(comb(m, 2) for m in seq.mults) + (seq.s - 1)


def euler_normalization(seq: MultSeq) -> int:
    """E of the normalization: 2s - 2 * sum of genera."""
    if seq.genus_list is not None:
        return 2 * seq.s - 2 * sum(seq.genus_list)
    return 2 * seq.s - 2 * genus_sum(seq)


def euler_curve_ordinary(seq: MultSeq) -> int:
    """E(C) for a curve whose singularities are all ordinary."""
    if any(not a for _, a in seq.entries):
        raise ValueError("sequence has infinitely near entries")
    return euler_normalization(seq) - sum(m - 1 for m in seq.mults)


def default_ks(seq: MultSeq) -> list:
    m = seq.max_mult
    return sorted({0, 2, 4, m, 2 * m - 1})


# --- structured checks ----------------------------------------------------

PASS, FAIL, NA = "pass", "fail", "n/a"


@dataclass
class CheckResult:
    name: str
    status: str
    lhs: object = None
    rhs: object = None
    margin: object = None
    relation: str = ""
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def __bool__(self):
        return self.passed


def _na(name, why):
    return CheckResult(name, NA, detail={"reason": why})


def check_cor0(seq: MultSeq) -> CheckResult:
    lhs = 3 * seq.d - 2
    rhs = sum(m - 2 for m in seq.mults)
    weighted = {f"n{j}": seq.n(j) for j in sorted(seq.counts()) if j >= 3}
    return CheckResult("cor0", PASS if lhs > rhs else FAIL, lhs, rhs, lhs - rhs, ">",
                       {"counts": weighted})


def eq_new_value(d: int, r: int) -> int:
    return (36 - 4 * r) * d * d + 48 * d * (r - 1) + r * (8 * r - 32) + 16


def check_eqNew(d: int, r: int) -> CheckResult:
    if d < 1 or r < 1:
        raise ValueError("need d >= 1 and r >= 1")
    v = eq_new_value(d, r)
    return CheckResult("eqNew", PASS if v > 0 else FAIL, v, 0, v, ">", {"d": d, "r": r})


def sum_mult_bound(d: int, r: int, sum_m: int) -> CheckResult:
    """Compare sum m_i with (r + sqrt(r^2 + 4r(d-1)(d-2)))/2 exactly.

    Status ``pass`` covers both strict inequality and equality; the
    ``detail['case']`` entry says which.
    """
    lhs = 2 * sum_m - r
    rad = r * r + 4 * r * (d - 1) * (d - 2)
    if lhs < 0 or lhs * lhs < rad:
        case = "strict"
    elif lhs * lhs == rad:
        case = "equality"
    else:
        case = "violated"
    return CheckResult("sum_mult_bound", FAIL if case == "violated" else PASS,
                       lhs * lhs if lhs >= 0 else lhs, rad, None, "<=",
                       {"case": case, "sum_m": sum_m, "d": d, "r": r})


def check_prop0(seq: MultSeq, irreducible: Optional[bool]) -> dict:
    out = {}
    if seq.r == 0:
        out["prop0_sigma2m1"] = _na("prop0_sigma2m1", "curve is smooth")
        out["prop0_sigmam"] = _na("prop0_sigmam", "curve is smooth")
        return out
    m = seq.max_mult
    d = seq.d
    v = sigma_k(seq, 2 * m - 1)
    out["prop0_sigma2m1"] = CheckResult("prop0_sigma2m1", PASS if v >= 2 * d - 1 else FAIL,
                                        v, 2 * d - 1, v - (2 * d - 1), ">=", {"k": 2 * m - 1})
    if irreducible:
        v = sigma_k(seq, m)
        out["prop0_sigmam"] = CheckResult("prop0_sigmam", PASS if v >= 3 * d - 2 else FAIL,
                                          v, 3 * d - 2, v - (3 * d - 2), ">=", {"k": m})
    else:
        why = "irreducibility unknown" if irreducible is None else "curve is reducible"
        out["prop0_sigmam"] = _na("prop0_sigmam", why)
    return out


def check_mu_bound(mu_total: Optional[int], d: int) -> CheckResult:
    if mu_total is None:
        return _na("mu_bound", "Milnor numbers unavailable")
    b = (d - 1) ** 2
    return CheckResult("mu_bound", PASS if mu_total <= b else FAIL, mu_total, b, b - mu_total, "<=")


def check_chain(seq: MultSeq) -> CheckResult:
    """H = (3d + sum(2g_j - 2) - sum m)/r >= (3d - 2s - sum m)/r >= (d - sum m)/r > -mean."""
    name = "chain_genusFormula"
    if seq.s is None:
        return _na(name, "component count unknown")
    if seq.r == 0:
        return _na(name, "curve is smooth")
    d, r, s = seq.d, seq.r, seq.s
    sm = sum(seq.mults)
    gsum = sum(seq.genus_list) if seq.genus_list is not None else genus_sum(seq)
    H = h_constant(seq)
    a = Fraction(3 * d + 2 * gsum - 2 * s - sm, r)
    b = Fraction(3 * d - 2 * s - sm, r)
    c = Fraction(d - sm, r)
    low = -seq.mean_mult
    ok = H == a and a >= b >= c > low and gsum >= 0
    detail = {
        "H": H, "genus_form": a, "rational_bound": b, "lines_bound": c, "minus_mean": low,
        "genus_sum": gsum,
        "equality_rational": a == b, "equality_lines": b == c,
        "all_rational": gsum == 0, "all_lines": s == d,
    }
    return CheckResult(name, PASS if ok else FAIL, H, low, H - low, ">", detail)


def check_hirzebruch(n: dict, d: int) -> CheckResult:
    """n_2 + 3/4 n_3 >= d + sum_{k>4} (k-4) n_k; failure flags complex-unrealizability."""
    name = "hirzebruch"
    top = max(n) if n else 0
    if top >= d - 1:
        return _na(name, "pencil or near-pencil")
    lhs = Fraction(n.get(2, 0)) + Fraction(3, 4) * n.get(3, 0)
    rhs = d + sum((k - 4) * c for k, c in n.items() if k > 4)
    ok = lhs >= rhs
    return CheckResult(name, PASS if ok else FAIL, lhs, rhs, lhs - rhs, ">=",
                       {"complex_unrealizable": not ok})


def _rational_components(seq: MultSeq) -> Optional[bool]:
    if seq.genus_list is not None:
        return all(g == 0 for g in seq.genus_list)
    if seq.s is None:
        return None
    return genus_sum(seq) == 0


def classify_conjectures(seq: MultSeq) -> dict:
    out = {}
    mults = set(seq.mults)
    rational = _rational_components(seq)
    irreducible = None if seq.s is None else seq.s == 1

    # no reduced curve with all components rational and all singularities triple, d > 9
    if not seq.entries or mults != {3} or rational is not True:
        why = "needs only triple points and rational components"
        if rational is None and mults == {3}:
            why = "genus data unknown"
        r = _na("conj_c14", why)
        r.detail["label"] = "out-of-scope"
    else:
        bad = seq.d > 9
        r = CheckResult("conj_c14", FAIL if bad else PASS, seq.d, 9, None, "<=",
                        {"label": "would-be-counterexample" if bad else "within-scope"})
    out["conj_c14"] = r

    # nodes and triple points only: n_2 > 0 when d > 9 or (irreducible and d > 8)
    if not seq.entries or not mults <= {2, 3}:
        r = _na("conj_c20", "needs only nodes and triple points")
        r.detail["label"] = "out-of-scope"
    else:
        applies = seq.d > 9 or (irreducible is True and seq.d > 8)
        bad = applies and seq.n(2) == 0
        label = "would-be-counterexample" if bad else "within-scope"
        r = CheckResult("conj_c20", FAIL if bad else PASS, seq.n(2), 0, None, ">",
                        {"label": label, "degree_condition": applies})
    out["conj_c20"] = r

    # rational curve with nodes and ordinary triple points: n_2 > (d^2 - 21d + 14)/2
    if (not seq.entries or not mults <= {2, 3} or rational is not True
            or irreducible is not True or any(not a for _, a in seq.entries)):
        out["rk21"] = _na("rk21", "needs a rational curve with only nodes and ordinary triple points")
    else:
        d = seq.d
        rhs = Fraction(d * d - 21 * d + 14, 2)
        ok = seq.n(2) > rhs
        out["rk21"] = CheckResult("rk21", PASS if ok else FAIL, seq.n(2), rhs, seq.n(2) - rhs, ">",
                                  {"n3_lt_3d_minus_2": seq.n(3) < 3 * d - 2})
    return out


# --- aggregated report ----------------------------------------------------

CHECK_NAMES = ("cor0", "eqNew", "prop0_sigma2m1", "prop0_sigmam", "mu_bound",
               "chain_genusFormula", "hirzebruch", "conj_c14", "conj_c20", "rk21")


@dataclass
class CurveReport:
    sequence: MultSeq
    H: Optional[Fraction]
    H_actual: Optional[Fraction]
    sigma: dict
    sigma_actual: dict
    delta_total: Optional[int] = None
    mu_total: Optional[int] = None
    genus_sum: Optional[int] = None
    euler_normalization: Optional[int] = None
    euler_curve: Optional[int] = None
    checks: dict = field(default_factory=dict)
    info: dict = field(default_factory=dict)
    records: list = field(default_factory=list)
    field_used: object = None
    per_prime: dict = field(default_factory=dict)


def build_report(seq: MultSeq, *, delta_total=None, mu_total=None, ks=None,
                 all_ordinary=None, line_counts=None, records=None, field_used=None,
                 per_prime=None) -> CurveReport:
    """Evaluate every invariant and check for ``seq``.

    ``line_counts`` (multiplicity -> count) marks the input as a line
    arrangement and enables the Hirzebruch check.
    """
    ks = sorted(set(default_ks(seq)) | set(ks or []))
    H = h_constant(seq) if seq.r else None
    H0 = h_constant_actual(seq) if seq.actual_mults else None
    report = CurveReport(
        sequence=seq, H=H, H_actual=H0,
        sigma={k: sigma_k(seq, k) for k in ks},
        sigma_actual={k: sigma_k_actual(seq, k) for k in ks},
        delta_total=delta_total, mu_total=mu_total,
        records=list(records or []), field_used=field_used, per_prime=dict(per_prime or {}),
    )
    if seq.s is not None:
        report.genus_sum = genus_sum(seq)
        report.euler_normalization = euler_normalization(seq)
        if all_ordinary and all(a for _, a in seq.entries):
            report.euler_curve = euler_curve_ordinary(seq)
    irreducible = None if seq.s is None else seq.s == 1
    checks = {}
    if seq.r:
        checks["cor0"] = check_cor0(seq)
        checks["eqNew"] = check_eqNew(seq.d, seq.r)
    else:
        checks["cor0"] = _na("cor0", "curve is smooth")
        checks["eqNew"] = _na("eqNew", "curve is smooth")
    checks.update(check_prop0(seq, irreducible))
    checks["mu_bound"] = check_mu_bound(mu_total, seq.d)
    checks["chain_genusFormula"] = check_chain(seq)
    if line_counts is not None:
        checks["hirzebruch"] = check_hirzebruch(line_counts, seq.d)
    else:
        checks["hirzebruch"] = _na("hirzebruch", "not a line arrangement")
    checks.update(classify_conjectures(seq))
    report.checks = checks
    if seq.r and seq.mults and max(seq.mults) <= 3:
        report.info["n3_below_45"] = seq.n(3) < 45
    if seq.r and seq.d >= 3 and irreducible:
        report.info["sum_mult_bound"] = sum_mult_bound(seq.d, seq.r, sum(seq.mults)).detail["case"]
    return report
