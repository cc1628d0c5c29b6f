"""Candidate multiplicity sequences, quadratic transforms, and known examples."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterator, Optional

from .invariants import MultSeq, format_sequence, genus_sum, parse_sequence

__all__ = [
    "SearchConstraints", "Candidate", "enumerate_candidates", "cremona_transform",
    "homaloidal_reduce", "greedy_centers", "KnownSequenceEntry", "KNOWN_SEQUENCES",
    "known_lookup", "asymptotic_tables", "parse_sequence", "format_sequence",
    "constraints_for",
]


@dataclass
class SearchConstraints:
    d_max: int
    d_min: int = 1
    mult_bound: Optional[int] = None
    genus_bound: int = 0
    max_double_points: Optional[int] = None
    only_multiplicity: Optional[int] = None
    s_min: int = 1
    s_max: Optional[int] = None
    irreducible_only: bool = False

    def __post_init__(self):
        if self.d_max < 1 or self.d_min < 1 or self.genus_bound < 0 or self.s_min < 1:
            raise ValueError("bounds must be nonnegative (degrees and s positive)")
        if self.mult_bound is not None and self.mult_bound < 2:
            raise ValueError("multiplicity bound must be at least 2")
        if self.max_double_points is not None and self.max_double_points < 0:
            raise ValueError("double point bound must be nonnegative")
        if self.irreducible_only:
            self.s_min, self.s_max = 1, 1


@dataclass
class Candidate:
    sequence: MultSeq
    feasible_s: list
    genus_sums: dict = field(default_factory=dict)

    def __str__(self):
        return f"{format_sequence(self.sequence)}  s={self.feasible_s}"


def _mult_choices(c: SearchConstraints, d: int) -> list:
    top = d - 1 if c.s_max == 1 else d
    if c.mult_bound is not None:
        top = min(top, c.mult_bound)
    if c.only_multiplicity is not None:
        m = c.only_multiplicity
        return [m] if 2 <= m <= top else []
    return list(range(top, 1, -1))


def _multisets(choices, budget, max_nodes):
    """Nonempty descending multiplicity lists with sum C(m,2) <= budget."""
    out = []

    def rec(i, prefix, used, nodes):
        if prefix:
            out.append(list(prefix))
        for j in range(i, len(choices)):
            m = choices[j]
            cost = comb(m, 2)
            if used + cost > budget:
                continue
            if m == 2 and max_nodes is not None and nodes >= max_nodes:
                continue
            prefix.append(m)
            rec(j, prefix, used + cost, nodes + (m == 2))
            prefix.pop()

    rec(0, [], 0, 0)
    return out


def enumerate_candidates(c: SearchConstraints) -> Iterator[Candidate]:
    """Sequences passing the genus sieve 0 <= genus_sum <= g*s for some allowed s.

    Only necessary conditions are imposed, so the output is a superset of the
    realizable sequences within the bounds.
    """
    for d in range(c.d_min, c.d_max + 1):
        s_hi = d if c.s_max is None else min(c.s_max, d)
        if s_hi < c.s_min:
            continue
        budget = comb(d - 1, 2) + s_hi - 1
        found = []
        for mults in _multisets(_mult_choices(c, d), budget, c.max_double_points):
            seq = MultSeq.from_mults(d, mults)
            base = comb(d - 1, 2) - sum(comb(m, 2) for m in mults)
            ok, gs = [], {}
            for s in range(c.s_min, s_hi + 1):
                g = base + s - 1
                if 0 <= g <= c.genus_bound * s:
                    ok.append(s)
                    gs[s] = g
            if ok:
                found.append(Candidate(seq, ok, gs))
        found.sort(key=lambda cand: [-m for m in cand.sequence.mults])
        yield from found


def cremona_transform(seq: MultSeq, center_mults) -> MultSeq:
    """Quadratic transform centered at points of the given multiplicities.

    Centers of multiplicity >= 2 consume actual entries; 1 means a smooth
    curve point and 0 a point off the curve.
    """
    centers = [int(m) for m in center_mults]
    if len(centers) != 3 or any(m < 0 for m in centers):
        raise ValueError("need three nonnegative center multiplicities")
    remaining = list(seq.entries)
    for m in centers:
        if m >= 2:
            try:
                remaining.remove((m, True))
            except ValueError:
                raise ValueError(f"no actual entry of multiplicity {m} left") from None
    d = seq.d
    d2 = 2 * d - sum(centers)
    if d2 <= 0:
        raise ValueError(f"transformed degree {d2} is not positive")
    new = [d - sum(centers) + m for m in centers]  # d - (other two)
    if any(m < 0 for m in new):
        raise ValueError(f"negative multiplicity {min(new)}: centers are not in general position")
    entries = remaining + [(m, True) for m in new if m >= 2]
    return MultSeq(d2, tuple(entries), seq.s)


def transformed_centers(seq: MultSeq, center_mults) -> list:
    d = seq.d
    return [d - sum(center_mults) + m for m in center_mults]


def greedy_centers(seq: MultSeq) -> list:
    """Three centers from the highest multiplicity present at least three times
    among actual points; otherwise the three largest, padded with smooth points."""
    act = [m for m, a in seq.entries if a]
    counts = {}
    for m in act:
        counts[m] = counts.get(m, 0) + 1
    for m in sorted(counts, reverse=True):
        if counts[m] >= 3:
            return [m, m, m]
    top = sorted(act, reverse=True)[:3]
    return top + [1] * (3 - len(top))


@dataclass
class ReductionResult:
    success: bool
    chain: list  # MultSeq values from the input to the last reached
    centers: list  # centers used at each step
    reason: str = ""

    def __str__(self):
        text = " -> ".join(format_sequence(s) for s in self.chain)
        return text if self.success else f"{text}  (stopped: {self.reason})"


def homaloidal_reduce(seq: MultSeq, max_steps: int = 100) -> ReductionResult:
    chain, used = [seq], []
    cur = seq
    for _ in range(max_steps):
        if cur.d == 1:
            return ReductionResult(True, chain, used)
        centers = greedy_centers(cur)
        try:
            nxt = cremona_transform(cur, centers)
        except ValueError as exc:
            return ReductionResult(False, chain, used, str(exc))
        if nxt.d >= cur.d:
            return ReductionResult(False, chain, used, "degree does not drop")
        chain.append(nxt)
        used.append(centers)
        cur = nxt
    if cur.d == 1:
        return ReductionResult(True, chain, used)
    return ReductionResult(False, chain, used, f"no line after {max_steps} steps")


# --- known realized sequences ---------------------------------------------

@dataclass(frozen=True)
class KnownSequenceEntry:
    sequence: MultSeq
    description: str
    characteristic: str  # "any", "0", "=p", "!=p" (p a prime)
    irreducible: bool
    genus_list: tuple = ()

    def key(self):
        return (self.sequence.d, tuple(self.sequence.mults))


def _known(text, desc, char, irred, genera):
    seq = parse_sequence(text, genus_list=genera)
    return KnownSequenceEntry(seq, desc, char, irred, tuple(genera))


KNOWN_SEQUENCES = [
    _known("3;3", "three concurrent lines", "any", False, (0, 0, 0)),
    _known("4;3", "rose quartic (x^2+y^2)^2+y^3-3yx^2", "any", True, (0,)),
    _known("5;3^3", "circle and three lines through pairs of its points", "0", False, (0,) * 4),
    _known("6;3^4", "three conics of a pencil with four base points", "0", False, (0,) * 3),
    _known("7;3^7", "lines of the Fano plane", "=2", False, (0,) * 7),
    _known("8;3^7", "irreducible rational octic (Cremona image of a line)", "any", True, (0,)),
    _known("8;3^8", "four conics with eight triple points", "0", False, (0,) * 4),
    _known("9;3^10", "nonic from a cubic pencil with ten triple points", "0", False, (0,) * 3),
    _known("9;3^12", "Fermat-type arrangement (x^3-y^3)(x^3-z^3)(y^3-z^3)", "!=3", False, (0,) * 9),
    _known("9;3^12", "the nine F_3-lines missing a point", "=3", False, (0,) * 9),
]


def known_lookup(seq: MultSeq) -> dict:
    """``{'status': 'realized', 'entries': [...]}`` or ``{'status': 'unknown'}``."""
    key = (seq.d, tuple(seq.mults))
    hits = [e for e in KNOWN_SEQUENCES if e.key() == key]
    if not hits:
        return {"status": "unknown", "entries": []}
    return {"status": "realized", "entries": [
        {"description": e.description, "characteristic": e.characteristic,
         "irreducible": e.irreducible} for e in hits]}


def constraints_for(seq: MultSeq, genus_list=None) -> SearchConstraints:
    """The tightest constraints under which ``seq`` should be enumerated."""
    mults = seq.mults
    distinct = set(mults)
    s = seq.s if seq.s is not None else (len(genus_list) if genus_list else None)
    g = max(genus_list) if genus_list else (max(genus_sum(seq), 0) if s else 0)
    return SearchConstraints(
        d_max=seq.d, d_min=seq.d,
        mult_bound=max(mults) if mults else None,
        genus_bound=g,
        max_double_points=seq.n(2),
        only_multiplicity=mults[0] if len(distinct) == 1 else None,
        s_min=s or 1, s_max=s,
    )


def asymptotic_tables(d_values) -> list:
    """Exact H for rational nodal curves and hypothetical rational curves with only
    triple points, both from the genus formula H = (3d - 2 - sum m)/r."""
    rows = []
    for d in d_values:
        if d < 3:
            raise ValueError("degree must be at least 3")
        n = comb(d - 1, 2)
        nodal = Fraction(3 * d - 2, n) - 2
        triple = Fraction(3 * (3 * d - 2), n) - 3
        rows.append({"d": d, "nodal_r": n, "nodal_H": nodal,
                     "triple_r": Fraction(n, 3), "triple_H": triple,
                     "triple_integral": n % 3 == 0})
    return rows
