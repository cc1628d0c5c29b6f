import random
from fractions import Fraction

import pytest

from planecurves.invariants import MultSeq, format_sequence, genus_sum, parse_sequence
from planecurves.sequences import (KNOWN_SEQUENCES, SearchConstraints, asymptotic_tables,
                                   constraints_for, cremona_transform, enumerate_candidates,
                                   greedy_centers, homaloidal_reduce, known_lookup)

NINE = ["3;3", "4;3", "5;3^3", "6;3^4", "7;3^7", "8;3^7", "8;3^8", "9;3^10", "9;3^12"]


def random_transformable(rng):
    """A sequence with three actual centers for which the transform is valid."""
    while True:
        d = rng.randint(4, 16)
        mults = sorted((rng.randint(2, d // 2 + 1) for _ in range(rng.randint(3, 7))), reverse=True)
        seq = MultSeq.from_mults(d, mults, s=rng.randint(1, 3))
        centers = rng.sample(mults, 3)
        if sum(centers) - max(centers) <= d and 2 * d - sum(centers) > 0:
            return seq, centers


def test_cremona_is_an_involution_and_keeps_genus():
    rng = random.Random(5)
    done = 0
    while done < 1000:
        seq, centers = random_transformable(rng)
        try:
            img = cremona_transform(seq, centers)
        except ValueError:
            continue
        back_centers = [seq.d - sum(centers) + m for m in centers]
        if any(m < 2 for m in back_centers):
            # a center became a smooth point; the inverse would need it as a 1 or 0
            continue
        back = cremona_transform(img, back_centers)
        assert back.d == seq.d and sorted(back.mults) == sorted(seq.mults)
        assert genus_sum(img) == genus_sum(seq)
        done += 1


def test_cremona_rejections():
    with pytest.raises(ValueError):
        cremona_transform(parse_sequence("4;3"), [3, 3, 1])
    with pytest.raises(ValueError):
        cremona_transform(parse_sequence("4;3,2^2"), [3, 2, 2])  # 4 - 7 + 2 < 0
    with pytest.raises(ValueError):
        cremona_transform(parse_sequence("2"), [1, 1, 1, 1])
    with pytest.raises(ValueError):
        cremona_transform(parse_sequence("5;4^3"), [4, 4, 4])


def test_cremona_examples():
    assert format_sequence(cremona_transform(parse_sequence("8;3^7"), [3, 3, 3])) == "7;3^4,2^3"
    assert format_sequence(cremona_transform(parse_sequence("2"), [1, 1, 1])) == "1"
    assert format_sequence(cremona_transform(parse_sequence("1"), [0, 0, 0])) == "2"


def test_greedy_chain_for_octic():
    res = homaloidal_reduce(parse_sequence("8;3^7"))
    assert res.success
    assert [format_sequence(s) for s in res.chain] == [
        "8;3^7", "7;3^4,2^3", "5;3,2^3", "4;3", "3;2", "2", "1"]


def test_greedy_failure_is_reported():
    res = homaloidal_reduce(parse_sequence("6;3^4"))
    assert not res.success and res.reason
    assert format_sequence(res.chain[-1]) == "3;3"


def test_greedy_centers_rule():
    assert greedy_centers(parse_sequence("5;3,2^3")) == [2, 2, 2]
    assert greedy_centers(parse_sequence("4;3")) == [3, 1, 1]
    assert greedy_centers(parse_sequence("6;3^2,~3^2")) == [3, 3, 1]


def test_enumeration_contains_the_nine_sequences():
    found = {format_sequence(c.sequence) for c in
             enumerate_candidates(SearchConstraints(d_max=9, only_multiplicity=3))}
    assert set(NINE) <= found


def test_enumeration_is_a_genus_sieve():
    for cand in enumerate_candidates(SearchConstraints(d_max=8, genus_bound=1)):
        for s in cand.feasible_s:
            g = genus_sum(MultSeq(cand.sequence.d, cand.sequence.entries, s))
            assert 0 <= g <= s and cand.genus_sums[s] == g


def test_irreducible_only_excludes_degree_multiplicity():
    for cand in enumerate_candidates(SearchConstraints(d_max=7, irreducible_only=True)):
        assert cand.feasible_s == [1]
        assert max(cand.sequence.mults) < cand.sequence.d


@pytest.mark.parametrize("entry", KNOWN_SEQUENCES, ids=lambda e: e.description[:20])
def test_known_entries_found_under_their_own_bounds(entry):
    seq = entry.sequence
    c = constraints_for(MultSeq(seq.d, seq.entries, len(entry.genus_list)), entry.genus_list)
    found = [cand for cand in enumerate_candidates(c) if cand.sequence.mults == seq.mults]
    assert found


def test_known_lookup():
    assert known_lookup(parse_sequence("9;3^12"))["status"] == "realized"
    assert len(known_lookup(parse_sequence("9;3^12"))["entries"]) == 2
    assert known_lookup(parse_sequence("10;3^11")) == {"status": "unknown", "entries": []}


def test_asymptotic_tables():
    rows = {r["d"]: r for r in asymptotic_tables([4, 5, 6, 10, 100])}
    assert rows[4]["nodal_H"] == Fraction(4, 3)
    assert rows[5]["nodal_H"] == Fraction(1, 6)
    assert rows[4]["triple_H"] == 7 and rows[4]["triple_integral"] is True
    assert rows[5]["triple_H"] == Fraction(7, 2)
    assert rows[6]["triple_r"] == Fraction(10, 3) and not rows[6]["triple_integral"]
    assert rows[10]["triple_r"] == 12 and rows[10]["triple_H"] == Fraction(-2, 3)
    # both families tend to their limits from above
    assert -2 < rows[100]["nodal_H"] < Fraction(-19, 10)
    assert -3 < rows[100]["triple_H"] < Fraction(-28, 10)
    with pytest.raises(ValueError):
        asymptotic_tables([2])


def test_constraint_validation():
    with pytest.raises(ValueError):
        SearchConstraints(d_max=0)
    with pytest.raises(ValueError):
        SearchConstraints(d_max=5, mult_bound=1)
