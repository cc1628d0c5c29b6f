import random
from fractions import Fraction
from math import comb

import pytest

from planecurves.invariants import (CHECK_NAMES, MultSeq, build_report, check_chain, check_cor0,
                                    check_eqNew, check_hirzebruch, check_mu_bound, check_prop0,
                                    classify_conjectures, euler_curve_ordinary,
                                    euler_normalization, format_sequence, genus_sum, h_constant,
                                    h_constant_actual, parse_sequence, sigma_k, sigma_k_actual,
                                    sum_mult_bound)


def S(text, s=None, genus_list=None):
    return parse_sequence(text, s=s, genus_list=genus_list)


def random_sequence(rng, d_max=14):
    d = rng.randint(3, d_max)
    r = rng.randint(1, 8)
    entries = tuple((rng.randint(2, d), rng.random() < 0.7) for _ in range(r))
    return MultSeq(d, entries)


@pytest.mark.parametrize("text", ["4;3", "6;3^2,~3^2", "5;3,~2^3", "12;4^3,3^16", "3", "9;3^12"])
def test_sequence_text_roundtrip(text):
    assert format_sequence(parse_sequence(text)) == text


@pytest.mark.parametrize("text", ["", "4;1", "4;3^0", "x;3", "0;2", "4;3^"])
def test_sequence_text_errors(text):
    with pytest.raises(ValueError):
        parse_sequence(text)


def test_entries_sorted_descending_actual_first():
    seq = MultSeq(6, ((3, False), (2, True), (3, True)))
    assert seq.entries == ((3, True), (3, False), (2, True))
    with pytest.raises(ValueError):
        MultSeq(4, ((3, True),), s=2, genus_list=(0,))


def test_h_constant_examples():
    assert h_constant(S("13;4^13")) == -3
    assert h_constant(S("7;3^7")) == -2
    pencil = S("6;3^2,~3^2")
    assert h_constant(pencil) == 0 and h_constant_actual(pencil) == 9
    with pytest.raises(ValueError):
        h_constant(S("3"))


def test_sigma_examples():
    assert sigma_k(S("7;3^7"), 2) == 0
    assert sigma_k(S("30;5^30"), 2) == 210


def test_properties_on_random_sequences():
    rng = random.Random(21)
    for _ in range(500):
        seq = random_sequence(rng)
        H = h_constant(seq)
        for k in range(-2, 8):
            assert sigma_k(seq, k) == seq.r * H + k * seq.r
        if seq.actual_mults:
            for k in range(0, 5):
                # each ignored entry has m^2 >= 4 >= k
                assert sigma_k_actual(seq, k) >= sigma_k(seq, k)


def test_sigma_above_mean_on_sieved_sequences():
    # sequences passing the genus sieve satisfy d^2 > sum m(m-1), i.e. H > -mean
    from planecurves.sequences import SearchConstraints, enumerate_candidates

    for cand in enumerate_candidates(SearchConstraints(d_max=10, genus_bound=1)):
        seq = cand.sequence
        for k in range(-1, 6):
            assert sigma_k(seq, k) > seq.r * (k - seq.mean_mult)


def test_genus_sum_examples():
    assert genus_sum(S("3;3", s=3)) == 0
    assert genus_sum(S("8;3^7", s=1)) == 0
    assert genus_sum(S("9;3^10", s=3)) == 0
    assert genus_sum(S("8;3^8", s=4)) == 0
    assert genus_sum(S("12;3^12", s=1)) == 19
    with pytest.raises(ValueError):
        genus_sum(S("4;3"))


def test_euler_examples():
    assert euler_normalization(S("4;3", s=1)) == 2
    assert euler_normalization(S("12;3^12", s=1)) == -36
    assert euler_normalization(S("3;3", s=3)) == 6
    assert euler_curve_ordinary(S("3;3", s=3)) == 4
    assert euler_normalization(S("5;2", s=2, genus_list=(1, 0))) == 2


def test_genus_equation_form():
    # d^2 - sum m^2 = sum(2g_j - 2) + 3d - sum m
    for text, s in [("4;3", 1), ("8;3^7", 1), ("9;3^10", 3), ("8;3^8", 4), ("7;3^7", 7),
                    ("13;4^13", 13), ("5;3,2^3", 1), ("4;2^3", 1)]:
        seq = S(text, s=s)
        g = genus_sum(seq)
        assert seq.d ** 2 - sum(m * m for m in seq.mults) == 2 * g - 2 * s + 3 * seq.d - sum(seq.mults)


def test_cor0_examples():
    c = check_cor0(S("8;3^7"))
    assert c.passed and (c.lhs, c.rhs) == (22, 7)
    c = check_cor0(S("30;5^30"))
    assert c.status == "fail" and c.margin == -2
    assert check_cor0(S("20;2^50")).passed


def test_eq_new_boundary():
    assert check_eqNew(109, 10).passed
    assert not check_eqNew(110, 10).passed
    assert all(check_eqNew(d, 9).passed for d in range(1, 10001))
    assert not check_eqNew(10 ** 4, 36).passed


def test_eq_new_implies_cor0_for_rational_sequences():
    # spot check over rational irreducible sequences with d <= 12
    from planecurves.sequences import SearchConstraints, enumerate_candidates

    for cand in enumerate_candidates(SearchConstraints(d_max=12, irreducible_only=True, mult_bound=5)):
        seq = cand.sequence
        if check_eqNew(seq.d, seq.r).passed:
            assert check_cor0(seq).passed, format_sequence(seq)


def test_sum_mult_bound():
    assert sum_mult_bound(4, 3, 6).detail["case"] == "equality"
    assert sum_mult_bound(12, 12, 36).detail["case"] == "strict"
    for d in range(3, 30):
        # r = 1: equality exactly at m = d - 1
        assert sum_mult_bound(d, 1, d - 1).detail["case"] == "equality"
        assert sum_mult_bound(d, 1, d).detail["case"] == "violated"
        assert sum_mult_bound(d, 1, d - 2).detail["case"] == "strict"


def test_prop0_examples():
    out = check_prop0(S("7;3^7"), irreducible=False)
    assert out["prop0_sigma2m1"].lhs == 21 and out["prop0_sigma2m1"].passed
    assert out["prop0_sigmam"].status == "n/a"
    out = check_prop0(S("4;3"), irreducible=True)
    assert out["prop0_sigmam"].lhs == 10 and out["prop0_sigmam"].margin == 0
    out = check_prop0(S("12;3^12"), irreducible=True)
    assert out["prop0_sigma2m1"].lhs == 96


def test_mu_bound():
    assert check_mu_bound(4, 4).passed
    assert check_mu_bound(None, 4).status == "n/a"
    assert check_mu_bound(10, 4).status == "fail"


def test_chain():
    c = check_chain(S("13;4^13", s=13))
    assert c.passed and c.detail["equality_lines"] and c.detail["lines_bound"] == -3
    c = check_chain(S("8;3^7", s=1))
    assert c.passed and c.detail["equality_rational"] and not c.detail["equality_lines"]
    assert check_chain(S("8;3^7")).status == "n/a"


def test_hirzebruch():
    c = check_hirzebruch({4: 13}, 13)
    assert c.status == "fail" and c.detail["complex_unrealizable"]
    assert check_hirzebruch({2: 4, 4: 1}, 5).status == "n/a"
    assert check_hirzebruch({2: 10}, 5).passed
    assert check_hirzebruch({3: 12}, 9).passed


def test_conjecture_labels():
    out = classify_conjectures(S("9;3^12", s=9))
    assert out["conj_c14"].detail["label"] == "within-scope"
    out = classify_conjectures(S("10;3^12", s=1))
    assert out["conj_c14"].detail["label"] == "would-be-counterexample"
    assert out["conj_c20"].detail["label"] == "would-be-counterexample"
    out = classify_conjectures(S("4;3", s=1))
    assert out["conj_c20"].passed and not out["conj_c20"].detail["degree_condition"]
    out = classify_conjectures(S("5;2^6", s=1))
    assert out["rk21"].passed


def test_build_report_fields():
    rep = build_report(S("8;3^8", s=4), delta_total=24, mu_total=32, all_ordinary=True)
    assert set(rep.checks) == set(CHECK_NAMES)
    assert rep.H == -1 and rep.genus_sum == 0 and rep.euler_curve == 8 - 16
    assert sorted(rep.sigma) == [0, 2, 3, 4, 5]
    assert rep.info["n3_below_45"] is True
