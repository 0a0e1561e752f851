import json
from fractions import Fraction

import pytest

from posetwalks import count, width
from posetwalks.oracle import (
    census,
    enumerate_covers,
    enumerate_posets,
    enumerate_walk_pairs,
    iter_posets,
    load_census_golden,
    verify_area_identity,
    verify_bijection,
    verify_err_inequality,
    verify_factor_dominance,
    verify_first_return,
    verify_symmetrization,
    verify_uniform_cover_measure,
)


def test_labeled_poset_counts():
    assert [len(enumerate_posets(n, "all")) for n in range(1, 6)] == [1, 3, 19, 219, 4231]


def test_width_filters():
    n3 = enumerate_posets(3, "all")
    assert len(n3) == 19
    assert len(enumerate_posets(3, "width2")) == 12
    # width-1 posets on [3] are the 6 linear orders, width-3 is the antichain
    assert sum(1 for p in n3 if width(p) == 1) == 6
    assert sum(1 for p in n3 if width(p) == 3) == 1


def test_one_factor_counts():
    assert [len(enumerate_posets(n, "one_factor")) for n in range(1, 6)] == [1, 1, 6, 60, 840]
    assert enumerate_posets(2, "one_factor")[0].rel.sum() == 0  # the antichain


def test_enumeration_rejects_large_n():
    with pytest.raises(ValueError):
        enumerate_posets(8, "all")
    with pytest.raises(ValueError):
        enumerate_walk_pairs(13)


def test_walk_enumeration_counts():
    assert [len(enumerate_walk_pairs(n)) for n in (2, 4)] == [1, 5]
    for n in range(1, 11):
        assert len(enumerate_walk_pairs(n)) == count(n)


def test_cover_enumeration_matches_walks():
    for n in range(1, 9):
        assert len(enumerate_covers(n)) == count(n)


def test_census_against_goldens():
    for n in range(1, 6):
        assert census(n) == load_census_golden(n)


def test_census_internal_identities():
    for n in range(1, 6):
        c = load_census_golden(n)
        assert c["counts"]["covers"] == c["counts"]["walk_pairs"]
        assert set(c["psi_split"]) <= {"1", "2"}
        assert sum(c["psi_split"].values()) == c["counts"]["posets_one_factor"]
        # covers with both chains the same size are the only ones a swap can fix
        if n % 2 == 1:
            assert "1" not in c["psi_split"]


def test_verify_bijection():
    for n in range(1, 8):
        assert verify_bijection(n).passed


def test_uniform_cover_measure_exact():
    for n in range(1, 6):
        rep = verify_uniform_cover_measure(n)
        assert rep.passed
        assert rep.details["max_deviation"] == "0"
        assert rep.details["walk_side_uniform"]


def test_uniform_cover_measure_psi_split_n4():
    rep = verify_uniform_cover_measure(4)
    assert rep.details["psi_split"] == {2: 48, 1: 12}


def test_symmetrization_literal_claim_fails_from_n2():
    # the element-time and uniform-time gap distributions do NOT agree at
    # finite n; the mass the time side puts at gap zero already breaks it
    for n in (2, 3, 4):
        rep = verify_symmetrization(n)
        assert not rep.passed
        assert rep.details["by_element"].get(0, 0) == 0
        assert rep.details["by_time"][0] == count(n)


def test_symmetrization_exact_tables_n4():
    rep = verify_symmetrization(4)
    assert rep.details["by_element"] == {2: 18, 4: 2}
    assert rep.details["by_time"] == {0: 5, 2: 14, 4: 1}
    assert rep.details["max_abs_difference"] == 5


def test_symmetrization_involution_identity_holds():
    for n in range(1, 9):
        rep = verify_symmetrization(n)
        assert rep.details["involution_identity_holds"]


def test_area_and_err_verifiers():
    for n in (2, 6, 9):
        assert verify_area_identity(n).passed
        assert verify_err_inequality(n).passed


def test_factor_dominance_values():
    r2 = verify_factor_dominance(2)
    assert Fraction(r2.details["fraction"]) == 1
    r5 = verify_factor_dominance(5)
    assert Fraction(r5.details["fraction"]) == Fraction(16, 25)


def test_first_return_small():
    rep = verify_first_return(6)
    assert rep.passed
    assert rep.details["probabilities"][1] == "1/2"
    assert rep.details["probabilities"][2] == "1/8"
    assert rep.details["probabilities"][5] == "7/256"


@pytest.mark.slow
def test_census_n6_matches_golden():
    assert census(6) == load_census_golden(6)


@pytest.mark.slow
def test_factor_dominance_n7():
    rep = verify_factor_dominance(7)
    assert rep.passed
    assert 0 < rep.details["fraction_float"] <= 1
