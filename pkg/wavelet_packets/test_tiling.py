import pytest

from wavelet_packets.packet_exceptions import HorizonCrossed, InvalidHorizon, InvalidTilingPair
from wavelet_packets.tiling import (
    Tiling, classic_tiling, parse_pairs, refine_tiling, singleton_tiling, table_one_tiling,
    validate_tiling)


@pytest.mark.parametrize("tiling", [
    classic_tiling(256),
    singleton_tiling(256),
    table_one_tiling(256),
    classic_tiling(),
    Tiling(((1, 0), (0, 2), (0, 3)), 4),
])
def test_valid(tiling):
    verdict = validate_tiling(tiling)
    assert verdict.valid
    assert str(verdict) == "valid"


def test_table_one_pairs():
    assert table_one_tiling(256).pairs[:8] == ((2, 0), (2, 1), (2, 2), (2, 3), (4, 1), (4, 2), (4, 3), (6, 1))


def test_classic_without_zero_cell():
    pairs = classic_tiling(16).pairs[1:]
    verdict = validate_tiling(Tiling(pairs, 16))
    assert (verdict.violation, verdict.integer) == ("gap", 0)


def test_duplicate():
    verdict = validate_tiling(Tiling(((1, 0), (1, 0), (1, 1)), 4))
    assert not verdict.valid
    assert (verdict.violation, verdict.integer) == ("overlap", 0)


def test_overlap_and_gap():
    verdict = validate_tiling(Tiling(((1, 0), (0, 1)), 4))
    assert (verdict.violation, verdict.integer) == ("overlap", 1)
    verdict = validate_tiling(Tiling(((1, 0), (0, 2)), 4))
    assert (verdict.violation, verdict.integer) == ("gap", 3)


@pytest.mark.parametrize("make", [classic_tiling, singleton_tiling, table_one_tiling])
@pytest.mark.parametrize("position", [0, 3, 5, 6, 7])
def test_mutations(make, position):
    tiling = make(256)
    pair = tiling.pairs[position]
    start = 2 ** pair[0] * pair[1]

    removed = Tiling(tiling.pairs[:position] + tiling.pairs[position + 1:], 256)
    verdict = validate_tiling(removed)
    assert (verdict.violation, verdict.integer) == ("gap", start)

    duplicated = Tiling(tiling.pairs + (pair,), 256)
    verdict = validate_tiling(duplicated)
    assert (verdict.violation, verdict.integer) == ("overlap", start)


def test_refinement_preserves_validity():
    tiling = table_one_tiling(256)
    for pair in tiling.pairs:
        refined = refine_tiling(tiling, pair)
        assert validate_tiling(refined).valid
        assert len(refined.pairs) == len(tiling.pairs) + 1


def test_refine_errors():
    with pytest.raises(InvalidTilingPair):
        refine_tiling(singleton_tiling(4), (0, 1))
    with pytest.raises(InvalidTilingPair):
        refine_tiling(classic_tiling(4), (3, 3))


def test_horizon_crossed():
    with pytest.raises(HorizonCrossed):
        validate_tiling(Tiling(((3, 0),), 4))


def test_pairs_beyond_horizon_are_ignored():
    assert validate_tiling(Tiling(((1, 0), (1, 1), (2, 5)), 4)).valid


def test_bad_horizon():
    with pytest.raises(InvalidHorizon):
        Tiling(((0, 0),), 12)
    with pytest.raises(InvalidHorizon):
        table_one_tiling(128)


def test_parse_pairs():
    assert parse_pairs("0:0, 0:1,1:1,2:1") == ((0, 0), (0, 1), (1, 1), (2, 1))
    assert validate_tiling(Tiling(parse_pairs("0:0,0:1,1:1,2:1,3:1"), 16)).valid
    with pytest.raises(InvalidTilingPair):
        parse_pairs("0:0,1")
    with pytest.raises(InvalidTilingPair):
        parse_pairs("a:1")
    with pytest.raises(InvalidTilingPair):
        Tiling(((-1, 0),), 4)
