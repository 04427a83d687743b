from __future__ import annotations

import json

import pytest

from gosset import DomainError, canonical
from gosset import steiner as S
from gosset.catalog import enumerate_lines, gieser
from gosset.inscribed import FANO_BLOCKS, fano_structure, sample_simplexes
from gosset.picard import sum_classes


@pytest.mark.parametrize("name", sorted(S.STEINER_SPECS))
def test_named_systems_pass(name):
    sys_ = S.build_steiner(name)
    rep = S.verify_design(sys_)
    assert rep.passed, rep.counterexample
    assert S.is_weyl_invariant(sys_)
    r, k, c, m = S.STEINER_SPECS[name]
    L = enumerate_lines(r)
    assert all(sum_classes((L[i] for i in b), r) == m * canonical(r) for b in sys_.blocks)


def test_block_counts():
    counts = {n: len(S.build_steiner(n).blocks) for n in S.STEINER_SPECS}
    assert counts == {"SA2S7": 28, "SA2S8": 120, "SB3S6": 45, "SB3S8": 2240, "SC4S7": 630}


def test_sa2s7_pairs_are_gieser_pairs():
    L = enumerate_lines(7)
    for a, b in S.build_steiner("SA2S7").blocks:
        assert gieser(L[a]) == L[b]


def test_sb3s6_brute_force_oracle():
    brute = S.brute_force_triplets(6)
    assert brute == list(S.build_steiner("SB3S6").blocks)
    assert len(brute) < S.classical_block_count(27) == 117


def test_root_triples_sum_to_zero():
    rs = S.root_steiner()
    assert S.verify_design(rs).passed
    assert len(rs.blocks) == 2240


def test_broken_system_reports_counterexample():
    good = S.build_steiner("SB3S6")
    broken = S.SteinerSystem(good.name, good.r, good.k, good.c, good.blocks[1:], good.catalog, good.block_sum)
    rep = S.verify_design(broken)
    assert not rep.passed and "lies in 0 blocks" in rep.counterexample
    wrong = S.SteinerSystem(good.name, good.r, good.k, 0, good.blocks, good.catalog)
    assert not S.verify_design(wrong).passed


def test_fano_checker():
    assert S.verify_fano_steiner(range(7), FANO_BLOCKS).passed
    rep = S.verify_fano_steiner(range(7), FANO_BLOCKS[:6])
    assert not rep.passed and rep.counterexample.startswith("pair")
    assert not S.verify_fano_steiner(range(6), FANO_BLOCKS).passed


def test_sampled_fano_structures():
    for s in sample_simplexes(8, 6, 1, 100, seed=42):
        f = fano_structure(s)
        assert S.verify_fano_steiner(f.lines, f.blocks).passed


def test_json_export_and_unknown_name():
    obj = json.loads(S.build_steiner("SB3S6").dumps())
    assert sorted(obj) == ["blocks", "c", "k", "name"]
    assert obj["name"] == "SB3S6" and obj["k"] == 3 and obj["c"] == 1 and len(obj["blocks"]) == 45
    with pytest.raises(DomainError):
        S.build_steiner("SX9S9")
