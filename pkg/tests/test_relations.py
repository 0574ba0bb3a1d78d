import json

import jsonschema
import pytest

from superyangian.context import make_context
from superyangian.current import basis, gr_leading_symbol
from superyangian.gauss import gauss_decompose
from superyangian.pbw import supercommutator
from superyangian.relations import (
    INVARIANTS, READINGS, REGISTRY, REPORT_SCHEMA, Caps, Checker, FamilyNotApplicable, RunConfig, check_family,
    confluence_check, family_ids, full_suite, gr_rtt_check, gr_structure_check, strip_timing,
)

MANIFEST = [
    "rtt", "tiju-tkl", "commurelation",
    "dd0-de", "dd0-df", "dd0-ee", "dd0-ff", "dd0-ddp", "dd0-dd",
    "d1e1", "e1d2", "d2e1", "d1f1", "f1d2", "d2f1", "e1f1", "e1e1", "f1f1", "FF",
    "D1F2", "F1D3", "D3F2", "D3F31", "F1E2", "F1F2", "F2F3", "F1F31", "u0-coeff", "F1F31-1", "F1F31-2",
    "D1E2", "D3E1", "E1F2", "D3E2", "D3E13", "D1E13", "E1E2", "61c", "61d",
    "EEFF", "gde", "gdf", "gef", "gee", "gff", "gee-1", "gff-1",
    "serre-E", "serre-F", "super-E", "super-F", "superserre-E", "superserre-F", "rst-coeffi", "rtt-coeffi-F",
    "coeffi-d", "coeffi-d-1", "coeffi-d-2", "p-daeb", "p-dafb", "p-eafb", "p-eaea", "p-fafa", "p-ee", "p-ff",
    "pc-ee", "pc-ff", "coeffi-serre-E", "coeffi-serre-F", "coeffi-super-E", "coeffi-super-F",
    "coeffi-superserre-E", "coeffi-superserre-F",
    "inj", "inj-1", "inj-2", "inj-3", "inj-4", "inj-5", "inj-6", "inj-7", "inj-8",
]


def test_registry_manifest():
    assert family_ids() == MANIFEST
    for fid, fam in REGISTRY.items():
        assert fam.id == fid and fam.group


def test_readings_cover_ambiguous_sums():
    for key in ("D3F31", "61d"):
        assert key in READINGS


@pytest.mark.parametrize("cfg,mu", [((3, 1, 1, "01"), (1, 1)), ((5, 2, 1, "010"), (2, 1)),
                                     ((2, 1, 2, "101"), (1, 1, 1))])
def test_coeffi_d(cfg, mu):
    out = check_family(make_context(*cfg), mu, "coeffi-d")
    assert out["checked"] > 0 and out["failures"] == []


def test_e1f1_on_one_one(c11):
    out = check_family(c11, (1, 1), "e1f1", R=3)
    assert out["checked"] > 0 and out["failures"] == []


def test_quartic_serre_char_two():
    ctx = make_context(2, 2, 2, "0101")
    out = check_family(ctx, (1, 1, 1, 1), "coeffi-superserre-F", R=3, R_gen=2)
    assert out["checked"] > 0 and out["failures"] == []


def test_not_applicable(c21):
    with pytest.raises(FamilyNotApplicable):
        check_family(c21, (1, 1, 1), "coeffi-superserre-E")
    with pytest.raises(FamilyNotApplicable):
        check_family(c21, (1, 1, 1), "no-such-family")
    with pytest.raises(FamilyNotApplicable):
        check_family(c21, (3,), "d1e1")
    with pytest.raises(FamilyNotApplicable):
        full_suite(RunConfig(5, 2, 1, "010", (2, 1), families=("D1F2",)))


def test_failures_are_sorted_and_witnessed():
    ctx = make_context(3, 1, 1, "01", fault="swap-sign")
    out = check_family(ctx, (1, 1), "rtt", R=2)
    assert out["failures"]
    first = out["failures"][0]
    assert first["indices"] and first["delta"] != "0"
    keys = [tuple(f["indices"]) for f in out["failures"]]
    assert len(keys) == len(set(keys))


def test_caps_from_gen_order():
    assert Caps.from_gen_order(3) == Caps(3, 2, 2)
    assert Caps.from_gen_order(1) == Caps(1, 1, 1)


def test_full_suite_one_one():
    cfg = RunConfig(3, 1, 1, "01", (1, 1), R=3, R_gen=3)
    rep = full_suite(cfg)
    jsonschema.validate(rep, REPORT_SCHEMA)
    assert rep["summary"]["ok"], rep["summary"]["failed"]
    for e in rep["families"]:
        assert e["checked"] > 0, e["id"]
    assert rep["config"]["mu"] == [1, 1] and rep["readings"] == READINGS
    again = full_suite(cfg)
    a = json.dumps(strip_timing(rep), sort_keys=True)
    b = json.dumps(strip_timing(again), sort_keys=True)
    assert a == b


def test_full_suite_fault_injection():
    rep = full_suite(RunConfig(3, 1, 1, "01", (1, 1), R=2, R_gen=2, fault="swap-sign"))
    assert not rep["summary"]["ok"] and rep["summary"]["failures"] >= 1
    jsonschema.validate(rep, REPORT_SCHEMA)


def test_parallel_matches_sequential():
    fams = ("e1f1", "d1e1", "coeffi-d-1", "gauss-roundtrip")
    one = full_suite(RunConfig(3, 1, 1, "01", (1, 1), families=fams))
    two = full_suite(RunConfig(3, 1, 1, "01", (1, 1), families=fams, jobs=2))
    one["config"].pop("families"), two["config"].pop("families")
    assert strip_timing(one)["families"] == strip_timing(two)["families"]


def test_invariant_suites_listed():
    assert {"gauss-roundtrip", "gauss-uniqueness", "gauss-recursion", "map-identities", "gr-rtt",
            "confluence", "odd-square"} <= set(INVARIANTS)


def test_gr_rtt_and_structure():
    ctx = make_context(3, 1, 1, "01")
    checked, bad = gr_rtt_check(ctx, 2)
    assert checked == 2 * 2 * 16 and not bad
    ctx = make_context(2, 2, 2, "0101")
    out = gr_structure_check(ctx, 2, (1, 1, 1, 1))
    assert out["checked"] > 0 and out["failures"] == []


def test_gr_bracket_examples():
    ctx = make_context(3, 2, 2, "0110")
    mu = (1, 1, 1, 1)
    g = gauss_decompose(ctx, mu, 2)
    c = Checker(ctx, mu, 2)

    def E(a, b, r):
        return g.E[(a, b)].entry(1, 1).coeff(r)

    def image(a, b, r):
        return basis(ctx, a, b, r - 1).scale(-1 if c.P(a, 1) else 1)

    # b = c and h = j: one term, signed by |j|_2 |h|_2 = 1 for the odd block 2 of 0110
    x = gr_leading_symbol(supercommutator(E(1, 2, 1), E(2, 3, 1)), 0)
    assert x == image(1, 3, 1).scale(-1)
    assert gr_leading_symbol(supercommutator(E(1, 2, 1), E(3, 4, 1)), 0).is_zero()


def test_confluence_small():
    checked, bad = confluence_check(make_context(2, 1, 1, "01"), words=30, seed=5)
    assert checked == 30 and not bad
