import json

import pytest

from covercalc.diagram import Color, parse_braid, propagate_coloring
from covercalc.permcalc import BranchInventory
from covercalc.pipeline import (
    FAIL,
    PASS,
    SKIPPED,
    VariantMismatch,
    apply_t,
    build_tower,
    final_certificate,
    prepare,
    report_json,
    report_text,
    run,
)
from covercalc.rewrite import (
    BORROMEAN,
    PEANUT,
    WHITEHEAD,
    Comp,
    Incidence,
    Special,
    StandardLink,
    standardize,
)

R, Y, B = Color.R, Color.Y, Color.B


def synthetic_link(m, n, variant=BORROMEAN):
    hs = tuple(Comp(f"H{i}", R) for i in range(n))
    vs = tuple(Comp(f"V{j}", Y) for j in range(m))
    template, closed = PEANUT[variant]
    specials = tuple(Special(v.label, h.label, template, closed, "expanded") for v in vs for h in hs)
    incs = tuple(Incidence(v.label, h.label, "special") for v in vs for h in hs)
    return StandardLink(n, m, variant, hs, vs, specials, incs)


@pytest.fixture(scope="module")
def trefoil_run():
    cb = propagate_coloring(parse_braid("strands=2 s1 s1 s1"), [R, Y])
    return run(cb)


def test_stage_degrees_and_total(trefoil_run):
    link, _, tower, _ = trefoil_run
    assert [s.degree for s in tower.stages] == [3, link.m, link.n, 3, 27]
    assert tower.total_degree == 243 * link.m * link.n
    for s in tower.stages:
        assert s.inventory.degree == _prefix_degree(tower, s.name)


def _prefix_degree(tower, name):
    out = 1
    for s in tower.stages:
        out *= s.degree
        if s.name == name:
            return out


def test_m2_n3_synthetic():
    tower = build_tower(synthetic_link(2, 3))
    assert tower.total_degree == 3 * 2 * 3 * 3 * 27 == 1458
    cert = final_certificate(tower)
    assert cert.passed
    assert cert.claim("iii").status == PASS
    assert "[U:G]=1458" in cert.claim("iii").evidence
    assert tower.stage("t").inventory.local_degrees() <= {1, 2, 4}


def test_repairs_keep_simple_branching(trefoil_run):
    _, _, tower, _ = trefoil_run
    for name in "pfgh":
        assert tower.stage(name).inventory.local_degrees() <= {1, 2}
    assert 4 in tower.stage("t").inventory.local_degrees()


def test_stage_h_is_doubled_borromean(trefoil_run):
    _, _, tower, _ = trefoil_run
    h = tower.stage("h").inventory
    assert len(h) == 6
    pairs = {}
    for c in h.components:
        tag = next(t for t in c.tags if t.startswith("pair"))
        pairs.setdefault(tag, []).append(c.label)
    assert sorted(len(v) for v in pairs.values()) == [2, 2, 2]


@pytest.mark.parametrize("m,n", [(2, 3), (4, 5), (6, 6)])
def test_stage_h_independent_of_input(m, n):
    h = build_tower(synthetic_link(m, n)).stage("h").inventory
    assert sorted(h.labels) == sorted(["A", "B", "V", "H", "T3.A", "T3.B"])
    assert h.local_degrees() <= {1, 2}


def test_after_g_has_three_horizontal_three_vertical(trefoil_run):
    _, _, tower, _ = trefoil_run
    g = tower.stage("g").inventory
    assert set(g.labels) == {"V", "VA", "VB", "H", "HA", "HB", "P.0", "P.1"}


def test_whitehead_stops_after_h():
    cb = propagate_coloring(parse_braid("strands=2 s1 s1 s1"), [R, Y])
    link, _, tower, cert = run(cb, WHITEHEAD)
    assert tower.stage("t").status == SKIPPED
    h = tower.stage("h").inventory
    assert len(h) == 4 and h.local_degrees() <= {1, 2}
    assert cert.claim("i").status == SKIPPED
    assert cert.passed
    with pytest.raises(VariantMismatch):
        apply_t(h, WHITEHEAD)


def test_degenerate_m_zero_truncates():
    cb = propagate_coloring(parse_braid("strands=3"), [R, Y, B])
    link, _ = standardize(cb)
    tower = build_tower(link)
    assert [s.status for s in tower.stages[1:]] == [SKIPPED] * 4
    assert "m=0" in tower.stage("f").reason
    cert = final_certificate(tower)
    assert all(c.status != FAIL for c in cert.claims)


def test_identity_braid_is_stabilized():
    cb = propagate_coloring(parse_braid("strands=3"), [R, Y, B])
    link, log, tower, cert = run(cb)
    assert log.entries[0].name == "stabilize"
    assert (link.m, link.n) == (6, 6)
    assert tower.complete
    assert cert.passed


def test_certificate_claims(trefoil_run):
    _, _, tower, cert = trefoil_run
    assert cert.passed
    assert [c.id for c in cert.claims][-4:] == ["i", "ii", "iii", "iv"]
    assert "[G1:G]=3" in cert.claim("iii").evidence
    iv = cert.claim("iv").evidence
    assert "[G1:G']=2" in iv and "[G':G0]=3" in iv and "2+2+2" in iv


def test_reports_are_reproducible(trefoil_run):
    cb = propagate_coloring(parse_braid("strands=2 s1 s1 s1"), [R, Y])
    _, _, tower2, cert2 = run(cb)
    _, _, tower, cert = trefoil_run
    assert json.dumps(report_json(tower, cert), sort_keys=True) == json.dumps(report_json(tower2, cert2), sort_keys=True)
    assert report_text(tower, cert) == report_text(tower2, cert2)


def test_report_json_shape(trefoil_run):
    _, _, tower, cert = trefoil_run
    doc = report_json(tower, cert)
    assert doc["schema"] == "covercalc.tower" and doc["version"] == 1
    assert [s["name"] for s in doc["stages"]] == ["p", "f", "g", "h", "t"]
    final = doc["stages"][-1]["inventory"]
    for comp in final["components"]:
        assert sum(int(k) * v for k, v in comp["type"].items()) == final["degree"]


def test_prepare_matches_standardize_on_nonempty():
    cb = propagate_coloring(parse_braid("strands=2 s1 s1 s1"), [R, Y])
    a, _ = prepare(cb)
    b, _ = standardize(cb)
    assert a == b


def test_inventory_text_roundtrip(trefoil_run):
    _, _, tower, _ = trefoil_run
    for s in tower.stages:
        assert BranchInventory.parse(s.inventory.serialize()) == s.inventory
