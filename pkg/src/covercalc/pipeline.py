"""The covering tower over the Borromean rings and its certificate.

Starting from a standard link the stages are

    p (3) -> f (m) -> g (n) -> h (3) -> t (27)

where f, g, h are quotients by rotations of orders m, n, 3 followed by the
torus repair that brings axis branching back to {1,2}, and t is the
crystallographic 27-fold map.  Each stage records the branch inventory of
the composite covering so far.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

from covercalc import crystal
from covercalc.diagram import ColoredBraid
from covercalc.perm import transposition
from covercalc.permcalc import (
    BranchComponent,
    BranchInventory,
    BranchingType,
    compose_branching,
    pseudo_branch_double_cover,
    quotient_by_rotation,
    regular_representation,
    torus_modification,
)
from covercalc.rewrite import (
    BORROMEAN,
    WHITEHEAD,
    MoveLog,
    StandardLink,
    make_positive,
    make_tricolored,
    stabilize,
    standardize,
)

SCHEMA = "covercalc.tower"
SCHEMA_VERSION = 1
STAGE_NAMES = ("p", "f", "g", "h", "t")
DONE, SKIPPED = "DONE", "SKIPPED"
PASS, FAIL = "PASS", "FAIL"

# components of the stage-h inventory, grouped in annulus pairs
PAIRS = {
    BORROMEAN: (("A", "B"), ("V", "H"), ("T3.A", "T3.B")),
    WHITEHEAD: (("V", "H"), ("T3.A", "T3.B")),
}


class VariantMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Stage:
    name: str
    degree: int
    status: str
    inventory: BranchInventory | None = None
    reason: str = ""


@dataclass(frozen=True)
class Tower:
    stages: tuple[Stage, ...]
    m: int
    n: int
    variant: str

    def stage(self, name: str) -> Stage:
        return next(s for s in self.stages if s.name == name)

    @property
    def complete(self) -> bool:
        return all(s.status == DONE for s in self.stages)

    @property
    def total_degree(self) -> int:
        out = 1
        for s in self.stages:
            if s.status == DONE:
                out *= s.degree
        return out

    @property
    def last(self) -> Stage:
        return [s for s in self.stages if s.status == DONE][-1]


# ------------------------------------------------------------------ stages


def _p_inventory(sl: StandardLink) -> BranchInventory:
    simple = BranchingType.of(1, 2)
    comps = [BranchComponent(f"H{j}", simple, frozenset({"horizontal"})) for j in range(sl.n)]
    comps += [BranchComponent(f"V{j}", simple, frozenset({"vertical"})) for j in range(sl.m)]
    for v, h, e in _special_labels(sl):
        comps.append(BranchComponent(f"P{v}/{h}.{e}", simple, frozenset({"special"})))
    return BranchInventory(3, tuple(comps))


def _special_labels(sl: StandardLink):
    vindex = {c.label: j for j, c in enumerate(sl.verticals)}
    hindex = {c.label: j for j, c in enumerate(sl.horizontals)}
    for s in sl.specials:
        for e in range(s.closed):
            yield vindex[s.vertical], hindex[s.horizontal], e


def _closed_per_peanut(sl: StandardLink) -> int:
    counts = {s.closed for s in sl.specials}
    if len(counts) > 1:
        raise ValueError("peanuts disagree on their component count")
    return counts.pop() if counts else 0


def _stage_f(inv: BranchInventory, sl: StandardLink) -> BranchInventory:
    m, k = sl.m, _closed_per_peanut(sl)
    orbits = [[f"V{j}" for j in range(m)]]
    names = {"V0": "V"}
    for i in range(sl.n):
        for e in range(k):
            orbits.append([f"P{j}/{i}.{e}" for j in range(m)])
            names[f"P0/{i}.{e}"] = f"P{i}.{e}"
    q = quotient_by_rotation(inv, m, orbits, "T1", names=names)
    return torus_modification(q, "T1", m, new_labels=("VA", "VB"))


def _stage_g(inv: BranchInventory, sl: StandardLink) -> BranchInventory:
    n, k = sl.n, _closed_per_peanut(sl)
    orbits = [[f"H{i}" for i in range(n)]]
    names = {"H0": "H"}
    for e in range(k):
        orbits.append([f"P{i}.{e}" for i in range(n)])
        names[f"P0.{e}"] = f"P.{e}"
    q = quotient_by_rotation(inv, n, orbits, "T2", names=names)
    return torus_modification(q, "T2", n, new_labels=("HA", "HB"))


def _stage_h(inv: BranchInventory, variant: str) -> BranchInventory:
    # The added unbranched circles that complete the 3-fold symmetry carry
    # only local degree 1 and are not branch components.
    if variant == BORROMEAN:
        orbits = [["VA", "HA", "P.0"], ["VB", "HB", "P.1"]]
        names = {"VA": "A", "VB": "B"}
    else:
        orbits = [["V", "VA", "VB"], ["H", "HA", "HB"]]
        names = {}
    q = quotient_by_rotation(inv, 3, orbits, "T3", names=names)
    out = torus_modification(q, "T3", 3)
    pairs = PAIRS[variant]
    comps = []
    for c in out.components:
        idx = next(i for i, pr in enumerate(pairs) if c.label in pr)
        comps.append(c.with_(tags=c.tags | {f"pair{idx}"}))
    return BranchInventory(out.degree, tuple(comps))


def apply_t(inv: BranchInventory, variant: str, cover: crystal.CrystalCover | None = None) -> BranchInventory:
    """Compose with the 27-fold map onto the Borromean rings.

    Over a Borromean component the local degrees are those of the upper
    branch data on each preimage point, multiplied by the local degree of
    ``t`` there; preimage points off the upper branch set contribute 1s.
    """
    if variant != BORROMEAN:
        raise VariantMismatch("the map t is defined over the Borromean rings only")
    cover = cover or crystal.default_cover()
    report = crystal.covering_degree_t(cover)
    sublink = crystal.doubled_borromean_sublink(cover)
    if not sublink.passed:
        raise ValueError("doubled Borromean sublink certificate failed")
    upper: dict[int, BranchingType] = {}
    for (pseudo_label, branch_label), pair in zip(PAIRS[BORROMEAN], sublink.pairs):
        upper[pair.pseudo.id] = inv[pseudo_label].type
        upper[pair.branch.id] = inv[branch_label].type
    free = BranchingType((1,) * inv.degree)
    comps = []
    for comp in cover.downstairs_components():
        parts: list[int] = []
        for point in report.fibers[comp]:
            parts += compose_branching(upper.get(point.orbit, free), point.local_degree).parts
        comps.append(BranchComponent(f"X{comp}", BranchingType(tuple(parts)), frozenset({"borromean"})))
    return BranchInventory(inv.degree * report.degree, tuple(comps))


def build_tower(sl: StandardLink) -> Tower:
    stages = [Stage("p", 3, DONE, _p_inventory(sl))]
    steps = [
        ("f", sl.m, lambda inv: _stage_f(inv, sl)),
        ("g", sl.n, lambda inv: _stage_g(inv, sl)),
        ("h", 3, lambda inv: _stage_h(inv, sl.variant)),
        ("t", 27, lambda inv: apply_t(inv, sl.variant)),
    ]
    reason = ""
    for name, degree, fn in steps:
        if not reason:
            if name in "fg" and degree < 2:
                reason = f"degenerate input: {'m' if name == 'f' else 'n'}={degree}"
            elif name == "t" and sl.variant != BORROMEAN:
                reason = f"variant {sl.variant}: t needs the Borromean orbifold"
        if reason:
            stages.append(Stage(name, degree, SKIPPED, None, reason))
            continue
        stages.append(Stage(name, degree, DONE, fn(stages[-1].inventory)))
    return Tower(tuple(stages), sl.m, sl.n, sl.variant)


# ------------------------------------------------------------- certificate


@dataclass(frozen=True)
class Claim:
    id: str
    statement: str
    status: str
    evidence: str
    reason: str = ""


@dataclass(frozen=True)
class Certificate:
    claims: tuple[Claim, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.claims)

    def claim(self, cid: str) -> Claim:
        return next(c for c in self.claims if c.id == cid)


def _check(cid: str, statement: str, ok: bool, evidence: str) -> Claim:
    return Claim(cid, statement, PASS if ok else FAIL, evidence)


def final_certificate(tower: Tower) -> Certificate:
    claims: list[Claim] = []
    done = {s.name for s in tower.stages if s.status == DONE}
    skip = {s.name: s.reason for s in tower.stages if s.status == SKIPPED}

    degrees = tuple(s.degree for s in tower.stages)
    claims.append(
        _check("stage-degrees", "stage degrees are (3, m, n, 3, 27)", degrees == (3, tower.m, tower.n, 3, 27), f"{degrees}")
    )
    repaired = [s for s in tower.stages if s.name in "pfgh" and s.status == DONE]
    observed = {s.name: sorted(s.inventory.local_degrees()) for s in repaired}
    claims.append(
        _check(
            "simple-branching",
            "every stage before t has local degrees in {1,2}",
            all(set(v) <= {1, 2} for v in observed.values()),
            json.dumps(observed, sort_keys=True),
        )
    )

    if "h" in done:
        h = tower.stage("h").inventory
        pairs = PAIRS[tower.variant]
        expected = 2 * len(pairs)
        claims.append(
            _check(
                "doubled-link",
                f"stage h branch set has {expected} components in {len(pairs)} pairs, types in {{1,2}}",
                len(h) == expected
                and sorted(h.labels) == sorted(x for pr in pairs for x in pr)
                and h.local_degrees() <= {1, 2},
                f"{len(h)} components: {' '.join(h.labels)}",
            )
        )
    else:
        claims.append(Claim("doubled-link", "stage h branch set is the doubled link", SKIPPED, "", skip.get("h", "")))

    if "t" in done:
        final = tower.stage("t").inventory
        claims.append(
            _check(
                "i",
                "final branch set is the Borromean rings",
                len(final) == 3 and all("borromean" in c.tags for c in final.components),
                f"{len(final)} components: {' '.join(final.labels)}",
            )
        )
        seen = sorted(final.local_degrees())
        claims.append(_check("ii", "final branching type is within {1,2,4}", set(seen) <= {1, 2, 4}, f"observed {seen}"))
        total = tower.total_degree
        claims.append(
            _check(
                "iii",
                "[G1:G] = 3 and [U:G] equals the total degree",
                tower.stage("p").degree == 3 and total == 243 * tower.m * tower.n == final.degree,
                f"[G1:G]={tower.stage('p').degree} [U:G]={total} 243*m*n={243 * tower.m * tower.n}",
            )
        )
    else:
        reason = skip.get("t", "")
        for cid, text in [
            ("i", "final branch set is the Borromean rings"),
            ("ii", "final branching type is within {1,2,4}"),
            ("iii", "[G1:G] = 3 and [U:G] equals the total degree"),
        ]:
            claims.append(Claim(cid, text, SKIPPED, "", reason))

    claims.append(_regular_cover_claim(tower.stage("p").inventory))
    return Certificate(tuple(claims))


def _regular_cover_claim(p_inv: BranchInventory) -> Claim:
    # Each branch component of p has a branch preimage (local degree 2) and a
    # pseudo preimage (local degree 1) upstairs.
    upstairs = BranchInventory(
        2,
        tuple(
            BranchComponent(f"{c.label}{suffix}", BranchingType.of(2), frozenset({tag}))
            for c in p_inv.components
            for suffix, tag in (("~", "branch"), ("'", "pseudo"))
        ),
    )
    datum, u_inv = pseudo_branch_double_cover(upstairs)
    meridian = regular_representation(transposition(3, 1, 2))
    pseudo = sorted(c.label for c in upstairs.tagged("pseudo"))
    g1_gprime = datum.index
    gprime_g0 = 6 // g1_gprime
    ok = (
        g1_gprime == 2
        and gprime_g0 == 3
        and meridian.cycle_type() == (2, 2, 2)
        and sorted(u_inv.labels) == pseudo
    )
    return _check(
        "iv",
        "index-2 sign datum, meridians act as three transpositions, u branched over the pseudo components",
        ok,
        f"[G1:G']={g1_gprime} [G':G0]={gprime_g0} meridian={meridian} cycle type "
        f"{'+'.join(map(str, meridian.cycle_type()))} u over {len(u_inv)} pseudo components",
    )


# ---------------------------------------------------------------- reports


def _type_counts(t: BranchingType) -> dict[str, int]:
    return {str(k): v for k, v in sorted(Counter(t.parts).items())}


def _inventory_json(inv: BranchInventory | None):
    if inv is None:
        return None
    return {
        "degree": inv.degree,
        "components": [
            {"label": c.label, "type": _type_counts(c.type), "tags": sorted(c.tags)} for c in inv.components
        ],
    }


def report_json(tower: Tower, cert: Certificate) -> dict:
    return {
        "schema": SCHEMA,
        "version": SCHEMA_VERSION,
        "variant": tower.variant,
        "m": tower.m,
        "n": tower.n,
        "total_degree": tower.total_degree,
        "stages": [
            {
                "name": s.name,
                "degree": s.degree,
                "status": s.status,
                "reason": s.reason,
                "inventory": _inventory_json(s.inventory),
            }
            for s in tower.stages
        ],
        "certificate": {
            "passed": cert.passed,
            "claims": [
                {"id": c.id, "statement": c.statement, "status": c.status, "evidence": c.evidence, "reason": c.reason}
                for c in cert.claims
            ],
        },
    }


def report_text(tower: Tower, cert: Certificate) -> str:
    lines = [f"tower variant={tower.variant} m={tower.m} n={tower.n} total_degree={tower.total_degree}"]
    for s in tower.stages:
        if s.status == SKIPPED:
            lines.append(f"stage {s.name}\tdegree={s.degree}\tSKIPPED\t{s.reason}")
            continue
        inv = s.inventory
        lines.append(f"stage {s.name}\tdegree={s.degree}\tcomponents={len(inv)}\tlocal_degrees={sorted(inv.local_degrees())}")
        if len(inv) <= 8:
            for c in inv.components:
                counts = " ".join(f"{k}x{v}" for k, v in _type_counts(c.type).items())
                lines.append(f"  {c.label}\t{counts}")
    for c in cert.claims:
        tail = c.evidence if c.status != SKIPPED else c.reason
        lines.append(f"claim {c.id}\t{c.status}\t{c.statement}\t{tail}")
    lines.append(f"certificate {'PASS' if cert.passed else 'FAIL'}")
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------- end to end


def prepare(cb: ColoredBraid, variant: str = BORROMEAN) -> tuple[StandardLink, MoveLog]:
    """Standard link of a colored braid, stabilizing a crossingless input first."""
    log = MoveLog()
    if not cb.word.letters:
        cb, entry = stabilize(cb)
        log = MoveLog((entry,))
    cb, l1 = make_tricolored(cb)
    cb, l2 = make_positive(cb)
    link, l3 = standardize(cb, variant)
    return link, log + l1 + l2 + l3


def run(cb: ColoredBraid, variant: str = BORROMEAN):
    link, log = prepare(cb, variant)
    tower = build_tower(link)
    return link, log, tower, final_certificate(tower)
