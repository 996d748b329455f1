"""Acceptance checks, one test per criterion; a summary line per criterion is printed at the end."""

import math
import os
import random
import time

import pytest

from fermatsieve import fixtures
from fermatsieve.compare import BOUND0, BOUND1, exceptional_consistency, parity_agreement, surviving_pairs, table3_row
from fermatsieve.deformation import lift_components, ring_maps_to, verify_level71_scenario, verify_level935_scenario
from fermatsieve.elliptic import CurveFp, SingularCurveError, count_points, reduce_and_ap, torsion_bound, trace_frobenius
from fermatsieve.frey import Triple, TripleError
from fermatsieve.intkernel import NonSimpleRootError, hensel_lift_root, primes_up_to, roots_mod
from fermatsieve.kraus import set_Anp, set_Ap, set_Tnp, tbar
from fermatsieve.localsolve import EMPTY, SOLVABLE, local_points_everywhere_n9, local_solvable
from fermatsieve.sieve import SieveConfig, eliminate_big_primes, full_report, kraus_eliminate, strong_irreducibility_witness
from oracles import exhaustive_roots, naive_count

ORDER = (115, 185, 295, 329, 935)
TRIPLES = {lv: Triple(*fixtures.TRIPLES[lv]) for lv in ORDER}


class Clock:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.1f}s, limit {self.limit}s"


def test_criterion_01_level71_scenario():
    with Clock(1.0):
        roots = []
        for cubic in fixtures.LEVEL71_CUBICS:
            above = [x for x in exhaustive_roots(list(cubic), 27) if x % 3 == 2]
            assert len(above) == 1
            roots.append(above[0])
        assert set(roots) == {11, 20}
        assert {r % 9 for r in roots} == {2}
        a5 = reduce_and_ap(fixtures.CURVE_142E1, 5)
        assert a5 == 2
        assert all((a5 - r) % 27 for r in roots)
        assert all((a5 - r) % 9 == 0 for r in roots)
        v = verify_level71_scenario()
        assert v.passed, v.first_failure


def test_criterion_02_level935_deformation():
    with Clock(1.0):
        comps = lift_components(list(fixtures.LEVEL935_P), 3, 2)
        quad = [c for c in comps if c.degree == 2]
        assert len(quad) == 1
        q = quad[0].component_poly
        assert (-q[1]) % 9 == 4 and q[0] % 9 == 7
        assert ring_maps_to(quad[0], 2) == []
        assert verify_level935_scenario().passed


def test_criterion_03_kraus_set_at_31():
    with Clock(1.0):
        t = Triple(11, 2**4, 5**2 * 17**2)
        assert set_Tnp(t, 9, 31).entries == (-32, -8, 8, 32)


def test_criterion_04_irreducibility_witnesses():
    with Clock(30.0):
        got = [strong_irreducibility_witness(TRIPLES[lv], 200) for lv in ORDER]
    assert got == [73, 73, 37, 109, 37]


def test_criterion_05_mod3_image_comparison():
    want_p0 = {115: {73, 163}, 185: {73, 307, 541}, 295: {37, 73, 163, 181, 199, 541}, 329: set(), 935: {37, 73, 307, 541}}
    want_p1 = {115: set(), 185: set(), 295: set(), 329: {109}, 935: set()}
    with Clock(60.0):
        for lv in ORDER:
            table3_row(TRIPLES[lv], 5000, 5000)
    workers = max(1, min(8, os.cpu_count() or 1))
    rows = {}
    with Clock(600.0):
        for lv in ORDER:
            rows[lv] = table3_row(TRIPLES[lv], BOUND0, BOUND1, workers=workers)
    assert 37 in rows[185].flagged
    mismatches = {}
    for lv in ORDER:
        got = (set(rows[lv].p0), set(rows[lv].p1))
        if got != (want_p0[lv], want_p1[lv]):
            mismatches[lv] = {"p0": sorted(got[0]), "p1": sorted(got[1])}
    assert not mismatches, f"computed sets differ from the reference: {mismatches}"


def test_criterion_06_parity():
    with Clock(30.0):
        for lv in ORDER:
            agree, total, bad = parity_agreement(TRIPLES[lv], 1000)
            assert total > 0 and agree == total, (lv, bad)


def test_criterion_07_local_solvability():
    entries = {115: (5, 11), 185: (19, 19), 295: (5, 5), 935: (5, 5)}
    with Clock(120.0):
        for lv, (l, p) in entries.items():
            assert local_solvable(TRIPLES[lv], l, p).outcome == EMPTY, (lv, l, p)
        for lv in ORDER:
            verdicts = local_points_everywhere_n9(TRIPLES[lv], 100)
            assert [v.p for v in verdicts] == primes_up_to(100)
            assert all(v.outcome == SOLVABLE for v in verdicts), lv


@pytest.mark.data
def test_criterion_08_large_prime_elimination(level_classes):
    want = {115: [5], 185: [5, 19], 295: [5, 7], 329: [5], 935: [5, 7]}
    with Clock(60.0):
        for lv in ORDER:
            t, cl = TRIPLES[lv], level_classes(lv)
            per_class, union = eliminate_big_primes(t, fixtures.TABLE1[lv]["p_max"], cl)
            assert sorted(union - {3}) == want[lv], lv
            for l, p in fixtures.TABLE1[lv]["kraus"]:
                hits = [f for f in cl if l in per_class[f.name] and kraus_eliminate(t, l, p, f)]
                assert hits, (lv, l, p)
            for l in {l for l, _ in fixtures.TABLE1[lv]["kraus"]}:
                ps = [p for l2, p in fixtures.TABLE1[lv]["kraus"] if l2 == l]
                for f in cl:
                    if l in per_class[f.name]:
                        assert any(kraus_eliminate(t, l, p, f) for p in ps), (lv, l, f.name)


@pytest.mark.data
def test_criterion_09_mod3_and_mod9(level_classes):
    want_classes = {115: ["d=1"], 185: ["d=1*"], 295: ["d=6"], 329: ["d=5", "d=6"], 935: ["d=11*"]}
    want_mod9 = {115: [2], 185: [2], 295: [13], 329: [5, 5], 935: []}
    with Clock(60.0):
        for lv in ORDER:
            cfg = SieveConfig(p_max=fixtures.TABLE1[lv]["p_max"], p0=fixtures.TABLE2[lv]["p0"])
            rep = full_report(TRIPLES[lv], cfg, level_classes(lv))
            t2 = rep["tables"]["table2"]
            assert sorted(t2["classes"]) == want_classes[lv], lv
            assert t2["mod9_primes"] == want_mod9[lv], lv
            assert rep["verdict"] == "complete", rep["gaps"]
            kinds = {(p["degree"], (p["eliminated_by"] or {}).get("kind")) for p in t2["pairs"]}
            if lv == 329:
                assert (6, "eisenstein") in kinds
            if lv == 935:
                assert (11, "deformation") in kinds
                assert all(p["eliminated_by"]["passed"] for p in t2["pairs"] if p["eliminated_by"]["kind"] == "deformation")


@pytest.mark.data
def test_criterion_10_exceptional_pairs(level_classes):
    for lv in ORDER:
        t = TRIPLES[lv]
        pairs = surviving_pairs(t, level_classes(lv), fixtures.TABLE1[lv]["p_max"], fixtures.TABLE2[lv]["p0"])
        assert pairs, lv
        for f, lam in pairs:
            res = exceptional_consistency(t, f, lam, 541)
            assert res["checked"] > 0 and res["consistent"], (lv, res["failures"])


def _random_curve(rng, p):
    while True:
        try:
            return CurveFp(p, *(rng.randrange(p) for _ in range(5)))
        except SingularCurveError:
            continue


def test_criterion_11_property_suites():
    rng = random.Random(11)
    big = [p for p in primes_up_to(20000) if p > 3]
    for _ in range(1000):
        p = rng.choice(big)
        a = trace_frobenius(_random_curve(rng, p))
        assert a * a <= 4 * p

    cases = 0
    while cases < 200:
        try:
            t = Triple(*(rng.choice([1, -1]) * rng.randrange(1, 500) for _ in range(3)))
        except TripleError:
            continue
        n = rng.choice([3, 5, 7, 9, 11, 13])
        p = rng.choice([q for q in primes_up_to(400) if q > 3 and t.product % q and n % q])
        A = set(set_Anp(t, n, p))
        assert all(-x in A for x in A) and A <= set(set_Ap(p))
        cases += 1

    for lv in ORDER:
        t = TRIPLES[lv]
        for p in primes_up_to(5000):
            if p % 3 == 1 and (3 * t.N0) % p:
                assert tbar(t, 9, p, method="isogeny") <= tbar(t, 3, p, method="isogeny"), (lv, p)

    polys = [[-2, 0, 0, 1], [1, 0, 1], [3, -1, 0, 0, 0, 1], [1, 2, 1]] + [list(c) for c in fixtures.LEVEL71_CUBICS]
    polys.append(list(fixtures.LEVEL935_P))
    for l in primes_up_to(243):
        for k in range(1, 6):
            m = l**k
            if m > 243:
                break
            for f in polys:
                roots_m = exhaustive_roots(f, m)
                assert roots_m == roots_mod(f, m)
                for r in exhaustive_roots(f, l):
                    simple = sum(i * c * r ** (i - 1) for i, c in enumerate(f) if i) % l != 0
                    if simple:
                        x = hensel_lift_root(f, r, l, k)
                        assert [y for y in roots_m if y % l == r] == [x]
                    else:
                        with pytest.raises(NonSimpleRootError):
                            hensel_lift_root(f, r, l, k)

    for p in primes_up_to(50):
        for _ in range(6):
            E = _random_curve(rng, p)
            assert count_points(E) == naive_count(p, E.ainvs)

    probes = [q for q in primes_up_to(60) if q > 3]
    assert torsion_bound(fixtures.TORSION6_CURVE, probes) == 6
    assert math.gcd(*(count_points(fixtures.TORSION6_CURVE.reduce(q)) for q in probes)) == 6
