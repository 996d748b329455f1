import json
from importlib import resources

import jsonschema
import pytest

from fermatsieve import fixtures
from fermatsieve.frey import Triple
from fermatsieve.intkernel import ArithmeticInputError
from fermatsieve.kraus import set_Tp, survivor_primes
from fermatsieve.newforms import eigen_norm, primes_above
from fermatsieve.sieve import (
    SieveConfig,
    c3_point_search,
    full_report,
    kraus_eliminate,
    mod3_survivors,
    mod9_eliminate,
    report_json,
    strong_irreducibility_witness,
)

TRIPLES = {lv: Triple(*abc) for lv, abc in fixtures.TRIPLES.items()}
SCHEMA = json.loads(resources.files("fermatsieve").joinpath("report_schema.json").read_text())


def _cfg(level):
    return SieveConfig(p_max=fixtures.TABLE1[level]["p_max"], p0=fixtures.TABLE2[level]["p0"])


def test_irreducibility_witness_small_limit():
    assert strong_irreducibility_witness(TRIPLES[115], 50) is None
    assert strong_irreducibility_witness(TRIPLES[115], 73) == 73


def test_c3_point_is_a_point():
    t = TRIPLES[115]
    pt = c3_point_search(t, 60)
    assert pt is not None
    x, y, z = pt
    assert t.a * x**3 + t.b * y**3 + t.c * z**3 == 0


def test_report_without_data_is_incomplete_and_valid():
    rep = full_report(TRIPLES[115], _cfg(115), None)
    jsonschema.validate(rep, SCHEMA)
    assert rep["verdict"] == "incomplete"
    assert "no newform data" in rep["gaps"]


@pytest.mark.data
@pytest.mark.parametrize("level", fixtures.LEVELS)
def test_report_schema_and_determinism(level, level_classes):
    cl = level_classes(level)
    a = full_report(TRIPLES[level], _cfg(level), cl)
    b = full_report(TRIPLES[level], _cfg(level), cl)
    jsonschema.validate(a, SCHEMA)
    assert report_json(a) == report_json(b)
    assert a["verdict"] == "complete", a["gaps"]


@pytest.mark.data
@pytest.mark.parametrize("level", fixtures.LEVELS)
def test_witnesses_replay(level, level_classes):
    t = TRIPLES[level]
    cl = level_classes(level)
    by_name = {f.name: f for f in cl}
    rep = full_report(t, _cfg(level), cl)
    for w in rep["witnesses"]:
        if w["kind"] == "kraus":
            assert kraus_eliminate(t, w["l"], w["p"], by_name[w["class"]])
        elif w["kind"] == "mod9":
            f = by_name[w["cls"]]
            lam = next(l for l in primes_above(f, 3) if l.label == w["prime"])
            assert mod9_eliminate(t, f, lam, w["p"])
            assert all(eigen_norm(f, w["p"], a) % 9 for a in set_Tp(w["p"]))
        elif w["kind"] == "irreducibility":
            assert strong_irreducibility_witness(t, w["p"]) == w["p"]


@pytest.mark.data
def test_raising_p0_never_adds_survivors(level_classes):
    t = TRIPLES[329]
    cl = level_classes(329)
    sizes = []
    for p0 in (7, 13, 19, 31):
        n_p0, pairs = mod3_survivors(t, p0, cl, 23)
        alive = {(p.cls, p.prime) for p in pairs if p.eliminated_by is None}
        sizes.append(({f.name for f in n_p0}, alive))
    for (n1, a1), (n2, a2) in zip(sizes, sizes[1:]):
        assert n2 <= n1 and a2 <= a1


@pytest.mark.data
def test_survivor_prime_flag_only_adds(level_classes):
    for f in level_classes(185):
        lit = survivor_primes(f, 3)
        skip = survivor_primes(f, 3, skip_p_equal_l=True)
        assert set(lit) <= set(skip)


@pytest.mark.data
def test_kraus_needs_p_1_mod_l(level_classes):
    f = level_classes(185)[0]
    with pytest.raises(ArithmeticInputError):
        kraus_eliminate(TRIPLES[185], 5, 37, f)


@pytest.mark.data
def test_level_mismatch_rejected(level_classes):
    with pytest.raises(ArithmeticInputError):
        full_report(TRIPLES[115], _cfg(115), level_classes(185))
