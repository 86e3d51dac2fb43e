import random

from ggeom.integrability import default_seed
from ggeom.properties import SUITES, random_gvector, run_suites, DEFAULT_CHART


def test_all_suites_pass():
    r = run_suites(seed=0, cases=20)
    assert r.passed and len(r.checks) == len(SUITES)


def test_subset_keeps_streams():
    full = run_suites(seed=3, cases=5).data["results"]
    one = run_suites(seed=3, cases=5, names=["jacobi"]).data["results"]
    assert [r for r in full if r.name == "jacobi"] == one


def test_same_seed_same_draws():
    a = random_gvector(random.Random(11), DEFAULT_CHART)
    b = random_gvector(random.Random(11), DEFAULT_CHART)
    assert a == b


def test_default_seed(monkeypatch):
    monkeypatch.delenv("GG_SEED", raising=False)
    assert default_seed() == 0
    monkeypatch.setenv("GG_SEED", "42")
    assert default_seed() == 42


def test_failure_is_reported():
    from ggeom.properties import _run

    res = _run("demo", "always fails", 3, random.Random(0), lambda rng: "boom")
    assert res.failures == 3 and res.witness == "case 0: boom"
