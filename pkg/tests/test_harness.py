from gitmilnor.corpus import CorpusItem, CorpusSpec, generate
from gitmilnor.harness import HarnessConfig, check_assoc_item, check_gradient_item, run_harness
from gitmilnor.polycore import parse_poly
from gitmilnor.stability import SearchConfig

SMALL = HarnessConfig(SearchConfig(frame_budget=3), lambda_bound=3)


def item(text, family="random-sparse"):
    F = parse_poly(text)
    return CorpusItem(0, family, F.n, F.homogeneous_degree(), F)


def test_unstable_binary_item():
    out = check_gradient_item(item("x^2*y"), SMALL)
    assert out["violations"] == []
    assert out["binary_status"] == "unstable"
    assert out["forward"] > 0 and out["backward"] > 0


def test_stable_binary_item_has_no_gradient_destabilizer():
    out = check_gradient_item(item("x^3+y^3"), SMALL)
    assert out["violations"] == [] and out["gradient_unstable_frames"] == 0


def test_fermat_item():
    out = check_gradient_item(item("x^3+y^3+z^3", "fermat"), SMALL)
    assert out["violations"] == []


def test_disjoint_item():
    out = check_gradient_item(item("x^3+x*y^2+z^3", "disjoint-sums"), SMALL)
    assert out["violations"] == [] and out["decomposition"] == [[0, 1], [2]]


def test_assoc_item_sum_of_squares():
    gens = (parse_poly("x^2+y^2"), parse_poly("x*y"))
    it = CorpusItem(0, "random-regular", 2, 3, None, gens)
    out = check_assoc_item(it, HarnessConfig(SearchConfig(frame_budget=0), lambda_bound=6))
    assert out["violations"] == [] and out["m0"] == [[0, 2]]
    assert out["checks"] == 6


def test_assoc_fermat_m0_balanced():
    items = generate(CorpusSpec("fermat", (2, 3), (3, 4), None))
    res = run_harness("assoc", CorpusSpec("fermat"), SMALL, items=items)
    assert res["violations"] == []
    for r, it in zip(res["items"], items):
        assert r["m0"] == [[it.degree - 2] * it.n]


def test_run_gradient_families():
    for family, n in (("random-smooth", (2, 3)), ("random-sparse", (2, 3)), ("disjoint-sums", (3,))):
        res = run_harness("gradient", CorpusSpec(family, n, (3,), 4, seed=1), SMALL)
        assert res["summary"]["violations"] == 0 and res["reproduce"] is None


def test_threads_env_gives_same_items(monkeypatch):
    spec = CorpusSpec("random-sparse", (2,), (4,), 6, seed=2)
    a = run_harness("gradient", spec, SMALL)
    monkeypatch.setenv("GITMILNOR_THREADS", "2")
    b = run_harness("gradient", spec, SMALL)
    assert a["items"] == b["items"]
