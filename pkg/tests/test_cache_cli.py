import json
import logging
import random
from fractions import Fraction

import pytest

from tiltlab import cli
from tiltlab.cache import DiskCache
from tiltlab.tldiag import TLMorphism, enumerate_matchings


def random_morphism(rng, n):
    f = TLMorphism.zero(n, n)
    for mt in rng.sample(enumerate_matchings(n, n), k=3):
        f = f + TLMorphism.from_matching(mt, coeff=Fraction(rng.randint(-50, 50), rng.randint(1, 9)))
    return f


def test_round_trip(tmp_path):
    rng = random.Random(0)
    cache = DiskCache(tmp_path)
    saved = {}
    for i in range(100):
        f = random_morphism(rng, rng.randint(3, 5))
        ring = rng.choice(["Q", 3])
        if ring == 3:
            f = TLMorphism(f.m, f.n, 3, {k: c.numerator * pow(c.denominator, -1, 3) for k, c in f.terms.items()
                                          if c.denominator % 3})
        cache.put(("t", ring, i), f)
        saved[i, ring] = f
    fresh = DiskCache(tmp_path)
    for (i, ring), f in saved.items():
        assert fresh.get(("t", ring, i)) == f
    assert fresh.hits == 100


@pytest.mark.parametrize("damage", ["truncate", "flip", "garbage"])
def test_corrupt_entry_is_rebuilt(tmp_path, caplog, damage):
    cache = DiskCache(tmp_path)
    f = random_morphism(random.Random(1), 4)
    path = cache.put(("t", "Q", 5), f)
    text = path.read_text()
    if damage == "truncate":
        path.write_text(text[: len(text) // 2])
    elif damage == "flip":
        doc = json.loads(text)
        doc["payload"]["terms"][0][1] = "12345"
        path.write_text(json.dumps(doc))
    else:
        path.write_bytes(b"\x00\xff")
    built = []
    with caplog.at_level(logging.WARNING):
        g = cache.get_or_build(("t", "Q", 5), lambda: built.append(1) or f)
    assert g == f and built == [1]
    assert "corrupt" in caplog.text
    assert DiskCache(tmp_path).get(("t", "Q", 5)) == f


def test_warm_hit_skips_build(tmp_path):
    cache = DiskCache(tmp_path)
    f = random_morphism(random.Random(2), 3)
    cache.get_or_build(("t", "Q", 1), lambda: f)
    g = DiskCache(tmp_path).get_or_build(("t", "Q", 1), lambda: pytest.fail("rebuilt"))
    assert g == f


def test_env_var(tmp_path, monkeypatch):
    monkeypatch.setenv("TILTLAB_CACHE", str(tmp_path / "c"))
    assert DiskCache().root == tmp_path / "c"


def test_cli_padic(capsys):
    assert cli.main(["padic", "info", "--p", "3", "--v", "23"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["digits"] == [2, 1, 2] and out["vertex"] == 22 and out["eve"] == 18


def test_cli_usage_errors(capsys):
    assert cli.main(["padic", "info", "--p", "4", "--v", "3"]) == 2
    assert cli.main(["frobnicate"]) == 2
    assert cli.main(["rewrite", "--p", "3", "--word", "D{0} D{3,2} @ 90"]) == 2
    assert cli.main(["verify", "--p", "3", "--suite", "nope"]) == 2
    assert cli.main(["projector", "--p", "3", "--v", "30", "--max-strands", "10", "--no-cache"]) == 2


def test_cli_rewrite(capsys):
    assert cli.main(["rewrite", "--p", "3", "--word", "D{0} U{0} @ 10", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out == {"source": 10, "target": 10, "terms": [{"ups": [[1, 0]], "downs": [[1, 0]], "coeff": "1"}]}


def test_cli_rewrite_out_of_fuel(capsys):
    assert cli.main(["rewrite", "--p", "3", "--word", "D{2,1} D{1,0} @ 36", "--fuel", "0"]) == 1


def test_cli_projector_cache(tmp_path, capsys):
    out = tmp_path / "f.json"
    args = ["projector", "--p", "3", "--v", "5", "--rational", "--cache-dir", str(tmp_path / "c"), "--out", str(out)]
    assert cli.main(args) == 0
    assert (tmp_path / "c" / "pqjw3-Q-5.json").exists()
    first = out.read_text()
    assert cli.main(args) == 0
    assert out.read_text() == first
    assert TLMorphism.from_json(json.loads(first)).m == 4


def test_cli_quiver_and_characters(tmp_path, capsys):
    assert cli.main(["quiver", "--p", "3", "--vmax", "23", "--dot", str(tmp_path / "q.dot")]) == 0
    assert (tmp_path / "q.dot").read_text().startswith("digraph")
    assert cli.main(["characters", "--p", "3", "--vmax", "10"]) == 0
    assert capsys.readouterr().out.count("\n") >= 11


def test_cli_verify(tmp_path, capsys):
    assert cli.main(["verify", "--p", "5", "--suite", "quiver", "--suite", "padic", "--json", str(tmp_path / "r.json")]) == 0
    doc = json.loads((tmp_path / "r.json").read_text())
    assert doc["passed"] is True


def test_cli_report(tmp_path, capsys):
    assert cli.main(["report", "--p", "3", "--vmax", "30", "--out", str(tmp_path)]) == 0
    names = sorted(x.name for x in tmp_path.iterdir())
    assert names == ["characters_p3.csv", "characters_p3.png", "quiver_p3.csv", "quiver_p3.png"]
