import json
import subprocess
import sys

import pytest

from figures import rank3_example
from kshuffle.cli import ConfigError, main, parse_number, parse_weights
from kshuffle.tiling import dumps, loads, total_interactions, validate
from fractions import Fraction


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_helpers():
    assert parse_number("1/3", exact=True) == Fraction(1, 3)
    assert parse_number("0.2", exact=False) == 0.2
    assert parse_weights("uniform", 3, exact=True) == (1, 1, 1)
    assert parse_weights("2", 3, exact=False) == (2.0, 2.0, 2.0)
    with pytest.raises(ConfigError):
        parse_weights("1,2", 3, exact=False)
    with pytest.raises(ConfigError):
        parse_number("inf", exact=True)


def test_sample_schema(capsys):
    code, out, _ = run(capsys, "sample", "--rank", "3", "--colors", "3", "--t", "1", "--seed", "7")
    assert code == 0
    KT = loads(out)
    assert KT.rank == 3 and KT.k == 3 and all(validate(T) for T in KT.colors)


def test_sample_t0_has_no_interactions(capsys):
    code, out, _ = run(capsys, "sample", "--rank", "2", "--colors", "2", "--t", "0", "--seed", "1")
    assert code == 0 and total_interactions(loads(out)) == 0


def test_same_seed_same_bytes(tmp_path, capsys):
    outs = []
    for i in range(2):
        d, s = tmp_path / f"d{i}.json", tmp_path / f"s{i}.svg"
        assert main(["sample", "--rank", "12", "--colors", "2", "--t", "0.3", "--seed", "4",
                     "--out", str(d), "--svg", str(s)]) == 0
        outs.append((d.read_bytes(), s.read_bytes()))
    assert outs[0] == outs[1]


def test_env_seed(monkeypatch, capsys):
    monkeypatch.setenv("AZTEC_SEED", "99")
    _, a, _ = run(capsys, "sample", "--rank", "8", "--t", "0.5")
    _, b, _ = run(capsys, "sample", "--rank", "8", "--t", "0.5", "--seed", "99")
    assert a == b
    monkeypatch.setenv("AZTEC_SEED", "nope")
    assert run(capsys, "sample", "--rank", "2")[0] == 2


def test_config_file_and_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"rank": 4, "colors": 3, "t": "1/2", "seed": 5}))
    _, out, _ = run(capsys, "sample", "--config", str(cfg))
    assert loads(out).rank == 4 and loads(out).k == 3
    _, out, _ = run(capsys, "sample", "--config", str(cfg), "--rank", "2")
    assert loads(out).rank == 2
    cfg.write_text(json.dumps({"bogus": 1}))
    assert run(capsys, "sample", "--config", str(cfg))[0] == 2


def test_config_errors(capsys):
    assert run(capsys, "sample", "--rank", "2", "--t", "-1")[0] == 2
    assert run(capsys, "sample", "--rank", "2", "--c", "1,0")[0] == 2
    assert run(capsys, "enumerate", "--rank", "6", "--colors", "2")[0] == 2
    with pytest.raises(SystemExit):
        main(["verify", "nonsense"])


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--rank", "1", "--colors", "2", "--t", "3")
    doc = json.loads(out)
    assert code == 0 and doc["Z_num"] == "8" and len(doc["entries"]) == 4


def test_verify_product_formula(capsys):
    code, out, _ = run(capsys, "verify", "product-formula", "--max-rank", "3", "--colors", "2")
    doc = json.loads(out)
    assert code == 0 and doc["ok"]
    conv = [r for r in doc["reports"] if r["suite"] == "convention"][0]
    assert conv["selected"] == ["2i-1"]


def test_verify_spider(capsys):
    code, out, _ = run(capsys, "verify", "spider", "--trials", "100")
    doc = json.loads(out)
    assert code == 0 and len(doc["reports"][0]["table"]) == 36


def test_verify_coupling(capsys):
    code, out, _ = run(capsys, "verify", "coupling", "--rank", "6", "--colors", "3", "--steps", "6",
                       "--seed", "5")
    assert code == 0 and json.loads(out)["ok"]


def test_render(tmp_path, capsys):
    dump = tmp_path / "rank3_example.json"
    dump.write_text(dumps(rank3_example()))
    code, out, _ = run(capsys, "render", str(dump), "--layout", "panels", "--show-particles")
    assert code == 0 and out.count('class="panel"') == 3 and "<circle" in out
    empty = tmp_path / "empty.json"
    empty.write_text('{"rank": 0, "colors": 1, "tilings": [[]]}')
    _, out, _ = run(capsys, "render", str(empty))
    assert "<rect" not in out
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(capsys, "render", str(bad))[0] == 2


def test_verbose_either_side():
    r = subprocess.run([sys.executable, "-m", "kshuffle", "sample", "-v", "-v", "--rank", "3"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert "step 3" in r.stderr
    r = subprocess.run([sys.executable, "-m", "kshuffle", "-v", "sample", "--rank", "3"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "INFO" in r.stderr
