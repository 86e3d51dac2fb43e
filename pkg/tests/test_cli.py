import json
from pathlib import Path

import pytest

from ggeom.cli import main, parse_model, print_model
from ggeom.cli.model import ModelError

MODELS = Path(__file__).resolve().parent.parent / "models"
GOLDEN = Path(__file__).resolve().parent / "golden"
SAMPLE = MODELS / "sample.ggm"
EXAMPLES = MODELS / "examples.ggm"


def gg(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


class TestParse:
    def test_sample_counts(self):
        m = parse_model(SAMPLE.read_text())
        assert list(m.manifolds) == ["M", "R"]
        assert list(m.structures) == ["S", "T", "U"]
        assert list(m.products) == ["P"]
        assert not m.structures["S"].ok and "classical" in m.structures["S"].error
        assert m.structures["T"].ok and m.structures["U"].ok
        assert not m.products["P"].ok

    def test_unresolved(self):
        text = "manifold M { coords: [x, y, z] }\nstructure T on M = contact(eta2)\n"
        with pytest.raises(ModelError) as exc:
            parse_model(text)
        assert "eta2" in exc.value.message
        assert exc.value.line == 2

    def test_collision(self):
        text = SAMPLE.read_text().replace("product P = product(S, U)", "product P = T x T")
        with pytest.raises(ModelError) as exc:
            parse_model(text)
        assert "collision" in exc.value.message

    def test_infix_product(self):
        text = SAMPLE.read_text().replace("product P = product(S, U)", "product P = T x U")
        m = parse_model(text)
        assert m.products["P"].ok and m.products["P"].kind == "gcs"

    def test_duplicate(self):
        with pytest.raises(ModelError) as exc:
            parse_model("manifold M { coords: [x] }\nmanifold M { coords: [y] }\n")
        assert "duplicate" in exc.value.message and exc.value.line == 2

    def test_syntax_position(self):
        with pytest.raises(ModelError) as exc:
            parse_model("manifold M { coords: [x, y }\n")
        assert (exc.value.line, exc.value.col) == (1, 28)

    def test_even_factor_first(self):
        text = EXAMPLES.read_text() + "product Bad = product(Sym, Cosym)\n"
        with pytest.raises(ModelError):
            parse_model(text)

    @pytest.mark.parametrize("path", [SAMPLE, EXAMPLES], ids=lambda p: p.name)
    def test_print_is_fixed_point(self, path):
        once = print_model(parse_model(path.read_text()))
        assert print_model(parse_model(once)) == once


class TestCommands:
    def test_bracket(self, capsys):
        code, out, _ = gg(capsys, "bracket", EXAMPLES, "-a", "Dx", "-b", "y*dx")
        assert code == 0
        assert "[[Dx, y*dx]] = -1/2*dy" in out

    def test_classify_contact(self, capsys):
        code, out, _ = gg(capsys, "classify", EXAMPLES, "-s", "Darboux")
        assert code == 0
        assert "integrable, not strong" in out
        assert "[WARN] L+" in out and "[PASS] L-" in out

    def test_product_verify_lines(self, capsys):
        code, out, _ = gg(capsys, "product-verify", EXAMPLES, "LL")
        assert code == 0
        assert "[PASS] biconditional" in out

    def test_product_verify_negative(self, capsys):
        code, out, _ = gg(capsys, "product-verify", EXAMPLES, "DC")
        assert code == 0
        assert "N(Dx, Dy) = Dz" in out

    def test_kind_mismatch(self, capsys):
        code, _, err = gg(capsys, "classify", EXAMPLES, "-s", "Cpx")
        assert code == 2 and "does not apply" in err

    def test_missing_subject(self, capsys):
        code, _, err = gg(capsys, "classify", EXAMPLES)
        assert code == 2 and "-s NAME" in err

    def test_unknown_subject(self, capsys):
        code, _, err = gg(capsys, "nijenhuis", EXAMPLES, "-s", "Nope")
        assert code == 2

    def test_parse_error_exit(self, capsys, tmp_path):
        f = tmp_path / "bad.ggm"
        f.write_text("manifold M { coords: [x] }\nstructure T on M = contact(eta2)\n")
        code, _, err = gg(capsys, "axioms", f)
        assert code == 2
        assert err.startswith(f"{f}:2:") and "eta2" in err

    def test_failed_construction_exit(self, capsys):
        code, out, _ = gg(capsys, "axioms", SAMPLE, "-s", "S")
        assert code == 1
        assert "eta o phi = y*dy" in out

    def test_nijenhuis_pair(self, capsys):
        code, out, _ = gg(capsys, "nijenhuis", EXAMPLES, "-s", "Twist", "-a", "Dp", "-b", "Dq")
        assert code == 0
        assert "N(Dp, Dq) = 0" in out

    def test_normality(self, capsys):
        code, out, _ = gg(capsys, "normality", EXAMPLES, "-s", "Sasaki")
        assert code == 0
        assert "[PASS] normal_iff_integrable" in out

    def test_properties(self, capsys):
        code, out, _ = gg(capsys, "properties", "--cases", "5")
        assert code == 0 and out.count("[PASS]") == 6

    def test_json_schema(self, capsys):
        code, out, _ = gg(capsys, "classify", EXAMPLES, "-s", "Darboux", "--json")
        body = json.loads(out)
        assert set(body) == {"header", "command", "subject", "checks", "exitCode"}
        assert body["header"]["tool"] == "gg"
        assert body["exitCode"] == code == 0
        for c in body["checks"]:
            assert set(c) == {"id", "description", "verdict", "witness"}
            assert c["verdict"] in ("pass", "fail", "warning")


SUBJECTS = {
    "axioms": ["Cpx", "Sym", "Cosym", "Sasaki", "Darboux", "CC", "DS"],
    "classify": ["Cosym", "Sasaki", "Darboux", "Line", "LS", "DS"],
    "nijenhuis": ["Cpx", "Sym", "Twist", "CC", "DC"],
    "product-verify": ["CC", "DC", "LL", "LS", "DS", "CT"],
    "normality": ["Cosym", "Sasaki", "Line"],
}
RUNS = [(cmd, name) for cmd, names in SUBJECTS.items() for name in names]


@pytest.mark.parametrize("cmd,name", RUNS, ids=lambda v: v)
def test_round_trip_reports_identical(capsys, tmp_path, cmd, name):
    printed = tmp_path / "printed.ggm"
    printed.write_text(print_model(parse_model(EXAMPLES.read_text())))
    a = gg(capsys, cmd, EXAMPLES, "-s", name, "--json")
    b = gg(capsys, cmd, printed, "-s", name, "--json")
    assert a == b


def test_byte_identical_runs(capsys):
    for cmd, name in RUNS[::3]:
        first = gg(capsys, cmd, EXAMPLES, "-s", name, "--json")
        assert gg(capsys, cmd, EXAMPLES, "-s", name, "--json") == first


def test_seed_is_read_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("GG_SEED", "7")
    code, out, _ = gg(capsys, "properties", "--cases", "2")
    assert "seed 7" in out and code == 0


GOLDEN_RUNS = {
    "sample_axioms": ["axioms", SAMPLE],
    "contact_classify": ["classify", EXAMPLES, "-s", "Darboux"],
    "contact_product": ["product-verify", EXAMPLES, "-s", "DC"],
    "sasakian_normality": ["normality", EXAMPLES, "-s", "Sasaki"],
    "bracket": ["bracket", EXAMPLES, "-a", "Dx + z*dy", "-b", "y*Dz - x*dx"],
}


@pytest.mark.parametrize("name", sorted(GOLDEN_RUNS))
def test_golden(capsys, name):
    code, out, _ = gg(capsys, *GOLDEN_RUNS[name])
    expected = (GOLDEN / f"{name}.txt").read_text()
    assert out == expected
