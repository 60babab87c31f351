import json

import pytest
from click.testing import CliRunner

from tangentalg.cli import main
from tangentalg.corpus import CORPUS_NAMES, UnknownExample, example_source
from tangentalg.session import InputError, Options, parse_input


def tf(*args):
    return CliRunner().invoke(main, list(args))


def ops(payload, name):
    return [o for o in payload["operations"] if o["op"] == name]


# -- parsing --------------------------------------------------------------------

def test_parse_cusp_session():
    s = parse_input("char 32003; ring x y; ideal I = y^2 - x^3;")
    assert s.characteristic == 32003
    assert list(s.ring.variables) == ["x", "y"]
    assert s.ideal().gens == [s.ring("y^2 - x^3")]


def test_parse_veronese_session():
    s = parse_input("ring x1..x6; ideal I = minors 2 symmetric 3;")
    assert s.ring.nvars == 6
    assert len(s.ideal().gens) == 6


def test_parse_named_and_literal_matrices():
    text = """
    ring a b c d;          # a comment
    matrix M = [[a, b], [c, d]];
    ideal I = minors 2 M;
    ideal J = a*d, b^2;
    check krull_dim J;
    """
    s = parse_input(text)
    assert s.ideal("I").gens[0] == s.ring("a*d - b*c")
    assert len(s.ideal("J").gens) == 2
    assert s.checks == [("krull_dim", ["J"])]


def test_parse_weights():
    s = parse_input("char 0; ring x:2 y:3; ideal I = y^2 - x^3;")
    assert list(s.ring.weights) == [2, 3]
    assert s.ideal().is_homogeneous()


def test_options_override_file():
    s = parse_input("char 7; order lex; ring x y; ideal I = x;", Options(characteristic=0, order="degrevlex"))
    assert s.characteristic == 0 and s.order == "degrevlex"


@pytest.mark.parametrize("text, line, column", [
    ("ring x y;\nideal I =;", 2, 10),
    ("ring x y;\nideal I = x + z;", 2, 15),
    ("ring x y;\nideal I = x", 2, 1),
    ("ideal I = x;", 1, 11),
])
def test_parse_errors_are_positioned(text, line, column):
    with pytest.raises(InputError) as info:
        parse_input(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_parse_semantic_errors():
    with pytest.raises(InputError) as info:
        parse_input("ring x y; matrix M = generic 2;")
    assert info.value.kind == "semantic"
    with pytest.raises(InputError) as info:
        parse_input("ring x y; ideal I = x + z;")
    assert info.value.kind == "semantic"
    with pytest.raises(InputError) as info:
        parse_input("ring x y; ideal I = minors 2 N;")
    assert info.value.kind == "semantic"


# -- corpus ---------------------------------------------------------------------

def test_corpus_sources_parse():
    for name in CORPUS_NAMES + ("catalecticant-5", "fermat-3-3"):
        s = parse_input(example_source(name))
        assert s.ideal().gens
    with pytest.raises(UnknownExample):
        example_source("nonsense")


# -- run ------------------------------------------------------------------------

def _run(name):
    r = tf("run", name, "--json", "--no-cache")
    assert r.exit_code == 0, r.output
    return json.loads(r.stdout)


def test_run_catalecticants():
    assert ops(_run("catalecticant-1"), "rees_algebra")[0]["result"]["linear_type"] is False
    assert ops(_run("catalecticant-4"), "rees_algebra")[0]["result"]["linear_type"] is True


def test_run_cusp():
    p = _run("cusp")
    assert ops(p, "rees_algebra")[0]["result"]["linear_type"] is False
    f1 = [o for o in ops(p, "ft_check") if o["inputs"]["t"] == 1][0]
    assert f1["result"]["verdict"] is False
    for o in p["operations"]:
        assert set(o) == {"op", "inputs", "result", "citations", "timing"}


def test_run_unknown_example():
    r = tf("run", "nonsense")
    assert r.exit_code == 1
    assert "unknown example" in r.stderr


def test_json_keys_sorted():
    text = tf("run", "generic-2x3", "--json", "--no-cache").stdout
    assert json.dumps(json.loads(text), sort_keys=True, indent=2, ensure_ascii=False) == text.rstrip("\n")


def test_infinite_height_serialised(tmp_path):
    # for a smooth hypersurface Fitt_1 of the differentials is the unit ideal
    f = tmp_path / "line.tf"
    f.write_text("ring x y; ideal I = x; check ft 1;", encoding="utf-8")
    r = tf("eval", str(f), "--json", "--no-cache")
    assert r.exit_code == 0, r.output
    rec = ops(json.loads(r.stdout), "ft")[0]["result"]["records"][0]
    assert rec["height"] == "inf"


# -- audits -------------------------------------------------------------------------

def _audit(tag, target, *extra):
    r = tf("audit", tag, target, "--json", "--no-cache", *extra)
    payload = json.loads(r.stdout) if r.stdout.strip() else None
    return r.exit_code, payload


def test_audit_quadric_bound_veronese():
    code, p = _audit("quadric-bound", "veronese")
    assert code == 2
    assert p["audit"]["status"] == "hypothesis-not-met"
    mu = [h for h in p["audit"]["hypotheses"] if h["name"].startswith("mu")][0]
    assert mu["verdict"] is False and mu["detail"] == "6 vs 5"


def test_audit_linear_type_codim2_generic():
    code, p = _audit("linear-type-codim2", "generic-2x3")
    assert code == 0 and p["audit"]["status"] == "consistent"
    lt = ops(p, "rees_algebra")[0]["result"]["linear_type"]
    f1 = [o for o in ops(p, "ft_check") if o["inputs"]["t"] == 1][0]["result"]["verdict"]
    assert lt == f1


def test_audit_cm_edim_cusp_over_rationals():
    code, p = _audit("cm-edim", "cusp", "--char", "0")
    assert code == 0 and p["audit"]["status"] == "consistent"
    assert p["session"]["char"] == 0
    rees_cm = [c for c in p["audit"]["conclusions"] if "not Cohen-Macaulay" in c["name"]][0]
    assert rees_cm["state"] == "checked"


def test_audit_not_checkable_exit_code():
    code, p = _audit("cm-edim", "node")
    assert code == 3 and p["audit"]["status"] == "not-checkable"


def test_audit_predicted_status_exit_code():
    code, p = _audit("ci-normality", "fermat-5-5")
    assert code == 0 and p["audit"]["status"].startswith("paper-predicts")


def test_audit_unknown_tag():
    r = tf("audit", "no-such-tag", "cusp")
    assert r.exit_code == 1 and "unknown theorem tag" in r.stderr


def test_audit_input_file(tmp_path):
    f = tmp_path / "scroll.tf"
    f.write_text("ring x0..x4;\nmatrix M = [[x0, x1, x3], [x1, x2, x4]];\nideal I = minors 2 M;\n",
                 encoding="utf-8")
    code, p = _audit("linear-type-codim2", str(f))
    assert code == 0 and p["audit"]["status"] == "consistent"


# -- eval -------------------------------------------------------------------------

def test_eval_checks(tmp_path):
    f = tmp_path / "cubic.tf"
    f.write_text("ring x y z w;\nideal I = minors 2 [[x, y, z], [y, z, w]];\n"
                 "check krull_dim;\ncheck resolution;\ncheck audit linear-type-codim2;\n", encoding="utf-8")
    r = tf("eval", str(f), "--json", "--no-cache")
    assert r.exit_code == 0, r.output
    p = json.loads(r.stdout)
    assert ops(p, "krull_dim")[0]["result"]["dim"] == 2
    assert ops(p, "resolution")[0]["result"]["ranks"] == [1, 3, 2]
    assert p["audits"][0]["status"] == "consistent"


def test_eval_syntax_error(tmp_path):
    f = tmp_path / "bad.tf"
    f.write_text("ring x y;\nideal I =;\n", encoding="utf-8")
    r = tf("eval", str(f))
    assert r.exit_code == 1
    assert "line 2, column 10" in r.stderr


def test_eval_unknown_check(tmp_path):
    f = tmp_path / "bad.tf"
    f.write_text("ring x y;\nideal I = x;\ncheck frobnicate;\n", encoding="utf-8")
    assert tf("eval", str(f)).exit_code == 1


def test_list():
    r = tf("list")
    assert r.exit_code == 0 and "quadric-bound" in r.stdout and "veronese" in r.stdout


# -- caching -----------------------------------------------------------------------

def test_cold_and_warm_runs_agree(tmp_path):
    from tangentalg import groebner

    cache = str(tmp_path / "cache")
    groebner.clear_cache()
    cold = tf("run", "cusp", "--json", "--cache-dir", cache).stdout
    groebner.clear_cache()
    warm_disk = tf("run", "cusp", "--json", "--cache-dir", cache).stdout
    warm_memory = tf("run", "cusp", "--json", "--cache-dir", cache).stdout
    uncached = tf("run", "cusp", "--json", "--no-cache").stdout
    assert cold == warm_disk == warm_memory == uncached
