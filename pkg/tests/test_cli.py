"""Command line behavior: exit codes, report shape, determinism."""

import io
import json
import os
import shutil
from contextlib import redirect_stdout

import pytest

from thetalab import fixtures
from thetalab.cli import corpus_dir, main

CORPUS = os.path.join(os.path.dirname(fixtures.__file__), "corpus")


def fix(name):
    return os.path.join(CORPUS, name)


def run(*argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(list(argv))
    return code, buf.getvalue()


def run_json(*argv):
    code, out = run(*argv)
    return code, json.loads(out)


# ---------------------------------------------------------------- exit codes

def test_all_checks_passing_exits_zero():
    code, rpt = run_json("check-segal", fix("interval.json"))
    assert code == 0 and rpt["ok"]
    assert all(c["ok"] for c in rpt["checks"])


def test_failing_check_exits_one():
    code, rpt = run_json("check-segal", fix("loop.json"))
    assert code == 1 and not rpt["ok"]
    assert any(not c["ok"] for c in rpt["checks"])


def test_usage_problems_exit_two(tmp_path):
    assert run("no-such-command")[0] == 2
    assert run("tau", fix("ibar.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("not json", encoding="utf-8")
    code, rpt = run_json("cat", str(bad))
    assert code == 2 and "error" in rpt
    code, _ = run_json("reconstruct", fix("cat-pt.json"))
    assert code == 2
    assert run("upsilon", "2", fix("pt0.json"))[0] == 2


def test_error_reports_name_the_exception():
    code, rpt = run_json("cat", fix("loop.json"), "--cap", "40")
    assert code == 2
    assert rpt["error"].startswith("CapExceeded")


# ------------------------------------------------------------------ reports

def test_reports_are_deterministic():
    a = run("nerve", fix("cat-c2.json"))
    b = run("nerve", fix("cat-c2.json"))
    assert a == b


def test_report_flag_writes_the_same_text(tmp_path):
    out = tmp_path / "rpt.json"
    code, text = run("tau", "--level", "0", fix("ibar.json"),
                     "--report", str(out))
    assert code == 0
    assert out.read_text(encoding="utf-8") == text


def test_every_report_carries_command_ok_checks():
    for argv in (("cardinality", fix("interval.json")),
                 ("isofib", fix("collapse.json")),
                 ("limit", fix("setcospan.json"))):
        _, rpt = run_json(*argv)
        assert set(("command", "ok", "checks")) <= set(rpt)
        assert rpt["command"] == argv[0]


# ------------------------------------------------------------ spec examples

def test_tau_level_zero_on_ibar_prints_one_class():
    code, out = run("tau", "--level", "0", fix("ibar.json"))
    assert code == 0
    assert "{1 class}" in out


def test_corpus_verify_exits_zero():
    code, rpt = run_json("corpus-verify")
    assert code == 0
    assert rpt["fixtures"] == len(rpt["checks"]) >= 40


def test_harness_cospan_example_passes():
    code, rpt = run_json("harness", "--diagram", fix("cospan.json"),
                         "--universe", "pt,I,Ibar")
    assert code == 0
    assert [c["name"] for c in rpt["checks"]] == ["pt", "I", "Ibar"]


def test_localize_inverts_named_arrows():
    code, rpt = run_json("localize", fix("cat-chain1.json"),
                         "--invert", "c01")
    assert code == 0 and rpt["finite"]


def test_presentations_print_in_bracket_bar_form():
    code, rpt = run_json("gc", fix("circle.json"))
    assert code == 0
    assert not rpt["finite"]
    assert all(p.startswith("⟨") and "|" in p and p.endswith("⟩")
               for p in rpt["presentations"])


# ------------------------------------------------------------------ corpus

def test_corpus_dir_env_override(tmp_path, monkeypatch):
    alt = tmp_path / "corpus"
    shutil.copytree(CORPUS, alt)
    monkeypatch.setenv("THETALAB_CORPUS", str(alt))
    assert corpus_dir() == str(alt)
    code, rpt = run_json("corpus-verify")
    assert code == 0 and rpt["corpus"] == str(alt)


def test_corpus_verify_catches_tampering(tmp_path, monkeypatch):
    alt = tmp_path / "corpus"
    shutil.copytree(CORPUS, alt)
    pt = alt / "pt.json"
    text = pt.read_text(encoding="utf-8")
    pt.write_text(text.replace("  ", " "), encoding="utf-8")
    monkeypatch.setenv("THETALAB_CORPUS", str(alt))
    code, rpt = run_json("corpus-verify")
    assert code == 1
    bad = [c for c in rpt["checks"] if not c["ok"]]
    assert [c["name"] for c in bad] == ["pt.json"]


# -------------------------------------------------------------- constructors

def test_upsilon_one_on_a_point_is_the_interval():
    code, rpt = run_json("upsilon", "1", fix("pt0.json"))
    assert code == 0
    built = fixtures.decode(rpt["result"])
    want = fixtures.load_path(fix("interval.json"))
    assert {p: len(built.level(p)) for p in built.profiles()} == \
           {p: len(want.level(p)) for p in want.profiles()}


def test_shell_needs_a_recognised_side():
    assert run("shell", "top", fix("pt0.json"), fix("pt0.json"))[0] == 2
    code, _ = run_json("shell", "spine", fix("pt0.json"), fix("pt0.json"))
    assert code == 0


def test_pushout_of_interval_legs_has_three_objects():
    code, rpt = run_json("pushout", fix("leg0.json"), fix("leg1.json"))
    assert code == 0
    assert len(rpt["result"]["levels"][""]) == 3


def test_stack_check_reports_the_failing_cover():
    code, rpt = run_json("stack-check", fix("site-arms.json"),
                         fix("sections-bad.json"))
    assert code == 1
    bad = [c for c in rpt["checks"] if not c["ok"]]
    assert [c["name"] for c in bad] == ["X#0"]


def test_site_and_presheaf_must_share_the_category():
    code, _ = run_json("stack-check", fix("site-trivial.json"),
                       fix("catsections.json"))
    assert code == 0
    # a presheaf on a different category is refused up front
    code, rpt = run_json("stack-check", fix("site-arms.json"),
                         fix("sections.json"))
    assert code == 0


def test_bootstrap_alpha_too_small_is_a_usage_error():
    assert run("bootstrap", fix("setspan.json"), "--alpha", "0")[0] == 2
    code, rpt = run_json("bootstrap", fix("setspan.json"), "--alpha", "2")
    assert code == 0 and rpt["size"] == 1


def test_telescope_retracts_onto_the_idempotent():
    code, rpt = run_json("telescope", fix("idemmap.json"))
    assert code == 0
    assert rpt["checks"][0] == {"name": "retract", "ok": True}


def test_gc_pushout_agrees_on_both_routes():
    code, rpt = run_json("gc-pushout", fix("leg0.json"), fix("leg1.json"))
    assert code == 0
    assert all(direct == split for _, direct, split in rpt["entries"])
