import json
import os

import pytest

from dblcat import cli

FIXTURE = os.path.join(os.path.dirname(__file__), "fixtures", "arrows.dcat")


def run(capsys, *argv):
    try:
        code = cli.main(list(argv))
    except SystemExit as exc:
        code = exc.code
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_check(capsys):
    code, payload = run_json(capsys, "check", FIXTURE)
    assert code == 0
    assert payload["ok"] is True
    assert payload["checked"] == {"categories": 2, "functors": 3,
                                  "profunctors": 1, "cells": 1}


def test_check_text_format(capsys):
    code, out, _ = run(capsys, "check", FIXTURE)
    assert code == 0
    assert out.startswith("check: ok")


def test_global_flags_before_subcommand(capsys):
    code, out, _ = run(capsys, "--format", "json", "--quiet", "check", FIXTURE)
    assert code == 0
    assert json.loads(out)["ok"] is True


def test_compose(capsys):
    code, payload = run_json(capsys, "compose", FIXTURE, "HomTwo", "HomTwo")
    assert code == 0
    # hom composed with hom collapses back to hom-sized fibers
    assert {k: len(v) for k, v in payload["fibers"].items()} == \
        {"(x,x)": 1, "(x,y)": 1, "(y,y)": 1}
    # over (x, y) the two straddling pairs land in one class
    assert any(len(members) == 2
               for cls in payload["classes"].values()
               for members in cls.values())


def test_ran(capsys):
    code, payload = run_json(capsys, "ran", FIXTURE, "HomTwo", "Collapse")
    assert code == 0
    assert payload["is_extension"] is True
    assert payload["is_pointwise"] is True
    assert payload["on_objects"] == {"x": "x", "y": "x"}


def test_exact(capsys):
    code, payload = run_json(capsys, "exact", FIXTURE, "collapse")
    assert code == 0
    assert payload["beck_chevalley"] is True
    code, payload = run_json(capsys, "exact", FIXTURE, "collapse",
                             "--mode", "ordinary")
    assert code == 0


def test_initial_positive(capsys):
    code, payload = run_json(capsys, "initial", FIXTURE, "Emb")
    assert code == 0
    assert payload == {"ok": True, "functor": "Emb"}


def test_initial_negative(capsys, tmp_path):
    ws = tmp_path / "picky.dcat"
    ws.write_text("category One { objects: s; }\n"
                  "category Two { objects: x, y; arrow a: x -> y; }\n"
                  "functor PickY : One -> Two { obj s => y; }\n")
    code, out, _ = run(capsys, "initial", str(ws))
    assert code == 2            # missing functor argument is a usage error

    code, payload = run_json(capsys, "initial", str(ws), "PickY")
    assert code == 1
    assert payload["ok"] is False


def test_tabulate(capsys):
    code, payload = run_json(capsys, "tabulate", FIXTURE, "HomTwo")
    assert code == 0
    assert len(payload["objects"]) == 3
    assert payload["morphism_count"] == 6
    assert payload["verified"] is True
    assert payload["opcartesian"] is True


def test_comma(capsys):
    code, payload = run_json(capsys, "comma", FIXTURE, "Emb", "Emb")
    assert code == 0
    assert payload["matches_comma_category"] is True


def test_internal_tabulate(capsys):
    code, payload = run_json(capsys, "internal-tabulate", FIXTURE, "HomTwo")
    assert code == 0
    assert len(payload["objects"]) == 3
    assert payload["morphism_count"] == 6
    assert payload["verified"] is True


def test_laws(capsys):
    code, payload = run_json(capsys, "laws")
    assert code == 0
    assert payload["ok"] is True
    for suite in payload["suites"].values():
        assert suite["ok"] is True
        assert suite["configurations"] > 0


def test_missing_file_is_usage_error(capsys):
    code, _, err = run(capsys, "check", "/no/such/file.dcat")
    assert code == 2
    assert "error" in err


def test_unknown_item_is_usage_error(capsys):
    code, _, err = run(capsys, "compose", FIXTURE, "HomTwo", "Nope")
    assert code == 2
    assert "no profunctor named 'Nope'" in err


def test_parse_error_reports_position(capsys, tmp_path):
    bad = tmp_path / "bad.dcat"
    bad.write_text("category C {\n  objects x;\n}\n")
    code, _, err = run(capsys, "check", str(bad))
    assert code == 2
    assert "2:" in err


def test_unknown_subcommand(capsys):
    with pytest.raises(SystemExit) as exc_info:
        cli.main(["frobnicate"])
    assert exc_info.value.code == 2


def test_mismatched_boundaries_are_usage_errors(capsys):
    code, _, err = run(capsys, "comma", FIXTURE, "Emb", "IdTwo")
    assert code == 2
    assert "share a target" in err
