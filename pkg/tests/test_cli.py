import json
import subprocess
import sys

import pytest

from soire.cli import main
from soire.regex import Alphabet, equivalent_modulo_order, parse

from conftest import MASTERS, RUNNING_EXAMPLE


@pytest.fixture
def files(tmp_path):
    run = tmp_path / "run.txt"
    run.write_text("\n".join(RUNNING_EXAMPLE) + "\n")
    masters = tmp_path / "masters.txt"
    masters.write_text("\n".join(MASTERS) + "\n")
    empty = tmp_path / "empty.txt"
    empty.write_text("")
    doc = tmp_path / "dblp.xml"
    doc.write_text("<dblp>" + "".join(
        "<mastersthesis>" + "".join(f"<{n}/>" for n in names.split()) + "</mastersthesis>"
        for names in ["author title year school", "author title year school url",
                      "author title year school ee", "author title year school url ee",
                      "author title year school ee url"]) + "<www><title/></www></dblp>")
    return {"run": str(run), "masters": str(masters), "empty": str(empty), "xml": str(doc)}


def same(got, want):
    al = Alphabet()
    return equivalent_modulo_order(parse(got, al), parse(want, al))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_infer_running_example(capsys, files):
    code, out, _ = run(capsys, "infer", "--samples", files["run"], "--letters", "--verify")
    assert code == 0
    assert same(out.strip(), "a*b?(fm?&c?d|e(n|l)?g&h?)(j+|k)?")


def test_infer_json(capsys, files):
    code, out, _ = run(capsys, "infer", "--samples", files["masters"], "--letters", "--json",
                       "--verify")
    doc = json.loads(out)
    assert code == 0 and doc["verified"] is True and doc["samples"] == 5
    assert same(doc["expression"], "acfu(l?&m?)")


def test_infer_empty_warns(capsys, files):
    code, out, err = run(capsys, "infer", "--samples", files["empty"])
    assert code == 0 and out.strip() == "∅"
    assert "no samples" in err


def test_infer_xml_with_abbreviations(capsys, files):
    code, out, _ = run(capsys, "infer", "--xml", files["xml"], "--element", "mastersthesis",
                       "--element", "www", "--abbrev", "--verify")
    lines = out.splitlines()
    assert code == 0
    name, expr = lines[0].split(": ")
    assert name == "mastersthesis"
    assert same(expr, "acfu(l?&m?)")
    assert lines[1] == "www: c"


def test_infer_xml_needs_element(capsys, files):
    code, _, err = run(capsys, "infer", "--xml", files["xml"])
    assert code == 2 and "--element" in err


def test_metrics(capsys, files):
    code, out, _ = run(capsys, "metrics", "--expr", "acfu(l?&m?)", "--samples", files["masters"],
                       "--letters", "--json")
    doc = json.loads(out)
    assert code == 0
    assert (doc["language_size"], doc["len"], doc["nd"]) == ("5", 60, 1)
    assert abs(doc["datacost"] - 65.072) < 1e-3


def test_metrics_without_samples(capsys):
    code, out, _ = run(capsys, "metrics", "--expr", "(a|c|f|u|l|m)+", "--json")
    doc = json.loads(out)
    assert doc["language_size"] == "15672832818" and doc["datacost"] is None


def test_metrics_unmatched_sample(capsys, files):
    code, out, err = run(capsys, "metrics", "--expr", "acfu", "--samples", files["masters"],
                         "--letters", "--json")
    assert code == 0 and json.loads(out)["datacost"] is None
    assert "datacost omitted" in err


def test_metrics_parse_error(capsys):
    code, _, err = run(capsys, "metrics", "--expr", "a|")
    assert code == 2 and "error" in err


def test_state_cap(capsys):
    expr = "&".join(f"x{i}?" for i in range(12))
    code, _, err = run(capsys, "metrics", "--expr", expr, "--state-cap", "50")
    assert code == 3 and "limit" in err


def test_soa_dot(capsys, files):
    code, out, _ = run(capsys, "soa", "--samples", files["run"], "--letters", "--dot")
    assert code == 0 and out.startswith("digraph")
    assert out.count("label=") == 15
    code, out, _ = run(capsys, "soa", "--samples", files["empty"], "--dot")
    assert out.count("label=") == 2 and "->" not in out


def test_match(capsys):
    assert run(capsys, "match", "--expr", "ab&c", "--word", "cab")[0] == 0
    assert run(capsys, "match", "--expr", "ab&c", "--word", "cba")[0] == 1
    assert run(capsys, "match", "--expr", "author title?", "--word", "author")[0] == 0


def test_deterministic_output(capsys, files):
    outs = {run(capsys, "infer", "--samples", files["run"], "--letters", "--json")[1]
            for _ in range(3)}
    assert len(outs) == 1


def test_console_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "soire.cli", "infer", "--samples",
                           files["masters"], "--letters"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert same(proc.stdout.strip(), "acfu(l?&m?)")
