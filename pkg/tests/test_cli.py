import json
import subprocess
import sys

import pytest

from ifrob.cli import PolyParseError, main, parse_poly
from ifrob.exactring import LaurentPoly, qint


def run_cli(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr().out
    return status, json.loads(out), out


def test_parse_poly():
    assert parse_poly("[3]") == qint(3)
    assert parse_poly("v^2 + 1 - v^-2") == LaurentPoly({2: 1, 0: 1, -2: -1})
    assert parse_poly("(v + 1)*(v - 1)") == LaurentPoly({2: 1, 0: -1})
    assert parse_poly("-3") == LaurentPoly.const(-3)
    with pytest.raises(PolyParseError):
        parse_poly("v^")
    with pytest.raises(PolyParseError):
        parse_poly("(v + 1")


def test_ring_examples(capsys):
    status, doc, _ = run_cli(capsys, "ring", "qbinom", "--top", "4", "--bottom", "2", "--d", "1")
    assert status == 0
    assert doc["report"]["result"] == [[-4, "1"], [-2, "1"], [0, "2"], [2, "1"], [4, "1"]]
    _, doc, _ = run_cli(capsys, "ring", "cyclo", "--l", "3")
    assert doc["report"]["result"] == [[0, "1"], [1, "1"], [2, "1"]]
    _, doc, _ = run_cli(capsys, "ring", "reduce", "--l", "3", "--poly", "[3]")
    assert doc["report"]["is_zero"] is True


def test_expand_examples(capsys):
    _, doc, _ = run_cli(capsys, "expand", "idiv", "--case", "AI1", "--n", "0", "--weight", "2")
    assert len(doc["report"]["element"]["terms"]) == 1
    _, doc, _ = run_cli(capsys, "expand", "idiv", "--case", "QPlane", "--n", "2", "--weight", "0,0")
    assert len(doc["report"]["element"]["terms"]) == 3
    _, doc, _ = run_cli(capsys, "expand", "idiv", "--case", "AI1", "--parity", "even", "--n", "1",
                        "--weight", "0")
    assert len(doc["report"]["element"]["terms"]) == 2
    _, doc, _ = run_cli(capsys, "expand", "idiv", "--case", "AI1", "--n", "4", "--weight", "1", "--l", "3")
    assert doc["report"]["method"] == "recursive"
    assert doc["report"]["element"]["scalar"] == {"l": 3}


def test_verify_examples(capsys):
    status, doc, _ = run_cli(capsys, "verify", "frobenius-ai1", "--l", "3", "--nmax", "12")
    assert status == 0 and doc["report"]["ok"] and doc["report"]["points"] > 0
    _, doc, _ = run_cli(capsys, "verify", "dims", "--type", "BII", "--n", "2", "--l", "5")
    assert doc["report"]["predicted"] == "3125"
    status, doc, _ = run_cli(capsys, "verify", "admissible", "--type", "B2-remark", "--l", "4")
    assert status == 0 and doc["report"]["admissible"] is False


def test_error_exit_codes(capsys):
    status, doc, _ = run_cli(capsys, "expand", "idiv", "--case", "AI1", "--parity", "even", "--n", "2",
                             "--weight", "1")
    assert status == 2 and doc["error"] == "CliError"
    status, doc, _ = run_cli(capsys, "expand", "idiv", "--case", "AI1", "--n", "2", "--weight", "1",
                             "--method", "closed")
    assert status == 2 and doc["error"] == "ParityUnsupported"
    status, doc, _ = run_cli(capsys, "ring", "qint")
    assert status == 2
    status, doc, _ = run_cli(capsys, "ring", "cyclo", "--l", "4")
    assert status == 2


def test_reports_are_byte_identical(capsys, tmp_path):
    argv = ["verify", "frobenius-qplane", "--l", "3", "--nmax", "6"]
    _, _, a = run_cli(capsys, *argv)
    _, _, b = run_cli(capsys, *argv, "--jobs", "2")
    da, db = json.loads(a), json.loads(b)
    da["config"].pop("jobs"), db["config"].pop("jobs")
    assert da == db
    out = tmp_path / "r.json"
    main(argv + ["--out", str(out)])
    assert out.read_text() == a


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"top": 5, "bottom": 2}))
    _, doc, _ = run_cli(capsys, "ring", "qbinom", "--config", str(cfg))
    assert doc["config"]["top"] == 5
    cfg.write_text(json.dumps({"bogus": 1}))
    status, doc, _ = run_cli(capsys, "ring", "qbinom", "--config", str(cfg))
    assert status == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ifrob.cli", "ring", "qint", "--n", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["report"]["text"] == str(qint(3))
