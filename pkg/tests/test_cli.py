import json
import subprocess
import sys
from pathlib import Path

import pytest

from partial_galois.cli import (DocumentError, emit_report, load_document, main, parse_report,
                                run_text, shipped_document, shipped_documents)

DATA = Path(__file__).parent / "data"
EXPECTED_EXIT = {"broken_retraction": 1, "compose": 0, "empty": 0, "halving": 0, "indexing": 0,
                 "lists_fsets": 0, "subtraction": 0, "subtraction_unguarded": 1}


def test_shipped_documents_listed():
    assert shipped_documents() == sorted(EXPECTED_EXIT)


@pytest.mark.parametrize("name", sorted(EXPECTED_EXIT))
def test_shipped_exit_codes(name, capsys):
    assert main(["--fixture", name]) == EXPECTED_EXIT[name]
    out = capsys.readouterr().out
    assert "ERROR" not in out


def test_failure_lines(capsys):
    main(["--fixture", "broken_retraction"])
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "FAIL check zpos_bad half_galois_left witness=(1,1)"
    assert lines[1] == "FAIL check halving reverse_half_galois_left witness=(0,0)"
    main(["--fixture", "subtraction_unguarded"])
    assert capsys.readouterr().out == "FAIL transport sub_int not_in_dom witness=(0,1)\n"


def test_structured_round_trip():
    report = run_text(shipped_document("subtraction"))
    text = emit_report(report, "structured")
    assert emit_report(parse_report(text), "structured") == text
    body = json.loads(text)
    assert all("seconds" not in o for o in body["commands"])
    assert body["counts"]["PASS"] == len(body["commands"])


def test_timing_only_in_text(capsys):
    main(["--fixture", "halving", "--timing"])
    assert all(line.endswith("s]") for line in capsys.readouterr().out.splitlines())


def test_document_errors_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"carriers": [1,}')
    assert main([str(bad)]) == 2
    assert "line 1 column 17" in capsys.readouterr().err
    bad.write_text('{"extras": {}}')
    assert main([str(bad)]) == 2
    assert main(["--fixture", "missing"]) == 2


def test_argument_errors():
    with pytest.raises(SystemExit):
        main([])


def test_functor_macros_and_command_errors():
    report = run_text((DATA / "macro.json").read_text())
    statuses = [o.status for o in report.outcomes]
    assert statuses == ["PASS", "ERROR", "ERROR"]
    assert report.outcomes[0].detail == "term_out={None()->0,Some(0)->0,Some(1)->1,Some(2)->2}"
    assert report.exit_code == 1


def test_load_document_rejects_bad_values():
    with pytest.raises(DocumentError):
        load_document('{"carriers": {"A": ["1 2"]}}')


def test_console_entry_point_is_deterministic():
    cmd = [sys.executable, "-m", "partial_galois.cli", "--fixture", "compose", "--format", "structured"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first
