import json

import pytest

from fermatsieve.cli import (
    EXIT_CONFIG,
    EXIT_DATA,
    EXIT_MISMATCH,
    EXIT_PASS,
    ConfigError,
    main,
    parse_int_expr,
    parse_triple,
)
from fermatsieve.frey import Triple


def test_parse_int_expr():
    assert parse_int_expr("5^2*17^2") == 7225
    assert parse_int_expr(" -3 ") == -3
    assert parse_int_expr("59^7") == 59**7
    for bad in ("5^", "x", "2**3", ""):
        with pytest.raises(ConfigError):
            parse_int_expr(bad)


def test_parse_triple():
    assert parse_triple("11,2^4,5^2*17^2") == Triple(11, 16, 7225)
    with pytest.raises(ConfigError):
        parse_triple("1,2")
    with pytest.raises(ConfigError):
        parse_triple("2,4,3")


def test_exit_codes_without_data(monkeypatch, tmp_path, capsys):
    monkeypatch.delenv("FERMATSIEVE_DATA", raising=False)
    assert main(["level71"]) == EXIT_PASS
    assert main(["level935"]) == EXIT_PASS
    assert main(["table1", "--level", "115"]) == EXIT_DATA
    assert main(["table1", "--level", "115", "--data-dir", str(tmp_path)]) == EXIT_DATA
    assert main(["table1"]) == EXIT_CONFIG
    assert main(["parity", "--level", "999"]) == EXIT_CONFIG
    assert main(["parity", "--level", "115", "--workers", "0"]) == EXIT_CONFIG
    (tmp_path / "115.json").write_text("{broken")
    assert main(["table1", "--level", "115", "--data-dir", str(tmp_path)]) == EXIT_DATA


def test_json_output_and_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["parity", "--triple", "11,2^4,5^2*17^2", "--prime-bound", "300", "--json", "-o", str(out)]) == EXIT_PASS
    printed = json.loads(capsys.readouterr().out)
    assert printed == json.loads(out.read_text())
    assert printed["agree"] == printed["total"]


def test_localsolve_command(capsys):
    assert main(["localsolve", "--level", "115", "--n", "5", "--p", "11"]) == EXIT_PASS
    assert "Empty" in capsys.readouterr().out
    assert main(["localsolve", "--level", "115", "--n", "5"]) == EXIT_CONFIG


def test_table3_reference_choice():
    assert main(["table3", "--level", "329", "--bound0", "500", "--bound1", "500"]) == EXIT_PASS
    assert main(["table3", "--level", "115", "--bound0", "500", "--bound1", "500"]) == EXIT_MISMATCH
    assert main(["table3", "--level", "115", "--bound0", "500", "--bound1", "500", "--reference", "recomputed"]) == EXIT_PASS


@pytest.mark.data
@pytest.mark.parametrize("cmd", ["table1", "table2", "report"])
def test_data_commands_pass(cmd, data_dir):
    for level in (115, 185, 295, 329, 935):
        assert main([cmd, "--level", str(level), "--data-dir", data_dir]) == EXIT_PASS
