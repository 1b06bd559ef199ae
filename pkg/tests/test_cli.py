"""End-to-end tests of the command-line interface."""

import json
import math

import pytest

from fringelab.cli import main
from fringelab.schemas import dump_json, parse_events_csv


def write(path, text):
    path.write_text(text, encoding="utf-8")
    return str(path)


EVENTS = "t,x\n0,0\n1,0\n1,1\n0.5,-2\n"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_table(text):
    rows = []
    header = None
    for line in text.splitlines():
        if not line or line.startswith("#"):
            continue
        if header is None:
            header = line.split(",")
            continue
        rows.append(dict(zip(header, line.split(","))))
    return header, rows


def test_transform_identity(tmp_path, capsys):
    events = write(tmp_path / "events.csv", EVENTS)
    config = write(tmp_path / "map.json",
                   dump_json({"schema": 1, "branch": "subluminal", "V": 0.0}))
    code, out, err = run(capsys, "transform", "--events", events,
                         "--config", config)
    assert code == 0
    header, rows = parse_table(out)
    assert header == ["t", "x", "t_out", "x_out", "interval_in", "interval_out"]
    for row in rows:
        assert row["t"] == row["t_out"]
        assert row["x"] == row["x_out"]
        assert row["interval_in"] == row["interval_out"]


def test_transform_superluminal_negates_interval(tmp_path, capsys):
    events = write(tmp_path / "events.csv", EVENTS)
    config = write(tmp_path / "map.json", dump_json(
        {"schema": 1, "branch": "superluminal", "V": 2.0, "eta": 1}))
    code, out, _ = run(capsys, "transform", "--events", events,
                       "--config", config)
    assert code == 0
    _, rows = parse_table(out)
    for row in rows:
        before = float(row["interval_in"])
        after = float(row["interval_out"])
        scale = max(1e-30, abs(before))
        assert abs(after + before) <= 1e-12 * scale


def test_transform_output_round_trips(tmp_path, capsys):
    events = write(tmp_path / "events.csv", "t,x\n0.1,0.30000000000000004\n")
    config = write(tmp_path / "map.json",
                   dump_json({"schema": 1, "branch": "subluminal", "V": 0.6}))
    out_path = tmp_path / "table.csv"
    code, _, _ = run(capsys, "transform", "--events", events,
                     "--config", config, "--out", str(out_path))
    assert code == 0
    text = out_path.read_text(encoding="utf-8")
    first_two = "t,x\n" + "\n".join(
        ",".join(line.split(",")[:2])
        for line in text.splitlines()
        if line and not line.startswith("#") and not line.startswith("t,"))
    parsed = parse_events_csv(first_two + "\n")
    assert parsed[0].t == 0.1
    assert parsed[0].x[0] == 0.30000000000000004


def test_transform_reports_bad_line(tmp_path, capsys):
    events = write(tmp_path / "events.csv", "t,x\n1,2\nbroken\n")
    config = write(tmp_path / "map.json",
                   dump_json({"schema": 1, "branch": "subluminal", "V": 0.0}))
    code, _, err = run(capsys, "transform", "--events", events,
                       "--config", config)
    assert code == 2
    assert "line 3" in err


def test_transform_rejects_unknown_map_field(tmp_path, capsys):
    events = write(tmp_path / "events.csv", EVENTS)
    config = write(tmp_path / "map.json", dump_json(
        {"schema": 1, "branch": "superluminal", "V": 2.0, "etaa": 1}))
    code, _, err = run(capsys, "transform", "--events", events,
                       "--config", config)
    assert code == 2
    assert "etaa" in err and "eta" in err


def test_transform_rejects_light_speed(tmp_path, capsys):
    events = write(tmp_path / "events.csv", EVENTS)
    config = write(tmp_path / "map.json",
                   dump_json({"schema": 1, "branch": "subluminal", "V": 1.0}))
    code, _, err = run(capsys, "transform", "--events", events,
                       "--config", config)
    assert code == 2
    assert "|V| < c" in err


def test_interfere_default_full_contrast(tmp_path, capsys):
    code, out, _ = run(capsys, "interfere")
    assert code == 0
    assert "# visibility = 1" in out.splitlines()[1]
    header, rows = parse_table(out)
    assert header == ["phi", "p_d0", "p_d1", "p_absorbed",
                      "p_d0_given_detected", "p_d1_given_detected"]
    assert len(rows) == 65
    assert float(rows[0]["p_d0"]) == 1.0
    mid = rows[32]
    assert float(mid["phi"]) == math.pi
    assert float(mid["p_d0"]) <= 1e-12


def test_interfere_blocked_rows_are_constant(tmp_path, capsys):
    config = write(tmp_path / "blocked.json",
                   dump_json({"schema": 1, "blocked_arm": "upper"}))
    code, out, _ = run(capsys, "interfere", "--config", config,
                       "--phis", "0:6.28:12")
    assert code == 0
    _, rows = parse_table(out)
    assert len(rows) == 12
    for row in rows:
        assert float(row["p_d0"]) == 0.25
        assert float(row["p_d1"]) == 0.25
        assert float(row["p_absorbed"]) == 0.5
        assert float(row["p_d0_given_detected"]) == 0.5


def test_interfere_classical_flat_with_summary(tmp_path, capsys):
    config = write(tmp_path / "classical.json", dump_json(
        {"schema": 1, "composition": "classical_mixture",
         "mixture_weights": [0.3, 0.7]}))
    out_path = tmp_path / "sweep.csv"
    code, out, _ = run(capsys, "interfere", "--config", config,
                       "--phis", "0:3:7", "--out", str(out_path))
    assert code == 0
    assert "visibility = 0" in out
    _, rows = parse_table(out_path.read_text(encoding="utf-8"))
    assert len(rows) == 7
    assert len({row["p_d0"] for row in rows}) == 1


def test_interfere_rejects_bad_config_listing_fields(tmp_path, capsys):
    config = write(tmp_path / "bad.json", dump_json(
        {"schema": 1, "splitter1": 2.0, "phase": "x", "oops": True}))
    code, _, err = run(capsys, "interfere", "--config", config)
    assert code == 2
    for needle in ("splitter1", "phase", "oops"):
        assert needle in err


def test_phis_flag_validation():
    with pytest.raises(SystemExit) as exc:
        main(["interfere", "--phis", "0:1"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["interfere", "--phis", "a:b:c"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["interfere", "--phis", "0:1:0"])
    assert exc.value.code == 2


def test_seed_flag_validation():
    for bad in ("-1", "18446744073709551616", "abc"):
        with pytest.raises(SystemExit) as exc:
            main(["check", "--seed", bad])
        assert exc.value.code == 2


def test_nogo_report(tmp_path, capsys):
    out_path = tmp_path / "nogo.json"
    code, out, _ = run(capsys, "nogo", "--resolution", "11",
                       "--out", str(out_path))
    assert code == 0
    assert "max classical variation: 0" in out
    assert "no-go contrast: PASS" in out
    doc = json.loads(out_path.read_text(encoding="utf-8"))
    assert doc["max_classical_variation"] == 0.0
    assert doc["amplitude_visibility"] >= 1.0 - 1e-12
    assert doc["passed"] is True
    assert doc["classical_config_count"] == 11 * 12


def test_check_subset_and_report_shape(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code, out, _ = run(capsys, "check", "--suite", "O3", "--seed", "7",
                       "--out", str(out_path))
    assert code == 0
    assert "1/1 checks passed" in out
    doc = json.loads(out_path.read_text(encoding="utf-8"))
    assert set(doc) == {"suite", "checks"}
    assert doc["suite"] == "O3"
    (entry,) = doc["checks"]
    assert set(entry) == {"id", "paper_ref", "pass", "detail"}
    assert entry["pass"] is True


def test_check_full_suite_covers_every_postulate_label(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code, out, _ = run(capsys, "check", "--seed", "11", "--trials", "60",
                       "--resolution", "11", "--out", str(out_path))
    assert code == 0
    doc = json.loads(out_path.read_text(encoding="utf-8"))
    labels = {entry["paper_ref"] for entry in doc["checks"]}
    joined = " ".join(labels)
    for required in ("O1", "O2", "O3", "A1", "A2", "A3", "A4"):
        assert required in joined
    assert all(entry["pass"] for entry in doc["checks"])


def test_check_json_printed_without_out_flag(capsys):
    code, out, _ = run(capsys, "check", "--suite", "carrier", "--seed", "3")
    assert code == 0
    json_start = out.index("{")
    doc = json.loads(out[json_start:])
    assert doc["suite"] == "carrier"


def test_check_unknown_selector_exits_with_usage_error(capsys):
    code, _, err = run(capsys, "check", "--suite", "zzz-nothing")
    assert code == 2
    assert "matches no checks" in err


def test_check_determinism_bytes(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    assert main(["check", "--suite", "A4", "--seed", "42",
                 "--out", str(a)]) == 0
    assert main(["check", "--suite", "A4", "--seed", "42",
                 "--out", str(b)]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()
