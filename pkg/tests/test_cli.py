import csv
import hashlib
import json

import pytest

from egocircles.cli import main

from conftest import ev


def _write_events(path, events):
    from egocircles.synthgen import write_jsonl
    with open(path, "w", encoding="utf-8") as fh:
        write_jsonl(events, fh)
    return path


def _read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def _digest(path):
    return hashlib.sha256(path.read_bytes()).hexdigest()


@pytest.fixture(scope="module")
def synth_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("synth")
    assert main(["synth", "--out", str(out), "--n-egos", "3", "--duration-months", "36", "--seed", "4"]) == 0
    return out


def test_synth_writes_events_and_truth(synth_dir):
    assert (synth_dir / "events.jsonl").stat().st_size > 0
    truth = json.loads((synth_dir / "ground_truth.json").read_text())
    assert set(truth["egos"]) == {"ego0000", "ego0001", "ego0002"}
    assert truth["config"]["seed"] == 4


def test_pipeline_recovers_planted_scaling(synth_dir, tmp_path):
    events = synth_dir / "events.jsonl"
    assert main(["filter", "--input", str(events), "--out", str(tmp_path)]) == 0
    assert main(["build", "--input", str(tmp_path / "timelines.json"), "--out", str(tmp_path)]) == 0
    assert main(["static-report", "--input", str(tmp_path / "networks.json"), "--out", str(tmp_path)]) == 0
    pop = {r["statistic"]: float(r["mean"]) for r in _read_csv(tmp_path / "population.csv")}
    for name in ("C3/C2", "C4/C3", "C5/C4"):
        assert 2 <= pop[name] <= 4
    assert len(_read_csv(tmp_path / "circles.csv")) == 3


def test_static_report_is_deterministic(synth_dir, tmp_path):
    before = _digest(synth_dir / "events.jsonl")
    for run in ("a", "b"):
        assert main(["static-report", "--input", str(synth_dir / "events.jsonl"), "--out", str(tmp_path / run),
                     "--jobs", "2"]) == 0
    for name in ("circles.csv", "population.csv", "usage.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    assert _digest(synth_dir / "events.jsonl") == before


@pytest.mark.parametrize("cmd,outputs", [
    ("dynamics-report", ["turnover"]),
    ("correspond", ["correspondence"]),
    ("hashtags-report", ["hashtags", "growth"]),
    ("regress", ["table3", "table3_signs"]),
])
def test_reports_json_format(synth_dir, tmp_path, cmd, outputs):
    assert main([cmd, "--input", str(synth_dir / "events.jsonl"), "--label", "Synthetic", "--out", str(tmp_path),
                 "--format", "json"]) == 0
    for name in outputs:
        rows = json.loads((tmp_path / f"{name}.json").read_text())
        assert isinstance(rows, list)
        assert all(r["sample"] == "Synthetic" for r in rows)


def test_correspondence_rows_sum_to_one(synth_dir, tmp_path):
    assert main(["correspond", "--input", str(synth_dir / "events.jsonl"), "--out", str(tmp_path)]) == 0
    for row in _read_csv(tmp_path / "correspondence.csv"):
        assert sum(float(row[c]) for c in ("R1", "R2", "R3", "R4", "R5", "OUT")) == pytest.approx(1, abs=1e-5)


def test_filter_rejects_short_account(tmp_path):
    evs = [ev(ego="short", alter=f"a{i}", ts=1420070400 + i * 86400) for i in range(90)]
    path = _write_events(tmp_path / "e.jsonl", evs)
    assert main(["filter", "--input", str(path), "--out", str(tmp_path)]) == 0
    assert _read_csv(tmp_path / "rejected.csv") == [{"ego_id": "short", "reason": "SpanTooShort"}]
    assert json.loads((tmp_path / "timelines.json").read_text())["egos"] == []


def test_bad_arguments_exit_1(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["static-report", "--out", str(tmp_path), "--k", "many"])
    assert exc.value.code == 1
    assert main(["static-report", "--out", str(tmp_path)]) == 1
    assert main(["synth", "--out", str(tmp_path), "--confidence", "1.5"]) == 1
    assert main(["build", "--input", "x.json", "--label", "a", "--label", "b", "--out", str(tmp_path)]) == 1
    with pytest.raises(SystemExit) as exc:
        main(["nope"])
    assert exc.value.code == 1


def test_data_errors_exit_2(tmp_path):
    bad = tmp_path / "bad.jsonl"
    bad.write_bytes(b"\xff\xfe\x00garbage\n")
    assert main(["filter", "--input", str(bad), "--out", str(tmp_path)]) == 2
    assert main(["build", "--input", str(tmp_path / "missing.json"), "--out", str(tmp_path)]) == 2
    junk = tmp_path / "junk.json"
    junk.write_text('{"kind": "other"}')
    assert main(["static-report", "--input", str(junk), "--out", str(tmp_path)]) == 2


def test_dynamics_skips_ego_with_one_window(tmp_path):
    # 8 busy months: accepted by the filter but too short for two 12-month windows
    evs = [ev(ego="brief", alter=f"a{i % 7}", ts=1420070400 + i * 3600 * 6) for i in range(960)]
    path = _write_events(tmp_path / "e.jsonl", evs)
    assert main(["dynamics-report", "--input", str(path), "--out", str(tmp_path)]) == 0
    rows = _read_csv(tmp_path / "turnover.csv")
    assert all(r["jaccard"] == "" for r in rows)
