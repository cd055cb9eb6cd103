from __future__ import annotations

import subprocess
import sys

from sketchbind.cli import main

from .conftest import DEMO_DIR


def _run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_full_pipeline_writes_svg_and_dump(tmp_path, capsys):
    out = tmp_path / "chart.svg"
    dump = tmp_path / "chart.json"
    code, stdout, stderr = _run(
        [
            "--data", f"{DEMO_DIR / 'trees.csv'}:trees",
            "--script", str(DEMO_DIR / "tree_chart.dsl"),
            "--out", str(out),
            "--dump", str(dump),
        ],
        capsys,
    )
    assert code == 0
    assert stdout == "" and stderr == ""
    assert out.read_bytes().startswith(b"<?xml")
    assert dump.read_bytes().startswith(b"{")


def test_running_twice_is_byte_identical(tmp_path, capsys):
    args = lambda n: [
        "--data", str(DEMO_DIR / "trees.csv"),
        "--script", str(DEMO_DIR / "tree_chart.dsl"),
        "--out", str(tmp_path / f"{n}.svg"),
        "--dump", str(tmp_path / f"{n}.json"),
    ]
    assert _run(args("a"), capsys)[0] == 0
    assert _run(args("b"), capsys)[0] == 0
    assert (tmp_path / "a.svg").read_bytes() == (tmp_path / "b.svg").read_bytes()
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_script_relative_data_resolution(tmp_path, capsys):
    # No --data flag: `load data trees.csv` resolves against the script's dir.
    code, _, stderr = _run(
        ["--script", str(DEMO_DIR / "tree_chart.dsl"), "--dump", str(tmp_path / "s.json")],
        capsys,
    )
    assert code == 0, stderr


def test_parse_error_exit_1(tmp_path, capsys):
    script = tmp_path / "bad.dsl"
    script.write_text("atach label s1\n")
    code, _, stderr = _run(["--script", str(script)], capsys)
    assert code == 1
    assert stderr.startswith("parse error at 1:1:")


def test_replay_error_exit_2(tmp_path, capsys):
    script = tmp_path / "bad.dsl"
    script.write_text("tap ghost.sort\n")
    code, _, stderr = _run(["--script", str(script)], capsys)
    assert code == 2
    assert stderr.startswith("replay error at command 0:")


def test_missing_csv_exit_3(tmp_path, capsys):
    script = tmp_path / "s.dsl"
    script.write_text("load data gone.csv as d\n")
    code, _, stderr = _run(["--script", str(script)], capsys)
    assert code == 3
    assert "i/o error" in stderr


def test_missing_data_flag_file_exit_3(tmp_path, capsys):
    script = tmp_path / "s.dsl"
    script.write_text("tap x.sort\n")
    code, _, _ = _run(["--data", "gone.csv", "--script", str(script)], capsys)
    assert code == 3


def test_missing_script_exit_3(tmp_path, capsys):
    code, _, _ = _run(["--script", str(tmp_path / "none.dsl")], capsys)
    assert code == 3


def test_script_render_and_dump_commands_write_files(tmp_path, capsys):
    script = tmp_path / "s.dsl"
    script.write_text(
        "draw stroke s [(0,0),(10,0),(10,10),(0,10)] closed\nrender art.svg\ndump art.json\n"
    )
    import os

    cwd = os.getcwd()
    os.chdir(tmp_path)
    try:
        code, _, _ = _run(["--script", str(script)], capsys)
    finally:
        os.chdir(cwd)
    assert code == 0
    assert (tmp_path / "art.svg").exists()
    assert (tmp_path / "art.json").exists()


def test_max_height_flag(tmp_path, capsys):
    script = tmp_path / "s.dsl"
    script.write_text(
        "load data trees.csv as trees\n"
        "draw stroke m [(0,300),(30,200),(60,300)] closed\n"
        "attach height m\n"
        'map trees."avg.height" -> m.height\n'
    )
    dump = tmp_path / "d.json"
    code, _, _ = _run(
        [
            "--data", f"{DEMO_DIR / 'trees.csv'}:trees",
            "--script", str(script),
            "--dump", str(dump),
            "--max-height", "100",
        ],
        capsys,
    )
    assert code == 0
    import json

    tree = json.loads(dump.read_bytes())
    points = tree["objects"][0]["geometry"]["points"]
    ys = [float(y) for _, y in points]
    assert max(ys) - min(ys) == 100.0


def test_console_entry_point_runs():
    result = subprocess.run(
        [sys.executable, "-m", "sketchbind", "--help"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert "--script" in result.stdout
