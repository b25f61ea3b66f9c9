import hashlib
import json

import numpy as np
import pytest

from qwalks import __version__
from qwalks.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(csv_text):
    lines = csv_text.strip().split("\n")
    return lines[0].split(","), np.array([[float(v) for v in line.split(",")] for line in lines[1:]])


def test_cwalk_path2(capsys):
    code, out, _ = run(capsys, "cwalk", "--family", "path:2", "--start", "0", "--t-max", "3")
    assert code == 0
    assert out == "t,v1,v2\n0,1,0\n1,0,1\n2,1,0\n3,0,1\n"


def test_cwalk_cycle4_last_row(capsys):
    _, out, _ = run(capsys, "cwalk", "--family", "cycle:4", "--start", "0", "--t-max", "2")
    assert out.strip().split("\n")[-1] == "2,0.5,0,0.5,0"


def test_missing_start_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["cwalk", "--family", "cycle:4"])
    assert exc.value.code == 2


def test_missing_graph_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["qwalk"])
    assert exc.value.code == 2


@pytest.mark.parametrize("argv", [
    ["kernel", "--kind", "sphere", "--n", "4"],
    ["qwalk", "--family", "wheel:4"],
    ["qwalk", "--family", "cycle:4", "--t-max", "nan"],
    ["qwalk", "--family", "cycle:4", "--shots", "-1"],
    ["kernel", "--kind", "ring", "--n", "4", "--times", "0:1"],
])
def test_bad_arguments_are_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_qwalk_defaults(capsys):
    code, out, _ = run(capsys, "qwalk", "--family", "star:4")
    assert code == 0
    header, data = rows(out)
    assert header == ["t", "v1", "v2", "v3", "v4"]
    assert data.shape == (200, 5)
    assert data[0, 0] == 0 and data[-1, 0] == 10
    counts = data[:, 1:] * 1000
    assert np.allclose(counts, np.round(counts), atol=1e-6)
    assert np.allclose(data[:, 1:].sum(axis=1), 1, atol=1e-9)


def test_qwalk_exact_rows_sum_to_one(capsys):
    _, out, _ = run(capsys, "qwalk", "--random", "6:0.5:3", "--shots", "0", "--start", "2")
    _, data = rows(out)
    assert np.max(np.abs(data[:, 1:].sum(axis=1) - 1)) <= 1e-8  # 9 significant digits per cell


def test_qwalk_trotter_octagon(capsys):
    code, out, _ = run(capsys, "qwalk", "--family", "cycle:8", "--method", "trotter",
                       "--slices", "10", "--t-max", "25")
    assert code == 0
    _, data = rows(out)
    assert data.shape == (250, 9)
    assert data[0, 0] == pytest.approx(0.1) and data[-1, 0] == 25


def test_qwalk_trotter_sampled_with_padding(capsys):
    code, out, _ = run(capsys, "qwalk", "--family", "cycle:5", "--method", "trotter",
                       "--shots", "100", "--t-max", "2")
    assert code == 0
    _, data = rows(out)
    assert data.shape == (20, 6)
    assert np.all(data[:, 1:].sum(axis=1) <= 1 + 1e-9)


def test_qwalk_bad_order_is_input_error(capsys):
    code, _, err = run(capsys, "qwalk", "--family", "cycle:4", "--method", "trotter", "--order", "5")
    assert code == 3 and "order" in err


def test_qwalk_seed_reproducible(capsys):
    a = run(capsys, "qwalk", "--family", "cycle:4", "--seed", "7")[1]
    b = run(capsys, "qwalk", "--family", "cycle:4", "--seed", "7")[1]
    c = run(capsys, "qwalk", "--family", "cycle:4", "--seed", "8")[1]
    assert a == b and a != c


def test_file_output_is_byte_identical_with_manifest(tmp_path, capsys):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (out1, out2):
        assert main(["qwalk", "--family", "cycle:4", "--seed", "3", "-o", str(out)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    m1 = json.loads((tmp_path / "a.csv.manifest.json").read_text())
    m2 = json.loads((tmp_path / "b.csv.manifest.json").read_text())
    assert m1 == m2
    assert m1["command"] == "qwalk" and m1["seed"] == 3 and m1["version"] == __version__
    assert m1["parameters"]["family"] == ["cycle", 4]
    assert len(m1["input_digest"]) == 64


def test_graph_file_and_digest(tmp_path, capsys):
    f = tmp_path / "g.txt"
    f.write_text("# square\n0 1 0 1\n1 0 1 0\n0 1 0 1\n1 0 1 0\n")
    code, out, _ = run(capsys, "transfer", "--graph-file", str(f))
    assert code == 0
    assert out.split("\n")[1].startswith("v3,1.5707963")
    main(["cwalk", "--graph-file", str(f), "--start", "0", "-o", str(tmp_path / "c.csv")])
    manifest = json.loads((tmp_path / "c.csv.manifest.json").read_text())
    assert manifest["input_digest"] == hashlib.sha256(f.read_bytes()).hexdigest()


@pytest.mark.parametrize("text, fragment", [
    ("0 1\n1 0 1\n", "line 2"),
    ("0 1\n1 x\n", "line 2"),
    ("0 2\n2 0\n", "line 1"),
    ("0 1\n0 0\n", "symmetric"),
])
def test_graph_file_errors(tmp_path, capsys, text, fragment):
    f = tmp_path / "bad.txt"
    f.write_text(text)
    code, _, err = run(capsys, "cwalk", "--graph-file", str(f), "--start", "0")
    assert code == 3
    assert fragment in err and "bad.txt" in err


def test_missing_graph_file(tmp_path, capsys):
    code, _, err = run(capsys, "cwalk", "--graph-file", str(tmp_path / "nope"), "--start", "0")
    assert code == 3 and "cannot read" in err


def test_degenerate_walk_is_numerical_failure(tmp_path, capsys):
    f = tmp_path / "g.txt"
    f.write_text("0 0\n0 0\n")
    code, _, _ = run(capsys, "cwalk", "--graph-file", str(f), "--start", "0", "--t-max", "1")
    assert code == 4


def test_json_format_embeds_manifest(capsys):
    _, out, _ = run(capsys, "cwalk", "--family", "cycle:4", "--start", "1", "--t-max", "2",
                    "--format", "json")
    doc = json.loads(out)
    assert doc["manifest"]["command"] == "cwalk"
    assert doc["manifest"]["parameters"]["start"] == 1


def test_output_dir_env(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("QWALKS_OUTPUT_DIR", str(tmp_path / "runs"))
    assert main(["cwalk", "--family", "path:3", "--start", "0", "-o", "walk.csv"]) == 0
    assert (tmp_path / "runs" / "walk.csv").read_text().startswith("t,v1,v2,v3\n")
    assert (tmp_path / "runs" / "walk.csv.manifest.json").exists()


def test_kernel_numeric_delta_and_diagnostic(capsys):
    code, out, err = run(capsys, "kernel", "--kind", "numeric", "--n", "32", "--source", "0",
                         "--times", "0,1")
    assert code == 0
    header, data = rows(out)
    assert len(header) == 33
    assert np.allclose(data[0, 1:], np.eye(32)[0], atol=1e-14)
    assert "interval N=32: max_deviation=" in err


def test_kernel_interval_prints_diagnostic(capsys):
    code, out, err = run(capsys, "kernel", "--kind", "interval", "--n", "8")
    assert code == 0 and "max_deviation=" in err
    assert len(rows(out)[1]) == 250


def test_kernel_complex_dump(capsys):
    _, out, _ = run(capsys, "kernel", "--kind", "ring", "--n", "3", "--times", "0:1:3", "--complex")
    assert out.split("\n")[0] == "t,re_v1,im_v1,re_v2,im_v2,re_v3,im_v3"


def test_kernel_bad_source(capsys):
    code, _, _ = run(capsys, "kernel", "--kind", "ring", "--n", "4", "--source", "4")
    assert code == 3


def test_search_complete4(tmp_path, capsys):
    code, out, err = run(capsys, "search", "--family", "complete:4", "--target", "3")
    assert code == 0
    _, data = rows(out)
    assert data[0, 4] == 0.25
    assert data.shape == (200, 5)
    t_star, p_star = map(float, err.strip().split("\n")[1].split(","))
    assert p_star >= 0.99 and 2.8 <= t_star <= 3.5
    main(["search", "--family", "complete:4", "--target", "3", "-o", str(tmp_path / "s.csv")])
    assert (tmp_path / "s.csv.summary.csv").read_text() == err.strip() + "\n"


def test_search_target_out_of_range(capsys):
    code, _, err = run(capsys, "search", "--family", "complete:4", "--target", "5")
    assert code == 3 and "target" in err


def test_transfer_reports(capsys):
    code, out, _ = run(capsys, "transfer", "--family", "cycle:4")
    assert code == 0
    header, first = out.strip().split("\n")
    assert header == "vertex,t,peak"
    vertex, t, peak = first.split(",")
    assert vertex == "v3" and abs(float(t) - np.pi / 2) <= 1e-5 and float(peak) >= 0.999
    assert run(capsys, "transfer", "--family", "complete:3")[1] == "vertex,t,peak\n"
    code, out, _ = run(capsys, "transfer", "--family", "cycle:6", "--format", "json")
    assert code == 0 and "events" in json.loads(out)
