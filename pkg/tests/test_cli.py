import io
import json
import subprocess
import sys

import pytest

from danielewski.certificate import Certificate
from danielewski.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


HF = '{"nu_x": "x", "nu_y": "-y", "nu_z": "0"}'


def test_classify_quadratic():
    code, out, _ = run("classify", "--p", "z^2 - 1")
    assert code == 0
    assert "(1) nu" in out and "(2) nu" in out and "(3) unavailable" in out


def test_classify_quartic_json(tmp_path):
    path = tmp_path / "c.json"
    code, out, _ = run("classify", "--p", "z^4 - 1", "--json", str(path))
    assert code == 0 and "(3) nu" in out
    data = json.loads(path.read_text())
    assert [f["family"] for f in data["families"]] == [1, 2, 3]
    assert data["families"][2]["nu0"]["nu_z"] == "x - y"


def test_classify_multiple_zero():
    code, _, err = run("classify", "--p", "z^2")
    assert code == 2 and "gcd(p, p') = z" in err


def test_verify_raw_hf():
    code, out, _ = run("verify-field", "--p", "z^2 - 1", "--field", HF)
    assert code == 0 and "h: t" in out


def test_verify_raw_non_tangent(tmp_path):
    path = tmp_path / "f.json"
    path.write_text('{"nu_x": "1", "nu_y": "0", "nu_z": "0"}')
    code, out, _ = run("verify-field", "--p", "z^2 - 1", "--field", str(path), "--json", "-")
    assert code == 1 and "residue: y" in out
    certs = json.loads(out.split("\n", 1)[1])  # first line is the status line
    assert certs[0]["status"] == "falsified" and certs[0]["residue"] == "y"


def test_verify_family3():
    code, out, _ = run("verify-field", "--p", "z^4 - 1", "--family", '{"family": 3, "A": "1"}')
    assert code == 0 and "h: 0" in out


def test_verify_family2_with_fibration():
    fam = '{"family": 2, "c": "1", "A": "1 + t", "m": 1, "n": 1, "l": 0}'
    code, out, _ = run("verify-field", "--p", "z^2 - 1", "--family", fam, "--fibration", '{"kind": "TwoSection"}')
    assert code == 0 and "h: t" in out


def test_verify_family2_invalid_is_falsified():
    code, out, _ = run("verify-field", "--p", "z^2 - 1", "--family", '{"family": 2, "c": "1", "A": "2"}')
    assert code == 1 and "A(0)=c/(m+nl)" in out


def test_verify_not_preserved_and_cap():
    sfy = '{"nu_x": "2*z", "nu_y": "0", "nu_z": "y"}'
    code, out, _ = run("verify-field", "--p", "z^2 - 1", "--field", sfy)
    assert code == 1 and "no polynomial h exists" in out
    code, out, _ = run("verify-field", "--p", "z^2 - 1", "--field", HF, "--degree-cap", "0")
    assert code == 1 and "inconclusive" in out


@pytest.mark.parametrize(
    "argv",
    [
        ("verify-field", "--p", "z^2 - 1"),
        ("verify-field", "--p", "z^2 - 1", "--field", "{not json"),
        ("verify-field", "--p", "z^2 - 1", "--family", '{"family": 3}'),
        ("verify-field", "--p", "z^2 + w", "--field", HF),
        ("verify-field", "--p", "z^2 - a", "--field", HF),
        ("classify",),
        ("nonsense",),
    ],
)
def test_input_errors(argv):
    assert run(*argv)[0] == 2


def test_graph_revert():
    code, out, _ = run("graph", "--zigzag", "[[0,0,-3]]", "revert")
    assert code == 0 and "after:  [[-3,0,0]]" in out and "blowdown@" in out


def test_graph_steps_json():
    code, out, _ = run(
        "graph", "--zigzag", "[[-2,0,-2]]", "--steps", "movezero@1:left,movezero@1:left", "--json", "-"
    )
    assert code == 0
    data = json.loads(out[out.index("{"):])
    assert data["output"] == "[[0,0,-4]]"
    assert all(set(r) == {"step", "before", "after"} for r in data["transcript"])
    assert data["transcript"][1]["after"] == "[[-1,0,-3]]"


def test_graph_blowdown_wrong_weight():
    code, _, err = run("graph", "--zigzag", "[[0,0,-3]]", "--steps", "blowdown@2")
    assert code == 2 and "not -1" in err


def test_graph_actions(tmp_path):
    assert "[[0,0,-3]]" in run("graph", "--zigzag", "[[0,-2,-3]]", "standardize")[1]
    assert "after:  [[0,0,-4]]" in run("graph", "--zigzag", "[[-2,0,-2]]", "normalize")[1]
    assert "DanielewskiBoundary(3)" in run("graph", "--zigzag", "[[0,0,-3]]")[1]
    fork = {
        "vertices": [{"id": 0, "weight": -1}, {"id": 1, "weight": -2}, {"id": 2, "weight": -2},
                     {"id": 3, "weight": -1}, {"id": 4, "weight": -2}],
        "edges": [[0, 1], [0, 2], [0, 3], [3, 4]],
    }
    path = tmp_path / "g.json"
    path.write_text(json.dumps(fork))
    code, out, _ = run("graph", "--graph", str(path), "minimal")
    assert code == 0 and "after:  [[-2,1,-2]]" in out
    code, out, _ = run("graph", "--graph", str(path), "--steps", "outer@1")
    assert code == 0 and '"id": 5' in out


def test_graph_needs_one_input():
    assert run("graph", "revert")[0] == 2
    assert run("graph", "--zigzag", "[[0,1]]", "--graph", "{}")[0] == 2


def test_fibration_double_section():
    code, out, _ = run("fibration", "--p", "z^4 - 1", "--fibration", '{"kind": "DoubleSection"}', "--alpha", "4", "--xi", "2")
    assert code == 0
    assert "c^3 + 4*c (3 distinct)" in out
    assert out.count("[verified]") == 3


def test_fibration_two_section_json():
    spec = '{"kind": "TwoSection", "m": 2, "n": 3, "l": 1, "Q": "5"}'
    code, out, _ = run("fibration", "--p", "z^3 - z", "--fibration", spec, "--json", "-")
    assert code == 0
    data = json.loads(out[out.index("{"):])
    certs = [Certificate.from_json(c) for c in data["certificates"]]
    assert all(c.verified for c in certs) and len(certs) == 2


def test_fibration_bad_checks():
    assert run("fibration", "--p", "z^4 - 1", "--check", "magic")[0] == 2
    assert run("fibration", "--p", "z^4 - 1", "--check", "parametrization", "--alpha", "4", "--xi", "3")[0] == 2
    assert run("fibration", "--p", "z^4 - 1", "--check", "trivialization")[0] == 2


def test_selftest():
    code, out, _ = run("selftest")
    assert code == 0 and "FAIL" not in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "danielewski", "graph", "--zigzag", "[[0,0,-4]]", "revert"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and "[[-4,0,0]]" in proc.stdout
