import io
import json

import pytest

from omatroid.cli import main
from omatroid.errors import InputError
from omatroid.exactalg import QQ, REGULAR, ZZ
from omatroid.jsonio import (
    parse_basis_family,
    parse_matrix_file,
    parse_plucker_vector,
    parse_ring_decl,
    parse_vector_file,
    parse_wick_vector,
    plucker_vector_to_json,
    wick_vector_to_json,
)

FAMILY = {"n": 4, "bases": [[], [1, 2], [3, 4], [1, 2, 3, 4]]}
BAD_FAMILY = {"n": 4, "bases": [[1, 2], [3, 4]]}
WICK_MATRIX = {
    "n": 4,
    "ring": {"kind": "q"},
    "matrix": [
        ["0", "-3", "0", "1"],
        ["3", "0", "0", "6"],
        ["0", "0", "0", "0"],
        ["-1", "-6", "0", "0"],
    ],
    "twist": [3],
}
PLUCKER_MATRIX = {"ring": {"kind": "q"}, "matrix": [["1", "0", "1", "1"], ["0", "1", "1", "2"]]}
WICK_VECTOR = {
    "n": 4,
    "ring": {"kind": "q"},
    "coords": {"3": "1", "1,2,3": "-3", "1,3,4": "1", "2,3,4": "6"},
}
PLUCKER_VECTOR = {
    "n": 4,
    "r": 2,
    "ring": {"kind": "q"},
    "coords": {"1,2": "1", "1,3": "1", "2,3": "-1", "1,4": "2", "2,4": "-1", "3,4": "1"},
}


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def report_of(out):
    return json.loads(out)


# ---------------------------------------------------------------------------
# json schemas


def test_parse_ring_decl():
    ring, pf = parse_ring_decl({"kind": "q"})
    assert ring == QQ and pf.json_decl() == {"kind": "q"}
    ring, pf = parse_ring_decl({"kind": "z"})
    assert ring == ZZ and pf is None
    ring, pf = parse_ring_decl({"kind": "regular"})
    assert pf == REGULAR
    ring, pf = parse_ring_decl({"kind": "gfp", "p": 7})
    assert ring.p == 7
    with pytest.raises(InputError):
        parse_ring_decl({"kind": "gf"})
    with pytest.raises(InputError):
        parse_ring_decl({"kind": "gfp", "p": "7"})
    with pytest.raises(InputError):
        parse_ring_decl(["q"])


def test_parse_basis_family_errors():
    with pytest.raises(InputError):
        parse_basis_family({"n": 2, "bases": []})
    with pytest.raises(InputError):
        parse_basis_family({"n": 2, "bases": [[3]]})
    with pytest.raises(InputError):
        parse_basis_family({"n": 2, "bases": [[1, 1]]})
    with pytest.raises(InputError):
        parse_basis_family({"bases": [[1]]})


def test_vector_json_roundtrip():
    p = parse_plucker_vector(PLUCKER_VECTOR)
    assert plucker_vector_to_json(p) == PLUCKER_VECTOR
    w = parse_wick_vector(WICK_VECTOR)
    assert wick_vector_to_json(w) == WICK_VECTOR
    assert parse_vector_file(PLUCKER_VECTOR).r == 2
    assert parse_vector_file(WICK_VECTOR).coords == w.coords


def test_vector_json_validation():
    with pytest.raises(InputError):
        parse_plucker_vector({**PLUCKER_VECTOR, "coords": {"1,2,3": "1"}})
    with pytest.raises(InputError):
        parse_plucker_vector({**PLUCKER_VECTOR, "ring": {"kind": "z"}})
    with pytest.raises(InputError):
        parse_wick_vector({**WICK_VECTOR, "coords": {"9": "1"}})
    with pytest.raises(InputError):
        parse_wick_vector({**WICK_VECTOR, "coords": {"": True}})


def test_empty_set_key_means_empty_subset():
    w = parse_wick_vector({"n": 2, "ring": {"kind": "q"}, "coords": {"": "1", "1,2": "5"}})
    assert w.coords[0] == 1
    assert w.coords[0b11] == 5


def test_parse_matrix_file():
    m, twist, ring, pf = parse_matrix_file(WICK_MATRIX)
    assert (m.rows, m.cols) == (4, 4)
    assert twist == 0b0100
    assert pf.json_decl() == {"kind": "q"}
    m2, twist2, _, _ = parse_matrix_file(PLUCKER_MATRIX)
    assert twist2 is None
    with pytest.raises(InputError):
        parse_matrix_file({**WICK_MATRIX, "n": 3})
    with pytest.raises(InputError):
        parse_matrix_file({"ring": {"kind": "q"}, "matrix": [["1"], ["2", "3"]]})
    with pytest.raises(InputError):
        parse_matrix_file({"ring": {"kind": "q"}, "matrix": [["1", "2"]], "twist": [1]})


# ---------------------------------------------------------------------------
# verbs and exit codes


def test_check_matroid_exit_codes(tmp_path, capsys):
    good = write(tmp_path, "uniform.json", {"n": 3, "bases": [[1], [2], [3]]})
    code, out, _ = run(capsys, "check-matroid", good)
    assert code == 0
    rep = report_of(out)
    assert rep["verdict"] is True and rep["witness"] is None

    bad = write(tmp_path, "bad.json", BAD_FAMILY)
    code, out, _ = run(capsys, "check-matroid", bad)
    assert code == 1
    rep = report_of(out)
    assert rep["witness"] == {"B1": [1, 2], "B2": [3, 4], "reason": "exchange", "x": 1}


def test_check_orthogonal(tmp_path, capsys):
    path = write(tmp_path, "fam.json", FAMILY)
    code, out, _ = run(capsys, "check-orthogonal", path)
    assert code == 0
    code, out, _ = run(capsys, "check-orthogonal", "--strong", path)
    assert code == 0
    mixed = write(tmp_path, "mixed.json", {"n": 2, "bases": [[], [1]]})
    code, out, _ = run(capsys, "check-orthogonal", mixed)
    assert code == 1
    assert report_of(out)["witness"]["x1"] == 1


def test_check_plucker_and_witness(tmp_path, capsys):
    path = write(tmp_path, "p.json", PLUCKER_VECTOR)
    code, out, _ = run(capsys, "check-plucker", path)
    assert code == 0
    assert report_of(out)["data"]["mode"] == "full"

    corrupted = dict(PLUCKER_VECTOR, coords={**PLUCKER_VECTOR["coords"], "3,4": "2"})
    bad = write(tmp_path, "pbad.json", corrupted)
    code, out, _ = run(capsys, "check-plucker", bad)
    assert code == 1
    assert report_of(out)["witness"] == {"S": [1, 2, 3], "T": [4], "value": "-1"}
    code, out, _ = run(capsys, "check-plucker", "--mode", "3term", bad)
    assert code == 1
    assert report_of(out)["data"]["equations_ok"] is False


def test_check_wick_modes(tmp_path, capsys):
    path = write(tmp_path, "w.json", WICK_VECTOR)
    for mode in ("full", "short", "4term"):
        code, out, _ = run(capsys, "check-wick", "--mode", mode, path)
        assert code == 0
    parity = write(
        tmp_path, "parity.json", {"n": 4, "ring": {"kind": "q"}, "coords": {"": "1", "1": "1"}}
    )
    code, out, _ = run(capsys, "check-wick", parity)
    assert code == 1
    assert report_of(out)["witness"] == {"J1": [], "J2": [1], "value": "-1"}
    code, out, _ = run(capsys, "check-wick", "--mode", "4term", parity)
    assert code == 1
    rep = report_of(out)
    assert rep["data"]["equations_ok"] is True
    assert rep["data"]["support_ok"] is False


def test_from_matrix_and_reconstruct_roundtrip(tmp_path, capsys):
    wmat = write(tmp_path, "wm.json", WICK_MATRIX)
    code, out, _ = run(capsys, "from-matrix", wmat)
    assert code == 0
    vec = report_of(out)["data"]
    assert vec["kind"] == "wick"
    assert vec["vector"] == WICK_VECTOR

    wv = write(tmp_path, "wv.json", vec["vector"])
    code, out, _ = run(capsys, "reconstruct-wick", wv)
    assert code == 0
    data = report_of(out)["data"]
    assert data["matrix"] == WICK_MATRIX["matrix"]
    assert data["twist"] == [3]

    pmat = write(tmp_path, "pm.json", PLUCKER_MATRIX)
    code, out, _ = run(capsys, "from-matrix", pmat)
    assert code == 0
    pvec = report_of(out)["data"]
    assert pvec["kind"] == "plucker"
    assert pvec["vector"] == PLUCKER_VECTOR

    pv = write(tmp_path, "pv.json", pvec["vector"])
    code, out, _ = run(capsys, "reconstruct-plucker", pv)
    assert code == 0
    assert report_of(out)["data"]["matrix"] == PLUCKER_MATRIX["matrix"]


def test_from_matrix_kind_control(tmp_path, capsys):
    skew_no_twist = dict(WICK_MATRIX)
    skew_no_twist.pop("twist")
    path = write(tmp_path, "skew.json", skew_no_twist)
    code, out, _ = run(capsys, "from-matrix", path)
    assert report_of(out)["data"]["kind"] == "wick"
    code, out, _ = run(capsys, "from-matrix", "--kind", "plucker", path)
    assert code == 2  # rank 4 needed, matrix is singular
    pmat = write(tmp_path, "pm.json", PLUCKER_MATRIX)
    code, out, _ = run(capsys, "from-matrix", "--kind", "wick", pmat)
    assert code == 2


def test_reconstruct_wick_rejects_plucker_file(tmp_path, capsys):
    pv = write(tmp_path, "pv.json", PLUCKER_VECTOR)
    code, out, _ = run(capsys, "reconstruct-wick", pv)
    assert code == 2
    assert "reconstruct-plucker" in report_of(out)["error"]["message"]


def test_pfaffian_verb(tmp_path, capsys):
    wmat = write(tmp_path, "wm.json", WICK_MATRIX)
    code, out, _ = run(capsys, "pfaffian", wmat)
    assert code == 0
    assert report_of(out)["data"]["pfaffian"] == "0"
    zmat = write(
        tmp_path,
        "zm.json",
        {"ring": {"kind": "z"}, "matrix": [["0", "5"], ["-5", "0"]]},
    )
    code, out, _ = run(capsys, "pfaffian", zmat)
    assert code == 0
    assert report_of(out)["data"]["pfaffian"] == "5"
    notskew = write(
        tmp_path, "ns.json", {"ring": {"kind": "z"}, "matrix": [["0", "1"], ["1", "0"]]}
    )
    code, out, _ = run(capsys, "pfaffian", notskew)
    assert code == 2


def test_twist_verbs(tmp_path, capsys):
    fpath = write(tmp_path, "fam.json", FAMILY)
    code, out, _ = run(capsys, "twist", "--by", "1,3", fpath)
    assert code == 0
    data = report_of(out)["data"]
    assert data["kind"] == "family"
    assert data["result"]["bases"] == [[1, 3], [2, 3], [1, 4], [2, 4]]

    wv = write(tmp_path, "wv.json", WICK_VECTOR)
    code, out, _ = run(capsys, "twist", "--by", "3", wv)
    assert code == 0
    data = report_of(out)["data"]
    assert data["kind"] == "vector"
    assert data["result"]["coords"] == {"": "1", "1,2": "-3", "1,4": "1", "2,4": "6"}

    pv = write(tmp_path, "pv.json", PLUCKER_VECTOR)
    code, out, _ = run(capsys, "twist", "--by", "1", pv)
    assert code == 2


def test_census_verb(tmp_path, capsys):
    out_path = tmp_path / "c.jsonl"
    code, out, err = run(capsys, "census", "--n", "2", "--out", str(out_path))
    assert code == 0
    data = report_of(out)["data"]
    assert data["orthogonal_count"] == 6
    assert data["representable_counts"] == {"gf2": 6}
    assert len(out_path.read_text().splitlines()) == 6
    assert "census n=2" in err

    code, out, _ = run(capsys, "census", "--n", "6")
    assert code == 3
    assert report_of(out)["error"]["type"] == "CapabilityError"


def test_verify_bounds_verb(capsys):
    code, out, _ = run(capsys, "verify-bounds", "--n", "12")
    assert code == 0
    rep = report_of(out)
    assert rep["verdict"] is True
    assert rep["data"]["steps"][-1] == ["hypothesis_certified", True]
    code, out, _ = run(capsys, "verify-bounds", "--n", "11")
    assert code == 2


def test_stdin_input(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(FAMILY)))
    code, out, _ = run(capsys, "check-orthogonal", "-")
    assert code == 0


def test_malformed_input_exit_codes(tmp_path, capsys):
    garbage = tmp_path / "g.json"
    garbage.write_text("{not json")
    code, out, _ = run(capsys, "check-matroid", str(garbage))
    assert code == 2
    assert report_of(out)["error"]["type"] == "InputError"
    code, out, _ = run(capsys, "check-matroid", str(tmp_path / "missing.json"))
    assert code == 2
    zvec = write(tmp_path, "z.json", {**PLUCKER_VECTOR, "ring": {"kind": "z"}})
    code, out, _ = run(capsys, "check-plucker", zvec)
    assert code == 2


def test_capability_exit_code(tmp_path, capsys):
    big = write(tmp_path, "big.json", {"n": 30, "bases": [[1]]})
    code, out, _ = run(capsys, "check-matroid", big)
    assert code == 3


def test_unknown_verb_and_flags(capsys):
    assert main(["no-such-verb"]) == 2
    assert main([]) == 2
    assert main(["check-matroid"]) == 2  # missing input
    assert main(["--version"]) == 0
    capsys.readouterr()


def test_output_is_byte_stable(tmp_path, capsys):
    path = write(tmp_path, "fam.json", FAMILY)
    _, out1, _ = run(capsys, "check-orthogonal", path)
    _, out2, _ = run(capsys, "check-orthogonal", path)
    assert out1 == out2
    assert out1.endswith("\n")
    compact = out1.strip()
    assert ": " not in compact and ", " not in compact
