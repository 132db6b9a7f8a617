from __future__ import annotations

import json

import pytest

from tropid.cli import main
from tropid.tropical import TropMatrix
from tropid.words import Identity


def read(path):
    return json.loads(path.read_text())


def test_construct_ut_sep_writes_identity_and_witness(tmp_path):
    out = tmp_path / "id.json"
    assert main(["construct", "ut-sep", "--n", "2", "--out", str(out)]) == 0
    ident = Identity.from_json(read(out))
    assert ident.side_lengths() == (10, 10)
    # short identities ship their expansions too
    assert read(out)["lhs_word"] == "abbaababba"
    wit = read(tmp_path / "id.witness.json")
    assert TropMatrix.from_json(wit["a"]).dim == 3
    inner = read(tmp_path / "id.inner.json")["inner"]
    assert inner == {"u": "abaab", "v": "abbab"}


def test_max_expand_gates_expansions(tmp_path):
    out = tmp_path / "id.json"
    main(["construct", "ut-sep", "--n", "2", "--max-expand", "5",
          "--out", str(out)])
    doc = read(out)
    assert "lhs_word" not in doc
    assert doc["side_lengths"] == ["10", "10"]


def test_construct_prints_to_stdout_without_out(capsys):
    assert main(["construct", "factor-witness", "--word", "aa"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["corner"] == [1, 3]
    assert doc["a"]["dim"] == 3


def test_verify_clean_and_counterexample(tmp_path, capsys):
    out = tmp_path / "id.json"
    main(["construct", "ut-sep", "--n", "2", "--out", str(out)])

    rep = tmp_path / "rep.json"
    code = main(["verify", "--identity", str(out), "--dim", "2",
                 "--trials", "200", "--seed", "7", "--out", str(rep)])
    assert code == 0
    assert read(rep)["outcome"] == "no-counterexample"

    code = main(["verify", "--identity", str(out), "--dim", "3",
                 "--trials", "500", "--seed", "7", "--out", str(rep)])
    assert code == 1
    assert read(rep)["outcome"] == "counterexample"


def test_falsify_via_factor_word(tmp_path):
    out = tmp_path / "id.json"
    main(["construct", "ut-sep", "--n", "2", "--out", str(out)])
    rep = tmp_path / "fal.json"
    code = main(["falsify", "--identity", str(out), "--factor-word", "aa",
                 "--out", str(rep)])
    assert code == 0
    doc = read(rep)
    assert doc["counterexample"]["entry"] == [1, 3]
    assert doc["counterexample"]["lhs_value"] == -1


def test_falsify_via_witness_file(tmp_path):
    out = tmp_path / "id.json"
    main(["construct", "ut-sep", "--n", "3", "--out", str(out)])
    code = main(["falsify", "--identity", str(out),
                 "--witness", str(tmp_path / "id.witness.json"),
                 "--out", str(tmp_path / "fal.json")])
    assert code == 0


def test_falsify_failed_witness_is_exit_one(tmp_path, capsys):
    out = tmp_path / "id.json"
    main(["construct", "ut-sep", "--n", "3", "--out", str(out)])
    # a witness two sizes down cannot separate an identity valid in UT_3
    code = main(["falsify", "--identity", str(out), "--factor-word", "a"])
    assert code == 1
    assert "witness failed" in capsys.readouterr().err


def test_falsify_requires_some_witness(tmp_path):
    out = tmp_path / "id.json"
    main(["construct", "ut-sep", "--n", "2", "--out", str(out)])
    assert main(["falsify", "--identity", str(out)]) == 2


def test_exponent_bound_is_usage_error(capsys):
    code = main(["construct", "fulliden-i", "--u", "ab", "--v", "ba",
                 "--q", "ab", "--r", "ba", "--t", "2", "--n", "3"])
    assert code == 2
    assert "below the bound" in capsys.readouterr().err


def test_zur_and_covering_are_the_same_verb(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["construct", "zur", "--word", "abbaab", "--n", "3", "--out", str(a)])
    main(["construct", "covering", "--word", "abbaab", "--n", "3", "--out", str(b)])
    assert a.read_text() == b.read_text()


def test_plactic_canon_closure_rho(tmp_path, capsys):
    assert main(["plactic", "canon", "3141"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["rows"] == [[1, 1], [3, 4]]
    assert doc["reading_word"] == "3411"

    assert main(["plactic", "closure", "2113"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["class"] == ["1213", "1231", "2113"]
    assert doc["size"] == 3

    assert main(["plactic", "rho", "21"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["matrix"]["dim"] == 16
    assert doc["index_legend"][0] == "1234"
    assert doc["index_legend"][-1] == ""

    assert main(["plactic", "rep", "21"]) == 0
    alias = json.loads(capsys.readouterr().out)
    assert alias == doc


def test_plactic_rejects_bad_digits(capsys):
    assert main(["plactic", "canon", "15"]) == 2


def test_usage_errors_exit_two(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["construct"])  # missing sub-verb
    assert exc.value.code == 2
    assert main(["reproduce"]) == 2  # --all is required


def test_missing_identity_file_is_usage_error(tmp_path, capsys):
    assert main(["verify", "--identity", str(tmp_path / "nope.json")]) == 2
