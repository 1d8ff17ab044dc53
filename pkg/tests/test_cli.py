import json

import jsonschema
import pytest

from binedge import schemas
from binedge.cli import instantiate, main, parse_param, run_invariants, scan
from binedge.expr import ExprError
from binedge.oracle import OracleConfig


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out), err


class TestBuild:
    def test_json(self, capsys):
        code, data, _ = run_json(capsys, "build", "Fm(3)")
        assert code == 0
        jsonschema.validate(data, schemas.GRAPH)
        assert data["n"] == 6 and len(data["edges"]) == 6

    def test_classify_table(self, capsys):
        code, out, _ = run(capsys, "build", "fan(3; 1)", "--classify")
        assert code == 0 and "leaves" in out and "n=4" in out

    def test_graph_file(self, capsys, tmp_path):
        _, data, _ = run_json(capsys, "build", "K(3)")
        path = tmp_path / "k3.json"
        path.write_text(json.dumps({"n": data["n"], "edges": data["edges"]}))
        code, out2, _ = run_json(capsys, "invariants", str(path), "--mode", "oracle")
        assert code == 0
        assert out2["oracle"]["cm_type"] == 2

    def test_parse_error_exits_1(self, capsys):
        code, _, err = run(capsys, "build", "Fm(3")
        assert code == 1 and "error" in err

    def test_guard_error_exits_1(self, capsys):
        code, _, err = run(capsys, "invariants", "circ(Fm(2), Fm(3))")
        assert code == 1 and "every entry but the last" in err

    def test_bad_char(self):
        with pytest.raises(SystemExit) as info:
            main(["build", "K(2)", "--char", "15"])
        assert info.value.code == 2  # argparse usage error


class TestInvariants:
    def test_fm3_both(self, capsys):
        code, data, _ = run_json(capsys, "invariants", "Fm(3)", "--conjecture")
        jsonschema.validate(data, schemas.VERIFICATION)
        assert code == 0
        assert data["closed"]["reg"] == data["oracle"]["reg"] == 3
        assert data["closed"]["extremal_betti"] == data["oracle"]["extremal_betti"] == 5
        assert set(data["verdicts"].values()) == {"match"}

    def test_fm3_without_conjecture_is_not_computable(self, capsys):
        code, data, _ = run_json(capsys, "invariants", "Fm(3)")
        assert code == 3
        assert data["verdicts"]["cm_type"] == "not-computable"
        assert data["verdicts"]["extremal_betti"] == "match"

    def test_cone_k2_k2(self, capsys):
        code, data, _ = run_json(capsys, "invariants", "cone(K(2), K(2))")
        jsonschema.validate(data, schemas.VERIFICATION)
        assert data["verdicts"]["reg"] == "match"
        assert data["verdicts"]["cm_type"] in ("match", "mismatch")
        assert code in (0, 2)

    def test_circ_closed(self, capsys):
        code, data, _ = run_json(capsys, "invariants", "circ(Fm(4), Fm(3))", "--mode", "closed")
        jsonschema.validate(data, schemas.VERIFICATION)
        assert data["closed"]["extremal_betti"] == 5
        assert data["closed"]["cm_type"] is None
        assert "cm_type" in data["missing"] and code == 3
        assert any("29" in n for n in data["closed"]["notes"])

    def test_whisker_discrepancy(self, capsys):
        code, data, _ = run_json(capsys, "invariants", "cone(K(2), K(1))")
        (d,) = data["discrepancies"]
        assert d["cone_formula"] == 3 and d["decomposable_product"] == 2 and d["oracle"] == 2
        assert d["adjudication"] == "decomposable product"
        assert code == 0

    def test_oracle_cap_refusal(self, capsys):
        code, data, _ = run_json(capsys, "invariants", "Fm(13)", "--mode", "oracle")
        assert code == 3
        assert any("refused" in n and "24" in n for n in data["notes"])

    def test_table_format(self, capsys):
        code, out, _ = run(capsys, "invariants", "K(3)")
        assert code == 0 and "cm_type" in out and "match" in out

    def test_mismatch_exit_code(self, monkeypatch):
        import binedge.cli as cli

        real = cli.invariants_closed

        def wrong(e, conjectural=False):
            rep = real(e, conjectural)
            rep.reg += 1
            return rep

        monkeypatch.setattr(cli, "invariants_closed", wrong)
        rep = run_invariants("K(3)", "both", OracleConfig())
        assert rep.verdicts["reg"] == "mismatch" and rep.exit_code == 2
        assert any("re-checked at characteristic 101" in n for n in rep.notes)


class TestBetti:
    def test_grid(self, capsys):
        code, out, _ = run(capsys, "betti", "K(3)")
        assert code == 0 and "i\\j-i" in out

    def test_json(self, capsys):
        code, data, _ = run_json(capsys, "betti", "fan(2;1)")
        jsonschema.validate(data, schemas.BETTI)
        assert data["entries"] == {"0,0": 1, "1,2": 2, "2,4": 1}

    def test_inj_subject(self, capsys):
        code, data, _ = run_json(capsys, "betti", "K(3)", "--subject", "inJ", "--method", "hochster")
        assert data["subject"] == "inJ" and data["entries"]["2,3"] == 2

    def test_corner_mode(self, capsys):
        code, data, _ = run_json(capsys, "betti", "Fm(4)", "--subject", "inJ")
        jsonschema.validate(data, schemas.BETTI)
        assert code == 0
        assert data["entries"] == {"7,10": 14} and not data["complete"]

    def test_cap_refusal(self, capsys):
        code, _, err = run(capsys, "betti", "Fm(13)")
        assert code == 3 and err.startswith("refused:") and "2n <= 24" in err

    def test_koszul_cap(self, capsys):
        code, _, err = run(capsys, "betti", "Fm(5)", "--method", "koszul")
        assert code == 3 and "2n <= 16" in err

    def test_rational(self, capsys):
        code, data, _ = run_json(capsys, "betti", "K(3)", "--char", "0")
        assert data["char"] == 0 and data["entries"]["1,2"] == 3


class TestHilbert:
    def test_fm2(self, capsys):
        code, data, _ = run_json(capsys, "hilbert", "Fm(2)")
        jsonschema.validate(data, schemas.HILBERT_REPORT)
        assert code == 0
        assert data["hilbert"]["h"] == [1, 3, 3, 1] == data["closed_form"]["h"]
        assert data["lemmas"]["passed"]
        assert len(data["hilbert_function"]) == 9

    def test_table(self, capsys):
        code, out, _ = run(capsys, "hilbert", "K(3)", "--upto", "3")
        assert code == 0 and "h = [1, 2]" in out


class TestVerify:
    def test_fm3(self, capsys):
        code, data, _ = run_json(capsys, "verify", "Fm(3)", "--conjecture")
        jsonschema.validate(data, schemas.VERIFICATION)
        names = {c["name"]: c["verdict"] for c in data["checks"]}
        assert names == {k: "match" for k in ("linear_strand", "corner_equality", "semicontinuity",
                                             "hilbert_lemmas", "hilbert_numerator", "hilbert_function",
                                             "hvector_fm")}
        assert code == 0

    def test_table(self, capsys):
        code, out, _ = run(capsys, "verify", "fan(3; 1)")
        assert code == 0 and "linear_strand" in out


class TestScan:
    def test_parse_param(self):
        assert parse_param("m=2..4") == ("m", ["2", "3", "4"])
        assert parse_param("m=2,5") == ("m", ["2", "5"])
        assert parse_param("A=K(2)|fan(2;1)") == ("A", ["K(2)", "fan(2;1)"])
        with pytest.raises(ExprError):
            parse_param("2m=1")

    def test_instantiate_word_boundaries(self):
        assert instantiate("fan(m; 1)", {"m": "3"}) == "fan(3; 1)"
        assert instantiate("Fm(m)", {"m": "4"}) == "Fm(4)"

    def test_conjecture_fm(self, capsys):
        code, data, _ = run_json(capsys, "scan", "Fm(m)", "m=2..3", "--conjecture")
        jsonschema.validate(data, schemas.SCAN)
        assert [r["conjecture"] for r in data["rows"]] == ["holds", "holds"]

    def test_fan_beta_hat(self):
        rows = scan("fan(m; 1)", ["m=2..4"])["rows"]
        assert [r["closed"]["extremal_betti"] for r in rows] == [1, 2, 3]
        assert [r["oracle"]["extremal_betti"] for r in rows] == [1, 2, 3]

    def test_cone_pairs_report_whisker(self):
        rows = scan("cone(A, B)", ["A=K(2)|fan(2;1)", "B=K(1)|K(2)"])["rows"]
        assert len(rows) == 4
        whisker = [r for r in rows if r["expr"] == "cone(K(2), K(1))"]
        assert whisker and "decomposable product" in " ".join(whisker[0]["notes"])

    def test_order_with_threads(self):
        serial = scan("K(m)", ["m=2..5"], "oracle")
        parallel = scan("K(m)", ["m=2..5"], "oracle", OracleConfig(threads=3))
        assert [r["expr"] for r in parallel["rows"]] == ["K(2)", "K(3)", "K(4)", "K(5)"]
        assert [r["oracle"] for r in serial["rows"]] == \
            [dict(r["oracle"], timings=s["oracle"]["timings"]) for r, s in zip(parallel["rows"], serial["rows"])]

    def test_bad_instance_recorded(self):
        rows = scan("circ(Fm(m), Fm(3))", ["m=2..3"], "closed")["rows"]
        assert "error" in rows[0] and "error" not in rows[1]

    def test_table_output(self, capsys):
        code, out, _ = run(capsys, "scan", "K(m)", "m=2..3")
        assert code == 0 and "K(3)" in out
