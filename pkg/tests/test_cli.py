"""Command line behavior: outputs, formats, exit codes, determinism."""

import csv
import io
import json

import pytest

from lagrange_kit import cli
from lagrange_kit.identities import IDENTITY_CATALOG, IdentityReport


def run_cli(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def csv_rows(text):
    return list(csv.reader(io.StringIO(text)))


class TestCoeffs:
    def test_binary_weights_column(self):
        code, text = run_cli(
            "coeffs", "--R", "1,2,1", "--k", "1", "--order", "6",
            "--format", "csv",
        )
        assert code == 0
        rows = csv_rows(text)
        assert rows[0] == ["n", "value"]
        assert [r[1] for r in rows[1:]] == ["0", "1", "2", "5", "14", "42"]

    def test_trivial_weight(self):
        code, text = run_cli(
            "coeffs", "--R", "1", "--order", "4", "--format", "csv"
        )
        assert code == 0
        assert [r[1] for r in csv_rows(text)[1:]] == ["0", "1", "0", "0"]

    def test_default_weight_is_geometric(self):
        code, text = run_cli("coeffs", "--order", "6", "--format", "csv")
        assert code == 0
        assert [r[1] for r in csv_rows(text)[1:]] == [
            "0", "1", "1", "2", "5", "14",
        ]

    def test_exp_preset_square(self):
        code, text = run_cli(
            "coeffs", "--R", "exp", "--k", "2", "--order", "6",
            "--format", "csv",
        )
        assert code == 0
        assert [r[1] for r in csv_rows(text)[1:]] == [
            "0", "0", "1", "2", "4", "25/3",
        ]

    def test_json_payload(self):
        code, text = run_cli(
            "coeffs", "--R", "geom", "--order", "4", "--format", "json"
        )
        assert code == 0
        payload = json.loads(text)
        assert payload["schema"] == 1
        assert payload["command"] == "coeffs"
        assert payload["k"] == 1
        assert payload["rows"][2] == {"n": 2, "value": "1"}

    def test_pretty_reports_elapsed(self):
        code, text = run_cli("coeffs", "--order", "4")
        assert code == 0
        assert "elapsed:" in text
        assert "ms" in text

    def test_nonpositive_k_rejected(self):
        code, _ = run_cli("coeffs", "--k", "0")
        assert code == 2

    def test_weight_needs_unit(self):
        code, _ = run_cli("coeffs", "--R", "0,1")
        assert code == 2


class TestInvert:
    def test_catalan_inverse(self):
        code, text = run_cli(
            "invert", "--R", "0,1,-1", "--order", "8", "--format", "csv"
        )
        assert code == 0
        assert [r[1] for r in csv_rows(text)[1:]] == [
            "0", "1", "1", "2", "5", "14", "42", "132",
        ]

    def test_requires_series(self):
        with pytest.raises(SystemExit) as exc:
            run_cli("invert")
        assert exc.value.code == 2

    def test_non_reversible_is_usage_error(self):
        code, _ = run_cli("invert", "--R", "1,1")
        assert code == 2

    def test_bad_literal_position(self, capsys):
        code, _ = run_cli("invert", "--R", "0,1,oops")
        assert code == 2
        err = capsys.readouterr().err
        assert "oops" in err
        assert "position 4" in err


class TestIdentity:
    def test_lacasse_passes(self):
        code, text = run_cli("identity", "lacasse", "--order", "12")
        assert code == 0
        assert "identity lacasse: PASS" in text

    def test_fc_polynomial_prints_picture(self):
        code, text = run_cli(
            "identity", "fc-polynomial", "--p", "3", "--i", "0", "--j", "2",
            "--order", "16",
        )
        assert code == 0
        assert "polynomial: 2 - x" in text
        assert "branch: vanishing" in text

    def test_jensen_with_zero_p(self):
        code, text = run_cli(
            "identity", "jensen", "--p", "0", "--j", "1", "--r", "2",
            "--n-max", "5", "--order", "10",
        )
        assert code == 0
        assert "PASS" in text

    def test_json_shape(self):
        code, text = run_cli(
            "identity", "catalan", "--order", "10", "--format", "json"
        )
        assert code == 0
        payload = json.loads(text)
        assert payload["schema"] == 1
        assert payload["status"] == "pass"
        assert payload["identity"] == "catalan"
        assert "elapsed_ms" not in payload

    def test_csv_shape(self):
        code, text = run_cli(
            "identity", "raney", "--order", "10", "--format", "csv"
        )
        assert code == 0
        rows = csv_rows(text)
        assert rows[0] == [
            "identity", "params", "order", "status", "first_failure",
        ]
        assert rows[1][0] == "raney"
        assert rows[1][3] == "pass"

    def test_unknown_name(self, capsys):
        code, _ = run_cli("identity", "nope")
        assert code == 2
        assert "catalan" in capsys.readouterr().err

    def test_foreign_flag_rejected(self, capsys):
        code, _ = run_cli("identity", "catalan", "--p", "3")
        assert code == 2
        assert "--p" in capsys.readouterr().err

    def test_failing_identity_exits_one(self, monkeypatch):
        def always_fails(order=30):
            return IdentityReport(
                name="always-fails", params={}, order=order, status="fail",
                first_failure="numbers disagree", elapsed_ms=0.0,
            )

        monkeypatch.setitem(
            IDENTITY_CATALOG, "always-fails", (always_fails, True, {})
        )
        code, text = run_cli("identity", "always-fails")
        assert code == 1
        assert "FAIL" in text
        assert "numbers disagree" in text


class TestOracle:
    def test_prufer_counts(self):
        code, text = run_cli(
            "oracle", "prufer", "--m", "5", "--format", "csv"
        )
        assert code == 0
        rows = csv_rows(text)
        assert rows[1][1:] == ["125", "125", "yes"]
        assert all(r[3] == "yes" for r in rows[1:])

    def test_cycle_lemma_alphabet_with_negatives(self):
        code, text = run_cli(
            "oracle", "cycle-lemma", "--alphabet", "-1,0,1", "--len", "5",
            "--format", "csv",
        )
        assert code == 0
        assert all(r[3] == "yes" for r in csv_rows(text)[1:])

    def test_single_vertex_forest(self):
        code, text = run_cli(
            "oracle", "ordered-forest", "--n", "1", "--k", "1",
            "--format", "csv",
        )
        assert code == 0
        rows = csv_rows(text)
        assert len(rows) == 2
        assert rows[1][1:] == ["1", "1", "yes"]

    def test_labeled_forest(self):
        code, text = run_cli(
            "oracle", "labeled-forest", "--n", "4", "--k", "2",
            "--format", "csv",
        )
        assert code == 0
        assert all(r[3] == "yes" for r in csv_rows(text)[1:])

    def test_degree_trees_includes_totals(self):
        code, text = run_cli(
            "oracle", "degree-trees", "--m", "4", "--format", "csv"
        )
        assert code == 0
        rows = csv_rows(text)
        labels = [r[0] for r in rows[1:]]
        assert "total (Cayley)" in labels
        assert "formula total" in labels
        assert all(r[3] == "yes" for r in rows[1:])

    def test_mismatch_exits_one(self, monkeypatch):
        monkeypatch.setattr(
            "lagrange_kit.trees.count_by_profile", lambda n, k, p: 999
        )
        code, text = run_cli(
            "oracle", "ordered-forest", "--n", "3", "--k", "1",
            "--format", "csv",
        )
        assert code == 1
        assert any(r[3] == "NO" for r in csv_rows(text)[1:])

    def test_bad_alphabet_entry(self):
        code, _ = run_cli("oracle", "cycle-lemma", "--alphabet", "-2,1")
        assert code == 2

    def test_bad_alphabet_literal(self):
        code, _ = run_cli("oracle", "cycle-lemma", "--alphabet", "1,x")
        assert code == 2


class TestList:
    def test_pretty_lists_every_identity(self):
        code, text = run_cli("list")
        names = [l for l in text.splitlines() if l]
        assert code == 0
        assert len(names) == 19
        assert "catalan" in names

    def test_csv_header(self):
        code, text = run_cli("list", "--format", "csv")
        rows = csv_rows(text)
        assert rows[0] == ["identity"]
        assert len(rows) == 20

    def test_json(self):
        code, text = run_cli("list", "--format", "json")
        payload = json.loads(text)
        assert payload["schema"] == 1
        assert len(payload["identities"]) == 19


class TestOrderCap:
    def test_default_cap(self):
        code, _ = run_cli("coeffs", "--order", "201")
        assert code == 2
        code, _ = run_cli("coeffs", "--order", "0")
        assert code == 2

    def test_env_cap(self, monkeypatch):
        monkeypatch.setenv("LAGRANGE_KIT_MAX_ORDER", "10")
        code, _ = run_cli("coeffs", "--order", "20")
        assert code == 2
        code, _ = run_cli("coeffs", "--order", "10", "--format", "csv")
        assert code == 0

    def test_bad_env_value(self, monkeypatch):
        monkeypatch.setenv("LAGRANGE_KIT_MAX_ORDER", "many")
        code, _ = run_cli("coeffs", "--order", "5")
        assert code == 2


class TestDeterminism:
    @pytest.mark.parametrize("fmt", ["json", "csv"])
    def test_identity_output_is_stable(self, fmt):
        argv = ("identity", "rothe-hagen", "--order", "10", "--format", fmt)
        assert run_cli(*argv) == run_cli(*argv)

    @pytest.mark.parametrize("fmt", ["json", "csv"])
    def test_coeffs_output_is_stable(self, fmt):
        argv = ("coeffs", "--R", "1,1/2,1/3", "--order", "12", "--format", fmt)
        assert run_cli(*argv) == run_cli(*argv)

    def test_oracle_output_is_stable(self):
        argv = ("oracle", "degree-trees", "--m", "5", "--format", "csv")
        assert run_cli(*argv) == run_cli(*argv)
