"""Command line interface: every subcommand plus the size ceiling."""

import json

from click.testing import CliRunner

from ncfree.cli import main


def run(*args, env=None):
    return CliRunner().invoke(main, list(args), env=env)


class TestEnumerate:
    def test_disc(self):
        res = run("enumerate", "nc", "3")
        assert res.exit_code == 0
        lines = res.output.strip().splitlines()
        records = [json.loads(line) for line in lines]
        assert records[-1] == {"count": 5}
        assert {"perm": "(1,2,3)"} in records[:-1]
        assert len(records) == 6

    def test_annular_golden(self):
        res = run("enumerate", "snc", "2", "1")
        assert res.exit_code == 0
        records = [json.loads(line) for line in res.output.strip().splitlines()]
        assert records[-1] == {"count": 4}
        perms = {rec["perm"] for rec in records[:-1]}
        assert perms == {"(1)(2,3)", "(1,2,3)", "(1,3,2)", "(1,3)(2)"}

    def test_partitioned(self):
        res = run("enumerate", "psnc", "1", "1")
        assert res.exit_code == 0
        records = [json.loads(line) for line in res.output.strip().splitlines()]
        assert records[-1] == {"count": 2}
        assert {"perm": "(1,2)", "partition": [[1, 2]], "kind": "disc"} in records
        assert {"perm": "(1)(2)", "partition": [[1, 2]], "kind": "tunnel"} in records

    def test_size_arity(self):
        assert run("enumerate", "nc", "2", "1").exit_code != 0
        assert run("enumerate", "snc", "2").exit_code != 0


class TestCeiling:
    def test_default(self):
        res = run("enumerate", "nc", "13")
        assert res.exit_code != 0
        assert "ceiling 12" in res.output

    def test_environment_override(self):
        env = {"NCFREE_MAX_TOTAL": "5"}
        assert run("enumerate", "nc", "6", env=env).exit_code != 0
        assert run("enumerate", "nc", "5", env=env).exit_code == 0

    def test_counts_respects_ceiling(self):
        assert run("counts", "--max-total", "13").exit_code != 0


class TestCounts:
    def test_csv_golden(self):
        res = run("counts", "--max-total", "4")
        assert res.exit_code == 0
        assert res.output.splitlines() == [
            "p,q,count",
            "1,1,1",
            "1,2,4",
            "2,1,4",
            "1,3,15",
            "2,2,18",
            "3,1,15",
        ]


class TestTable:
    def test_latex_golden(self):
        res = run("table", "1", "1")
        assert res.exit_code == 0
        assert res.output.strip() == "\\alpha_{1,1} = \\kappa_{1,1} + \\kappa_2"

    def test_rows_cover_ordered_shapes(self):
        res = run("table", "2", "2")
        assert res.exit_code == 0
        heads = [line.split(" = ")[0] for line in res.output.strip().splitlines()]
        assert heads == ["\\alpha_{1,1}", "\\alpha_{1,2}", "\\alpha_{2,2}"]

    def test_json_golden(self):
        res = run("table", "1", "1", "--format", "json")
        assert json.loads(res.output) == {
            "p": 1,
            "q": 1,
            "direction": "alpha-in-kappa",
            "terms": [
                {"coeff": 1, "monomial": ["k1,1"]},
                {"coeff": 1, "monomial": ["k2"]},
            ],
        }

    def test_inverse_direction(self):
        res = run("table", "1", "1", "--direction", "kappa-in-alpha")
        assert (
            res.output.strip()
            == "\\kappa_{1,1} = \\alpha_{1,1} + \\alpha_1^2 - \\alpha_2"
        )


class TestVerify:
    def test_text_output(self):
        res = run("verify", "mobius", "--max", "5")
        assert res.exit_code == 0
        assert res.output.startswith("PASS  ")
        assert "1/1 checks passed" in res.output

    def test_json_output(self):
        res = run("verify", "mobius", "--max", "5", "--format", "json")
        assert res.exit_code == 0
        payload = json.loads(res.output)
        assert len(payload) == 1
        assert payload[0]["passed"] is True
        assert payload[0]["cases"] == 10

    def test_unknown_suite_is_rejected(self):
        assert run("verify", "nope").exit_code != 0

    def test_order_suite_small(self):
        res = run("verify", "order", "--max", "4")
        assert res.exit_code == 0
        assert "3/3 checks passed" in res.output


class TestDraw:
    def test_writes_deterministic_svg(self, tmp_path):
        out1, out2 = tmp_path / "a.svg", tmp_path / "b.svg"
        args = ("draw", "(1,3)(2,4)", "--shape", "2", "2")
        assert run(*args, "--out", str(out1)).exit_code == 0
        assert run(*args, "--out", str(out2)).exit_code == 0
        data = out1.read_text()
        assert data == out2.read_text()
        assert data.startswith("<?xml")
        assert "<svg" in data
        assert data.count("<path") == 2

    def test_empty_perm_is_identity(self, tmp_path):
        out = tmp_path / "id.svg"
        res = run("draw", "", "--shape", "1", "1", "--out", str(out))
        assert res.exit_code == 0
        # Two fixed points, no cycle outlines.
        assert out.read_text().count("<path") == 0

    def test_partition_connector(self, tmp_path):
        out = tmp_path / "glued.svg"
        res = run(
            "draw",
            "(1,2)(3)",
            "--shape",
            "2",
            "1",
            "--partition",
            "[[1,2,3]]",
            "--out",
            str(out),
        )
        assert res.exit_code == 0
        assert 'stroke-dasharray' in out.read_text()

    def test_rejects_bad_input(self, tmp_path):
        out = str(tmp_path / "bad.svg")
        oversized = run("draw", "(1,5)(2,4)", "--shape", "2", "2", "--out", out)
        assert oversized.exit_code != 0 and "outside" in oversized.output
        malformed = run("draw", "(1,3)(2", "--shape", "2", "1", "--out", out)
        assert malformed.exit_code != 0 and "malformed" in malformed.output
        loose_block = run(
            "draw", "(1,2)(3)", "--shape", "2", "1",
            "--partition", "[[1],[2,3]]", "--out", out,
        )
        assert loose_block.exit_code != 0 and "block" in loose_block.output
