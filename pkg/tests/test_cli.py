import json
import random
import subprocess
import sys

import pytest

from paracyclic._linalg import PrimeField
from paracyclic.cli import main
from paracyclic.consheaf import constant_sheaf, random_sheaf
from paracyclic.preord import ParaPreorder
from paracyclic.sdot import random_filtration


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out


def run_cli_json(args, capsys):
    code, out = run_cli(args, capsys)
    return code, json.loads(out)


class TestHomCount:
    def test_six_maps_on_the_circle_pair(self, capsys):
        code, data = run_cli_json(["hom-count", "--m", "1", "--n", "1"], capsys)
        assert code == 0 and data["count"] == 6

    def test_kind_filter(self, capsys):
        code, data = run_cli_json(
            ["hom-count", "--m", "0", "--n", "1", "--kind", "inj"], capsys
        )
        assert code == 0 and data["counts"]["inj"] == 2

    def test_cap_error(self, capsys):
        code, data = run_cli_json(
            ["hom-count", "--m", "3", "--n", "3", "--cap", "5"], capsys
        )
        assert code == 1 and data["error"]["type"] == "ResourceBound"


class TestConvAndPoints:
    def test_conv_seven(self, capsys):
        code, data = run_cli_json(["conv", "--sizes", "1,1,1"], capsys)
        assert code == 0 and data["count"] == 7
        assert len(data["relations"]) == 7

    def test_point_valid(self, capsys):
        code, data = run_cli_json(
            ["point", "--sizes", "1,1", "--gaps", "3/1,inf"], capsys
        )
        assert code == 0
        assert data["stratum"]["gaps"] == [1]
        assert data["fiber"] == {"n": 0, "fixed_points_per_period": 1}

    def test_point_invalid(self, capsys):
        code, data = run_cli_json(
            ["point", "--sizes", "1,1", "--gaps", "2/1,5/1"], capsys
        )
        assert code == 1 and data["error"]["type"] == "NoInfinityGap"

    def test_strata(self, capsys):
        code, data = run_cli_json(["strata", "--sizes", "2,1"], capsys)
        assert code == 0 and len(data["strata"]) == 3
        for entry in data["strata"]:
            assert entry["quotient_label"] == len(entry["relation"]["gaps"]) - 1


class TestDualize:
    def test_round_trip(self, capsys):
        payload = json.dumps(
            {"m": 0, "n": 1, "values": [[0, 0]], "shift": 0}
        )
        code, data = run_cli_json(["dualize", "--map", payload], capsys)
        assert code == 0
        assert data["dual"] == {
            "m": 1, "n": 0, "values": [[0, 0], [0, 0]], "shift": 0
        }


class TestSheafCommands:
    @pytest.fixture
    def sheaf_file(self, tmp_path):
        sheaf = constant_sheaf(ParaPreorder((1, 1)), PrimeField(5), 2)
        path = tmp_path / "sheaf.json"
        path.write_text(json.dumps(sheaf.to_json()))
        return str(path)

    def test_sections(self, sheaf_file, capsys):
        code, data = run_cli_json(
            ["sections", "--in", sheaf_file, "--upset", "[[0],[1]]"], capsys
        )
        assert code == 0 and data["dim"] == 4

    def test_sections_whole_space(self, sheaf_file, capsys):
        code, data = run_cli_json(
            ["sections", "--in", sheaf_file, "--upset", "[[0,1],[0],[1]]"], capsys
        )
        assert code == 0 and data["dim"] == 2

    def test_sections_rejects_non_upward_closed(self, sheaf_file, capsys):
        code, data = run_cli_json(
            ["sections", "--in", sheaf_file, "--upset", "[[0,1]]"], capsys
        )
        assert code == 1 and data["error"]["type"] == "NotUpwardClosed"

    def test_stalk(self, sheaf_file, capsys):
        code, data = run_cli_json(
            ["stalk", "--in", sheaf_file, "--gaps", "0,1"], capsys
        )
        assert code == 0 and data["dim"] == 2

    def test_random_sheaf_file_round_trips(self, tmp_path, capsys):
        rng = random.Random(5)
        sheaf = random_sheaf(rng, ParaPreorder((1, 1, 1)), PrimeField(101))
        path = tmp_path / "sheaf.json"
        path.write_text(json.dumps(sheaf.to_json()))
        code, data = run_cli_json(
            ["stalk", "--in", str(path), "--gaps", "0,1,2"], capsys
        )
        assert code == 0
        assert data["dim"] == sheaf.dims[(0, 1, 2)]


class TestChecks:
    def test_adjunction(self, capsys):
        code, data = run_cli_json(
            ["check-adjunction", "--N", "2", "--variant", "cyc"], capsys
        )
        assert code == 0 and data["passed"]

    def test_roundtrip(self, capsys):
        code, data = run_cli_json(
            ["roundtrip", "--N", "2", "--count", "2", "--seed", "3"], capsys
        )
        assert code == 0 and data["passed"]

    def test_sdot_rotate_random(self, capsys):
        code, data = run_cli_json(
            ["sdot-rotate", "--length", "2", "--seed", "4"], capsys
        )
        assert code == 0 and data["passed"]

    def test_sdot_rotate_file(self, tmp_path, capsys):
        filt = random_filtration(random.Random(6), PrimeField(2), 2)
        path = tmp_path / "filtration.json"
        path.write_text(json.dumps(filt.to_json()))
        code, data = run_cli_json(["sdot-rotate", "--in", str(path)], capsys)
        assert code == 0 and data["passed"]

    def test_selftest_subset(self, capsys):
        code, out = run_cli(["selftest", "--only", "1,4", "--seed", "0"], capsys)
        assert code == 0
        assert "criterion 1: PASS" in out and "criterion 4: PASS" in out

    def test_selftest_json_out(self, tmp_path, capsys):
        path = tmp_path / "report.json"
        code, _ = run_cli(
            ["selftest", "--only", "1", "--seed", "0", "--out", str(path)], capsys
        )
        assert code == 0
        report = json.loads(path.read_text())
        assert report["passed"] and report["reports"][0]["id"] == 1
        assert "seconds" not in report["reports"][0]


class TestSchemaRoundTrips:
    def test_conv_relations_parse_back(self, capsys):
        from paracyclic.preord import ConvexRelation

        _, data = run_cli_json(["conv", "--sizes", "2,1"], capsys)
        for entry in data["relations"]:
            rel = ConvexRelation.from_json(entry)
            assert rel.base.sizes == (2, 1)

    def test_point_parses_back(self, capsys):
        from paracyclic.corner import CornerPoint

        # negative leading gaps need the = form so argparse keeps the dash
        _, data = run_cli_json(
            ["point", "--sizes", "1,1", "--gaps=-7/2,inf"], capsys
        )
        point = CornerPoint.from_json(data["point"])
        assert point.gaps[0].token() == "-7/2"

    def test_dual_parses_back_as_map(self, capsys):
        from paracyclic.paracat import ParaMap, compose, Parasimplex

        payload = json.dumps({"m": 0, "n": 1, "values": [[0, 1]], "shift": 2})
        _, data = run_cli_json(["dualize", "--map", payload], capsys)
        f = ParaMap.from_json(data["input"])
        fd = ParaMap.from_json(data["dual"])
        assert compose(fd, f) == Parasimplex(0).identity()


class TestUsageErrors:
    def test_unknown_subcommand_exits_2(self):
        result = subprocess.run(
            [sys.executable, "-m", "paracyclic.cli", "no-such-command"],
            capture_output=True,
        )
        assert result.returncode == 2

    def test_missing_required_flag_exits_2(self):
        result = subprocess.run(
            [sys.executable, "-m", "paracyclic.cli", "conv"],
            capture_output=True,
        )
        assert result.returncode == 2
