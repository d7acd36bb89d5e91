import json
import subprocess
import sys
from pathlib import Path

from thomcalc.cli.main import build_parser

REPO = Path(__file__).resolve().parents[1]


def test_options_before_and_after_the_command():
    parser = build_parser()
    before = parser.parse_args(["--prime", "5", "op", "apply", "--op", "qmodl", "--space", "P2", "--expr", "u"])
    after = parser.parse_args(["op", "apply", "--op", "qmodl", "--space", "P2", "--expr", "u", "-l", "5"])
    assert before.prime == after.prime == 5


def test_op_apply(cli_json):
    code, out = cli_json("op", "apply", "--op", "qmodl", "--prime", "2", "--space", "P2", "--expr", "u")
    assert code == 0
    assert out["value"] == "u + u^2"
    assert out["pieces"] == {"0": "u", "1": "u^2"}
    assert out["op"].startswith("qmodl mod 2")


def test_op_apply_single_piece(cli_json):
    code, out = cli_json("op", "apply", "--op", "qmodl", "--prime", "2", "--space", "P2", "--expr", "u",
                         "--piece", "1")
    assert code == 0
    assert out["piece"] == "u^2"
    assert "pieces" not in out


def test_op_apply_text_output(cli):
    code, out, _ = cli("op", "apply", "--op", "qmodl", "--prime", "2", "--space", "P2", "--expr", "u")
    assert code == 0
    assert "value: u + u^2" in out


def test_bundle_and_genus(cli_json, workspace_path):
    code, out = cli_json("bundle", "add", "N", "--space", "P1", "--rank", "1", "--total", "1 + u")
    assert code == 0
    assert out["chern"] == {"c1": "u"}
    assert workspace_path.exists()
    code, out = cli_json("genus", "eval", "--op", "qmodp", "--prime", "2", "--bundle", "N")
    assert code == 0
    assert out["polynomial"] == "c1(N)"
    assert out["value"] == "u"


def test_qmodp_with_no_char_p_is_a_usage_error(cli):
    code, _, err = cli("op", "apply", "--op", "qmodp", "--no-char-p", "--prime", "3", "--space", "P2", "--expr", "u")
    assert code == 2
    assert "qmodp" in err
    code, _, _ = cli("op", "apply", "--op", "qmodp", "--char-p", "--prime", "3", "--space", "P2", "--expr", "u")
    assert code == 0


def test_genus_without_todd_genus(cli):
    code, _, err = cli("genus", "eval", "--op", "qmodp", "--td", "--space", "P2", "--bundle", "T")
    assert code == 1
    assert "Todd genus" in err


def test_space_show(cli_json):
    code, out = cli_json("space", "show", "P2")
    assert code == 0
    assert out["dimension"] == 2
    assert out["basis"] == {"0,0": ["1"], "2,1": ["u"], "4,2": ["u^2"]}
    assert out["point_class"] == "u^2"
    assert out["odd_bidegrees_zero"] is True
    code, out = cli_json("space", "show", "Gr(2,4)")
    assert code == 0
    assert out["total_dimension"] == 6
    assert out["tangent"] is None


def test_space_add(cli_json, workspace_path):
    code, out = cli_json("space", "add", "X", "P1 x P2")
    assert code == 0
    assert out["spec"] == "P1xP2"
    assert json.loads(workspace_path.read_text())["spaces"]["X"]["kind"] == "product"
    code, out = cli_json("space", "show", "X")
    assert out["dimension"] == 3


def test_embedding_and_map(cli_json):
    code, out = cli_json("embedding", "add", "line", "--catalog", "linear:1:2")
    assert code == 0
    assert out["codimension"] == 1
    assert out["normal"] == "1 + u"
    code, out = cli_json("map", "add", "pr", "--catalog", "projection:1:1")
    assert code == 0
    assert out["relative_dimension"] == -1
    code, out = cli_json("push", "--map", "pr", "--expr", "u*v")
    assert code == 0
    assert out["value"] == "v"


def test_parse_error_exit_code(cli):
    code, _, err = cli("op", "apply", "--op", "qmodl", "--space", "P2", "--expr", "u +")
    assert code == 2
    assert "^" in err


def test_usage_errors(cli):
    assert cli("op", "apply", "--op", "nonsense", "--space", "P2", "--expr", "u")[0] == 2
    assert cli("space", "show", "Q7")[0] == 2
    assert cli("op", "apply", "--space", "P2")[0] == 2
    assert cli("--prime", "4", "space", "show", "P1")[0] != 0


def test_verify_single_checks(cli, cli_json):
    code, out = cli_json("verify", "wu", "--op", "qmodl", "--embedding", "linear:1:2", "--prime", "3")
    assert code == 0
    assert out["verdict"] == "pass"
    assert out["lhs"] == out["rhs"] == "u"
    code, _, _ = cli("verify", "grr", "--op", "qmodp", "--map", "structure:1:1", "--prime", "3")
    assert code == 1
    code, out = cli_json("verify", "degree", "--n", "2", "--s", "1")
    assert code == 0
    assert "-1" in out["lhs"]


def test_verify_with_source_class(cli_json):
    code, out = cli_json("verify", "grr", "--op", "qmodl", "--map", "structure:2:2", "--prime", "2", "--a", "u^2")
    assert code == 0
    assert out["lhs"] == out["rhs"] == "1"


def test_verify_output_and_rerun(cli, tmp_path):
    path = tmp_path / "wu.json"
    code, _, _ = cli("verify", "wu", "--op", "qmodl", "--embedding", "linear:1:2", "--output", str(path))
    assert code == 0
    assert json.loads(path.read_text())["verdict"] == "pass"
    code, out, _ = cli("verify", "wu", "--rerun", str(path), "--format", "json")
    assert code == 0
    assert json.loads(out)["reproduced"] is True


def test_verify_all(cli, tmp_path):
    path = tmp_path / "suite.json"
    code, out, _ = cli("verify", "all", "--prime", "3", "--max-dim", "3", "--output", str(path))
    assert code == 0
    assert "unexpected: []" in out
    assert json.loads(path.read_text())["summary"]["unexpected"] == 0
    code, _, _ = cli("verify", "all", "--rerun", str(path))
    assert code == 0


def test_schema(cli):
    code, out, _ = cli("schema", "report")
    assert code == 0
    assert "verdict" in json.loads(out)["properties"]


def test_module_entry_point():
    result = subprocess.run([sys.executable, "-m", "thomcalc", "--help"], cwd=REPO,
                            capture_output=True, text=True)
    assert result.returncode == 0
    assert "verify" in result.stdout
