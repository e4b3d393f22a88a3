# tests/test_cli.py
import json

import pytest

import app.main as main_module
from app.main import parse_inputs, run
from app.shared.utils.schema_export import OUTPUT_MODELS, export_schemas


@pytest.fixture
def cli(cache_dir, capsys):
    """Ejecuta la CLI con la caché aislada y devuelve (código, stdout)"""

    def invoke(*argv: str):
        code = run(["--cache-dir", str(cache_dir), *argv])
        return code, capsys.readouterr().out

    return invoke


def test_parse_inputs():
    config, _ = parse_inputs(["--seed", "7", "modpoly", "--q", "2", "--N", "t^2+t+1"])
    assert config.q == 2
    assert config.subcommand == "modpoly"
    assert config.seed == 7
    assert config.arguments["N"] == "t^2+t+1"


def test_arith(cli):
    code, out = cli("arith", "--q", "2", "--N", "t")
    assert code == 0
    data = json.loads(out)
    assert data["profile"]["psi"] == 3
    assert data["profile"]["lambda_N"] == "1/3"
    assert data["band"]["lower"] == "3/2"
    assert data["band"]["upper"] == "231/4"
    assert data["cn_matrices"] == [{"a": "1", "b": "0", "d": "t"}, {"a": "1", "b": "1", "d": "t"},
                                   {"a": "t", "b": "0", "d": "1"}]


def test_salida_determinista(cli):
    first = cli("farey", "--q", "3", "--M", "2", "--verify-partition", "2")
    second = cli("farey", "--q", "3", "--M", "2", "--verify-partition", "2")
    assert first == second
    assert first[0] == 0


@pytest.mark.parametrize("argv, code, error", [
    (("arith", "--q", "6", "--N", "t"), 3, "UnsupportedField"),
    (("arith", "--q", "2", "--N", "t^^2"), 2, "ParseError"),
    (("arith", "--q", "3", "--N", "2t"), 2, "NotMonic"),
    (("bt-reduce", "--q", "2", "--k", "1", "--u", "pi"), 2, "NonCanonicalVertex"),
    (("verify", "--suite", "galois"), 2, "SuiteUnknown"),
])
def test_codigos_de_salida(cli, argv, code, error):
    exit_code, out = cli(*argv)
    assert exit_code == code
    data = json.loads(out)
    assert data["error"] == error
    assert data["exit_code"] == code


def test_registro_configurado_antes_de_validar_q(cache_dir, capsys, monkeypatch):
    calls = []
    real_ground_field = main_module.ground_field
    monkeypatch.setattr(main_module.ApplicationLifecycle, "configure_logging",
                        lambda verbose=False, quiet=False: calls.append("logging"))
    monkeypatch.setattr(main_module, "ground_field", lambda q: calls.append("ground_field") or real_ground_field(q))
    assert run(["--cache-dir", str(cache_dir), "arith", "--q", "6", "--N", "t"]) == 3
    assert calls == ["logging", "ground_field"]
    assert json.loads(capsys.readouterr().out)["error"] == "UnsupportedField"


def test_error_de_campo_con_el_formato_comun(cache_dir, capsys):
    run(["--cache-dir", str(cache_dir), "arith", "--q", "6", "--N", "t"])
    assert "ERROR app.main: ❌ UnsupportedField" in capsys.readouterr().err


def test_columna_del_error(cli):
    _, out = cli("arith", "--q", "2", "--N", "t^^2")
    assert json.loads(out)["column"] == 3


def test_bt_reduce(cli):
    code, out = cli("bt-reduce", "--q", "2", "--k", "2", "--u", "pi", "--oracle")
    assert code == 0
    data = json.loads(out)
    assert (data["case"], data["k_prime"], data["oracle_k_prime"]) == (3, 0, 0)
    assert data["verified"] is True
    assert len(data["neighbours"]) == 3


def test_drinfeld_quotients_nombra_el_campo_de_torsion(cli):
    """φ_t = w + τ + τ² sobre 𝔽_4: φ[t] escinde en 𝔽_16, cuyo generador se escribe u"""
    code, out = cli("drinfeld-quotients", "--q", "2", "--m", "2", "--theta", "w", "--j", "1", "--N", "t")
    assert code == 0
    data = json.loads(out)
    assert (data["theta"], data["j"]) == ("w", "1")
    assert data["torsion_field_degree"] == 2
    assert data["torsion_field_modulus"] == "u^4+u+1"
    assert len(data["quotients"]) == 3
    for row in data["quotients"]:
        assert "w" not in row["j"]


def test_cache_vacia(cli, cache_dir):
    code, out = cli("cache", "list")
    assert code == 0
    data = json.loads(out)
    assert data["entries"] == []
    assert data["cache_dir"] == str(cache_dir)


def test_verify_arith(cli):
    code, out = cli("verify", "--suite", "arith", "--q", "2")
    assert code == 0
    data = json.loads(out)
    assert data["passed"] is True
    assert [s["suite"] for s in data["suites"]] == ["arith"]
    assert data["suites"][0]["failures"] == []


def test_esquemas_json(tmp_path):
    written = export_schemas(tmp_path / "schemas")
    assert [p.name for p in written] == [f"{name}.v1.json" for name in OUTPUT_MODELS]
    arith = json.loads((tmp_path / "schemas" / "arith.v1.json").read_text(encoding="utf-8"))
    assert arith["$id"] == "ArithReport.v1"
    assert set(arith["properties"]) == {"profile", "band", "cn_matrices"}
