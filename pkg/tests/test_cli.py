import json
import random

import pytest
from click.testing import CliRunner

from mveff.chain import Chain
from mveff.cli import main
from mveff.corpus import (
    playable_boolean_tables,
    random_game_form,
    random_playable_model,
)
from mveff.games import effectivity_table
from mveff.models import standardize


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def workdir(tmp_path):
    rng = random.Random(0)
    form = random_game_form(rng, 2, 2)
    (tmp_path / "gf.json").write_text(form.to_json())
    model = random_playable_model(rng, Chain(2), 3)
    (tmp_path / "model.json").write_text(model.to_json())
    (tmp_path / "emodel.json").write_text(standardize(model).to_json())
    (tmp_path / "bool.json").write_text(playable_boolean_tables()[2].to_json())
    eff = effectivity_table(form, Chain(2))
    (tmp_path / "eff.json").write_text(eff.to_json())
    return tmp_path


def test_effectivity_command(runner, workdir):
    result = runner.invoke(main, ["effectivity", str(workdir / "gf.json"), "--n", "2"])
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert doc["kind"] == "effectivity"
    assert doc == json.loads((workdir / "eff.json").read_text())


def test_check_command_full_report(runner, workdir):
    result = runner.invoke(main, ["check", str(workdir / "eff.json")])
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert doc["kind"] == "playability-report"
    assert doc["truly_playable"] is True


def test_check_command_specific_properties(runner, workdir):
    result = runner.invoke(
        main, ["check", str(workdir / "eff.json"), "regular", "principal"]
    )
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert doc["regular"] is True and doc["principal"] is True


def test_check_failure_exit_code(runner, workdir):
    doc = json.loads((workdir / "eff.json").read_text())
    doc["table"]["{}"][0] = 2  # break safety
    (workdir / "bad.json").write_text(json.dumps(doc))
    result = runner.invoke(main, ["check", str(workdir / "bad.json")])
    assert result.exit_code == 1


def test_check_model_document(runner, workdir):
    result = runner.invoke(main, ["check", str(workdir / "emodel.json")])
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert doc["standard"] is True


def test_eval_command(runner, workdir):
    result = runner.invoke(main, ["eval", str(workdir / "model.json"), "1"])
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert set(doc["values"].values()) == {2}
    result = runner.invoke(
        main, ["eval", str(workdir / "model.json"), "p1", "--state", "s0"]
    )
    doc = json.loads(result.output)
    assert doc["state"] == "s0"


def test_eval_parse_error_exit_2(runner, workdir):
    result = runner.invoke(main, ["eval", str(workdir / "model.json"), "p1 ->"])
    assert result.exit_code == 2


def test_filter_then_eval_round_trip(runner, workdir):
    result = runner.invoke(
        main, ["filter", str(workdir / "model.json"), "[{1}]p1 -> p2"]
    )
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert doc["kind"] == "model"
    assert "class_map" in doc
    (workdir / "filtered.json").write_text(
        json.dumps({k: v for k, v in doc.items() if k != "class_map"})
    )
    # the filtered document must be a usable model in its own right
    check = runner.invoke(
        main, ["filter", str(workdir / "filtered.json"), "p1 -> p2"]
    )
    assert check.exit_code == 0
    check = runner.invoke(main, ["eval", str(workdir / "filtered.json"), "1"])
    assert check.exit_code == 0


def test_filter_enriched_stage(runner, workdir):
    result = runner.invoke(
        main,
        ["filter", str(workdir / "emodel.json"), "[O]p1", "--stage", "enriched"],
    )
    assert result.exit_code == 0
    assert json.loads(result.output)["kind"] == "enriched-model"


def test_synthesize_command(runner, workdir):
    result = runner.invoke(main, ["synthesize", str(workdir / "eff.json")])
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert doc["kind"] == "game-form"


def test_lift_then_check(runner, workdir):
    result = runner.invoke(main, ["lift", str(workdir / "bool.json"), "--n", "3"])
    assert result.exit_code == 0
    lifted = result.output
    (workdir / "lifted.json").write_text(lifted)
    check = runner.invoke(main, ["check", str(workdir / "lifted.json")])
    assert check.exit_code == 0
    assert json.loads(check.output)["playable"] is True


def test_decide_countermodel_exit_1(runner):
    result = runner.invoke(main, ["decide", "[{}]p1 -> p1", "--max-states", "2"])
    assert result.exit_code == 1
    doc = json.loads(result.output)
    assert doc["status"] == "CountermodelFound"


def test_decide_theorem_exit_0(runner):
    result = runner.invoke(
        main, ["decide", "~[{1}]0", "--max-states", "99999999"]
    )
    assert result.exit_code == 0
    assert json.loads(result.output)["status"] == "TheoremByFiltrationBound"


def test_stdin_input(runner, workdir):
    payload = (workdir / "gf.json").read_text()
    result = runner.invoke(main, ["effectivity", "-", "--n", "1"], input=payload)
    assert result.exit_code == 0
    assert json.loads(result.output)["kind"] == "effectivity"


def test_text_format(runner, workdir):
    result = runner.invoke(
        main, ["check", str(workdir / "eff.json"), "--format", "text"]
    )
    assert result.exit_code == 0
    assert "truly_playable: true" in result.output


def test_missing_file_exit_2(runner):
    result = runner.invoke(main, ["check", "/nonexistent/x.json"])
    assert result.exit_code == 2


def test_determinism_byte_identical(runner, workdir):
    args = ["effectivity", str(workdir / "gf.json"), "--n", "2"]
    out1 = runner.invoke(main, args).output
    out2 = runner.invoke(main, args).output
    assert out1 == out2
