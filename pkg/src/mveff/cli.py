"""File-oriented command line front end.

Each subcommand reads self-describing JSON documents (a "kind" field names
the document type), writes one document or a text rendering to stdout, and
exits 0 on success, 1 when the checked property fails or a countermodel is
found, 2 on errors.
"""

from __future__ import annotations

import json
import sys

import click

from .chain import Chain
from .decide import LOGIC_PN, LOGIC_TPN, search_countermodel
from .errors import MveffError
from .filtration import (
    STAGE_ENRICHED,
    STAGE_INTERMEDIATE,
    STAGE_PLAYABLE,
    enriched_filtration,
    intermediate_filtration,
    playable_filtration,
)
from .formulas import DIALECT_L, DIALECT_LPLUS, parse
from .games import GameForm, effectivity_table
from .models import EnrichedLnModel, LnModel, eval_vector, is_standard
from .tables import (
    EffFn,
    check_playability,
    check_property,
    lift_boolean,
    synthesize_game_form,
)


def _read_doc(path: str) -> dict:
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as handle:
        return json.load(handle)


def _emit(doc: dict, fmt: str):
    if fmt == "json":
        click.echo(json.dumps(doc, indent=2, sort_keys=True))
    else:
        for key, value in sorted(doc.items()):
            if key == "kind":
                continue
            click.echo(f"{key}: {json.dumps(value, sort_keys=True)}")


def _fail(exc: Exception):
    click.echo(f"error: {exc}", err=True)
    sys.exit(2)


_format_option = click.option(
    "--format", "fmt", type=click.Choice(["json", "text"]), default="json"
)


@click.group()
def main():
    """Exact chain-valued effectivity toolkit."""


@main.command("effectivity")
@click.argument("game_form_file")
@click.option("--n", default=1, show_default=True, help="chain parameter")
@click.option("--budget-cells", default=1 << 20, show_default=True)
@_format_option
def cmd_effectivity(game_form_file, n, budget_cells, fmt):
    """Full effectivity table of a game form document."""
    try:
        form = GameForm.from_doc(_read_doc(game_form_file))
        table = effectivity_table(form, Chain(n), cell_budget=budget_cells)
    except (MveffError, ValueError, OSError, json.JSONDecodeError) as exc:
        _fail(exc)
    _emit(table.to_doc(), fmt)


@main.command("check")
@click.argument("input_file")
@click.argument("properties", nargs=-1)
@_format_option
def cmd_check(input_file, properties, fmt):
    """Playability (or standardness) report for a table or model document.

    With no explicit properties the full report is produced; the exit code
    is 1 as soon as any requested property fails.
    """
    try:
        doc = _read_doc(input_file)
        kind = doc.get("kind", "effectivity")
        if kind in ("model", "enriched-model"):
            model = LnModel.from_doc(doc)
            results = {}
            for j, E in enumerate(model.eff):
                results[model.states[j]] = check_playability(E).to_doc()
            out = {"kind": "model-check", "per_state": results}
            if isinstance(model, EnrichedLnModel):
                out["standard"] = is_standard(model)
            verdict = all(
                r["truly_playable"] for r in results.values()
            ) and out.get("standard", True)
        else:
            E = EffFn.from_doc(doc)
            if properties:
                out = {"kind": "property-check"}
                verdict = True
                for prop in properties:
                    check = check_property(E, prop)
                    out[prop] = check.holds
                    verdict = verdict and check.holds
            else:
                report = check_playability(E)
                out = report.to_doc()
                verdict = report.playable
    except (MveffError, ValueError, OSError, json.JSONDecodeError) as exc:
        _fail(exc)
    _emit(out, fmt)
    sys.exit(0 if verdict else 1)


@main.command("eval")
@click.argument("model_file")
@click.argument("formula_text")
@click.option("--state", default=None, help="evaluate at one state only")
@_format_option
def cmd_eval(model_file, formula_text, state, fmt):
    """Value of a formula in a model, per state or at one state."""
    try:
        model = LnModel.from_doc(_read_doc(model_file))
        dialect = (
            DIALECT_LPLUS if isinstance(model, EnrichedLnModel) else DIALECT_L
        )
        phi = parse(formula_text, model.k, dialect=dialect, chain=model.chain)
        values = eval_vector(model, phi)
    except (MveffError, ValueError, OSError, json.JSONDecodeError) as exc:
        _fail(exc)
    if state is not None:
        value = values[model.state_index(state)]
        _emit({"kind": "value", "state": state, "value": value, "n": model.n}, fmt)
        sys.exit(0 if value == model.n else 1)
    doc = {
        "kind": "values",
        "n": model.n,
        "values": {u: values[j] for j, u in enumerate(model.states)},
    }
    _emit(doc, fmt)
    sys.exit(0 if all(v == model.n for v in values) else 1)


@main.command("filter")
@click.argument("model_file")
@click.argument("formula_text")
@click.option(
    "--stage",
    type=click.Choice([STAGE_INTERMEDIATE, STAGE_PLAYABLE, STAGE_ENRICHED]),
    default=STAGE_PLAYABLE,
    show_default=True,
)
@_format_option
def cmd_filter(model_file, formula_text, stage, fmt):
    """Filtration of a model by a formula, at the chosen stage."""
    try:
        model = LnModel.from_doc(_read_doc(model_file))
        dialect = (
            DIALECT_LPLUS if isinstance(model, EnrichedLnModel) else DIALECT_L
        )
        phi = parse(formula_text, model.k, dialect=dialect, chain=model.chain)
        if stage == STAGE_INTERMEDIATE:
            result = intermediate_filtration(model, phi)
        elif stage == STAGE_PLAYABLE:
            result = playable_filtration(model, phi)
        else:
            result = enriched_filtration(model, phi)
    except (MveffError, ValueError, OSError, json.JSONDecodeError) as exc:
        _fail(exc)
    doc = result.model.to_doc()
    doc["class_map"] = result.quotient.to_doc()["classes"]
    _emit(doc, fmt)


@main.command("synthesize")
@click.argument("effectivity_file")
@click.option("--budget-strategies", default=3, show_default=True)
@_format_option
def cmd_synthesize(effectivity_file, budget_strategies, fmt):
    """A game form realizing a truly playable effectivity table."""
    try:
        E = EffFn.from_doc(_read_doc(effectivity_file))
        form = synthesize_game_form(E, budget=budget_strategies)
    except (MveffError, ValueError, OSError, json.JSONDecodeError) as exc:
        _fail(exc)
    _emit(form.to_doc(), fmt)


@main.command("decide")
@click.argument("formula_text")
@click.option(
    "--logic", type=click.Choice([LOGIC_PN, LOGIC_TPN]), default=LOGIC_PN
)
@click.option("--n", default=1, show_default=True)
@click.option("--players", default=2, show_default=True)
@click.option("--max-states", default=8, show_default=True)
@click.option(
    "--strategy",
    type=click.Choice(["exhaustive", "randomized"]),
    default="exhaustive",
)
@click.option("--seed", default=0, show_default=True)
@_format_option
def cmd_decide(formula_text, logic, n, players, max_states, strategy, seed, fmt):
    """Countermodel search; exit 1 when a countermodel is found."""
    try:
        chain = Chain(n)
        dialect = DIALECT_LPLUS if logic == LOGIC_TPN else DIALECT_L
        phi = parse(formula_text, players, dialect=dialect, chain=chain)
        verdict = search_countermodel(
            phi,
            logic=logic,
            max_states=max_states,
            strategy=strategy,
            chain=chain,
            players=players,
            seed=seed,
        )
    except (MveffError, ValueError, OSError) as exc:
        _fail(exc)
    _emit(verdict.to_doc(), fmt)
    sys.exit(1 if verdict.model is not None else 0)


@main.command("lift")
@click.argument("boolean_effectivity_file")
@click.option("--n", required=True, type=int, help="target chain parameter")
@_format_option
def cmd_lift(boolean_effectivity_file, n, fmt):
    """Canonical chain-valued lift of a playable Boolean table."""
    try:
        H = EffFn.from_doc(_read_doc(boolean_effectivity_file))
        E = lift_boolean(H, Chain(n))
    except (MveffError, ValueError, OSError, json.JSONDecodeError) as exc:
        _fail(exc)
    _emit(E.to_doc(), fmt)


if __name__ == "__main__":
    main()
