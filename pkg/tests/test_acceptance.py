"""Acceptance gate: ten desk-scale suites, one verdict line each.

Criteria 4-9 are built by deterministic seeded report functions; the
reports are plain JSON-serializable dicts so criterion 10 can compare a
cached run against a fresh one byte for byte.
"""

import json
import random
import sys
import time
from functools import lru_cache

from mveff.chain import Chain, synthesize_tau_term, tau_threshold_num
from mveff.corpus import (
    all_game_forms,
    known_truly_playable_tables,
    playable_boolean_tables,
    random_eff_table,
    random_formula,
    random_playable_model,
)
from mveff.decide import (
    LOGIC_PN,
    LOGIC_TPN,
    search_countermodel,
    soundness_suite,
)
from mveff.filtration import enriched_filtration, playable_filtration
from mveff.formulas import Prop, parse, subformulas, substitute
from mveff.games import effectivity_table
from mveff.models import (
    eval_vector,
    is_standard,
    is_true,
    pn_axioms,
    standardize,
)
from mveff.mvalgebra import FiniteMVAlgebra, check_grigolia
from mveff.tables import boolean_skeleton, check_playability, lift_boolean, synthesize_game_form


def _emit(num, ok):
    stream = sys.__stdout__ or sys.stdout
    stream.write(f"\ncriterion {num}: {'PASS' if ok else 'FAIL'}\n")
    stream.flush()


def test_criterion_1_mv_laws():
    failures = []
    for n in range(1, 7):
        chain = Chain(n)
        alg = FiniteMVAlgebra.from_chain(chain)
        E = alg.elements
        for x in E:
            if alg.neg(alg.neg(x)) != x or alg.oplus(x, 0) != x:
                failures.append((n, x))
            for y in E:
                if alg.oplus(x, y) != alg.oplus(y, x):
                    failures.append((n, x, y))
                lhs = alg.oplus(alg.neg(alg.oplus(alg.neg(x), y)), y)
                rhs = alg.oplus(alg.neg(alg.oplus(alg.neg(y), x)), x)
                if lhs != rhs:
                    failures.append((n, x, y))
                # derived operations against their defining formulas
                if alg.odot(x, y) != alg.neg(alg.oplus(alg.neg(x), alg.neg(y))):
                    failures.append((n, x, y))
                if alg.implies(x, y) != alg.oplus(alg.neg(x), y):
                    failures.append((n, x, y))
                if alg.odot(x, alg.implies(x, y)) != min(x, y):
                    failures.append((n, x, y))
                if alg.implies(alg.implies(x, y), y) != max(x, y):
                    failures.append((n, x, y))
                for z in E:
                    if alg.oplus(alg.oplus(x, y), z) != alg.oplus(x, alg.oplus(y, z)):
                        failures.append((n, x, y, z))
        if not check_grigolia(chain):
            failures.append(("grigolia", n))
        for i in range(1, n + 1):
            term = synthesize_tau_term(chain, i)
            want = tuple(tau_threshold_num(i, x, n) for x in range(n + 1))
            if term.table(chain) != want:
                failures.append(("tau", n, i))
    ok = not failures
    _emit(1, ok)
    assert ok, failures[:5]


def test_criterion_2_game_form_tables_truly_playable():
    failures = []
    for n in (1, 2):
        chain = Chain(n)
        for num_outcomes in (1, 2, 3):
            for form in all_game_forms(k=2, max_strategies=2, num_outcomes=num_outcomes):
                E = effectivity_table(form, chain)
                if not check_playability(E).truly_playable:
                    failures.append((n, form.strategy_counts, form.outcome_map))
    ok = not failures
    _emit(2, ok)
    assert ok, failures[:5]


def test_criterion_3_skeleton_lift_pipeline():
    chain = Chain(2)
    failures = []
    for num_states in (1, 2):
        for H in playable_boolean_tables(num_states, 2):
            E = lift_boolean(H, chain)
            if boolean_skeleton(E) != H:
                failures.append(("skeleton", H.table))
            report = check_playability(E)
            if not report.playable:
                failures.append(("playable", H.table))
            if report.truly_playable != check_playability(H).truly_playable:
                failures.append(("truly", H.table))
    # tables of game forms lift to the tables of the same forms
    for num_outcomes in (1, 2):
        for form in all_game_forms(k=2, max_strategies=2, num_outcomes=num_outcomes):
            H = effectivity_table(form, Chain(1))
            if lift_boolean(H, chain) != effectivity_table(form, chain):
                failures.append(("game", form.strategy_counts, form.outcome_map))
    ok = not failures
    _emit(3, ok)
    assert ok, failures[:5]


def _report_crit4():
    corpus = [(f"bool/{i}", H) for i, H in enumerate(playable_boolean_tables(2, 2))]
    rng = random.Random(2024)
    for i in range(500):
        chain = Chain(rng.randint(1, 3))
        corpus.append((f"rand/{i}", random_eff_table(rng, chain, rng.randint(1, 2), 2)))
    checked = 0
    violations = []
    for name, E in corpus:
        r = check_playability(E)
        p = r.properties
        checked += 1
        if r.playable and not (p["regular"] and p["coalition_monotonic"]):
            violations.append([name, "implication"])
        rhs = r.semi_playable and p["homogeneous"] and p["regular"] and p["N_maximal"]
        if r.playable != rhs:
            violations.append([name, "equivalence"])
    return {
        "kind": "acceptance-report",
        "criterion": 4,
        "checked": checked,
        "violations": violations,
    }


report_crit4 = lru_cache(maxsize=None)(_report_crit4)


def test_criterion_4_playability_implications():
    report = report_crit4()
    ok = report["checked"] == 511 and not report["violations"]
    _emit(4, ok)
    assert ok, report["violations"][:5]


def _report_crit5():
    targets = known_truly_playable_tables(min_count=10)
    results = []
    for E in targets:
        form = synthesize_game_form(E, budget=3)
        exact = effectivity_table(form, E.chain) == E
        results.append([E.chain.n, list(form.strategy_counts), exact])
    return {
        "kind": "acceptance-report",
        "criterion": 5,
        "targets": len(targets),
        "results": results,
    }


report_crit5 = lru_cache(maxsize=None)(_report_crit5)


def test_criterion_5_synthesis_round_trip():
    report = report_crit5()
    ok = report["targets"] >= 10 and all(r[2] for r in report["results"])
    _emit(5, ok)
    assert ok, report


def _report_crit6():
    rng = random.Random(66)
    violations = []
    cases = 0
    for m in range(100):
        chain = Chain(rng.randint(1, 2))
        M = random_playable_model(rng, chain, rng.randint(1, 4))
        for _ in range(20):
            mu = random_formula(rng, rng.randint(1, 4), (1, 2), 2, chain)
            cases += 1
            result = playable_filtration(M, mu)
            q = result.quotient
            if q.num_classes > (chain.n + 1) ** len(subformulas(mu)):
                violations.append([m, str(mu), "bound"])
            for E in result.model.eff:
                if not check_playability(E).truly_playable:
                    violations.append([m, str(mu), "playability"])
            for phi in subformulas(mu):
                src = eval_vector(M, phi)
                dst = eval_vector(result.model, phi)
                if any(dst[q.class_map[j]] != src[j] for j in range(M.num_states)):
                    violations.append([m, str(mu), "invariance"])
    return {
        "kind": "acceptance-report",
        "criterion": 6,
        "cases": cases,
        "violations": violations,
    }


report_crit6 = lru_cache(maxsize=None)(_report_crit6)


def test_criterion_6_playable_filtration():
    report = report_crit6()
    ok = report["cases"] == 2000 and not report["violations"]
    _emit(6, ok)
    assert ok, report["violations"][:5]


def _report_crit7():
    rng = random.Random(77)
    violations = []
    cases = 0
    premise = parse("[O](p1 (+) p1) <-> ([O]p1 (+) [O]p1)", 2, dialect="L+")
    for m in range(100):
        chain = Chain(rng.randint(1, 2))
        M = standardize(random_playable_model(rng, chain, rng.randint(1, 4)))
        if not is_true(M, premise):
            violations.append([m, "premise"])
        for _ in range(20):
            mu = random_formula(rng, rng.randint(1, 4), (1, 2), 2, chain, allow_outcome=True)
            cases += 1
            result = enriched_filtration(M, mu)
            if not is_standard(result.model):
                violations.append([m, str(mu), "standard"])
            q = result.quotient
            for phi in subformulas(mu):
                src = eval_vector(M, phi)
                dst = eval_vector(result.model, phi)
                if any(dst[q.class_map[j]] != src[j] for j in range(M.num_states)):
                    violations.append([m, str(mu), "invariance"])
    return {
        "kind": "acceptance-report",
        "criterion": 7,
        "cases": cases,
        "violations": violations,
    }


report_crit7 = lru_cache(maxsize=None)(_report_crit7)


def test_criterion_7_enriched_filtration():
    report = report_crit7()
    ok = report["cases"] == 2000 and not report["violations"]
    _emit(7, ok)
    assert ok, report["violations"][:5]


def _report_crit8():
    rng = random.Random(88)
    pn_models = []
    for _ in range(200):
        chain_n = rng.randint(1, 2)
        pn_models.append(random_playable_model(rng, Chain(chain_n), rng.randint(1, 3)))
    # the suite wants one chain; group models by n
    reports = []
    for n in (1, 2):
        group = [M for M in pn_models if M.chain.n == n]
        reports.append(soundness_suite(LOGIC_PN, group, Chain(n)))
    tpn_models = []
    for _ in range(100):
        chain_n = rng.randint(1, 2)
        tpn_models.append(standardize(random_playable_model(rng, Chain(chain_n), rng.randint(1, 3))))
    for n in (1, 2):
        group = [M for M in tpn_models if M.chain.n == n]
        reports.append(soundness_suite(LOGIC_TPN, group, Chain(n)))
    return {
        "kind": "acceptance-report",
        "criterion": 8,
        "pn_models": len(pn_models),
        "tpn_models": len(tpn_models),
        "suites": reports,
    }


report_crit8 = lru_cache(maxsize=None)(_report_crit8)


def test_criterion_8_soundness():
    report = report_crit8()
    ok = (
        report["pn_models"] == 200
        and report["tpn_models"] == 100
        and all(not suite["failures"] for suite in report["suites"])
        and all(
            suite["rules"].get("necessitation") == "pass"
            for suite in report["suites"]
            if suite["logic"] == LOGIC_TPN
        )
    )
    _emit(8, ok)
    assert ok, [s["failures"] for s in report["suites"]]


def _report_crit9():
    chain = Chain(1)
    one_var = []
    seen = set()
    for name, schema in pn_axioms(2, chain):
        family = name.split("[")[0]
        if family in seen:
            continue
        seen.add(family)
        one_var.append((name, substitute(schema, Prop(2), Prop(1))))
    entries = []
    for name, phi in one_var:
        started = time.monotonic()
        verdict = search_countermodel(phi, logic=LOGIC_PN, max_states=10 ** 9, chain=chain)
        entries.append(
            {
                "query": name,
                "status": verdict.status,
                "bound": verdict.bound,
                "seconds_under_60": time.monotonic() - started < 60,
            }
        )
    started = time.monotonic()
    refutable = parse("[{}]p1 -> p1", 2)
    verdict = search_countermodel(refutable, logic=LOGIC_PN, max_states=2, chain=chain)
    entries.append(
        {
            "query": "[{}]p1 -> p1",
            "status": verdict.status,
            "bound": verdict.bound,
            "states": len(verdict.model.states) if verdict.model else None,
            "seconds_under_60": time.monotonic() - started < 60,
        }
    )
    return {"kind": "acceptance-report", "criterion": 9, "entries": entries}


report_crit9 = lru_cache(maxsize=None)(_report_crit9)


def test_criterion_9_decision_sanity():
    report = report_crit9()
    entries = report["entries"]
    axioms, refuted = entries[:-1], entries[-1]
    ok = (
        len(axioms) == 5
        and all(e["status"] == "TheoremByFiltrationBound" for e in axioms)
        and refuted["status"] == "CountermodelFound"
        and refuted["states"] <= 2
        and all(e["seconds_under_60"] for e in entries)
    )
    _emit(9, ok)
    assert ok, entries


def test_criterion_10_determinism():
    builders = [
        (report_crit4, _report_crit4),
        (report_crit5, _report_crit5),
        (report_crit6, _report_crit6),
        (report_crit7, _report_crit7),
        (report_crit8, _report_crit8),
        (report_crit9, _report_crit9),
    ]
    mismatches = []
    for cached, fresh in builders:
        first = json.dumps(cached(), sort_keys=True).encode()
        second = json.dumps(fresh(), sort_keys=True).encode()
        if first != second:
            mismatches.append(fresh.__name__)
    ok = not mismatches
    _emit(10, ok)
    assert ok, mismatches
