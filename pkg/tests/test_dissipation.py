"""Choice information, ensemble entropy loss, and the accounting identity."""

import math
import random

import numpy as np
import pytest

from autodiss import (
    InputModel,
    choice_information,
    ensemble_dissipation,
    ensemble_step,
    entropy_bits,
    landauer_energy,
    path_choice_information,
    point_distribution,
    szilard_check,
    uniform_distribution,
    validate,
    BOLTZMANN_K,
)
from autodiss.errors import (
    InvalidDistribution,
    NonPositiveTemperature,
    UnknownState,
)
from helpers import random_automaton, random_distribution, random_model

LN2 = math.log(2)


def two_arrow_automaton():
    return validate(
        "fork", ["x", "y"], ["o0", "o1", "o2"], ["q0", "q1", "q2"],
        initial="q0",
        output_map={f"q{i}": f"o{i}" for i in range(3)},
        transitions=[("q0", "x", "q1"), ("q0", "y", "q2")],
    )


def test_choice_information_uniform(lossy):
    auto, model = lossy
    assert choice_information(auto, model, "B") == 1.0
    assert choice_information(auto, model, "A") == 0.0
    assert choice_information(auto, model, "Stop") == 0.0
    with pytest.raises(UnknownState):
        choice_information(auto, model, "nope")


def test_choice_information_skewed():
    auto = two_arrow_automaton()
    model = InputModel.from_arrow_probs(
        auto, {"q0": {("q0", "q1"): 0.25, ("q0", "q2"): 0.75}}
    )
    assert choice_information(auto, model, "q0") == pytest.approx(0.811278, abs=1e-6)


def test_choice_information_bounds():
    rng = random.Random(21)
    for _ in range(50):
        auto = random_automaton(rng)
        model = random_model(rng, auto)
        uniform = InputModel.uniform(auto)
        for q in auto.states:
            h = choice_information(auto, model, q)
            deg = auto.out_degree(q)
            assert -1e-12 <= h <= (math.log2(deg) if deg else 0.0) + 1e-12
            if deg:
                assert choice_information(auto, uniform, q) == pytest.approx(
                    math.log2(deg)
                )


def test_path_bits_for_both_words(lossy):
    auto, model = lossy
    r1 = path_choice_information(auto, model, "A", list("0100001010"))
    assert r1.total_bits == pytest.approx(7.0, abs=1e-12)
    assert r1.per_step_bits == (0, 1, 1, 1, 1, 1, 1, 0, 0, 1)
    assert r1.convergences_entered == (1, 2, 3, 4, 5, 7)
    r2 = path_choice_information(auto, model, "A", list("0011100110"))
    assert r2.total_bits == pytest.approx(4.0, abs=1e-12)


def test_path_bits_empty_word(lossy):
    auto, model = lossy
    assert path_choice_information(auto, model, "A", []).total_bits == 0.0


def test_path_bits_zero_on_single_arrow_sources():
    rng = random.Random(22)
    for _ in range(30):
        auto = random_automaton(rng, density=0.9)
        model = random_model(rng, auto)
        q = rng.choice(auto.states)
        word = []
        cur = q
        for _ in range(6):
            arrows = auto.by_source[cur]
            if not arrows:
                break
            ar = rng.choice(arrows)
            word.append(ar.labels[0])
            cur = ar.target
        report = path_choice_information(auto, model, q, word)
        assert report.total_bits == pytest.approx(sum(report.per_step_bits))
        for (symbol, arrow, _), bits in zip(report.path.steps, report.per_step_bits):
            if auto.out_degree(arrow.source) == 1:
                assert bits == 0.0


def test_loop_charges_only_divergent_exits(lossy):
    auto, model = lossy
    report = path_choice_information(auto, model, "A", list("00111"))
    assert report.path.end == "A"
    divergent_exits = [
        math.log2(auto.out_degree(ar.source))
        for _, ar, _ in report.path.steps
        if auto.out_degree(ar.source) >= 2
    ]
    assert report.total_bits == pytest.approx(sum(divergent_exits)) == 2.0


def test_ensemble_step_memory(onebit):
    auto, model = onebit
    nxt, loss = ensemble_step(auto, model, [0.5, 0.5])
    assert loss == pytest.approx(1.0, abs=1e-12)
    assert nxt == pytest.approx([0.5, 0.5])
    # a freshly written bit is stored, not yet erased
    nxt, loss = ensemble_step(auto, model, point_distribution(auto, "0"))
    assert loss == pytest.approx(0.0, abs=1e-12)
    assert entropy_bits(nxt) == pytest.approx(1.0)


def test_ensemble_step_counter(counter4):
    auto, model = counter4
    _, loss = ensemble_step(auto, model, point_distribution(auto, "0"))
    assert loss == pytest.approx(0.0, abs=1e-12)


def test_ensemble_step_rejects_bad_distributions(onebit):
    auto, model = onebit
    with pytest.raises(InvalidDistribution):
        ensemble_step(auto, model, [0.5, 0.6])
    with pytest.raises(InvalidDistribution):
        ensemble_step(auto, model, [1.5, -0.5])
    with pytest.raises(InvalidDistribution):
        ensemble_step(auto, model, [1.0])


def test_ensemble_dissipation_memory(onebit):
    auto, model = onebit
    trace = ensemble_dissipation(auto, model, uniform_distribution(auto), 10)
    assert trace.total_loss_bits == pytest.approx(10.0, abs=1e-9)
    assert len(trace.distributions) == 11


def test_ensemble_dissipation_counter(counter4):
    auto, model = counter4
    trace = ensemble_dissipation(auto, model, point_distribution(auto, "0"), 100)
    assert trace.total_loss_bits == pytest.approx(0.0, abs=1e-9)


def test_ensemble_dissipation_zero_horizon(lossy):
    auto, model = lossy
    trace = ensemble_dissipation(auto, model, uniform_distribution(auto), 0)
    assert trace.per_step_loss_bits == ()
    assert trace.total_loss_bits == 0.0


def test_sink_mass_is_carried(lossy):
    auto, model = lossy
    pi = point_distribution(auto, "Stop")
    nxt, loss = ensemble_step(auto, model, pi)
    assert nxt == pytest.approx(pi)
    assert loss == pytest.approx(0.0, abs=1e-12)


def test_accounting_identity_random():
    rng = random.Random(23)
    for _ in range(80):
        auto = random_automaton(rng)
        model = random_model(rng, auto)
        pi0 = random_distribution(rng, auto)
        horizon = rng.randint(0, 40)
        trace = ensemble_dissipation(auto, model, pi0, horizon)
        lhs = trace.total_loss_bits
        rhs = (
            sum(trace.per_step_input_bits)
            + entropy_bits(trace.distributions[0])
            - entropy_bits(trace.distributions[-1])
        )
        assert abs(lhs - rhs) <= 1e-9
        assert all(l >= -1e-12 for l in trace.per_step_loss_bits)
        # stored entropy is bounded, so loss tracks injected bits
        assert abs(lhs - sum(trace.per_step_input_bits)) <= math.log2(
            len(auto.states)
        ) + 1e-9


def test_stationary_distribution_loses_exactly_the_input(onebit):
    auto, model = onebit
    trace = ensemble_dissipation(auto, model, uniform_distribution(auto), 5)
    assert trace.total_loss_bits == pytest.approx(sum(trace.per_step_input_bits))


def test_reversible_deterministic_chain_loses_nothing(counter4):
    auto, model = counter4
    rng = random.Random(24)
    for _ in range(10):
        pi = random_distribution(rng, auto)
        trace = ensemble_dissipation(auto, model, pi, 20)
        assert all(abs(l) <= 1e-9 for l in trace.per_step_loss_bits)


def test_entropy_bits_ignores_zeros():
    assert entropy_bits(np.array([0.5, 0.5, 0.0])) == pytest.approx(1.0)
    assert entropy_bits(np.array([1.0, 0.0])) == 0.0


def test_szilard_boundary():
    assert szilard_check(BOLTZMANN_K * LN2, BOLTZMANN_K * LN2)
    assert not szilard_check(0.5 * BOLTZMANN_K * LN2, 0.5 * BOLTZMANN_K * LN2)
    # one state free of charge plus any resolvable positive term breaks the bound
    assert not szilard_check(0.0, 10 * BOLTZMANN_K)
    assert not szilard_check(-BOLTZMANN_K, 100 * BOLTZMANN_K)
    assert szilard_check(1.0, 1.0)  # huge entropies, both terms vanish


def test_landauer_energy_values():
    assert landauer_energy(1, 300) == pytest.approx(2.8699e-21, abs=1e-24)
    assert landauer_energy(0, 300) == 0.0
    assert landauer_energy(7, 300) == pytest.approx(2.0089e-20, abs=1e-23)


def test_landauer_energy_rejects_bad_arguments():
    with pytest.raises(NonPositiveTemperature):
        landauer_energy(1, 0)
    with pytest.raises(NonPositiveTemperature):
        landauer_energy(1, -5)
    with pytest.raises(ValueError):
        landauer_energy(-1, 300)


def test_input_model_validation(onebit):
    auto, _ = onebit
    with pytest.raises(InvalidDistribution):
        InputModel.from_arrow_probs(auto, {"0": {("0", "0"): 0.2, ("0", "1"): 0.2}})
    with pytest.raises(InvalidDistribution):
        InputModel.from_arrow_probs(auto, {"0": {("0", "0"): -0.5, ("0", "1"): 1.5}})
    model = InputModel.from_arrow_probs(auto, {"0": {("0", "0"): 0.3, ("0", "1"): 0.7}})
    assert model.probs["0"][("0", "1")] == pytest.approx(0.7)
    assert model.probs["1"][("1", "0")] == pytest.approx(0.5)  # untouched: uniform
