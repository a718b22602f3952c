"""Products, wirings, closed systems, and graph equivalence."""

import dataclasses
import random

import pytest

from autodiss import (
    Connection,
    Wiring,
    cell_automaton,
    choice_information,
    divergent_states,
    ensemble_dissipation,
    equivalent,
    product,
    product_input_model,
    product_many,
    reachable_subgraph,
    run,
    validate,
    wire,
)
from autodiss.errors import (
    AlphabetMismatch,
    MissingInitial,
    MultiplyDrivenPort,
    SizeLimit,
    UnknownSymbol,
)
from helpers import random_automaton, random_model


def sinkless(rng, max_states=6, max_symbols=3):
    return random_automaton(
        rng, max_states=max_states, max_symbols=max_symbols, ensure_out=True
    )


def test_product_of_two_flipflops(tff):
    auto, _ = tff
    prod = product(auto, auto)
    assert len(prod.states) == 4
    assert prod.initial == "(0,0)"
    assert prod.arrow_count == 16
    indeg = {}
    for ar in prod.arrows:
        indeg[ar.target] = indeg.get(ar.target, 0) + 1
    for q in prod.states:
        assert prod.out_degree(q) == 4
        assert indeg[q] == 4


def test_product_counter_and_flipflop(counter2, tff):
    prod = product(counter2[0], tff[0])
    assert len(prod.states) == 4
    assert all(prod.out_degree(q) == 2 for q in prod.states)


def test_product_state_count_multiplies():
    a = validate(
        "a2", ["x"], ["oa0", "oa1"], ["p0", "p1"],
        output_map={"p0": "oa0", "p1": "oa1"},
        transitions=[("p0", "x", "p1")],
    )
    b = validate(
        "b3", ["y"], ["ob0", "ob1", "ob2"], ["r0", "r1", "r2"],
        output_map={f"r{i}": f"ob{i}" for i in range(3)},
        transitions=[("r0", "y", "r1"), ("r1", "y", "r2")],
    )
    prod = product(a, b)
    assert len(prod.states) == 6
    assert prod.states[0] == "(p0,r0)"
    assert prod.input_alphabet == ("x|y",)


def test_product_is_associative_up_to_flattening(tff, counter2):
    a, b = tff[0], counter2[0]
    nested = product(product(a, b), a)
    flat = product_many([a, b, a])
    assert nested == flat
    assert nested.module_names == ("tff", "counter2", "tff")


def test_product_outputs_stay_injective(tff, counter2):
    prod = product(tff[0], counter2[0])
    values = list(prod.output_map.values())
    assert len(values) == len(set(values))


def test_product_refuses_to_materialize_huge_graphs(onebit):
    with pytest.raises(SizeLimit):
        product_many([onebit[0]] * 21)


def test_choice_information_is_extensive():
    rng = random.Random(31)
    for _ in range(40):
        a, b = sinkless(rng), sinkless(rng)
        ma, mb = random_model(rng, a), random_model(rng, b)
        prod = product(a, b)
        pm = product_input_model(prod, [ma, mb])
        for qa in a.states:
            for qb in b.states:
                combined = choice_information(prod, pm, f"({qa},{qb})")
                expected = choice_information(a, ma, qa) + choice_information(b, mb, qb)
                assert abs(combined - expected) <= 1e-9
                assert prod.out_degree(f"({qa},{qb})") == a.out_degree(qa) * b.out_degree(qb)


def test_ensemble_loss_is_extensive():
    import numpy as np

    rng = random.Random(32)
    for _ in range(15):
        a, b = sinkless(rng, max_states=4), sinkless(rng, max_states=4)
        ma, mb = random_model(rng, a), random_model(rng, b)
        prod = product(a, b)
        pm = product_input_model(prod, [ma, mb])
        pa = np.array([rng.random() + 0.01 for _ in a.states])
        pa /= pa.sum()
        pb = np.array([rng.random() + 0.01 for _ in b.states])
        pb /= pb.sum()
        joint = np.outer(pa, pb).reshape(-1)  # state order is row-major
        ta = ensemble_dissipation(a, ma, pa, 10)
        tb = ensemble_dissipation(b, mb, pb, 10)
        tj = ensemble_dissipation(prod, pm, joint, 10)
        for la, lb, lj in zip(
            ta.per_step_loss_bits, tb.per_step_loss_bits, tj.per_step_loss_bits
        ):
            assert abs(lj - (la + lb)) <= 1e-9


def _in_degrees(auto):
    indeg = {q: 0 for q in auto.states}
    for ar in auto.arrows:
        indeg[ar.target] += 1
    return indeg


def test_product_degree_structure_multiplies():
    from autodiss import convergent_states

    rng = random.Random(33)
    for _ in range(20):
        a, b = sinkless(rng), sinkless(rng)
        prod = product(a, b)
        div = divergent_states(prod)
        conv = convergent_states(prod)
        in_a, in_b, in_p = _in_degrees(a), _in_degrees(b), _in_degrees(prod)
        for qa in a.states:
            for qb in b.states:
                q = f"({qa},{qb})"
                assert (q in div) == (a.out_degree(qa) * b.out_degree(qb) >= 2)
                assert in_p[q] == in_a[qa] * in_b[qb]
                assert (q in conv) == (in_p[q] >= 2)


def test_wire_two_flipflops(tff_wiring, counter4):
    closed = wire(tff_wiring)
    assert closed.free_modules == ()
    assert closed.automaton.input_alphabet == ("ck",)
    assert len(closed.automaton.states) == 4
    sub = reachable_subgraph(closed)
    path = run(sub, "(0,0)", ["ck"] * 4)
    assert path.states == ("(0,0)", "(0,1)", "(1,0)", "(1,1)", "(0,0)")
    assert equivalent(sub, counter4[0])


def test_wire_mixed_counter(mixed_wiring, counter4):
    closed = wire(mixed_wiring)
    sub = reachable_subgraph(closed)
    assert len(sub.states) == 4
    assert equivalent(sub, counter4[0])


def test_closed_system_is_subrelation_of_product(tff_wiring, mixed_wiring):
    for wiring in (tff_wiring, mixed_wiring):
        closed = wire(wiring)
        prod = product_many([auto for _, auto in wiring.modules])
        product_pairs = {ar.key for ar in prod.arrows}
        for ar in closed.automaton.arrows:
            assert ar.key in product_pairs


def test_wire_single_module_passthrough(tff):
    auto, _ = tff
    closed = wire(Wiring(name="solo", modules=(("m", auto),)))
    assert closed.automaton == auto
    assert closed.free_modules == ("m",)


def test_wire_rejects_double_driving(tff, counter2):
    wiring = Wiring(
        name="bad",
        modules=(("a", counter2[0]), ("b", tff[0])),
        connections=(Connection("a", "b", {"Q0": "T0", "Q1": "T1"}),),
        constants=(("b", "T0"),),
    )
    with pytest.raises(MultiplyDrivenPort):
        wire(wiring)


def test_wire_rejects_unmapped_outputs(tff, counter2):
    wiring = Wiring(
        name="bad",
        modules=(("a", counter2[0]), ("b", tff[0])),
        connections=(Connection("a", "b", {"Q0": "T0"}),),
    )
    with pytest.raises(AlphabetMismatch):
        wire(wiring)


def test_wire_rejects_unknown_constant(tff):
    wiring = Wiring(
        name="bad", modules=(("m", tff[0]),), constants=(("m", "T9"),)
    )
    with pytest.raises(UnknownSymbol):
        wire(wiring)


def test_wire_allows_mutual_connections(tff):
    auto, _ = tff
    wiring = Wiring(
        name="mutual",
        modules=(("a", auto), ("b", auto)),
        connections=(
            Connection("a", "b", {"Q0": "T0", "Q1": "T1"}),
            Connection("b", "a", {"Q0": "T0", "Q1": "T1"}),
        ),
    )
    closed = wire(wiring)
    assert closed.free_modules == ()
    assert len(closed.automaton.states) == 4


def test_reachable_subgraph_drops_unreachable():
    auto = validate(
        "island", ["a"], ["o0", "o1", "o2"], ["q0", "q1", "q2"],
        initial="q0",
        output_map={f"q{i}": f"o{i}" for i in range(3)},
        transitions=[("q0", "a", "q1"), ("q2", "a", "q0")],
    )
    sub = reachable_subgraph(auto)
    assert sub.states == ("q0", "q1")
    assert sub.arrow_count == 1


def test_reachable_subgraph_needs_initial(tff):
    auto = dataclasses.replace(tff[0], initial=None)
    with pytest.raises(MissingInitial):
        reachable_subgraph(auto)


def test_equivalent_reflexive(counter4, lossy):
    assert equivalent(counter4[0], counter4[0])
    assert equivalent(lossy[0], lossy[0])


def test_equivalent_rejects_different_cycle_lengths(counter4, counter2):
    assert not equivalent(counter4[0], counter2[0])


def test_equivalent_up_to_state_relabeling(counter4):
    auto = counter4[0]
    renamed = validate(
        "renamed", ["ck"], ["Q0", "Q1", "Q2", "Q3"], ["w", "x", "y", "z"],
        initial="w",
        output_map={"w": "Q0", "x": "Q1", "y": "Q2", "z": "Q3"},
        transitions=[("w", "ck", "x"), ("x", "ck", "y"), ("y", "ck", "z"), ("z", "ck", "w")],
    )
    assert equivalent(auto, renamed)


def test_equivalent_up_to_symbol_renaming(onebit):
    cell = cell_automaton(["0", "1"])
    cell = dataclasses.replace(cell, initial="0")
    assert equivalent(onebit[0], cell)
    assert equivalent(
        onebit[0], cell, symbol_map={"set0": "write_0", "set1": "write_1"}
    )
    assert not equivalent(
        onebit[0], cell, symbol_map={"set0": "write_1", "set1": "write_0"}
    )


def test_equivalent_distinguishes_structure(tff, onebit):
    # same state and arrow counts, different wiring of the toggles
    assert not equivalent(tff[0], onebit[0])


def test_equivalent_needs_initials(tff):
    auto = dataclasses.replace(tff[0], initial=None)
    with pytest.raises(MissingInitial):
        equivalent(auto, tff[0])
