"""Turing machines as modular implements, and the reversible way out.

Head and tape cells are separately testable modules, so every step pays
a cell write (and sometimes a head choice).  A halting run, seen as one
global machine, is a linear reversible chain; the record/copy/uncompute
simulation extends that reversibility to the computation itself, at the
price of a graph that only exists once the run is over.
"""

from autodiss import (
    bennett_simulate,
    cell_automaton,
    check_convergence_lemma,
    convergent_states,
    global_graph,
    head_automaton,
    is_reversible,
    load_machine,
    modular_tm_dissipation,
    tm_run,
)
from autodiss.assets import asset_path


def main():
    bb2 = load_machine(asset_path("bb2.tm"))
    trace = tm_run(bb2)
    print(f"{bb2.name}: halted={trace.halted} after {trace.steps} steps, "
          f"result {''.join(trace.result)}")

    head = head_automaton(bb2)
    print(f"head automaton: {len(head.states)} control states, "
          f"{head.arrow_count} merged arrows, "
          f"convergences {sorted(convergent_states(head)) or 'none'}")
    cell = cell_automaton(bb2.tape_alphabet)
    print(f"tape cell: {len(cell.states)} states, every state "
          f"{cell.out_degree(cell.states[0])}-in/{cell.out_degree(cell.states[0])}-out")
    print()

    acc = modular_tm_dissipation(bb2)
    print("modular charges per step (head + cell):",
          [round(b, 3) for b in acc.per_step_bits])
    print(f"total: {acc.total_bits:.1f} bits in {trace.steps} steps")
    loop = load_machine(asset_path("loop.tm"))
    for budget in (10, 100, 1000):
        acc = modular_tm_dissipation(loop, max_steps=budget)
        print(f"  idle writer for {budget:>4} steps: {acc.total_bits:.1f} bits")
    print()

    bincounter = load_machine(asset_path("bincounter.tm"))
    report = check_convergence_lemma(bincounter, horizon=200)
    print(f"{bincounter.name}: head convergences {list(report.witnesses)} "
          f"(a machine that can run forever non-periodically must have one)")
    print()

    graph = global_graph(tm_run(bb2))
    print(f"global graph of the halted run: {len(graph.states)} states in a line, "
          f"reversible={is_reversible(graph)}")

    sim = bennett_simulate(bb2)
    last = sim.global_configs[-1]
    print(f"record/copy/uncompute: {sim.total_steps} steps "
          f"(2n + r with n={sim.forward.steps}, r={sim.forward.result_length})")
    print(f"  input restored: {last.config == sim.global_configs[0].config}, "
          f"history empty: {last.history == ()}, "
          f"output: {''.join(sim.output_tape)}")
    bgraph = global_graph(sim)
    print(f"  its global graph: {len(bgraph.states)} states, "
          f"reversible={is_reversible(bgraph)}")
    print(f"  classic quadruple construction would take "
          f"{sim.classic_step_count} steps (4n + 4r + 5), for reference")


if __name__ == "__main__":
    main()
