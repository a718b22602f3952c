"""Walk through the structural analysis of a small dissipative automaton.

Two ten-symbol words drive the same machine to its sink along different
paths; the choices they spend at divergent states differ, and the graph
forgets them at its convergences.
"""

from autodiss import (
    arrows_from,
    convergent_states,
    divergent_states,
    export_dot,
    is_reversible,
    load_automaton,
    path_choice_information,
)
from autodiss.assets import asset_path


def main():
    auto, model = load_automaton(asset_path("lossy.aut"))
    print(f"automaton {auto.name}: {len(auto.states)} states, "
          f"{auto.arrow_count} merged arrows")
    print("divergent states:", " ".join(sorted(divergent_states(auto))))
    print("convergent states:", " ".join(sorted(convergent_states(auto))))
    print("reversible?", is_reversible(auto))
    print()

    for q in auto.states:
        arrows = arrows_from(auto, q)
        desc = ", ".join(f"-[{'/'.join(a.labels)}]-> {a.target}" for a in arrows)
        print(f"  {q}: {desc if desc else '(sink)'}")
    print()

    for word in ("0100001010", "0011100110"):
        report = path_choice_information(auto, model, "A", list(word))
        print(f"word {word}")
        print("  path:", " ".join(report.path.states))
        print(f"  choice information: {report.total_bits:.1f} bits")
        print("  steps entering a convergence:", list(report.convergences_entered))
    print()

    print("a loop returning to A spends exactly its divergent-exit bits:")
    loop = path_choice_information(auto, model, "A", list("00111"))
    print(f"  word 00111 -> back to {loop.path.end}, {loop.total_bits:.1f} bits")
    print()
    print("Graphviz rendering (divergences double-circled, convergences shaded):")
    print(export_dot(auto))


if __name__ == "__main__":
    main()
