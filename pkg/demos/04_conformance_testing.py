"""Covering tours as the price of trusting a physical implement.

One input word certifies the whole graph.  Testing modules separately
costs the sum of their tours; testing their product monolithically
costs at least the product's arrow count, which grows multiplicatively.
An n-bit memory tested as one block is out of reach long before n
reaches practical sizes, which is why the size guard refuses.
"""

from autodiss import (
    AutomatonOracle,
    load_automaton,
    modular_test_cost,
    product_many,
    simulate_test,
    test_cost,
    transition_tour,
    validate,
)
from autodiss.assets import asset_path
from autodiss.errors import SizeLimit


def main():
    memory, _ = load_automaton(asset_path("onebit.aut"))
    tff, _ = load_automaton(asset_path("tff.aut"))
    lossy, _ = load_automaton(asset_path("lossy.aut"))

    tour = transition_tour(memory, "0")
    print("one-bit memory tour:", " ".join(tour.word), f"(cost {tour.length})")
    tour = transition_tour(lossy, "A")
    print("lossy example tour:", " ".join(tour.word), f"(cost {tour.length})")
    print()

    modular = modular_test_cost([tff, tff], ["0", "0"])
    monolithic = test_cost(product_many([tff, tff]), "(0,0)")
    print(f"two flip-flops, tested separately: {modular} steps")
    print(f"their product, tested as one block: {monolithic} steps")
    print()

    print("memory blocks, modular cost vs. monolithic state count:")
    for n in (2, 4, 8, 16, 20):
        mod = modular_test_cost([memory] * n, ["0"] * n)
        print(f"  {n:>2} bits: modular {mod:>3} steps, "
              f"monolithic graph has {2**n} states")
    try:
        product_many([memory] * 21)
    except SizeLimit as e:
        print(f"  21 bits: refused ({e})")
    print()

    print("driving a faithful device along the tour:")
    tour = transition_tour(memory, "0")
    verdict = simulate_test(memory, AutomatonOracle(memory, "0"), tour)
    print("  faithful device passes?", verdict.passed)

    broken = validate(
        name="stuck",
        input_alphabet=memory.input_alphabet,
        output_alphabet=memory.output_alphabet,
        states=memory.states,
        initial="0",
        output_map=memory.output_map,
        # the set0 write out of state 1 is stuck: the bit never clears
        transitions=[("0", "set0", "0"), ("0", "set1", "1"),
                     ("1", "set0", "1"), ("1", "set1", "1")],
    )
    verdict = simulate_test(memory, AutomatonOracle(broken, "0"), tour)
    print("  stuck-bit device passes?", verdict.passed,
          "| first discrepancy:", verdict.first_discrepancy)


if __name__ == "__main__":
    main()
