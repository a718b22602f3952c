"""Seeded random generators shared by property and acceptance tests."""

from autodiss import InputModel, validate


def random_automaton(rng, max_states=8, max_symbols=4, density=0.6,
                     ensure_out=False, name="rand"):
    """A valid automaton with random partial transitions."""
    n = rng.randint(1, max_states)
    k = rng.randint(1, max_symbols)
    states = [f"q{i}" for i in range(n)]
    symbols = [f"s{j}" for j in range(k)]
    transitions = []
    have_out = set()
    for q in states:
        for s in symbols:
            if rng.random() < density:
                transitions.append((q, s, rng.choice(states)))
                have_out.add(q)
    if ensure_out:
        for q in states:
            if q not in have_out:
                transitions.append((q, rng.choice(symbols), rng.choice(states)))
    return validate(
        name=name,
        input_alphabet=symbols,
        output_alphabet=[f"o{i}" for i in range(n)],
        states=states,
        initial=states[0],
        output_map={q: f"o{i}" for i, q in enumerate(states)},
        transitions=transitions,
    )


def random_strongly_connected(rng, max_states=6, max_symbols=3, extra=0.4,
                              name="sc"):
    """Random automaton containing a cycle through every state."""
    n = rng.randint(1, max_states)
    k = rng.randint(1, max_symbols)
    states = [f"q{i}" for i in range(n)]
    symbols = [f"s{j}" for j in range(k)]
    order = states[:]
    rng.shuffle(order)
    used = set()
    transitions = []
    for i, q in enumerate(order):
        s = rng.choice(symbols)
        transitions.append((q, s, order[(i + 1) % n]))
        used.add((q, s))
    for q in states:
        for s in symbols:
            if (q, s) not in used and rng.random() < extra:
                transitions.append((q, s, rng.choice(states)))
    return validate(
        name=name,
        input_alphabet=symbols,
        output_alphabet=[f"o{i}" for i in range(n)],
        states=states,
        initial=order[0],
        output_map={q: f"o{i}" for i, q in enumerate(states)},
        transitions=transitions,
    )


def random_model(rng, a):
    """Random positive arrow probabilities, normalized per state."""
    given = {}
    for q in a.states:
        arrows = a.by_source[q]
        if not arrows:
            continue
        weights = [rng.random() + 0.05 for _ in arrows]
        total = sum(weights)
        given[q] = {ar.key: w / total for ar, w in zip(arrows, weights)}
    return InputModel.from_arrow_probs(a, given)


def random_distribution(rng, a):
    weights = [rng.random() + 0.01 for _ in a.states]
    total = sum(weights)
    return [w / total for w in weights]
