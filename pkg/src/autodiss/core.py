"""Deterministic finite automata as labeled graphs.

A machine is a finite set of states with an injective per-state output
symbol and a (possibly partial) deterministic transition function.  All
symbols that trigger the same state-to-state move are merged into a
single arrow; merged arrows are the unit of every structural count in
this package (degrees, divergences, convergences).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import (
    DuplicateIdentifier,
    ForbiddenInput,
    MissingOutput,
    Nondeterministic,
    NonInjectiveOutput,
    UnknownState,
    UnknownSymbol,
)

# Largest state count on which monolithic whole-graph operations (product
# materialization, transition tours) are allowed to run.  Beyond this,
# only modular, per-part analysis is practical.
MONOLITHIC_STATE_LIMIT = 2**20


@dataclass(frozen=True)
class Arrow:
    """A merged edge: all input symbols that trigger the same state pair."""

    source: str
    target: str
    labels: tuple[str, ...]

    @property
    def key(self) -> tuple[str, str]:
        return (self.source, self.target)


@dataclass(frozen=True)
class Automaton:
    """An immutable deterministic automaton with merged arrows.

    Build instances through :func:`validate`, which enforces determinism,
    output injectivity and token declarations, and precomputes the merged
    arrow structure.  Every operation in this package treats the object
    as read-only.
    """

    name: str
    input_alphabet: tuple[str, ...]
    output_alphabet: tuple[str, ...]
    states: tuple[str, ...]
    initial: Optional[str]
    output_map: dict[str, str]
    transitions: dict[tuple[str, str], str]
    arrows: tuple[Arrow, ...] = field(compare=False)
    by_source: dict[str, tuple[Arrow, ...]] = field(repr=False, compare=False)
    by_pair: dict[tuple[str, str], Arrow] = field(repr=False, compare=False)

    @property
    def arrow_count(self) -> int:
        return len(self.arrows)

    def out_degree(self, q: str) -> int:
        return len(self.by_source.get(q, ()))


@dataclass(frozen=True)
class Path:
    """One run through the graph: a start state plus the steps taken.

    ``steps`` holds ``(input symbol, arrow traversed, resulting state)``
    triples; ``outputs`` holds one output symbol per visited state,
    starting with the start state, so ``len(outputs) == len(steps) + 1``.
    """

    start: str
    steps: tuple[tuple[str, Arrow, str], ...]
    outputs: tuple[str, ...]

    @property
    def states(self) -> tuple[str, ...]:
        return (self.start,) + tuple(s for _, _, s in self.steps)

    @property
    def end(self) -> str:
        return self.states[-1]

    def __len__(self) -> int:
        return len(self.steps)


def _ordered_unique(tokens: Iterable[str], kind: str) -> tuple[str, ...]:
    seen = set()
    ordered = []
    for t in tokens:
        if t in seen:
            raise DuplicateIdentifier(t, kind)
        seen.add(t)
        ordered.append(t)
    return tuple(ordered)


def validate(
    name: str,
    input_alphabet: Iterable[str],
    output_alphabet: Iterable[str],
    states: Iterable[str],
    initial: Optional[str] = None,
    output_map: Optional[dict[str, str]] = None,
    transitions: Iterable[tuple[str, str, str]] = (),
) -> Automaton:
    """Check a raw automaton description and build the merged-arrow graph.

    ``transitions`` is an iterable of ``(state, input symbol, state)``
    triples; symbols that trigger the same state pair are merged into one
    arrow.  Raises :class:`Nondeterministic`, :class:`NonInjectiveOutput`,
    :class:`UnknownState`, :class:`UnknownSymbol` or :class:`MissingOutput`
    on violations.
    """
    inputs = _ordered_unique(input_alphabet, "input alphabet")
    outputs = _ordered_unique(output_alphabet, "output alphabet")
    state_list = _ordered_unique(states, "states")
    state_set = set(state_list)

    if initial is not None and initial not in state_set:
        raise UnknownState(initial, "initial")

    output_map = dict(output_map or {})
    for q, r in output_map.items():
        if q not in state_set:
            raise UnknownState(q, "output map")
        if r not in outputs:
            raise UnknownSymbol(r, f"output of state {q!r}")
    for q in state_list:
        if q not in output_map:
            raise MissingOutput(q)
    emitted: dict[str, str] = {}
    for q in state_list:
        r = output_map[q]
        if r in emitted:
            raise NonInjectiveOutput(emitted[r], q)
        emitted[r] = q

    trans: dict[tuple[str, str], str] = {}
    for src, sym, tgt in transitions:
        if src not in state_set:
            raise UnknownState(src, "transition source")
        if tgt not in state_set:
            raise UnknownState(tgt, "transition target")
        if sym not in inputs:
            raise UnknownSymbol(sym, f"transition from {src!r}")
        prior = trans.get((src, sym))
        if prior is not None and prior != tgt:
            raise Nondeterministic(src, sym)
        trans[(src, sym)] = tgt

    labels: dict[tuple[str, str], list[str]] = {}
    for (src, sym), tgt in trans.items():
        labels.setdefault((src, tgt), []).append(sym)
    arrows = tuple(
        Arrow(src, tgt, tuple(sorted(syms)))
        for (src, tgt), syms in sorted(labels.items())
    )
    grouped: dict[str, list[Arrow]] = {q: [] for q in state_list}
    for ar in arrows:  # already sorted by (source, target)
        grouped[ar.source].append(ar)
    by_source = {q: tuple(out) for q, out in grouped.items()}
    by_pair = {ar.key: ar for ar in arrows}

    return Automaton(
        name=name,
        input_alphabet=inputs,
        output_alphabet=outputs,
        states=state_list,
        initial=initial,
        output_map=output_map,
        transitions=trans,
        arrows=arrows,
        by_source=by_source,
        by_pair=by_pair,
    )


def arrows_from(a: Automaton, q: str) -> list[Arrow]:
    """Merged arrows leaving ``q``, sorted by target; empty for sinks."""
    if q not in a.by_source:
        raise UnknownState(q)
    return list(a.by_source[q])


def divergent_states(a: Automaton) -> set[str]:
    """States with at least two outgoing merged arrows."""
    return {q for q in a.states if a.out_degree(q) >= 2}


def convergent_states(a: Automaton) -> set[str]:
    """States with at least two incoming merged arrows.

    Self-loops count; the initial-state marker does not (it is not an
    arrow of the graph).
    """
    indeg: dict[str, int] = {}
    for ar in a.arrows:
        indeg[ar.target] = indeg.get(ar.target, 0) + 1
    return {q for q, d in indeg.items() if d >= 2}


def is_reversible(a: Automaton) -> bool:
    """True iff the graph has no convergence, i.e. the past of every
    state is recoverable from the state alone."""
    return not convergent_states(a)


def step(a: Automaton, q: str, s: str) -> str:
    """Apply the transition function once.

    Raises :class:`ForbiddenInput` when ``s`` triggers no transition in
    ``q``: the environment stepped outside the compatible class.
    """
    if q not in a.by_source:
        raise UnknownState(q)
    if s not in a.input_alphabet:
        raise UnknownSymbol(s)
    try:
        return a.transitions[(q, s)]
    except KeyError:
        raise ForbiddenInput(q, s) from None


def run(a: Automaton, start: str, word: Sequence[str]) -> Path:
    """Iterate :func:`step` over an input word and record the path."""
    if start not in a.by_source:
        raise UnknownState(start)
    q = start
    steps = []
    outputs = [a.output_map[q]]
    for i, s in enumerate(word):
        if s not in a.input_alphabet:
            raise UnknownSymbol(s, f"word position {i}")
        nxt = a.transitions.get((q, s))
        if nxt is None:
            raise ForbiddenInput(q, s, position=i)
        steps.append((s, a.by_pair[(q, nxt)], nxt))
        outputs.append(a.output_map[nxt])
        q = nxt
    return Path(start=start, steps=tuple(steps), outputs=tuple(outputs))


def reachable_states(a: Automaton, start: str) -> set[str]:
    """States reachable from ``start`` by following arrows."""
    if start not in a.by_source:
        raise UnknownState(start)
    seen = {start}
    frontier = [start]
    while frontier:
        q = frontier.pop()
        for ar in a.by_source[q]:
            if ar.target not in seen:
                seen.add(ar.target)
                frontier.append(ar.target)
    return seen
