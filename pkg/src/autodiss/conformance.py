"""Covering test tours and black-box conformance checks.

A physical implement earns its characteristic graph through a test that
follows every arrow.  The tour builder produces one input word whose
replay covers the whole merged-arrow set; its length is the test cost.
Merged arrows are the unit of coverage: one traversal of an arrow tests
it, whichever of its labels is presented.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from . import core
from .core import Arrow, Automaton, run, step
from .errors import DeviceRefused, AutomataError, SizeLimit, UnknownState, Untestable


@dataclass(frozen=True)
class TestTour:
    """A single covering input word from a fixed start state."""

    start: str
    word: tuple[str, ...]
    covered: frozenset[tuple[str, str]]

    @property
    def length(self) -> int:
        return len(self.word)


@dataclass(frozen=True)
class Verdict:
    """Outcome of driving a device along a tour.

    ``first_discrepancy`` is ``(observation index, expected, observed)``
    where index 0 is the output before any input is applied.
    """

    passed: bool
    first_discrepancy: Optional[tuple[int, str, str]] = None


def _bfs(a: Automaton, start: str):
    """Distances and predecessor arrows over the full graph."""
    dist = {start: 0}
    parent: dict[str, Arrow] = {}
    queue = deque([start])
    while queue:
        q = queue.popleft()
        for ar in a.by_source[q]:
            if ar.target not in dist:
                dist[ar.target] = dist[q] + 1
                parent[ar.target] = ar
                queue.append(ar.target)
    return dist, parent


def _path_to(parent: dict[str, Arrow], start: str, goal: str) -> list[Arrow]:
    path = []
    q = goal
    while q != start:
        ar = parent[q]
        path.append(ar)
        q = ar.source
    path.reverse()
    return path


def transition_tour(a: Automaton, start: str) -> TestTour:
    """Build one input word from ``start`` covering every merged arrow.

    Strategy: repeatedly walk the shortest path to an uncovered arrow and
    traverse it.  Among nearest candidates, arrows from whose target the
    remaining work would become unreachable are avoided, then arrows that
    keep an uncovered arrow directly ahead are preferred; remaining ties
    break on the (source, target) pair, and each traversal presents the
    lexicographically smallest label of its arrow.

    Raises :class:`Untestable` when some arrow cannot be reached, and
    :class:`SizeLimit` on graphs too large to tour monolithically.
    """
    if start not in a.by_source:
        raise UnknownState(start)
    if len(a.states) > core.MONOLITHIC_STATE_LIMIT:
        raise SizeLimit(len(a.states), core.MONOLITHIC_STATE_LIMIT)

    uncovered = {ar.key for ar in a.arrows}
    all_keys = frozenset(uncovered)
    word: list[str] = []
    pos = start
    reach_cache: dict[str, set[str]] = {}

    def reach(q: str) -> set[str]:
        if q not in reach_cache:
            reach_cache[q] = core.reachable_states(a, q)
        return reach_cache[q]

    while uncovered:
        dist, parent = _bfs(a, pos)
        candidates = [
            a.by_pair[key] for key in uncovered if key[0] in dist
        ]
        if not candidates:
            raise Untestable(uncovered, f"stranded in {pos!r}")
        by_level: dict[int, list[Arrow]] = {}
        for ar in candidates:
            by_level.setdefault(dist[ar.source] + 1, []).append(ar)

        def remaining_after(ar: Arrow) -> set[tuple[str, str]]:
            walked = {p.key for p in _path_to(parent, pos, ar.source)}
            return uncovered - walked - {ar.key}

        chosen_pool: list[Arrow] = []
        for level in sorted(by_level):
            ok = [
                ar
                for ar in by_level[level]
                if all(src in reach(ar.target) for src, _ in remaining_after(ar))
            ]
            if ok:
                chosen_pool = ok
                break
        if not chosen_pool:
            chosen_pool = by_level[min(by_level)]

        keeps_going = [
            ar for ar in chosen_pool
            if any(src == ar.target for src, _ in remaining_after(ar))
        ]
        if keeps_going:
            chosen_pool = keeps_going
        chosen = min(chosen_pool, key=lambda ar: ar.key)

        for ar in _path_to(parent, pos, chosen.source) + [chosen]:
            word.append(ar.labels[0])
            uncovered.discard(ar.key)
        pos = chosen.target

    return TestTour(start=start, word=tuple(word), covered=all_keys)


def test_cost(a: Automaton, start: str) -> int:
    """Tour length from ``start``; at least the arrow count and at most
    arrow count times state count."""
    return transition_tour(a, start).length


def modular_test_cost(modules: Sequence[Automaton], starts: Sequence[str]) -> int:
    """Sum of per-module tour lengths: the cost of testing the parts
    separately instead of touring their product."""
    if len(modules) != len(starts):
        raise ValueError("one start state per module required")
    total = 0
    for m, s in zip(modules, starts):
        try:
            total += test_cost(m, s)
        except Untestable as e:
            raise Untestable(e.uncovered, f"module {m.name!r}") from None
    return total


class AutomatonOracle:
    """Step oracle backed by an in-memory automaton.

    The device contract: ``output()`` reports the current output symbol;
    ``apply(symbol)`` advances one step and may raise on refusal.
    """

    def __init__(self, a: Automaton, state: str):
        if state not in a.by_source:
            raise UnknownState(state)
        self.automaton = a
        self.state = state

    def output(self) -> str:
        return self.automaton.output_map[self.state]

    def apply(self, symbol: str) -> None:
        self.state = step(self.automaton, self.state, symbol)


def simulate_test(reference: Automaton, device, tour: TestTour) -> Verdict:
    """Drive ``device`` along a tour and compare outputs step by step.

    Outputs identify states (the output map is injective), so matching
    the whole observation sequence certifies the covered arrows.  Raises
    :class:`DeviceRefused` if the device rejects a symbol.
    """
    expected = run(reference, tour.start, tour.word).outputs
    observed = device.output()
    if observed != expected[0]:
        return Verdict(passed=False, first_discrepancy=(0, expected[0], observed))
    for i, symbol in enumerate(tour.word):
        try:
            device.apply(symbol)
        except AutomataError as e:
            raise DeviceRefused(i, str(e)) from None
        observed = device.output()
        if observed != expected[i + 1]:
            return Verdict(
                passed=False, first_discrepancy=(i + 1, expected[i + 1], observed)
            )
    return Verdict(passed=True)
