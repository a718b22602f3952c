"""Deterministic Turing machines viewed as modular automata.

The head is a finite automaton whose inputs are tape symbols; each tape
cell is a memory automaton with one state per symbol and full write
convergence.  Testing head and cells separately makes the implement
modular, and that modularity carries a per-step information charge.  A
halting run, seen globally, is by contrast a linear reversible chain,
and the three-phase record/copy/uncompute simulation keeps even the
computation itself reversible end to end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .core import Automaton, convergent_states, validate
from .dissipation import InputModel, choice_information
from .errors import (
    AlphabetTooSmall,
    DuplicateIdentifier,
    Halted,
    IrreversibleStep,
    Nondeterministic,
    NoRule,
    NotHalted,
    NotHalting,
    RepeatedConfiguration,
    TapeOverflow,
    UnknownState,
    UnknownSymbol,
    ValidationError,
)

MOVES = {"L": -1, "R": 1, "N": 0}

DEFAULT_TAPE_CAP = 4096


@dataclass(frozen=True)
class TuringMachine:
    """A deterministic machine: one rule per (control state, read symbol)."""

    name: str
    control_states: tuple[str, ...]
    tape_alphabet: tuple[str, ...]
    blank: str
    initial: str
    halting: frozenset[str]
    rules: dict[tuple[str, str], tuple[str, str, str]]


@dataclass(frozen=True)
class Configuration:
    """Control state, head position, and the non-blank cells of the tape."""

    control: str
    head: int
    cells: tuple[tuple[int, str], ...]

    def read(self, blank: str) -> str:
        return dict(self.cells).get(self.head, blank)

    def render(self, blank: str) -> str:
        """Canonical one-line form; distinct configurations render apart."""
        if not self.cells:
            window = ""
        else:
            store = dict(self.cells)
            lo, hi = min(store), max(store)
            window = f"{lo}:" + ",".join(store.get(i, blank) for i in range(lo, hi + 1))
        return f"{self.control}|{self.head}|{window}"


@dataclass(frozen=True)
class RunTrace:
    """A configuration trajectory, with result accounting when halted.

    ``steps`` is the number of rule applications; ``result`` is the tape
    window between the outermost non-blank cells at halt and ``result_length``
    its length.
    """

    machine: str
    blank: str
    configurations: tuple[Configuration, ...]
    halted: bool
    steps: int
    result: Optional[tuple[str, ...]]
    result_length: Optional[int]


@dataclass(frozen=True)
class GlobalConfig:
    """One snapshot of the augmented machine: phase, working tape state,
    recorded history, and output tape."""

    phase: str  # compute | copy | uncompute
    config: Configuration
    history: tuple[tuple[str, str], ...]
    output: tuple[str, ...]

    def render(self, blank: str) -> str:
        hist = ";".join(f"{q},{s}" for q, s in self.history)
        out = ",".join(self.output)
        return f"{self.phase}#{self.config.render(blank)}#h[{hist}]#o[{out}]"


@dataclass(frozen=True)
class BennettTrace:
    """Record of the compute / copy output / uncompute simulation.

    The history is empty at the start and the end; the input tape is
    restored and the output tape holds the result.  ``phase_boundaries``
    gives the snapshot indices at which each phase ends.
    """

    machine: str
    input_tape: tuple[str, ...]
    forward: RunTrace
    history_records: tuple[tuple[str, str], ...]
    global_configs: tuple[GlobalConfig, ...]
    phase_boundaries: tuple[int, int, int]
    output_tape: tuple[str, ...]
    total_steps: int

    @property
    def classic_step_count(self) -> int:
        """Step count 4n + 4r + 5 of Bennett's original quadruple-based
        construction, reported for comparison only; this configuration
        level simulation takes 2n + r steps."""
        n = self.forward.steps
        r = self.forward.result_length or 0
        return 4 * n + 4 * r + 5


@dataclass(frozen=True)
class TmDissipation:
    """Per-step information charges of a modular head + cells implement."""

    trace: RunTrace
    per_step_bits: tuple[float, ...]
    head_bits: tuple[float, ...]
    cell_bits: tuple[float, ...]
    cumulative_bits: tuple[float, ...]

    @property
    def total_bits(self) -> float:
        return self.cumulative_bits[-1] if self.cumulative_bits else 0.0


@dataclass(frozen=True)
class ConvergenceReport:
    """Structural convergence facts about a machine's head automaton,
    optionally with an observed head-state sequence analysis."""

    has_convergence: bool
    witnesses: tuple[str, ...]
    head_sequence: Optional[tuple[str, ...]] = None
    halted: Optional[bool] = None
    eventually_periodic: Optional[bool] = None
    period_start: Optional[int] = None
    period: Optional[int] = None


def make_machine(
    name: str,
    tape_alphabet: Iterable[str],
    blank: str,
    control_states: Iterable[str],
    initial: str,
    halting: Iterable[str] = (),
    rules: Iterable[tuple[str, str, str, str, str]] = (),
) -> TuringMachine:
    """Validate a rule table.  Rules are (state, read, state', write, move)."""
    alphabet = []
    for s in tape_alphabet:
        if s in alphabet:
            raise DuplicateIdentifier(s, "tape alphabet")
        alphabet.append(s)
    if blank not in alphabet:
        raise UnknownSymbol(blank, "blank")
    states = []
    for q in control_states:
        if q in states:
            raise DuplicateIdentifier(q, "control states")
        states.append(q)
    if initial not in states:
        raise UnknownState(initial, "initial")
    halting_set = frozenset(halting)
    for q in halting_set:
        if q not in states:
            raise UnknownState(q, "halting")
    table: dict[tuple[str, str], tuple[str, str, str]] = {}
    for q, s, q2, w, move in rules:
        for state in (q, q2):
            if state not in states:
                raise UnknownState(state, "rule")
        for sym in (s, w):
            if sym not in alphabet:
                raise UnknownSymbol(sym, "rule")
        if move not in MOVES:
            raise ValidationError(f"bad move {move!r}, want L, R or N")
        if q in halting_set:
            raise ValidationError(f"halting state {q!r} has a rule")
        if (q, s) in table and table[(q, s)] != (q2, w, move):
            raise Nondeterministic(q, s)
        table[(q, s)] = (q2, w, move)
    return TuringMachine(
        name=name,
        control_states=tuple(states),
        tape_alphabet=tuple(alphabet),
        blank=blank,
        initial=initial,
        halting=halting_set,
        rules=table,
    )


def initial_configuration(tm: TuringMachine, tape: Sequence[str] = ()) -> Configuration:
    """Input laid out from cell 0, head on cell 0."""
    for s in tape:
        if s not in tm.tape_alphabet:
            raise UnknownSymbol(s, "input tape")
    cells = tuple((i, s) for i, s in enumerate(tape) if s != tm.blank)
    return Configuration(control=tm.initial, head=0, cells=cells)


def _apply_rule(tm: TuringMachine, store: dict[int, str], head: int, control: str):
    read = store.get(head, tm.blank)
    rule = tm.rules.get((control, read))
    if rule is None:
        raise NoRule(control, read)
    control2, write, move = rule
    if write == tm.blank:
        store.pop(head, None)
    else:
        store[head] = write
    return store, head + MOVES[move], control2


def tm_step(tm: TuringMachine, c: Configuration) -> Configuration:
    """Apply one rule.  Raises :class:`Halted` on halting configurations
    and :class:`NoRule` when the table has no entry."""
    if c.control in tm.halting:
        raise Halted(f"control state {c.control!r} is halting")
    store = dict(c.cells)
    store, head, control = _apply_rule(tm, store, c.head, c.control)
    return Configuration(control=control, head=head, cells=tuple(sorted(store.items())))


def _trimmed_window(store: dict[int, str], blank: str) -> tuple[str, ...]:
    if not store:
        return ()
    lo, hi = min(store), max(store)
    return tuple(store.get(i, blank) for i in range(lo, hi + 1))


def tm_run(
    tm: TuringMachine,
    tape: Sequence[str] = (),
    max_steps: int = 10_000,
    tape_cap: int = DEFAULT_TAPE_CAP,
) -> RunTrace:
    """Run until halt or budget, recording every configuration."""
    if max_steps < 0:
        raise ValueError("max_steps must be non-negative")
    start = initial_configuration(tm, tape)
    store = dict(start.cells)
    head, control = start.head, start.control
    configs = [start]
    steps = 0
    # Writes happen under the head, so the materialized window is the
    # initial extent widened by head excursions.
    lo = min([0] + [i for i, _ in start.cells])
    hi = max([0] + [i for i, _ in start.cells])
    while control not in tm.halting and steps < max_steps:
        store, head, control = _apply_rule(tm, store, head, control)
        lo, hi = min(lo, head), max(hi, head)
        if hi - lo + 1 > tape_cap:
            raise TapeOverflow(hi - lo + 1, tape_cap)
        configs.append(
            Configuration(control=control, head=head, cells=tuple(sorted(store.items())))
        )
        steps += 1
    halted = control in tm.halting
    result = _trimmed_window(store, tm.blank) if halted else None
    return RunTrace(
        machine=tm.name,
        blank=tm.blank,
        configurations=tuple(configs),
        halted=halted,
        steps=steps,
        result=result,
        result_length=len(result) if result is not None else None,
    )


def head_automaton(tm: TuringMachine) -> Automaton:
    """The finite control as an automaton with tape symbols as inputs."""
    return validate(
        name=f"{tm.name}_head",
        input_alphabet=tm.tape_alphabet,
        output_alphabet=tm.control_states,
        states=tm.control_states,
        initial=tm.initial,
        output_map={q: q for q in tm.control_states},
        transitions=[(q, s, q2) for (q, s), (q2, _, _) in tm.rules.items()],
    )


def cell_automaton(alphabet: Sequence[str], name: str = "cell") -> Automaton:
    """A memory cell: one state per symbol, every write always accepted.

    Each state has |alphabet| outgoing and |alphabet| incoming arrows, so
    every write lands on a convergence.
    """
    symbols = []
    for s in alphabet:
        if s in symbols:
            raise DuplicateIdentifier(s, "cell alphabet")
        symbols.append(s)
    if len(symbols) < 2:
        raise AlphabetTooSmall(len(symbols))
    return validate(
        name=name,
        input_alphabet=[f"write_{s}" for s in symbols],
        output_alphabet=symbols,
        states=symbols,
        initial=None,
        output_map={s: s for s in symbols},
        transitions=[(q, f"write_{s}", s) for q in symbols for s in symbols],
    )


def detect_eventual_period(seq: Sequence[str]) -> Optional[tuple[int, int]]:
    """Smallest (start, period) such that the observed tail repeats with
    that period and at least two full periods are visible; None if the
    window shows no such regime."""
    n = len(seq)
    for p in range(1, n // 2 + 1):
        start = 0
        for i in range(n - p - 1, -1, -1):
            if seq[i] != seq[i + p]:
                start = i + 1
                break
        if start + 2 * p <= n:
            return start, p
    return None


def check_convergence_lemma(
    tm: TuringMachine,
    tape: Sequence[str] = (),
    horizon: Optional[int] = None,
) -> ConvergenceReport:
    """Report whether the head automaton contains a convergence.

    A machine able to run forever non-periodically must have one; the
    contrapositive is observable, so when ``horizon`` is given the head
    state sequence of a run is recorded and scanned for an eventually
    periodic regime (a convergence-free head can only loop periodically
    or halt).
    """
    head = head_automaton(tm)
    witnesses = tuple(sorted(convergent_states(head)))
    report = ConvergenceReport(has_convergence=bool(witnesses), witnesses=witnesses)
    if horizon is None:
        return report
    trace = tm_run(tm, tape, max_steps=horizon)
    seq = tuple(c.control for c in trace.configurations)
    found = detect_eventual_period(seq)
    return ConvergenceReport(
        has_convergence=report.has_convergence,
        witnesses=witnesses,
        head_sequence=seq,
        halted=trace.halted,
        eventually_periodic=found is not None,
        period_start=found[0] if found else None,
        period=found[1] if found else None,
    )


def modular_tm_dissipation(
    tm: TuringMachine,
    tape: Sequence[str] = (),
    max_steps: int = 10_000,
    model: Optional[InputModel] = None,
) -> TmDissipation:
    """Per-step charge of the modular implement: the head's choice
    information for the state being left, plus one cell write of
    log2(|tape alphabet|) bits (every rule writes, so every step pays).
    """
    trace = tm_run(tm, tape, max_steps=max_steps)
    head = head_automaton(tm)
    m = model or InputModel.uniform(head)
    head_charge = {q: choice_information(head, m, q) for q in head.states}
    cell_charge = math.log2(len(tm.tape_alphabet))
    head_bits = []
    cell_bits = []
    per_step = []
    cumulative = []
    total = 0.0
    for c in trace.configurations[: trace.steps]:
        hb = head_charge[c.control]
        head_bits.append(hb)
        cell_bits.append(cell_charge)
        per_step.append(hb + cell_charge)
        total += hb + cell_charge
        cumulative.append(total)
    return TmDissipation(
        trace=trace,
        per_step_bits=tuple(per_step),
        head_bits=tuple(head_bits),
        cell_bits=tuple(cell_bits),
        cumulative_bits=tuple(cumulative),
    )


def _linear_automaton(name: str, node_ids: Sequence[str]) -> Automaton:
    if len(set(node_ids)) != len(node_ids):
        raise RepeatedConfiguration("trajectory revisits a configuration")
    return validate(
        name=name,
        input_alphabet=["ck"],
        output_alphabet=[f"o{i}" for i in range(len(node_ids))],
        states=node_ids,
        initial=node_ids[0] if node_ids else None,
        output_map={q: f"o{i}" for i, q in enumerate(node_ids)},
        transitions=[
            (node_ids[i], "ck", node_ids[i + 1]) for i in range(len(node_ids) - 1)
        ],
    )


def global_graph(trace) -> Automaton:
    """The whole machine (head + tape) of a finished run as one automaton:
    a linear inputless chain that never revisits a state.

    Accepts a halted :class:`RunTrace` or a :class:`BennettTrace`.
    """
    if isinstance(trace, BennettTrace):
        blank = trace.forward.blank
        ids = [g.render(blank) for g in trace.global_configs]
        return _linear_automaton(f"{trace.machine}_global", ids)
    if not trace.halted:
        raise NotHalted(f"run of {trace.machine!r} did not halt")
    seen = set()
    for c in trace.configurations:
        if c in seen:
            raise RepeatedConfiguration(
                "halted run revisited a configuration"
            )
        seen.add(c)
    ids = [c.render(trace.blank) for c in trace.configurations]
    return _linear_automaton(f"{trace.machine}_global", ids)


def bennett_simulate(
    tm: TuringMachine,
    tape: Sequence[str] = (),
    max_steps: int = 10_000,
    tape_cap: int = DEFAULT_TAPE_CAP,
) -> BennettTrace:
    """Compute, copy the result, then uncompute using the history.

    Phase 1 runs the machine forward, recording the rule identifier
    (control state, read symbol) of every step.  Phase 2 copies the
    result window to a fresh output tape, one symbol per step.  Phase 3
    consumes the history backwards, restoring the input tape and leaving
    the history empty.  Total steps: 2n + r.

    Raises :class:`NotHalting` if the budget runs out and
    :class:`IrreversibleStep` if a backward step disagrees with the
    recorded forward run.
    """
    forward = tm_run(tm, tape, max_steps=max_steps, tape_cap=tape_cap)
    if not forward.halted:
        raise NotHalting(max_steps)
    configs = forward.configurations
    n = forward.steps
    history = tuple(
        (configs[t].control, configs[t].read(tm.blank)) for t in range(n)
    )
    result = forward.result or ()
    r = len(result)

    snapshots = [GlobalConfig("compute", configs[0], (), ())]
    for t in range(1, n + 1):
        snapshots.append(GlobalConfig("compute", configs[t], history[:t], ()))
    for j in range(1, r + 1):
        snapshots.append(GlobalConfig("copy", configs[n], history, result[:j]))

    current = configs[n]
    for k in range(1, n + 1):
        q, s = history[n - k]
        q2, w, move = tm.rules[(q, s)]
        if current.control != q2:
            raise IrreversibleStep(
                f"backward step {k}: control {current.control!r}, expected {q2!r}"
            )
        prev_head = current.head - MOVES[move]
        store = dict(current.cells)
        if store.get(prev_head, tm.blank) != w:
            raise IrreversibleStep(
                f"backward step {k}: cell {prev_head} does not hold {w!r}"
            )
        if s == tm.blank:
            store.pop(prev_head, None)
        else:
            store[prev_head] = s
        current = Configuration(control=q, head=prev_head, cells=tuple(sorted(store.items())))
        if current != configs[n - k]:
            raise IrreversibleStep(f"backward step {k} diverges from the forward run")
        snapshots.append(GlobalConfig("uncompute", current, history[: n - k], result))

    if len(set(snapshots)) != len(snapshots):
        raise RepeatedConfiguration("augmented trajectory revisits a configuration")

    return BennettTrace(
        machine=tm.name,
        input_tape=tuple(tape),
        forward=forward,
        history_records=history,
        global_configs=tuple(snapshots),
        phase_boundaries=(n, n + r, 2 * n + r),
        output_tape=result,
        total_steps=2 * n + r,
    )
