"""Information accounting over automaton graphs.

Two complementary measures of logical dissipation are provided:

* per-run choice information, the bits consumed to steer a single path
  through the divergences of the graph;
* ensemble entropy loss, the bits of state entropy plus injected input
  entropy that a distribution over states sheds at each step.

The two are tied by an exact identity: over any horizon, cumulative loss
equals cumulative injected input bits plus the drop in state entropy.
Both use base-2 logarithms; terms with zero probability contribute zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import Arrow, Automaton, Path, convergent_states, run
from .errors import InvalidDistribution, NonPositiveTemperature, UnknownState

BOLTZMANN_K = 1.38e-23  # Joules per Kelvin

PROB_SUM_TOL = 1e-9


class InputModel:
    """Per-state probability distribution over outgoing merged arrows.

    A merged arrow is one choice regardless of how many symbols label it.
    States with a single arrow carry probability one on it; sinks have an
    empty distribution.
    """

    def __init__(self, probs: dict[str, dict[tuple[str, str], float]]):
        self.probs = probs

    @classmethod
    def uniform(cls, a: Automaton) -> "InputModel":
        """Equal probability on every arrow leaving each state."""
        probs = {}
        for q in a.states:
            arrows = a.by_source[q]
            if arrows:
                p = 1.0 / len(arrows)
                probs[q] = {ar.key: p for ar in arrows}
            else:
                probs[q] = {}
        return cls(probs)

    @classmethod
    def from_arrow_probs(
        cls,
        a: Automaton,
        given: dict[str, dict[tuple[str, str], float]],
        tolerance: float = PROB_SUM_TOL,
    ) -> "InputModel":
        """Build a model from explicit per-arrow probabilities.

        States absent from ``given`` default to uniform.  Each provided
        state must assign non-negative weights to its own arrows summing
        to one within ``tolerance``; weights are renormalized exactly.
        """
        model = cls.uniform(a)
        for q, dist in given.items():
            if q not in a.by_source:
                raise UnknownState(q, "input model")
            keys = {ar.key for ar in a.by_source[q]}
            if not keys:
                if dist:
                    raise InvalidDistribution(f"state {q!r} is a sink")
                continue
            unknown = set(dist) - keys
            if unknown:
                raise InvalidDistribution(
                    f"state {q!r} has no arrow {sorted(unknown)[0]}"
                )
            total = 0.0
            for key, p in dist.items():
                if p < 0:
                    raise InvalidDistribution(f"negative probability on {key}")
                total += p
            if abs(total - 1.0) > tolerance:
                raise InvalidDistribution(
                    f"probabilities for state {q!r} sum to {total!r}"
                )
            model.probs[q] = {key: dist.get(key, 0.0) / total for key in sorted(keys)}
        return model

    def arrow_probability(self, q: str, arrow: Arrow) -> float:
        return self.probs[q].get(arrow.key, 0.0)


@dataclass(frozen=True)
class PathReport:
    """Choice-information accounting for a single run."""

    path: Path
    per_step_bits: tuple[float, ...]
    total_bits: float
    convergences_entered: tuple[int, ...]


@dataclass(frozen=True)
class EnsembleTrace:
    """Entropy accounting for a distribution over states, step by step.

    ``distributions[t]`` is the state distribution before step ``t``;
    there is one more distribution than steps.  ``cumulative_loss_bits``
    holds running sums of ``per_step_loss_bits``.
    """

    states: tuple[str, ...]
    distributions: tuple[np.ndarray, ...]
    per_step_loss_bits: tuple[float, ...]
    per_step_input_bits: tuple[float, ...]
    cumulative_loss_bits: tuple[float, ...]

    @property
    def total_loss_bits(self) -> float:
        return self.cumulative_loss_bits[-1] if self.cumulative_loss_bits else 0.0


def entropy_bits(pi: np.ndarray) -> float:
    """Shannon entropy in bits; zero entries contribute nothing."""
    p = np.asarray(pi, dtype=float)
    p = p[p > 0]
    return float(-np.dot(p, np.log2(p)))


def choice_information(a: Automaton, m: InputModel, q: str) -> float:
    """Bits needed to leave ``q`` under the model: -sum p log2 p.

    Zero for sinks and for states with a single arrow (indifferent or
    implicit input); at most log2 of the out-arrow count.
    """
    if q not in a.by_source:
        raise UnknownState(q)
    ps = [m.arrow_probability(q, ar) for ar in a.by_source[q]]
    return float(sum(-p * math.log2(p) for p in ps if p > 0))


def path_choice_information(
    a: Automaton, m: InputModel, start: str, word: Sequence[str]
) -> PathReport:
    """Run a word and charge -log2(arrow probability) at each step.

    Under the uniform model the total is the sum of log2(out-degree)
    over divergent states left along the path.  Also records the step
    indices whose target state is a convergence, where the charged
    information is subsequently lost.
    """
    path = run(a, start, word)
    conv = convergent_states(a)
    bits = []
    entered = []
    for i, (_, arrow, target) in enumerate(path.steps):
        p = m.arrow_probability(arrow.source, arrow)
        bits.append(-math.log2(p) if p > 0 else math.inf)
        if target in conv:
            entered.append(i)
    return PathReport(
        path=path,
        per_step_bits=tuple(bits),
        total_bits=float(sum(bits)),
        convergences_entered=tuple(entered),
    )


def _check_distribution(a: Automaton, pi: Sequence[float]) -> np.ndarray:
    p = np.asarray(pi, dtype=float)
    if p.shape != (len(a.states),):
        raise InvalidDistribution(
            f"expected {len(a.states)} entries, got {p.shape}"
        )
    if np.any(p < -1e-12):
        raise InvalidDistribution("negative probability mass")
    total = float(p.sum())
    if abs(total - 1.0) > PROB_SUM_TOL:
        raise InvalidDistribution(f"distribution sums to {total!r}")
    return np.clip(p, 0.0, None)


def _transition_matrix(a: Automaton, m: InputModel) -> np.ndarray:
    """Row-stochastic matrix of the induced state chain; sinks hold mass."""
    index = {q: i for i, q in enumerate(a.states)}
    mat = np.zeros((len(a.states), len(a.states)))
    for q in a.states:
        arrows = a.by_source[q]
        if not arrows:
            mat[index[q], index[q]] = 1.0
            continue
        for ar in arrows:
            mat[index[q], index[ar.target]] += m.arrow_probability(q, ar)
    return mat


def _input_bits_vector(a: Automaton, m: InputModel) -> np.ndarray:
    return np.array([choice_information(a, m, q) for q in a.states])


def ensemble_step(
    a: Automaton, m: InputModel, pi: Sequence[float]
) -> tuple[np.ndarray, float]:
    """Propagate a state distribution one step and return the loss.

    Loss is H(pi) plus the expected choice information injected, minus
    H(pi').  It is non-negative because the joint (state, arrow) choice
    maps deterministically onto the next state; mass on sink states is
    carried unchanged and injects nothing.
    """
    p = _check_distribution(a, pi)
    mat = _transition_matrix(a, m)
    nxt = p @ mat
    input_bits = float(p @ _input_bits_vector(a, m))
    loss = entropy_bits(p) + input_bits - entropy_bits(nxt)
    return nxt, loss


def ensemble_dissipation(
    a: Automaton, m: InputModel, pi0: Sequence[float], horizon: int
) -> EnsembleTrace:
    """Iterate :func:`ensemble_step` for ``horizon`` steps.

    The trace satisfies, exactly up to float error:
    cumulative_loss(T) = sum_t input_bits(t) + H(pi_0) - H(pi_T).
    """
    if horizon < 0:
        raise ValueError("horizon must be non-negative")
    p = _check_distribution(a, pi0)
    mat = _transition_matrix(a, m)
    cvec = _input_bits_vector(a, m)
    dists = [p]
    losses = []
    inputs = []
    cumulative = []
    total = 0.0
    for _ in range(horizon):
        cur = dists[-1]
        nxt = cur @ mat
        inj = float(cur @ cvec)
        loss = entropy_bits(cur) + inj - entropy_bits(nxt)
        dists.append(nxt)
        inputs.append(inj)
        losses.append(loss)
        total += loss
        cumulative.append(total)
    return EnsembleTrace(
        states=a.states,
        distributions=tuple(dists),
        per_step_loss_bits=tuple(losses),
        per_step_input_bits=tuple(inputs),
        cumulative_loss_bits=tuple(cumulative),
    )


def point_distribution(a: Automaton, q: str) -> np.ndarray:
    """All probability mass on one state."""
    if q not in a.by_source:
        raise UnknownState(q)
    p = np.zeros(len(a.states))
    p[a.states.index(q)] = 1.0
    return p


def uniform_distribution(a: Automaton) -> np.ndarray:
    return np.full(len(a.states), 1.0 / len(a.states))


def szilard_check(s1: float, s2: float, k: float = BOLTZMANN_K) -> bool:
    """Whether entropy increases of a two-state memory respect the bound
    exp(-s1/k) + exp(-s2/k) <= 1.

    Both entropies in Joules per Kelvin.  Equality holds at
    s1 = s2 = k ln 2, the symmetric one-bit memory.
    """
    try:
        total = math.exp(-s1 / k) + math.exp(-s2 / k)
    except OverflowError:
        return False
    return total <= 1.0 + 1e-12


def landauer_energy(bits: float, temperature: float) -> float:
    """Minimum physical cost of erasing ``bits`` at ``temperature``:
    bits * k * T * ln 2, in Joules."""
    if temperature <= 0:
        raise NonPositiveTemperature(temperature)
    if bits < 0:
        raise ValueError("bits must be non-negative")
    return bits * BOLTZMANN_K * temperature * math.log(2)
