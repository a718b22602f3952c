"""Command-line front end.

Every command prints a report: ``key: value`` lines with numbers at six
decimal places by default, or a stable JSON object (sorted keys) with
``--json``.  Exit codes: 0 success, 1 domain error (forbidden input,
untestable graph, machine not halting, ...), 2 usage or parse error.

The default temperature for energy figures is 300 K; the environment
variable ``AUTODISS_TEMP`` or the ``--temp`` flag overrides it.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import composition, conformance, dissipation, dot, fileformat, turing
from .core import convergent_states, divergent_states, is_reversible, reachable_states
from .errors import AutomataError, ParseError

DEFAULT_TEMPERATURE = 300.0


def _temperature(args) -> float:
    if args.temp is not None:
        return args.temp
    return float(os.environ.get("AUTODISS_TEMP", DEFAULT_TEMPERATURE))


def _fmt(v: float) -> str:
    # Six decimal places; tiny magnitudes switch to scientific notation
    # so energy figures stay readable.
    if v != 0 and abs(v) < 1e-4:
        return f"{v:.6e}"
    return f"{v + 0.0:.6f}"


def _emit(report: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report, sort_keys=True))
        return
    for key, value in report.items():
        if isinstance(value, float):
            print(f"{key}: {_fmt(value)}")
        elif isinstance(value, (list, tuple)):
            print(f"{key}: {' '.join(str(v) for v in value)}")
        elif isinstance(value, dict):
            for sub, v in value.items():
                if isinstance(v, float):
                    print(f"{key}.{sub}: {_fmt(v)}")
                else:
                    print(f"{key}.{sub}: {v}")
        else:
            print(f"{key}: {value}")


def _split_word(word: str, alphabet) -> list[str]:
    """Whitespace-separated symbols; a single unbroken token expands to
    its characters when those are all alphabet symbols."""
    tokens = word.split()
    symbols: list[str] = []
    alpha = set(alphabet)
    for t in tokens:
        if t in alpha:
            symbols.append(t)
        elif all(ch in alpha for ch in t):
            symbols.extend(t)
        else:
            symbols.append(t)  # let the run report the offender
    return symbols


def _write_out(args, text: str) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_analyze(args) -> dict:
    auto, model = fileformat.load_automaton(args.file)
    return {
        "name": auto.name,
        "state_count": len(auto.states),
        "arrow_count": auto.arrow_count,
        "divergent": sorted(divergent_states(auto)),
        "convergent": sorted(convergent_states(auto)),
        "reversible": is_reversible(auto),
        "choice_bits": {
            q: dissipation.choice_information(auto, model, q) for q in auto.states
        },
    }


def cmd_run(args) -> dict:
    auto, model = fileformat.load_automaton(args.file)
    start = args.start or auto.initial
    if start is None:
        raise AutomataError("no start state: give --start or declare initial")
    word = _split_word(args.word, auto.input_alphabet)
    report = dissipation.path_choice_information(auto, model, start, word)
    temp = _temperature(args)
    return {
        "name": auto.name,
        "start": start,
        "word": word,
        "path": list(report.path.states),
        "outputs": list(report.path.outputs),
        "total_bits": report.total_bits,
        "per_step_bits": [round(b, 9) for b in report.per_step_bits],
        "convergences_entered": list(report.convergences_entered),
        "temperature_kelvin": temp,
        "landauer_joules": dissipation.landauer_energy(report.total_bits, temp),
    }


def cmd_product(args) -> dict:
    a, _ = fileformat.load_automaton(args.file_a)
    b, _ = fileformat.load_automaton(args.file_b)
    prod = composition.product(a, b)
    _write_out(args, fileformat.write_automaton(prod))
    return {
        "name": prod.name,
        "modules": list(prod.module_names),
        "module_state_counts": [len(a.states), len(b.states)],
        "module_arrow_counts": [a.arrow_count, b.arrow_count],
        "state_count": len(prod.states),
        "arrow_count": prod.arrow_count,
        "divergent_count": len(divergent_states(prod)),
        "convergent_count": len(convergent_states(prod)),
    }


def cmd_wire(args) -> dict:
    wiring = fileformat.load_wiring(args.file)
    closed = composition.wire(wiring)
    _write_out(args, fileformat.write_automaton(closed.automaton))
    # Dissipation is owed on the open graph (what the per-module tests
    # certify), even though the wired loop itself may be choice-free.
    modules = [m for _, m in wiring.modules]
    open_graph = (
        composition.product_many(modules) if len(modules) > 1 else modules[0]
    )
    open_model = dissipation.InputModel.uniform(open_graph)
    closed_model = dissipation.InputModel.uniform(closed.automaton)
    if closed.automaton.initial is not None:
        shown = sorted(
            reachable_states(closed.automaton, closed.automaton.initial)
        )
    else:
        shown = list(closed.automaton.states)
    return {
        "name": closed.automaton.name,
        "modules": [n for n, _ in wiring.modules],
        "free_inputs": list(closed.free_modules),
        "state_count": len(closed.automaton.states),
        "arrow_count": closed.automaton.arrow_count,
        "initial": closed.automaton.initial,
        "open_choice_bits": {
            q: dissipation.choice_information(open_graph, open_model, q)
            for q in shown
        },
        "closed_choice_bits": {
            q: dissipation.choice_information(closed.automaton, closed_model, q)
            for q in shown
        },
    }


def cmd_reach(args) -> dict:
    auto, _ = fileformat.load_automaton(args.file)
    sub = composition.reachable_subgraph(auto)
    _write_out(args, fileformat.write_automaton(sub))
    return {
        "name": sub.name,
        "state_count": len(sub.states),
        "arrow_count": sub.arrow_count,
        "states": list(sub.states),
        "reversible": is_reversible(sub),
    }


def cmd_equiv(args) -> dict:
    a, _ = fileformat.load_automaton(args.file_a)
    b, _ = fileformat.load_automaton(args.file_b)
    return {"equivalent": composition.equivalent(a, b)}


def cmd_test(args) -> dict:
    auto, _ = fileformat.load_automaton(args.file)
    start = args.start or auto.initial
    if start is None:
        raise AutomataError("no start state: give --start or declare initial")
    tour = conformance.transition_tour(auto, start)
    return {
        "name": auto.name,
        "start": start,
        "length": tour.length,
        "arrow_count": auto.arrow_count,
        "covered": len(tour.covered),
        "word": list(tour.word),
    }


def cmd_dot(args) -> dict | None:
    auto, _ = fileformat.load_automaton(args.file)
    sys.stdout.write(dot.export_dot(auto))
    return None


def _tape(args) -> list[str]:
    return args.tape.split() if args.tape else []


def cmd_tm_run(args) -> dict:
    tm = fileformat.load_machine(args.file)
    trace = turing.tm_run(tm, _tape(args), max_steps=args.max_steps)
    return {
        "name": tm.name,
        "halted": trace.halted,
        "steps": trace.steps,
        "result": list(trace.result) if trace.result is not None else None,
        "result_length": trace.result_length,
        "final_control": trace.configurations[-1].control,
    }


def cmd_tm_head(args) -> dict:
    tm = fileformat.load_machine(args.file)
    head = turing.head_automaton(tm)
    report = turing.check_convergence_lemma(tm)
    _write_out(args, fileformat.write_automaton(head))
    return {
        "name": head.name,
        "control_states": len(head.states),
        "arrow_count": head.arrow_count,
        "has_convergence": report.has_convergence,
        "convergent": list(report.witnesses),
    }


def cmd_tm_dissip(args) -> dict:
    tm = fileformat.load_machine(args.file)
    acc = turing.modular_tm_dissipation(tm, _tape(args), max_steps=args.max_steps)
    steps = len(acc.per_step_bits)
    return {
        "name": tm.name,
        "steps": steps,
        "halted": acc.trace.halted,
        "per_step_bits": [round(b, 9) for b in acc.per_step_bits],
        "cumulative_bits": [round(b, 9) for b in acc.cumulative_bits],
        "total_bits": acc.total_bits,
        "slope_bits_per_step": acc.total_bits / steps if steps else 0.0,
    }


def cmd_tm_linear(args) -> dict:
    tm = fileformat.load_machine(args.file)
    trace = turing.tm_run(tm, _tape(args), max_steps=args.max_steps)
    graph = turing.global_graph(trace)
    _write_out(args, fileformat.write_automaton(graph))
    return {
        "name": graph.name,
        "state_count": len(graph.states),
        "reversible": is_reversible(graph),
        "divergent_count": len(divergent_states(graph)),
        "convergent_count": len(convergent_states(graph)),
    }


def cmd_tm_bennett(args) -> dict:
    tm = fileformat.load_machine(args.file)
    trace = turing.bennett_simulate(tm, _tape(args), max_steps=args.max_steps)
    graph = turing.global_graph(trace)
    return {
        "name": tm.name,
        "forward_steps": trace.forward.steps,
        "result_length": trace.forward.result_length,
        "total_steps": trace.total_steps,
        "history_empty": not trace.global_configs[-1].history,
        "input_restored": trace.global_configs[-1].config
        == trace.global_configs[0].config,
        "output": list(trace.output_tape),
        "global_states": len(graph.states),
        "global_reversible": is_reversible(graph),
        "classic_step_count": trace.classic_step_count,
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="autodiss",
        description="Analyze automata as physical implements: structure, "
        "dissipation, composition, conformance tests, Turing machines.",
    )
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS keeps an absent sub-level flag from clobbering the root one
    common.add_argument(
        "--json", action="store_true", default=argparse.SUPPRESS,
        help="machine-readable output",
    )
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, helptext, **kwargs):
        return sub.add_parser(name, help=helptext, parents=[common], **kwargs)

    p = add("analyze", "graph structure and per-state choice bits")
    p.add_argument("file")
    p.set_defaults(func=cmd_analyze)

    p = add("run", "run a word and report its choice information")
    p.add_argument("file")
    p.add_argument("--start")
    p.add_argument("--word", required=True)
    p.add_argument("--temp", type=float, default=None, help="temperature in Kelvin")
    p.set_defaults(func=cmd_run)

    p = add("product", "Cartesian product of two module graphs")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("-o", "--output", help="write the product automaton here")
    p.set_defaults(func=cmd_product)

    p = add("wire", "close a wiring into a tuple-state automaton")
    p.add_argument("file")
    p.add_argument("-o", "--output", help="write the closed automaton here")
    p.set_defaults(func=cmd_wire)

    p = add("reach", "restrict to states reachable from the initial")
    p.add_argument("file")
    p.add_argument("-o", "--output", help="write the reachable automaton here")
    p.set_defaults(func=cmd_reach)

    p = add("equiv", "rooted isomorphism up to symbol renaming")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.set_defaults(func=cmd_equiv)

    p = add("test", "covering transition tour and its cost")
    p.add_argument("file")
    p.add_argument("--start")
    p.set_defaults(func=cmd_test)

    p = add("dot", "deterministic Graphviz rendering")
    p.add_argument("file")
    p.set_defaults(func=cmd_dot)

    tm = sub.add_parser("tm", help="Turing machine analyses", parents=[common])
    tmsub = tm.add_subparsers(dest="tm_command", required=True)

    def tmadd(name, helptext):
        return tmsub.add_parser(name, help=helptext, parents=[common])

    p = tmadd("run", "run a machine")
    p.add_argument("file")
    p.add_argument("--tape", default="", help="whitespace-separated input symbols")
    p.add_argument("--max-steps", type=int, default=10_000)
    p.set_defaults(func=cmd_tm_run)

    p = tmadd("head", "the finite control as an automaton")
    p.add_argument("file")
    p.add_argument("-o", "--output", help="write the head automaton here")
    p.set_defaults(func=cmd_tm_head)

    p = tmadd("dissip", "modular per-step information charges")
    p.add_argument("file")
    p.add_argument("--tape", default="")
    p.add_argument("--max-steps", type=int, default=1000)
    p.set_defaults(func=cmd_tm_dissip)

    p = tmadd("linear", "global graph of a halted run")
    p.add_argument("file")
    p.add_argument("--tape", default="")
    p.add_argument("--max-steps", type=int, default=10_000)
    p.add_argument("-o", "--output", help="write the linear automaton here")
    p.set_defaults(func=cmd_tm_linear)

    p = tmadd("bennett", "record, copy, uncompute simulation")
    p.add_argument("file")
    p.add_argument("--tape", default="")
    p.add_argument("--max-steps", type=int, default=10_000)
    p.set_defaults(func=cmd_tm_bennett)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except FileNotFoundError as e:
        print(f"error: file not found: {e.filename or e}", file=sys.stderr)
        return 2
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except AutomataError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    if report is not None:
        _emit(report, args.json)
    return 0


if __name__ == "__main__":
    sys.exit(main())
