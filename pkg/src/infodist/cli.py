import sys
import argparse

from fractions import Fraction
from logging import getLogger
from pathlib import Path
from typing import Callable

from infodist import codec, settings
from infodist.beliefs import belief_partitions, hierarchy_distribution, stabilization_order
from infodist.chain import event_e_check, sample_chain
from infodist.concentration import hoeffding_experiment
from infodist.config import RunConfig, config_from_dict, load_config
from infodist.counterexample import (
    ALPHA,
    build_g_p,
    build_u_l,
    check_ui,
    sample_ui_cases,
    ui_cases,
    ui_formula_crosscheck,
    verify_separation,
)
from infodist.distance import Deviation, blackwell_compare_1p, compare, value_distance
from infodist.errors import BudgetExceeded, InfoDistError, StructuralError
from infodist.game_value import bayesian_value
from infodist.weak_metric import weak_distance


logger = getLogger(__name__)


EXIT_OK = 0
EXIT_ERROR = 1
EXIT_BUDGET = 2


def setup_arg_parser() -> argparse.ArgumentParser:
    """
    Creates the argument parser and returns it.
    Nothing will be parsed yet!

    Returns:
        argparse.ArgumentParser:
    """

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="Write the result document here instead of stdout.")
    common.add_argument(
        "--format", choices=("json", "human"), default="json", help="Output format. Defaults to json."
    )
    common.add_argument(
        "--lp-budget",
        type=int,
        help="Largest LP tableau in cells. Overrides the environment variable INFODIST_LP_BUDGET.",
    )

    parser = argparse.ArgumentParser(
        "infodist",
        description="Exact values, distances and belief hierarchies of information structures.",
        parents=[common],
    )
    parser.add_argument("--config", help="Repeat the run described by a saved RunConfig json.")

    commands = parser.add_subparsers(dest="command")

    value = commands.add_parser("value", parents=[common], help="Value of the game (u, g).")
    value.add_argument("inputs", nargs=2, metavar=("U", "G"))

    distance = commands.add_parser("distance", parents=[common], help="Value-based distance d(u, v).")
    distance.add_argument("inputs", nargs=2, metavar=("U", "V"))
    distance.add_argument("--witness", help="Write a payoff structure attaining the distance here.")

    comparison = commands.add_parser("compare", parents=[common], help="Garbling order of u and v.")
    comparison.add_argument("inputs", nargs=2, metavar=("U", "V"))

    blackwell = commands.add_parser(
        "blackwell", parents=[common], help="One-player comparison of u and v."
    )
    blackwell.add_argument("inputs", nargs=2, metavar=("U", "V"))

    beliefs = commands.add_parser("beliefs", parents=[common], help="Belief hierarchies up to an order.")
    beliefs.add_argument("inputs", nargs=1, metavar=("U",))
    beliefs.add_argument("--order", type=int, required=True)

    weak = commands.add_parser("weakdist", parents=[common], help="Truncated weak distance.")
    weak.add_argument("inputs", nargs=2, metavar=("U", "V"))
    weak.add_argument("--terms", type=int, required=True)

    cx = commands.add_parser("cx", parents=[common], help="Successor chain constructions and checks.")
    actions = cx.add_subparsers(dest="action")

    sample = actions.add_parser("sample", parents=[common], help="Sample a chain.")
    sample.add_argument("--n", type=int, required=True)
    sample.add_argument("--seed", type=int)

    ui = actions.add_parser(
        "check-ui",
        parents=[common],
        help="Check the UI conditions. The environment variable INFODIST_UI_BUDGET caps exhaustive scans.",
    )
    ui.add_argument("inputs", nargs=1, metavar=("CHAIN",))
    ui.add_argument("--lmax", dest="l_max", type=int, required=True)
    ui.add_argument("--samples", type=int, help="Check this many random cases instead of all.")
    ui.add_argument("--seed", type=int)
    ui.add_argument("--alpha", help=f"Tolerance around 1/2. Defaults to {ALPHA}.")

    build_u = actions.add_parser("build-u", parents=[common], help="The structure u^l of a chain.")
    build_u.add_argument("inputs", nargs=1, metavar=("CHAIN",))
    build_u.add_argument("--l", type=int, required=True)

    build_g = actions.add_parser("build-g", parents=[common], help="The payoff structure g^p of a chain.")
    build_g.add_argument("inputs", nargs=1, metavar=("CHAIN",))
    build_g.add_argument("--p", type=int, required=True)
    build_g.add_argument("--epsilon")

    verify = actions.add_parser("verify", parents=[common], help="Solve val(u^l, g^p) and check its bound.")
    verify.add_argument("inputs", nargs=1, metavar=("CHAIN",))
    verify.add_argument("--l", type=int, required=True)
    verify.add_argument("--p", type=int, required=True)
    verify.add_argument("--epsilon")

    hoeffding = actions.add_parser("hoeffding", parents=[common], help="Monte Carlo tail frequencies.")
    hoeffding.add_argument("--n", type=int, required=True)
    hoeffding.add_argument("--gamma", required=True)
    hoeffding.add_argument("--trials", type=int, required=True)
    hoeffding.add_argument("--seed", type=int)

    event = actions.add_parser(
        "event-e",
        parents=[common],
        help="Check the Y ratio event. The environment variable INFODIST_EVENT_E_BUDGET caps exhaustive scans.",
    )
    event.add_argument("inputs", nargs=1, metavar=("CHAIN",))
    event.add_argument("--samples", type=int)
    event.add_argument("--seed", type=int)

    crosscheck = actions.add_parser(
        "crosscheck", parents=[common], help="Compare UI conditionals with their Y closed forms."
    )
    crosscheck.add_argument("inputs", nargs=1, metavar=("CHAIN",))
    crosscheck.add_argument("--lmax", dest="l_max", type=int, required=True)
    crosscheck.add_argument("--samples", type=int)
    crosscheck.add_argument("--seed", type=int)

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """
    Args:
        args (argparse.Namespace): The parsed CLI arguments

    Returns:
        RunConfig:
    """

    if getattr(args, "config", None):
        return load_config(args.config)

    arg_dic = {k: v for k, v in vars(args).items() if v is not None and k != "config"}
    return config_from_dict(arg_dic)


# ---------------------------------------------------------------------------
# Documents
# ---------------------------------------------------------------------------


def _rational(text: str | None, name: str) -> Fraction | None:
    if text is None:
        return None
    return codec.parse_rational(text, name)


def _required(config: RunConfig, name: str):
    value = getattr(config, name)
    if value is None:
        raise StructuralError(f"{config.command}: missing option --{name.replace('_', '')}")
    return value


def _inputs(config: RunConfig, count: int) -> list[str]:
    if len(config.inputs) != count:
        raise StructuralError(f"{config.command}: expected {count} input files, got {len(config.inputs)}")
    return config.inputs


def _deviation(deviation: Deviation) -> dict:
    return {
        "delta": codec.format_rational(deviation.value),
        "q1": codec.garbling_to_dict(deviation.q1),
        "q2": codec.garbling_to_dict(deviation.q2),
    }


def _value(config: RunConfig) -> dict:
    u_path, g_path = _inputs(config, 2)
    solution = bayesian_value(codec.load_info(u_path), codec.load_payoff(g_path))
    return {
        "value": codec.format_rational(solution.value),
        "sigma": codec.strategy_to_dict(solution.sigma),
        "tau": codec.strategy_to_dict(solution.tau),
    }


def _distance(config: RunConfig) -> dict:
    u_path, v_path = _inputs(config, 2)
    report = value_distance(codec.load_info(u_path), codec.load_info(v_path))
    if config.witness:
        codec.dump_document(codec.payoff_to_dict(report.witness), config.witness)
    return {
        "d": codec.format_rational(report.value),
        "forward": _deviation(report.forward),
        "backward": _deviation(report.backward),
    }


def _compare(config: RunConfig) -> dict:
    u_path, v_path = _inputs(config, 2)
    comparison = compare(codec.load_info(u_path), codec.load_info(v_path))
    return {
        "direction": comparison.direction.value,
        "forward": _deviation(comparison.forward),
        "backward": _deviation(comparison.backward),
    }


def _blackwell(config: RunConfig) -> dict:
    u_path, v_path = _inputs(config, 2)
    report = blackwell_compare_1p(codec.load_info(u_path), codec.load_info(v_path))
    return {
        "d": codec.format_rational(report.distance),
        "direction": report.direction.value,
        "forward": codec.format_rational(report.forward),
        "backward": codec.format_rational(report.backward),
        "forward_garbling": codec.garbling_to_dict(report.forward_garbling),
        "backward_garbling": codec.garbling_to_dict(report.backward_garbling),
    }


def _beliefs(config: RunConfig) -> dict:
    (u_path,) = _inputs(config, 1)
    order = _required(config, "order")
    u = codec.load_info(u_path)
    first, second = belief_partitions(u, order)
    return {
        "order": order,
        "player_1": codec.partition_to_dict(first),
        "player_2": codec.partition_to_dict(second),
        "hierarchy": codec.hierarchy_to_dict(hierarchy_distribution(u, order)),
        "stabilization_order": stabilization_order(u),
    }


def _weakdist(config: RunConfig) -> dict:
    u_path, v_path = _inputs(config, 2)
    bounds = weak_distance(codec.load_info(u_path), codec.load_info(v_path), _required(config, "terms"))
    return {
        "lower": codec.format_rational(bounds.lower),
        "upper": codec.format_rational(bounds.upper),
        "terms": bounds.terms,
        "enumeration": bounds.version,
    }


def _chain(config: RunConfig):
    (chain_path,) = _inputs(config, 1)
    return codec.load_chain(chain_path)


def _case(case) -> dict:
    return {
        "condition": case.condition,
        "l": case.l,
        "received": list(case.received),
        "reported": list(case.reported),
        "r": case.r,
        "m": case.m,
    }


def _cx_sample(config: RunConfig) -> dict:
    return codec.chain_to_dict(sample_chain(_required(config, "n"), config.seed))


def _cx_check_ui(config: RunConfig) -> dict:
    alpha = _rational(config.alpha, "--alpha")
    report = check_ui(
        _chain(config),
        _required(config, "l_max"),
        ALPHA if alpha is None else alpha,
        samples=config.samples,
        seed=config.seed,
    )
    low, high = report.interval
    return {
        "holds": report.holds,
        "sampled": report.sampled,
        "interval": [codec.format_rational(low), codec.format_rational(high)],
        "checked": report.checked,
        "vacuous": report.vacuous,
        "violation_counts": report.violation_counts(),
        "violation_fraction": codec.format_rational(report.violation_fraction),
        "mean_deviation": codec.format_rational(report.mean_deviation),
        "max_deviation": codec.format_rational(report.max_deviation),
        "results": [
            {**_case(result.case), "probability": codec.format_rational(result.probability), "passed": result.passed}
            for result in report.results
        ],
    }


def _cx_build_u(config: RunConfig) -> dict:
    return codec.info_to_dict(build_u_l(_chain(config), _required(config, "l")))


def _cx_build_g(config: RunConfig) -> dict:
    epsilon = _rational(config.epsilon, "--epsilon")
    return codec.payoff_to_dict(build_g_p(_chain(config), _required(config, "p"), epsilon))


def _cx_verify(config: RunConfig) -> dict:
    epsilon = _rational(config.epsilon, "--epsilon")
    report = verify_separation(_chain(config), _required(config, "l"), _required(config, "p"), epsilon)
    return {
        "l": report.l,
        "p": report.p,
        "value": codec.format_rational(report.value),
        "epsilon": codec.format_rational(report.epsilon),
        "bound": report.bound,
        "meets": report.meets,
    }


def _cx_hoeffding(config: RunConfig) -> dict:
    gamma = _rational(_required(config, "gamma"), "--gamma")
    report = hoeffding_experiment(_required(config, "n"), gamma, _required(config, "trials"), config.seed)
    return {
        "N": report.size,
        "gamma": codec.format_rational(report.gamma),
        "trials": report.trials,
        "holds": report.holds,
        "tails": [
            {
                "statistic": tail.name,
                "frequency": codec.format_rational(tail.frequency),
                "bound": tail.bound_text,
                "applicable": tail.applicable,
                "within": tail.within,
            }
            for tail in report.tails
        ],
    }


def _cx_event_e(config: RunConfig) -> dict:
    report = event_e_check(_chain(config), samples=config.samples, seed=config.seed)
    violation = report.violation
    return {
        "holds": report.holds,
        "sampled": report.sampled,
        "checked": report.checked,
        "violations": report.violations,
        "first_violation": None
        if violation is None
        else {
            "a": violation.a,
            "b": violation.b,
            "c": violation.c,
            "d": violation.d,
            "ratio": violation.ratio,
            "numerator": violation.numerator,
            "denominator": violation.denominator,
        },
    }


def _cx_crosscheck(config: RunConfig) -> dict:
    chain = _chain(config)
    l_max = _required(config, "l_max")
    if config.samples is None:
        cases = ui_cases(chain, l_max)
    else:
        cases = sample_ui_cases(chain, l_max, config.samples, config.seed)
    report = ui_formula_crosscheck(chain, cases)
    return {
        "exact": report.exact,
        "checked": report.checked,
        "vacuous": report.vacuous,
        "mismatches": [
            {
                **_case(mismatch.case),
                "direct": codec.format_rational(mismatch.direct),
                "formula": None if mismatch.formula is None else codec.format_rational(mismatch.formula),
            }
            for mismatch in report.mismatches
        ],
    }


COMMANDS: dict[str, Callable[[RunConfig], dict]] = {
    "value": _value,
    "distance": _distance,
    "compare": _compare,
    "blackwell": _blackwell,
    "beliefs": _beliefs,
    "weakdist": _weakdist,
}

CX_COMMANDS: dict[str, Callable[[RunConfig], dict]] = {
    "sample": _cx_sample,
    "check-ui": _cx_check_ui,
    "build-u": _cx_build_u,
    "build-g": _cx_build_g,
    "verify": _cx_verify,
    "hoeffding": _cx_hoeffding,
    "event-e": _cx_event_e,
    "crosscheck": _cx_crosscheck,
}


def render_human(document: dict, indent: int = 0) -> str:
    """
    Indented :code:`key: value` lines; lists of objects are numbered.
    """

    lines = []
    pad = "  " * indent
    for key, value in document.items():
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.append(render_human(value, indent + 1))
        elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            lines.append(f"{pad}{key}:")
            for n, item in enumerate(value, start=1):
                lines.append(f"{pad}  [{n}]")
                lines.append(render_human(item, indent + 2))
        else:
            lines.append(f"{pad}{key}: {value}")
    return "\n".join(line for line in lines if line)


def run(config: RunConfig) -> tuple[int, str]:
    """
    Runs one command.

    Returns:
        tuple[int, str]: exit status and the rendered result document, or
            a one-line error message when the status is not 0.
    """

    if config.command == "cx":
        handler = CX_COMMANDS.get(config.action or "")
    else:
        handler = COMMANDS.get(config.command)
    if handler is None:
        return EXIT_ERROR, f"error: unknown command '{' '.join(filter(None, [config.command, config.action]))}'"

    saved = settings.LP_BUDGET, settings.UI_BUDGET
    if config.lp_budget is not None:
        settings.LP_BUDGET = config.lp_budget
    if config.ui_budget is not None:
        settings.UI_BUDGET = config.ui_budget

    try:
        document = handler(config)
    except BudgetExceeded as e:
        logger.warning(f"Refused: {e}")
        return EXIT_BUDGET, f"refused: {e}"
    except InfoDistError as e:
        logger.error(f"{config.command} failed: {e}")
        return EXIT_ERROR, f"error: {e}"
    finally:
        settings.LP_BUDGET, settings.UI_BUDGET = saved

    document["provenance"] = config.provenance()

    if config.format == "human":
        return EXIT_OK, render_human(document) + "\n"
    return EXIT_OK, codec.render_document(document)


def run_cli_job(args: argparse.Namespace) -> int:
    """
    Runs the CLI Job.

    Args:
        args (argparse.Namespace): The parsed CLI arguments

    Returns:
        int: exit status
    """

    ##################
    ### Get config ###
    ##################

    try:
        config = config_from_args(args)
    except InfoDistError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR

    ###########
    ### Run ###
    ###########

    status, text = run(config)

    ##############
    ### Output ###
    ##############

    if status != EXIT_OK:
        print(text, file=sys.stderr)
        return status

    if config.output:
        path = Path(config.output)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w+") as f:
            f.write(text)
    else:
        sys.stdout.write(text)

    return status
