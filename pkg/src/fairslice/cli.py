"""Command-line front end over scenario files.

Six subcommands: run a mechanism, audit a given allocation, certify an
equilibrium, compute (constrained) optima, price a fairness criterion, and
benchmark query counts.  Reports are exact: every number prints as p/q.
Exit codes follow one contract everywhere: 0 on success, 1 when an
--expect-* assertion fails, 2 on bad input.
"""

import argparse
import json
import sys

from fairslice.audit import (
    Allocation,
    egalitarian_efficiency,
    equity_table,
    is_envy_free,
    is_equitable,
    is_non_wasteful,
    is_proportional,
    utilitarian_efficiency,
)
from fairslice.equilibrium import (
    NotWellBehaved,
    UnallocatedValuedCake,
    is_equilibrium,
    reduce_profile,
)
from fairslice.generator import random_uniform_agents
from fairslice.mechanisms import (
    ArityMismatch,
    cut_and_choose,
    even_paz,
    last_diminisher,
    selfridge,
)
from fairslice.optimal import CRITERIA, max_ue, utilitarian_optimal
from fairslice.oracle import sincere_oracles
from fairslice.scenario import ParseError, parse_scenario, region_pairs
from fairslice.uniform import (
    AgentOrder,
    Profile,
    UniformPreference,
    length_game,
    lex_order,
    min_average_mechanism,
)


class UnsupportedValuationClass(ValueError):
    """The command needs a valuation family the scenario does not provide."""


QUERY_MECHANISMS = {
    "cut-and-choose": cut_and_choose,
    "last-diminisher": last_diminisher,
    "even-paz": even_paz,
    "selfridge": selfridge,
}
REVELATION_MECHANISMS = ("lex-order", "length-game", "procaccia")
MECHANISMS = tuple(QUERY_MECHANISMS) + REVELATION_MECHANISMS

# Agent counts a mechanism accepts; None means any.
FIXED_ARITY = {"cut-and-choose": 2, "selfridge": 3}


def _read_scenario(args):
    if args.scenario in (None, "-"):
        return parse_scenario(sys.stdin.read())
    with open(args.scenario, "r", encoding="utf-8") as handle:
        return parse_scenario(handle.read())


def _preferences(scenario):
    if not all(v.is_piecewise_uniform() for v in scenario.valuations):
        raise UnsupportedValuationClass(
            "revelation mechanisms need piecewise-uniform agents"
        )
    return [UniformPreference(v.support()) for v in scenario.valuations]


def _profile(scenario, preferences):
    if scenario.profile is not None:
        return scenario.profile
    return Profile([p.support() for p in preferences])


def _report(scenario, allocation, transcript=None, equilibrium=None):
    table = equity_table(scenario.valuations, allocation)
    report = {
        "agents": list(scenario.ids),
        "allocation": [region_pairs(p) for p in allocation],
        "equity_table": [[str(v) for v in row] for row in table.entries],
        "criteria": {
            "proportional": is_proportional(table),
            "envy-free": is_envy_free(table),
            "equitable": is_equitable(table),
            "non-wasteful": is_non_wasteful(scenario.valuations, allocation),
        },
        "ue": str(utilitarian_efficiency(table)),
        "ee": str(egalitarian_efficiency(table)),
    }
    if transcript is not None:
        report["queries"] = {
            "total": transcript.total,
            "eval": transcript.eval_count,
            "cut": transcript.cut_count,
        }
    if equilibrium is not None:
        report["equilibrium"] = equilibrium
    return report


def _emit_report(report, fmt, out):
    if fmt == "json":
        out.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
        return
    if fmt == "csv":
        rows = [("ue", report["ue"]), ("ee", report["ee"])]
        rows += sorted(report["criteria"].items())
        if "queries" in report:
            rows += sorted(report["queries"].items())
        if "equilibrium" in report:
            rows.append(("equilibrium", report["equilibrium"]["is_equilibrium"]))
        out.write("field,value\n")
        for key, value in rows:
            out.write("%s,%s\n" % (key, _plain(value)))
        return
    for agent, portions in zip(report["agents"], report["allocation"]):
        spans = " ".join("%s..%s" % (lo, hi) for lo, hi in portions) or "nothing"
        out.write("agent %s: %s\n" % (agent, spans))
    for agent, row in zip(report["agents"], report["equity_table"]):
        out.write("values[%s]: %s\n" % (agent, " ".join(row)))
    flags = " ".join(
        "%s=%s" % (key, _plain(value))
        for key, value in sorted(report["criteria"].items())
    )
    out.write("criteria: %s\n" % flags)
    out.write("ue: %s\nee: %s\n" % (report["ue"], report["ee"]))
    if "queries" in report:
        q = report["queries"]
        out.write("queries: total=%d eval=%d cut=%d\n" % (q["total"], q["eval"], q["cut"]))
    if "equilibrium" in report:
        e = report["equilibrium"]
        line = "equilibrium: %s" % _plain(e["is_equilibrium"])
        if e.get("condition"):
            line += " (%s, deviating agent %s)" % (e["condition"], e["deviating_agent"])
        out.write(line + "\n")


def _plain(value):
    if value is True:
        return "true"
    if value is False:
        return "false"
    return str(value)


def _check_expectations(args, report):
    failed = []
    for key in ("proportional", "envy-free", "equitable", "non-wasteful"):
        flag = getattr(args, "expect_" + key.replace("-", "_"), False)
        if flag and not report["criteria"][key]:
            failed.append(key)
    if getattr(args, "expect_equilibrium", False) and not report.get(
        "equilibrium", {}
    ).get("is_equilibrium", False):
        failed.append("equilibrium")
    for name in failed:
        print("expectation failed: %s" % name, file=sys.stderr)
    return 1 if failed else 0


# ----------------------------------------------------------------------
# subcommands


def cmd_run(args):
    scenario = _read_scenario(args)
    name = args.mechanism
    arity = FIXED_ARITY.get(name)
    if arity is not None and len(scenario) != arity:
        raise ArityMismatch(
            "%s needs exactly %d agents, scenario has %d" % (name, arity, len(scenario))
        )
    transcript = None
    if name in QUERY_MECHANISMS:
        result = QUERY_MECHANISMS[name](sincere_oracles(scenario.valuations))
        allocation, transcript = result.allocation, result.transcript
    else:
        preferences = _preferences(scenario)
        profile = _profile(scenario, preferences)
        if name == "lex-order":
            allocation = lex_order(profile, AgentOrder(range(len(profile))))
        elif name == "length-game":
            allocation = length_game(profile)
        else:
            allocation = min_average_mechanism(preferences)
    report = _report(scenario, allocation, transcript=transcript)
    _emit_report(report, args.format, sys.stdout)
    return _check_expectations(args, report)


def cmd_audit(args):
    scenario = _read_scenario(args)
    if scenario.allocation is None:
        raise ParseError("audit needs an allocation in the scenario")
    report = _report(scenario, scenario.allocation)
    _emit_report(report, args.format, sys.stdout)
    return _check_expectations(args, report)


def cmd_equilibrium(args):
    scenario = _read_scenario(args)
    preferences = _preferences(scenario)
    reduced = reduce_profile(_profile(scenario, preferences))
    verdict = is_equilibrium(preferences, reduced)
    equilibrium = {
        "is_equilibrium": verdict.is_equilibrium,
        "condition": None,
        "deviating_agent": None,
        "witness": None,
    }
    if not verdict.is_equilibrium:
        violation = verdict.violated_condition
        equilibrium["deviating_agent"] = scenario.ids[verdict.deviating_agent]
        equilibrium["witness"] = region_pairs(violation.witness)
        if isinstance(violation, UnallocatedValuedCake):
            equilibrium["condition"] = "unclaimed-valued-cake"
        else:
            equilibrium["condition"] = "length-order"
            equilibrium["claimer"] = scenario.ids[violation.claimer]
    allocation = Allocation(list(reduced.profile))
    report = _report(scenario, allocation, equilibrium=equilibrium)
    _emit_report(report, args.format, sys.stdout)
    return _check_expectations(args, report)


def cmd_optimal(args):
    scenario = _read_scenario(args)
    trace = sys.stderr if args.verbose_lp else None
    if args.criterion is None:
        allocation = utilitarian_optimal(scenario.valuations)
    else:
        try:
            _, allocation = max_ue(scenario.valuations, args.criterion, trace)
        except ValueError as error:
            raise UnsupportedValuationClass(str(error))
    report = _report(scenario, allocation)
    _emit_report(report, args.format, sys.stdout)
    return _check_expectations(args, report)


def cmd_pof(args):
    scenario = _read_scenario(args)
    trace = sys.stderr if args.verbose_lp else None
    try:
        top, _ = max_ue(scenario.valuations, None, trace)
        held, _ = max_ue(scenario.valuations, args.criterion, trace)
    except ValueError as error:
        raise UnsupportedValuationClass(str(error))
    row = {
        "instance": args.scenario or "stdin",
        "n": len(scenario),
        "ue_optimal": str(top),
        "ue_constrained": str(held),
        "ratio": str(top / held),
    }
    if args.format == "json":
        sys.stdout.write(json.dumps(row, indent=2, sort_keys=True) + "\n")
    elif args.format == "table":
        for key in ("instance", "n", "ue_optimal", "ue_constrained", "ratio"):
            sys.stdout.write("%s: %s\n" % (key, row[key]))
    else:
        sys.stdout.write("instance,n,ue_optimal,ue_constrained,ratio\n")
        sys.stdout.write(
            "%s,%d,%s,%s,%s\n"
            % (row["instance"], row["n"], row["ue_optimal"], row["ue_constrained"], row["ratio"])
        )
    return 0


def _parse_n_range(text):
    if ".." in text:
        lo, hi = text.split("..", 1)
        return range(int(lo), int(hi) + 1)
    value = int(text)
    return range(value, value + 1)


def cmd_bench(args):
    if args.mechanism not in QUERY_MECHANISMS:
        raise UnsupportedValuationClass(
            "bench covers the query protocols: %s" % ", ".join(sorted(QUERY_MECHANISMS))
        )
    mechanism = QUERY_MECHANISMS[args.mechanism]
    arity = FIXED_ARITY.get(args.mechanism)
    rows = []
    for n in _parse_n_range(args.n_range):
        if arity is not None and n != arity:
            continue
        agents = random_uniform_agents(args.seed * 1000003 + n, n)
        transcript = mechanism(sincere_oracles(agents)).transcript
        rows.append((n, transcript.total, transcript.eval_count, transcript.cut_count))
    if args.format == "json":
        data = [
            {"n": n, "total": total, "eval": evals, "cut": cuts}
            for n, total, evals, cuts in rows
        ]
        sys.stdout.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write("n,total,eval,cut\n")
        for n, total, evals, cuts in rows:
            sys.stdout.write("%d,%d,%d,%d\n" % (n, total, evals, cuts))
    return 0


# ----------------------------------------------------------------------
# wiring


def _add_scenario_argument(parser):
    parser.add_argument(
        "scenario",
        nargs="?",
        help="scenario file path; omit or '-' to read standard input",
    )


def _add_report_arguments(parser, default_format="json"):
    parser.add_argument(
        "--format", choices=("json", "csv", "table"), default=default_format
    )
    for criterion in ("proportional", "envy-free", "equitable", "non-wasteful"):
        parser.add_argument(
            "--expect-" + criterion,
            action="store_true",
            dest="expect_" + criterion.replace("-", "_"),
            help="exit 1 unless the produced allocation is %s" % criterion,
        )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fairslice",
        description="Exact cake cutting: mechanisms, audits, equilibria, optima.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="run a mechanism on a scenario")
    _add_scenario_argument(run)
    run.add_argument("--mechanism", choices=MECHANISMS, required=True)
    _add_report_arguments(run)
    run.set_defaults(func=cmd_run)

    audit = commands.add_parser("audit", help="audit the scenario's allocation")
    _add_scenario_argument(audit)
    _add_report_arguments(audit)
    audit.set_defaults(func=cmd_audit)

    equilibrium = commands.add_parser(
        "equilibrium", help="certify the scenario's profile as an equilibrium"
    )
    _add_scenario_argument(equilibrium)
    _add_report_arguments(equilibrium)
    equilibrium.add_argument(
        "--expect-equilibrium",
        action="store_true",
        help="exit 1 unless the profile is a certified equilibrium",
    )
    equilibrium.set_defaults(func=cmd_equilibrium)

    optimal = commands.add_parser("optimal", help="compute a welfare optimum")
    _add_scenario_argument(optimal)
    optimal.add_argument("--criterion", choices=CRITERIA)
    optimal.add_argument("--verbose-lp", action="store_true")
    _add_report_arguments(optimal)
    optimal.set_defaults(func=cmd_optimal)

    pof = commands.add_parser("pof", help="price of a fairness criterion")
    _add_scenario_argument(pof)
    pof.add_argument("--criterion", choices=CRITERIA, required=True)
    pof.add_argument("--verbose-lp", action="store_true")
    pof.add_argument("--format", choices=("json", "csv", "table"), default="csv")
    pof.set_defaults(func=cmd_pof)

    bench = commands.add_parser("bench", help="query-count sweep over n")
    bench.add_argument("--mechanism", choices=MECHANISMS, required=True)
    bench.add_argument("--n-range", required=True, help="like 2..128, or a single n")
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--format", choices=("json", "csv", "table"), default="csv")
    bench.set_defaults(func=cmd_bench)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ArityMismatch, UnsupportedValuationClass, NotWellBehaved) as error:
        print("error: %s" % error, file=sys.stderr)
        return 2
    except OSError as error:
        print("error: %s" % error, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
