"""abcprop command-line interface."""

from __future__ import annotations

import sys
from datetime import datetime

try:
    from datetime import UTC
except ImportError:  # Python < 3.11
    from datetime import timezone

    UTC = timezone.utc
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        def __str__(self) -> str:
            return str.__str__(self)

        @staticmethod
        def _generate_next_value_(name, start, count, last_values):
            return name.lower()
from fractions import Fraction
from pathlib import Path
from typing import Any

import click
import pandas as pd
import typer

from abcprop.core.audit.report import approval_score, check_ejr, empirical_prop_degree
from abcprop.core.bounds.phragmen import maxphragmen_upper, phragmen_lower, phragmen_upper
from abcprop.core.bounds.seqpav import seqpav_degree_from_h
from abcprop.core.bounds.thiele import (
    thiele_efficiency_lower,
    thiele_efficiency_upper,
    thiele_guarantee,
    thiele_upper,
)
from abcprop.core.bounds.types import EfficiencyReport, GuaranteeReport, report_frame
from abcprop.core.config import AppConfig, default_config, dump_config_to_yaml, load_config
from abcprop.core.gen.evaluate import evaluate_instance
from abcprop.core.gen.instance import InstanceSpec
from abcprop.core.gen.party import gen_party_list, party_blocks
from abcprop.core.gen.phragmen import gen_maxphragmen_tie, gen_phragmen_hard
from abcprop.core.gen.seqpav import gen_seqpav_hard
from abcprop.core.gen.thiele import gen_efficiency_witness, gen_thiele_upper_witness
from abcprop.core.lp.reporting import solution_frame, write_lp_format
from abcprop.core.lp.seqpav import h_seqpav, lp_to_profile
from abcprop.core.model.io import read_profile_file, write_profile, write_profile_file
from abcprop.core.model.profile import ApprovalProfile, Committee
from abcprop.core.research.reproduction import (
    DEFAULT_FAMILIES,
    CurveSettings,
    curve,
    parse_k_range,
    render_frame,
    seqpav_table,
    write_artifacts,
)
from abcprop.core.rules.apportionment import dhondt_apportionment, seats_by_block
from abcprop.core.rules.phragmen import max_phragmen, seq_phragmen_credit, seq_phragmen_load
from abcprop.core.rules.sequential import seq_thiele
from abcprop.core.rules.thiele import thiele_exact, thiele_score
from abcprop.core.rules.ties import TieBreak
from abcprop.core.rules.trace import ElectionTrace
from abcprop.core.rules.weights import LambdaWeights, parse_lambda
from abcprop.core.utils.env import load_dotenv
from abcprop.core.utils.errors import InvalidInputError, LpError, exit_code_for_exception
from abcprop.core.utils.logging import configure_logging, get_logger
from abcprop.core.utils.manifest import RunManifestWriter
from abcprop.core.utils.numbers import format_value, parse_rational

app = typer.Typer(help="abcprop CLI", no_args_is_help=True)

RULES: tuple[str, ...] = (
    "pav",
    "thiele",
    "seq-pav",
    "seq-thiele",
    "seq-phragmen",
    "seq-phragmen-load",
    "max-phragmen",
)
BOUND_RULES: tuple[str, ...] = ("phragmen", "max-phragmen", "thiele", "seq-pav")
FAMILIES: tuple[str, ...] = (
    "phragmen-hard",
    "maxphragmen-tie",
    "thiele-upper",
    "efficiency",
    "seqpav-hard",
    "party-list",
)


class OutputFormat(StrEnum):
    TEXT = "text"
    CSV = "csv"


CONFIG_OPTION = typer.Option(
    None,
    "--config",
    file_okay=True,
    dir_okay=False,
    resolve_path=True,
    help="Path to YAML configuration file.",
)
FORMAT_OPTION = typer.Option(OutputFormat.TEXT, "--format", help="Output format.")
EXACT_OPTION = typer.Option(False, "--exact", help="Print rationals as p/q.")
PROFILE_OPTION = typer.Option(
    ...,
    "--file",
    exists=True,
    file_okay=True,
    dir_okay=False,
    resolve_path=True,
    help="Profile file ('m=<int>' header, '<weight>: <idx> ...' lines).",
)
K_OPTION = typer.Option(..., "-k", "--k", min=1, help="Committee size.")
ELL_OPTION = typer.Option(1, "-l", "--ell", min=1, help="Group largeness.")
LAMBDA_OPTION = typer.Option(
    "pav", "--lambda", help="Thiele weights: pav, sqrt, power:P or custom:v1,v2,..."
)
BACKEND_OPTION = typer.Option(None, "--backend", help="LP backend: auto, simplex or highs.")
OUTPUT_DIR_OPTION = typer.Option(
    None,
    "--output-dir",
    file_okay=False,
    dir_okay=True,
    resolve_path=True,
    help="Artifact directory (defaults to output.artifacts_dir).",
)

ELECT_RULE_OPTION = typer.Option("pav", "--rule", help=f"One of {', '.join(RULES)}.")
ELECT_TIE_OPTION = typer.Option(
    None, "--tie-break", help="lexmin, lexmax or adversarial (defaults to rules.tie_break)."
)
ELECT_TARGET_OPTION = typer.Option(
    None, "--target", help="Comma-separated committee favoured by adversarial tie-breaking."
)
ELECT_TRACE_OPTION = typer.Option(False, "--trace", help="Print the sequential trace.")
ELECT_PARTY_SIZE_OPTION = typer.Option(
    None, "--party-size", min=1, help="Report seats per consecutive candidate block."
)

AUDIT_COMMITTEE_OPTION = typer.Option(..., "--committee", help="Comma-separated committee.")
AUDIT_QUERY_OPTION = typer.Option(
    None, "--query", help="ELL:G guarantee query; repeatable (default ell:ell-1 for all ell)."
)
AUDIT_EJR_OPTION = typer.Option(True, "--ejr/--no-ejr", help="Also run the EJR check.")
AUDIT_ALPHA_OPTION = typer.Option("1", "--alpha", help="EJR approximation factor.")
AUDIT_SEED_OPTION = typer.Option(
    None, "--seed-groups", min=1, help="Anchor search bound (defaults to audit.seed_groups)."
)

BOUNDS_RULE_OPTION = typer.Option(..., "--rule", help=f"One of {', '.join(BOUND_RULES)}.")
BOUNDS_SIDE_OPTION = typer.Option(True, "--lower/--upper", help="Lower or upper bound.")
BOUNDS_K_OPTION = typer.Option(None, "-k", "--k", min=1, help="Committee size.")
BOUNDS_EFFICIENCY_OPTION = typer.Option(
    False, "--efficiency", help="Utilitarian efficiency bound instead of proportionality."
)
BOUNDS_H_OPTION = typer.Option(None, "--h", help="Normalized last-step gain for seq-pav.")

LP_KIND_OPTION = typer.Option(
    "exact", "--kind", help="exact, relaxed, abstract or abstract-submodular."
)
LP_WRITE_OPTION = typer.Option(
    None, "--write-lp", dir_okay=False, resolve_path=True, help="Write the LP in CPLEX format."
)
LP_PROFILE_OPTION = typer.Option(
    None,
    "--profile-out",
    dir_okay=False,
    resolve_path=True,
    help="Write the worst-case profile encoded by the exact LP solution.",
)

GEN_FAMILY_OPTION = typer.Option(..., "--family", help=f"One of {', '.join(FAMILIES)}.")
GEN_K_OPTION = typer.Option(None, "-k", "--k", min=1, help="Committee size.")
GEN_N_OPTION = typer.Option(None, "-n", "--n", min=1, help="Number of voters.")
GEN_BLOCK_OPTION = typer.Option("1", "--block", help="Voters per block.")
GEN_COPIES_OPTION = typer.Option(2, "--copies", min=1, help="Copies L for seqpav-hard.")
GEN_BASE_OPTION = typer.Option(
    None,
    "--base",
    exists=True,
    dir_okay=False,
    resolve_path=True,
    help="Base profile for seqpav-hard (defaults to the exact-LP profile at -k).",
)
GEN_PARTIES_OPTION = typer.Option(
    None, "--parties", help="Comma-separated party weights for party-list."
)
GEN_PARTY_SIZE_OPTION = typer.Option(None, "--party-size", min=1, help="Candidates per party.")
GEN_OUTPUT_OPTION = typer.Option(
    None, "--output", dir_okay=False, resolve_path=True, help="Write the profile file here."
)
GEN_CHECK_OPTION = typer.Option(
    False, "--check", help="Run the targeted rule with adversarial tie-breaking."
)

TABLE_KIND_OPTION = typer.Option(
    ..., "--kind", help="seqpav-exact, seqpav-relaxed, abstract-f or abstract-f-submodular."
)
TABLE_RANGE_OPTION = typer.Option("1:12", "--k-range", help="a:b, a:b:step or a comma list.")

CURVE_KIND_OPTION = typer.Option(
    ...,
    "--kind",
    help="seqpav-relaxed-vs-k, phragmen-upper-vs-k, thiele-guarantee-vs-ell or efficiency-vs-k.",
)
CURVE_RANGE_OPTION = typer.Option("1:20", "--range", help="x grid: a:b, a:b:step or a list.")
CURVE_K_OPTION = typer.Option(10, "-k", "--k", min=1, help="Committee size for ell curves.")
CURVE_LAMBDA_OPTION = typer.Option(
    None, "--lambda", help="Thiele weights; repeatable (default pav, sqrt, power:2/3, power:2)."
)


@app.callback()
def callback() -> None:
    """Approval-based committee elections: rules, audits, bounds, LPs and worst cases."""


def _handle_cli_exception(
    logger_name: str,
    context: str,
    exc: Exception,
    manifest_writer: RunManifestWriter | None = None,
) -> None:
    """Write failure manifest (if available), log diagnostics, and exit with typed code."""
    logger = get_logger(logger_name)
    manifest_path: Path | None = None
    if manifest_writer is not None:
        try:
            manifest_writer.mark_failure(exc)
            manifest_path = manifest_writer.write()
        except Exception as manifest_exc:
            logger.error("Failed to write failure manifest for %s: %s", context, manifest_exc)

    logger.exception("%s failed: %s", context, exc)
    if manifest_path is not None:
        typer.echo(f"manifest={manifest_path}")
    raise typer.Exit(code=exit_code_for_exception(exc)) from None


def _app_config(config_path: Path | None) -> AppConfig:
    return load_config(config_path) if config_path is not None else default_config()


def _parse_candidates(text: str) -> list[int]:
    try:
        return [int(token) for token in text.replace(" ", ",").split(",") if token.strip()]
    except ValueError as exc:
        raise InvalidInputError(f"invalid candidate list '{text}'.") from exc


def _parse_query(text: str) -> tuple[int, Fraction]:
    ell_text, separator, threshold_text = text.partition(":")
    if not separator:
        raise InvalidInputError(f"query must look like ELL:G, got '{text}'.")
    try:
        return int(ell_text), parse_rational(threshold_text)
    except ValueError as exc:
        raise InvalidInputError(f"invalid query '{text}': {exc}") from exc


def _echo_frame(frame: pd.DataFrame) -> None:
    typer.echo(frame.to_csv(index=False, lineterminator="\n"), nl=False)


def _echo_members(key: str, members: Committee | tuple[int, ...]) -> None:
    typer.echo(f"{key}={' '.join(str(c) for c in sorted(members))}")


def _trace_frame(trace: ElectionTrace, exact: bool, digits: int) -> pd.DataFrame:
    rows = [
        {
            "step": index,
            "candidate": step.chosen,
            "value": format_value(step.value, exact, digits),
            "tie_set": " ".join(str(c) for c in step.tie_set),
        }
        for index, step in enumerate(trace.steps, start=1)
    ]
    return pd.DataFrame(rows, columns=["step", "candidate", "value", "tie_set"])


def _elect(
    profile: ApprovalProfile,
    rule: str,
    weights: LambdaWeights,
    k: int,
    tie_break: TieBreak,
    budget: int,
) -> tuple[Committee, ElectionTrace | None, dict[str, Any]]:
    if rule in ("pav", "thiele"):
        weights = LambdaWeights.pav() if rule == "pav" else weights
        outcome = thiele_exact(profile, weights, k, tie_break, budget)
        return outcome.committee, None, {"score": outcome.score}
    if rule in ("seq-pav", "seq-thiele"):
        weights = LambdaWeights.pav() if rule == "seq-pav" else weights
        committee, trace = seq_thiele(profile, weights, k, tie_break)
        return committee, trace, {"score": thiele_score(profile, weights, committee)}
    if rule == "seq-phragmen":
        committee, trace = seq_phragmen_credit(profile, k, tie_break)
        return committee, trace, {}
    if rule == "seq-phragmen-load":
        committee, trace = seq_phragmen_load(profile, k, tie_break)
        return committee, trace, {}
    if rule == "max-phragmen":
        outcome = max_phragmen(profile, k, budget)
        committee = tie_break.choose_committee(outcome.committees)
        return committee, None, {"max_load": outcome.max_load, "optimal": len(outcome.committees)}
    raise InvalidInputError(f"unknown rule '{rule}'; expected one of {', '.join(RULES)}.")


@app.command("elect")
def elect(
    file: Path = PROFILE_OPTION,
    k: int = K_OPTION,
    rule: str = ELECT_RULE_OPTION,
    lambda_spec: str = LAMBDA_OPTION,
    tie_break: str | None = ELECT_TIE_OPTION,
    target: str | None = ELECT_TARGET_OPTION,
    trace: bool = ELECT_TRACE_OPTION,
    party_size: int | None = ELECT_PARTY_SIZE_OPTION,
    output_format: OutputFormat = FORMAT_OPTION,
    exact: bool = EXACT_OPTION,
    config: Path | None = CONFIG_OPTION,
) -> None:
    """Run a committee election rule on a profile file."""
    load_dotenv(Path(".env"))
    configure_logging()
    logger_name = __name__

    try:
        app_config = _app_config(config)
        digits = app_config.output.significant_digits
        profile = read_profile_file(file)
        policy = TieBreak.from_name(
            tie_break or app_config.rules.tie_break, _parse_candidates(target or "")
        )
        committee, election_trace, details = _elect(
            profile, rule, parse_lambda(lambda_spec), k, policy, app_config.enumeration.budget
        )
        seats: tuple[int, ...] | None = None
        if party_size is not None:
            seats = seats_by_block(
                committee, party_blocks(profile.num_candidates // party_size, party_size)
            )
    except Exception as exc:
        _handle_cli_exception(logger_name=logger_name, context="Elect command", exc=exc)

    if output_format is OutputFormat.CSV:
        if election_trace is not None:
            _echo_frame(_trace_frame(election_trace, exact, digits))
        else:
            _echo_frame(pd.DataFrame({"candidate": sorted(committee)}))
        return

    typer.echo(f"rule={rule}")
    typer.echo(f"k={k}")
    _echo_members("committee", committee)
    typer.echo(f"approval_score={format_value(approval_score(profile, committee), exact, digits)}")
    for key, value in details.items():
        typer.echo(f"{key}={format_value(value, exact, digits)}")
    if seats is not None:
        typer.echo(f"seats={' '.join(str(count) for count in seats)}")
    if trace and election_trace is not None:
        for line in election_trace.to_log_lines(exact=exact):
            typer.echo(f"trace={line}")


@app.command("audit")
def audit(
    file: Path = PROFILE_OPTION,
    k: int = K_OPTION,
    committee: str = AUDIT_COMMITTEE_OPTION,
    query: list[str] | None = AUDIT_QUERY_OPTION,
    ejr: bool = AUDIT_EJR_OPTION,
    alpha: str = AUDIT_ALPHA_OPTION,
    seed_groups: int | None = AUDIT_SEED_OPTION,
    output_format: OutputFormat = FORMAT_OPTION,
    exact: bool = EXACT_OPTION,
    config: Path | None = CONFIG_OPTION,
) -> None:
    """Audit a committee for proportionality guarantees, EJR and efficiency."""
    load_dotenv(Path(".env"))
    configure_logging()
    logger_name = __name__

    try:
        app_config = _app_config(config)
        digits = app_config.output.significant_digits
        seeds = seed_groups or app_config.audit.seed_groups
        profile = read_profile_file(file)
        members = _parse_candidates(committee)
        queries = (
            [_parse_query(item) for item in query]
            if query
            else [(ell, Fraction(ell - 1)) for ell in range(1, k + 1)]
        )
        report = empirical_prop_degree(profile, members, k, queries, seed_groups=seeds)
        ejr_result = (
            check_ejr(profile, members, k, parse_rational(alpha), seed_groups=seeds)
            if ejr
            else None
        )
    except Exception as exc:
        _handle_cli_exception(logger_name=logger_name, context="Audit command", exc=exc)

    if output_format is OutputFormat.CSV:
        typer.echo(report.to_csv(exact=exact, digits=digits), nl=False)
        return

    _echo_members("committee", report.committee)
    typer.echo(f"utilitarian_ratio={format_value(report.utilitarian_ratio, exact, digits)}")
    typer.echo(f"groups_inspected={len(report.records)}")
    for (ell, threshold), minimum in report.query_minimums.items():
        rendered = "" if minimum is None else format_value(minimum, exact, digits)
        typer.echo(f"min_satisfaction[ell={ell},g={format_value(threshold, True)}]={rendered}")
    typer.echo(f"violations={sum(record.violated for record in report.records)}")
    worst = report.worst_violation
    if worst is not None and worst.worst_satisfaction is not None:
        typer.echo(
            f"worst_violation=ell={worst.ell},"
            f"threshold={format_value(worst.threshold, exact, digits)},"
            f"satisfaction={format_value(worst.worst_satisfaction, exact, digits)}"
        )
    if ejr_result is not None:
        typer.echo(f"ejr={'satisfied' if ejr_result.satisfied else 'violated'}")
        if not ejr_result.satisfied and ejr_result.common is not None:
            typer.echo(f"ejr_ell={ejr_result.ell}")
            _echo_members("ejr_common", ejr_result.common)


def _bound_reports(
    rule: str,
    lower: bool,
    efficiency: bool,
    ell: int,
    k: int | None,
    weights: LambdaWeights,
    h: str | None,
    app_config: AppConfig,
) -> list[GuaranteeReport | EfficiencyReport]:
    tolerance = app_config.bounds.tolerance
    iterations = app_config.bounds.max_iterations

    def need_k() -> int:
        if k is None:
            raise InvalidInputError(f"rule '{rule}' needs -k.")
        return k

    if rule == "thiele" and efficiency:
        solver = thiele_efficiency_lower if lower else thiele_efficiency_upper
        return [solver(weights, need_k(), tolerance, iterations)]
    if efficiency:
        raise InvalidInputError("--efficiency is only available for the thiele rule.")
    if rule == "phragmen":
        return [phragmen_lower(ell) if lower else phragmen_upper(ell, need_k())]
    if rule == "max-phragmen":
        if lower:
            raise InvalidInputError("max-phragmen has no lower bound; use --upper.")
        return [maxphragmen_upper(ell)]
    if rule == "thiele":
        solver = thiele_guarantee if lower else thiele_upper
        return [solver(weights, ell, need_k(), tolerance, iterations)]
    if rule == "seq-pav":
        if h is None:
            raise InvalidInputError("rule 'seq-pav' needs --h (see the lp command).")
        low, high = seqpav_degree_from_h(ell, need_k(), parse_rational(h))
        return [low if lower else high]
    raise InvalidInputError(f"unknown rule '{rule}'; expected one of {', '.join(BOUND_RULES)}.")


@app.command("bounds")
def bounds(
    rule: str = BOUNDS_RULE_OPTION,
    lower: bool = BOUNDS_SIDE_OPTION,
    ell: int = ELL_OPTION,
    k: int | None = BOUNDS_K_OPTION,
    lambda_spec: str = LAMBDA_OPTION,
    efficiency: bool = BOUNDS_EFFICIENCY_OPTION,
    h: str | None = BOUNDS_H_OPTION,
    output_format: OutputFormat = FORMAT_OPTION,
    exact: bool = EXACT_OPTION,
    config: Path | None = CONFIG_OPTION,
) -> None:
    """Evaluate an analytic proportionality or efficiency bound."""
    load_dotenv(Path(".env"))
    configure_logging()
    logger_name = __name__

    try:
        app_config = _app_config(config)
        digits = app_config.output.significant_digits
        reports = _bound_reports(
            rule, lower, efficiency, ell, k, parse_lambda(lambda_spec), h, app_config
        )
    except Exception as exc:
        _handle_cli_exception(logger_name=logger_name, context="Bounds command", exc=exc)

    frame = report_frame(reports, exact=exact, digits=digits)
    if output_format is OutputFormat.CSV:
        _echo_frame(frame)
        return
    for row in frame.to_dict(orient="records"):
        for key, value in row.items():
            if value != "":
                typer.echo(f"{key}={value}")


@app.command("lp")
def lp(
    k: int = K_OPTION,
    kind: str = LP_KIND_OPTION,
    ell: int = ELL_OPTION,
    backend: str | None = BACKEND_OPTION,
    write_lp: Path | None = LP_WRITE_OPTION,
    profile_out: Path | None = LP_PROFILE_OPTION,
    output_format: OutputFormat = FORMAT_OPTION,
    exact: bool = EXACT_OPTION,
    config: Path | None = CONFIG_OPTION,
) -> None:
    """Solve a worst-case LP for sequential PAV and report the implied degree bounds."""
    load_dotenv(Path(".env"))
    configure_logging()
    logger_name = __name__

    try:
        app_config = _app_config(config)
        digits = app_config.output.significant_digits
        estimate = h_seqpav(k, kind, ell, app_config.lp, backend)
        if write_lp is not None:
            write_lp_format(estimate.problem, write_lp)
        if profile_out is not None:
            if kind != "exact":
                raise LpError("--profile-out needs --kind exact.")
            worst = lp_to_profile(
                estimate.problem, estimate.solution, app_config.lp.max_denominator
            )
            write_profile_file(profile_out, worst)
    except Exception as exc:
        _handle_cli_exception(logger_name=logger_name, context="LP command", exc=exc)

    if output_format is OutputFormat.CSV:
        _echo_frame(solution_frame(estimate.problem, estimate.solution, exact, digits))
        return

    solution = estimate.solution
    typer.echo(f"kind={kind}")
    typer.echo(f"k={k}")
    typer.echo(f"variables={estimate.problem.num_variables}")
    typer.echo(f"constraints={estimate.problem.num_constraints}")
    typer.echo(f"backend={solution.backend}")
    typer.echo(f"status={solution.status}")
    typer.echo(f"h={format_value(estimate.h, exact, digits)}")
    typer.echo(f"coefficient={format_value(estimate.coefficient, False, digits)}")
    typer.echo(f"lower={format_value(estimate.lower.value, exact, digits)}")
    typer.echo(f"upper={format_value(estimate.upper.value, exact, digits)}")
    typer.echo(f"max_violation={format_value(solution.max_violation, False, digits)}")
    if write_lp is not None:
        typer.echo(f"lp_file={write_lp}")
    if profile_out is not None:
        typer.echo(f"profile={profile_out}")


def _generate(
    family: str,
    ell: int,
    k: int | None,
    n: int | None,
    weights: LambdaWeights,
    block: Fraction,
    copies: int,
    base: Path | None,
    app_config: AppConfig,
) -> tuple[ApprovalProfile, InstanceSpec]:
    def need(value: int | None, flag: str) -> int:
        if value is None:
            raise InvalidInputError(f"family '{family}' needs {flag}.")
        return value

    max_denominator = app_config.lp.max_denominator
    if family == "phragmen-hard":
        return gen_phragmen_hard(ell, need(k, "-k"))
    if family == "maxphragmen-tie":
        return gen_maxphragmen_tie(need(k, "-k"), block, ell)
    if family == "thiele-upper":
        return gen_thiele_upper_witness(weights, ell, need(k, "-k"), need(n, "-n"), max_denominator)
    if family == "efficiency":
        return gen_efficiency_witness(weights, need(k, "-k"), block, max_denominator)
    if family == "seqpav-hard":
        base_k = need(k, "-k")
        if base is not None:
            base_profile = read_profile_file(base)
        else:
            estimate = h_seqpav(base_k, "exact", settings=app_config.lp)
            base_profile = lp_to_profile(estimate.problem, estimate.solution, max_denominator)
        return gen_seqpav_hard(base_profile, base_k, copies, ell)
    raise InvalidInputError(f"unknown family '{family}'; expected one of {', '.join(FAMILIES)}.")


@app.command("gen")
def gen(
    family: str = GEN_FAMILY_OPTION,
    ell: int = ELL_OPTION,
    k: int | None = GEN_K_OPTION,
    n: int | None = GEN_N_OPTION,
    lambda_spec: str = LAMBDA_OPTION,
    block: str = GEN_BLOCK_OPTION,
    copies: int = GEN_COPIES_OPTION,
    base: Path | None = GEN_BASE_OPTION,
    parties: str | None = GEN_PARTIES_OPTION,
    party_size: int | None = GEN_PARTY_SIZE_OPTION,
    output: Path | None = GEN_OUTPUT_OPTION,
    check: bool = GEN_CHECK_OPTION,
    exact: bool = EXACT_OPTION,
    config: Path | None = CONFIG_OPTION,
) -> None:
    """Generate a worst-case instance and optionally replay its targeted rule."""
    load_dotenv(Path(".env"))
    configure_logging()
    logger_name = __name__
    summary: dict[str, str] = {}
    extra: dict[str, str] = {}

    try:
        app_config = _app_config(config)
        digits = app_config.output.significant_digits
        weights = parse_lambda(lambda_spec)
        if family == "party-list":
            if not parties or party_size is None:
                raise InvalidInputError("family 'party-list' needs --parties and --party-size.")
            party_weights = [parse_rational(item) for item in parties.split(",")]
            profile = gen_party_list(party_weights, party_size)
            summary = {
                "family": family,
                "n": format_value(profile.total_weight, exact, digits),
                "m": str(profile.num_candidates),
            }
            if k is not None:
                seats = dhondt_apportionment(party_weights, k)
                extra["dhondt_seats"] = " ".join(str(count) for count in seats)
        else:
            profile, spec = _generate(
                family, ell, k, n, weights, parse_rational(block), copies, base, app_config
            )
            spec.check(profile)
            summary = spec.summary(exact=exact, digits=digits)
            if check:
                result = evaluate_instance(
                    profile, spec, weights, app_config.enumeration.budget
                )
                extra["rule"] = result.rule
                extra["committee"] = " ".join(str(c) for c in sorted(result.committee))
                if result.satisfaction is not None:
                    extra["satisfaction"] = format_value(result.satisfaction, exact, digits)
                extra["utilitarian_ratio"] = format_value(result.utilitarian, exact, digits)
        if output is not None:
            write_profile_file(output, profile)
    except Exception as exc:
        _handle_cli_exception(logger_name=logger_name, context="Gen command", exc=exc)

    for key, value in {**summary, **extra}.items():
        typer.echo(f"{key}={value}")
    if output is not None:
        typer.echo(f"profile={output}")
    else:
        typer.echo("profile:")
        typer.echo(write_profile(profile))


def _run_id(kind: str) -> str:
    return f"{kind}-{datetime.now(tz=UTC):%Y%m%dT%H%M%S}"


def _artifact_dir(output_dir: Path | None, app_config: AppConfig) -> Path:
    return output_dir if output_dir is not None else app_config.output.artifacts_dir


def _echo_artifacts(
    frame: pd.DataFrame,
    output_format: OutputFormat,
    exact: bool,
    digits: int,
    paths: tuple[Path, Path, Path],
) -> None:
    csv_path, summary_path, manifest_path = paths
    typer.echo(f"rows={len(frame)}")
    typer.echo(f"csv={csv_path}")
    typer.echo(f"summary={summary_path}")
    typer.echo(f"manifest={manifest_path}")
    rendered = render_frame(frame, exact, digits)
    if output_format is OutputFormat.CSV:
        _echo_frame(rendered)
        return
    for row in rendered.to_dict(orient="records"):
        typer.echo(" ".join(f"{key}={value}" for key, value in row.items()))


@app.command("table")
def table(
    kind: str = TABLE_KIND_OPTION,
    k_range: str = TABLE_RANGE_OPTION,
    backend: str | None = BACKEND_OPTION,
    output_dir: Path | None = OUTPUT_DIR_OPTION,
    output_format: OutputFormat = FORMAT_OPTION,
    exact: bool = EXACT_OPTION,
    config: Path | None = CONFIG_OPTION,
) -> None:
    """Reproduce a sequential-PAV LP table and compare it with the reference coefficients."""
    load_dotenv(Path(".env"))
    configure_logging()
    logger_name = __name__
    manifest_writer: RunManifestWriter | None = None

    try:
        app_config = _app_config(config)
        digits = app_config.output.significant_digits
        k_values = parse_k_range(k_range)
        artifact_dir = _artifact_dir(output_dir, app_config)
        manifest_writer = RunManifestWriter(
            output_dir=artifact_dir,
            command="table",
            run_id=_run_id(kind),
            manifest_name=f"table_{kind}_manifest.json",
        )
        manifest_writer.set_inputs(
            config_path=config, options={"kind": kind, "k_range": k_range, "exact": exact}
        )
        manifest_writer.set_context(kind, k_values, backend or app_config.lp.backend)

        frame = seqpav_table(kind, k_values, app_config.lp, backend)
        csv_path, summary_path = write_artifacts(
            frame, artifact_dir, f"table_{kind}", exact, digits
        )
        coefficients = frame["coefficient"].astype(float)
        deltas = frame["delta"].astype(float).abs().dropna()
        summary = {
            "min_coefficient": float(coefficients.min()),
            "max_coefficient": float(coefficients.max()),
        }
        if not deltas.empty:
            summary["max_abs_delta"] = float(deltas.max())
        manifest_writer.mark_success(
            summary,
            [str(csv_path), str(summary_path)],
            extra={"config_yaml": dump_config_to_yaml(app_config)},
        )
        manifest_path = manifest_writer.write()
    except Exception as exc:
        _handle_cli_exception(
            logger_name=logger_name,
            context="Table command",
            exc=exc,
            manifest_writer=manifest_writer,
        )

    typer.echo(f"kind={kind}")
    _echo_artifacts(frame, output_format, exact, digits, (csv_path, summary_path, manifest_path))


@app.command("curve")
def curve_command(
    kind: str = CURVE_KIND_OPTION,
    x_range: str = CURVE_RANGE_OPTION,
    ell: int = ELL_OPTION,
    k: int = CURVE_K_OPTION,
    lambda_specs: list[str] | None = CURVE_LAMBDA_OPTION,
    backend: str | None = BACKEND_OPTION,
    output_dir: Path | None = OUTPUT_DIR_OPTION,
    output_format: OutputFormat = FORMAT_OPTION,
    exact: bool = EXACT_OPTION,
    config: Path | None = CONFIG_OPTION,
) -> None:
    """Emit the data series behind a bound plot."""
    load_dotenv(Path(".env"))
    configure_logging()
    logger_name = __name__
    manifest_writer: RunManifestWriter | None = None

    try:
        app_config = _app_config(config)
        digits = app_config.output.significant_digits
        xs = parse_k_range(x_range)
        artifact_dir = _artifact_dir(output_dir, app_config)
        manifest_writer = RunManifestWriter(
            output_dir=artifact_dir,
            command="curve",
            run_id=_run_id(kind),
            manifest_name=f"curve_{kind}_manifest.json",
        )
        manifest_writer.set_inputs(
            config_path=config,
            options={"kind": kind, "range": x_range, "ell": ell, "k": k, "exact": exact},
        )
        manifest_writer.set_context(kind, xs, backend)

        families = (
            tuple(parse_lambda(spec) for spec in lambda_specs) if lambda_specs else DEFAULT_FAMILIES
        )
        params = CurveSettings.from_config(app_config.bounds, ell, k, families)
        frame = curve(kind, xs, params, app_config.lp, backend)
        csv_path, summary_path = write_artifacts(
            frame, artifact_dir, f"curve_{kind}", exact, digits
        )
        manifest_writer.mark_success(
            {"points": float(len(frame))},
            [str(csv_path), str(summary_path)],
            extra={
                "series": sorted(frame["series"].unique().tolist()),
                "config_yaml": dump_config_to_yaml(app_config),
            },
        )
        manifest_path = manifest_writer.write()
    except Exception as exc:
        _handle_cli_exception(
            logger_name=logger_name,
            context="Curve command",
            exc=exc,
            manifest_writer=manifest_writer,
        )

    typer.echo(f"kind={kind}")
    _echo_artifacts(frame, output_format, exact, digits, (csv_path, summary_path, manifest_path))


def main() -> None:
    """CLI entrypoint; usage errors exit with code 1."""
    try:
        code = app(standalone_mode=False)
    except click.exceptions.UsageError as exc:
        exc.show()
        sys.exit(1)
    except click.exceptions.ClickException as exc:
        exc.show()
        sys.exit(exc.exit_code)
    except click.exceptions.Abort:
        sys.exit(1)
    sys.exit(code if isinstance(code, int) else 0)


if __name__ == "__main__":
    main()
