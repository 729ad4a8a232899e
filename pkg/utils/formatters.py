"""Human-readable report lines for the command-line tools."""

from typing import Dict, List, Optional

from models.schemas import BoundReport, Decision, EngineOutcome, MessageAccount


def format_outcome(outcome: EngineOutcome, account: Optional[MessageAccount] = None) -> List[str]:
    """Verdict line first (DEPENDENT / INDEPENDENT), then timing and message totals."""
    lines = [outcome.decision.value.upper()]
    verdict = outcome.verdict
    if verdict is not None:
        if verdict.decision == Decision.DEPENDENT:
            lines.append(f"clash: node={verdict.clash_node} time={verdict.clash_time:.6g}")
        else:
            lines.append(
                f"equilibrium: {verdict.equilibrium_time:.6g}  quiescence: {verdict.quiescence_time:.6g}"
            )
    if account is not None:
        lines.append(
            f"messages: {account.total_messages} ({account.total_bits} bits), "
            f"max per channel {account.max_per_channel}, "
            f"confined: {'yes' if account.confinement_ok else 'NO'}"
        )
        if account.control_messages:
            lines.append(f"control messages: {account.control_messages}")
    if outcome.witness_path:
        lines.append("witness: " + " - ".join(outcome.witness_path))
    return lines


def format_bound_report(report: BoundReport) -> List[str]:
    def mark(flag: bool) -> str:
        return "ok" if flag else "VIOLATED"

    return [
        f"{'quantity':<22}{'value':>12}  check",
        f"{'measured clash time':<22}{report.measured_clash_time:>12.6g}",
        f"{'path bound':<22}{report.path_bound:>12.6g}  {mark(report.within_path_bound)}",
        f"{'module bound':<22}{report.module_bound:>12.6g}  {mark(report.within_module_bound)}",
        f"{'longest-path bound':<22}{report.longest_path_bound:>12.6g}",
        f"{'minimal module edges':<22}{report.minimal_module_edges:>12d}",
        f"module bound <= path bound: {mark(report.module_bound_tighter)}",
    ]


def format_crosscheck_rows(rows: List[Dict]) -> List[str]:
    if not rows:
        return []
    lines = [f"{'n':>4}{'instances':>11}{'agree':>8}{'disagree':>10}"]
    for row in rows:
        lines.append(f"{row['size']:>4}{row['instances']:>11}{row['agree']:>8}{row['disagree']:>10}")
    return lines
