"""
Rendering of answers, proofs, competency reports and design tables.

Every renderer returns text; the caller decides the stream (stdout for
data). JSON output is deterministic: keys in fixed order, no timestamps.
"""

import json
import os
from typing import Any, List, Optional, Sequence

from theoria.dsl import print_literal
from theoria.engine import (
    Answer,
    CompetencyReport,
    ProofNode,
    answers_to_json,
    proof_to_json,
)
from theoria.library import DesignRow

NO_COLOR_ENV = "THEORIA_NO_COLOR"

COLORS = {
    "rule": "\033[36m",  # cyan
    "ok": "\033[32m",  # green
    "fail": "\033[31m",  # red
    "dim": "\033[90m",  # gray
    "reset": "\033[0m",
}


def color_enabled(requested: bool = True) -> bool:
    return requested and not os.environ.get(NO_COLOR_ENV)


class Style:
    """ANSI styling that collapses to plain text when disabled."""

    def __init__(self, enabled: bool = True):
        self.enabled = color_enabled(enabled)

    def __call__(self, text: str, tone: str) -> str:
        if not self.enabled:
            return text
        return f"{COLORS[tone]}{text}{COLORS['reset']}"


def dump_json(data: Any, indent: Optional[int] = None) -> str:
    return json.dumps(data, indent=indent, ensure_ascii=False)


def render_answers(answers: Sequence[Answer], style: Style) -> str:
    if not answers:
        return style("no answers", "fail")
    lines: List[str] = []
    for answer in answers:
        bindings = answer.bindings_text()
        if bindings:
            text = ", ".join(f"{name} = {value}" for name, value in bindings.items())
        else:
            text = style("true", "ok")
        lines.append(f"{text}  {style('@ ' + answer.situation, 'dim')}")
    return "\n".join(lines)


def render_answers_json(
    answers: Sequence[Answer],
    with_proofs: bool = False,
    indent: Optional[int] = None,
) -> str:
    return dump_json(answers_to_json(answers, with_proofs), indent)


def render_proof(node: ProofNode, style: Style, depth: int = 0) -> str:
    """Indented tree, conclusion first, rule name in brackets."""
    prefix = "  " * depth
    head = f"{prefix}{print_literal(node.conclusion)}  {style('@ ' + node.situation, 'dim')}"
    lines = [f"{head}  [{style(node.rule, 'rule')}]"]
    for premise in node.premises:
        lines.append(render_proof(premise, style, depth + 1))
    return "\n".join(lines)


def render_proof_json(node: ProofNode, indent: Optional[int]) -> str:
    return dump_json(proof_to_json(node), indent)


def render_competency(report: CompetencyReport, style: Style) -> str:
    lines = []
    for result in report.results:
        mark = style("PASS", "ok") if result.passed else style("FAIL", "fail")
        expected = "sat" if result.expect else "unsat"
        line = f"{mark}  {result.name}: {result.outcome} (expected {expected})"
        if result.error:
            line += f" - {result.error}"
        lines.append(line)
    lines.append(report.summary())
    return "\n".join(lines)


def competency_to_json(report: CompetencyReport) -> dict:
    return {
        "passed": report.passed,
        "questions": [
            {
                "name": r.name,
                "expect": "sat" if r.expect else "unsat",
                "outcome": r.outcome,
                "passed": r.passed,
                "answers": len(r.answers),
                "error": r.error,
            }
            for r in report.results
        ],
    }


def render_design(rows: Sequence[DesignRow], style: Style) -> str:
    headers = (
        "standard_type",
        "auditor_orientation",
        "client_preference",
        "enforces_nonopportunistic",
    )
    table = [
        (
            r.scenario.standard_type,
            r.scenario.auditor_orientation,
            r.scenario.client_preference,
            "true" if r.enforces_nonopportunistic else "false",
        )
        for r in rows
    ]
    widths = [max([len(h)] + [len(row[i]) for row in table]) for i, h in enumerate(headers)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths))]
    lines.append("  ".join("-" * w for w in widths))
    for row, source in zip(table, rows):
        cells = [c.ljust(w) for c, w in zip(row, widths)]
        if source.enforces_nonopportunistic:
            cells[-1] = style(cells[-1], "ok")
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines)


def design_to_json(rows: Sequence[DesignRow]) -> dict:
    return {
        "rows": [
            {
                "scenario": r.scenario.name,
                "standard_type": r.scenario.standard_type,
                "auditor_orientation": r.scenario.auditor_orientation,
                "client_preference": r.scenario.client_preference,
                "enforces_nonopportunistic": r.enforces_nonopportunistic,
            }
            for r in rows
        ]
    }
