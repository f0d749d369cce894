"""
Standard output handler module.
"""

import json
import logging
import sys
from typing import Any, Dict, List, Optional, TextIO

logger = logging.getLogger(__name__)

FORMATS = ("json", "json_pretty", "text", "dot")


def _text_lines(value: Any, prefix: str = "") -> List[str]:
    if isinstance(value, dict):
        if not value:
            return [f"{prefix}: {{}}"] if prefix else []
        lines = []
        for key, item in value.items():
            lines.extend(_text_lines(item, f"{prefix}.{key}" if prefix else str(key)))
        return lines
    if isinstance(value, list) and any(isinstance(item, (dict, list)) for item in value):
        lines = []
        for i, item in enumerate(value):
            lines.extend(_text_lines(item, f"{prefix}[{i}]"))
        return lines
    if isinstance(value, list):
        return [f"{prefix}: {', '.join(str(v) for v in value)}"]
    return [f"{prefix}: {value}"]


def render(report: Dict[str, Any], fmt: str = "json", dot: Optional[str] = None) -> str:
    """Serialize a report; ``dot`` is the graph text used by the dot format."""
    if fmt == "json":
        return json.dumps(report, sort_keys=False)
    if fmt == "json_pretty":
        return json.dumps(report, indent=2)
    if fmt == "text":
        return "\n".join(_text_lines(report))
    if fmt == "dot":
        if dot is None:
            raise ValueError("this command has no graph to render as dot")
        return dot
    raise ValueError(f"Unknown output format: {fmt}")


class StdoutOutputHandler:
    """Handler for writing reports to standard output."""

    def __init__(self, fmt: str = "json", stream: Optional[TextIO] = None):
        self.format = fmt
        self.stream = stream

    def emit(self, report: Dict[str, Any], dot: Optional[str] = None):
        stream = self.stream or sys.stdout
        stream.write(render(report, self.format, dot) + "\n")
        stream.flush()
