"""
File output handler module.
"""

import logging
import os
from typing import Any, Dict, Optional

from graphaxial.outputs.stdout import render

logger = logging.getLogger(__name__)


class FileOutputHandler:
    """Handler for writing a report to a file, replacing earlier content."""

    def __init__(self, file_path: str, fmt: str = "json"):
        self.file_path = file_path
        self.format = fmt
        directory = os.path.dirname(os.path.abspath(self.file_path))
        os.makedirs(directory, exist_ok=True)

    def emit(self, report: Dict[str, Any], dot: Optional[str] = None):
        text = render(report, self.format, dot)
        logger.info(f"Writing {self.format} output to {self.file_path}")
        with open(self.file_path, "w") as f:
            f.write(text + "\n")

    def emit_dot(self, dot: str, path: Optional[str] = None):
        """Write graph text next to the report, or to ``path``."""
        target = path or os.path.splitext(self.file_path)[0] + ".dot"
        logger.info(f"Writing dot output to {target}")
        with open(target, "w") as f:
            f.write(dot + "\n")
