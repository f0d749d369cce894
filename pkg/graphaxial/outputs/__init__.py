from typing import Optional

from graphaxial.outputs.file import FileOutputHandler
from graphaxial.outputs.stdout import FORMATS, StdoutOutputHandler


def create_output_handler(out_path: Optional[str], fmt: str = "json"):
    """File handler when a path is given, otherwise standard output."""
    if out_path:
        return FileOutputHandler(out_path, fmt)
    return StdoutOutputHandler(fmt)


__all__ = ["FORMATS", "FileOutputHandler", "StdoutOutputHandler", "create_output_handler"]
