"""CSV rendering and all-or-nothing file output."""

from __future__ import annotations

import csv
import io
import math
import os
import tempfile


def format_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        return format(v, ".17g")
    if v is None:
        return ""
    if hasattr(v, "dtype"):
        return format_value(v.item())
    return str(v)


def render_csv(comments, header, rows) -> str:
    """``#`` comment block, header row, then rows; LF line endings."""
    buf = io.StringIO()
    for line in comments:
        buf.write(f"# {line}\n" if line else "#\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([format_value(v) for v in row])
    return buf.getvalue()


def write_files_atomic(files: dict) -> list[str]:
    """Write ``{path: text}`` so that either every file appears or none does.

    Each file is first written to a temporary sibling and then renamed into
    place once all of them were written successfully.
    """
    staged = []
    try:
        for path, text in files.items():
            directory = os.path.dirname(os.path.abspath(path))
            os.makedirs(directory, exist_ok=True)
            fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=directory)
            staged.append((tmp, path))
            with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
    except BaseException:
        for tmp, _ in staged:
            if os.path.exists(tmp):
                os.unlink(tmp)
        raise
    for tmp, path in staged:
        os.replace(tmp, path)
    return [path for _, path in staged]
