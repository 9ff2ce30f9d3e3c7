"""Deterministic artifact writers.

Every file starts with '#' comment lines echoing the artifact version
and the fully resolved configuration, so a file is reproducible from
its own header. Floats are fixed at 10 significant digits, writes are
atomic (temp file + rename), and nothing time- or host-dependent ever
enters the output.
"""

import json
import os
import tempfile

from . import __version__

_FLOAT_FMT = "{:.9e}"


def format_float(value):
    return _FLOAT_FMT.format(float(value))


def format_value(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "none"
    if isinstance(value, str):
        return value
    if isinstance(value, (int,)):
        return str(value)
    return format_float(value)


def header_lines(command, config):
    """Comment header: version line plus one sorted key=value line each."""
    lines = [f"# polpair {command} v{__version__}"]
    for key in sorted(config):
        lines.append(f"# {key}={format_value(config[key])}")
    return lines


def atomic_write_text(path, text):
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".polpair-")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv(path, command, config, columns, rows):
    """rows: iterable of tuples of already-formatted strings."""
    lines = header_lines(command, config)
    lines.append(",".join(columns))
    lines.extend(",".join(row) for row in rows)
    atomic_write_text(path, "\n".join(lines) + "\n")


def write_json(path, payload):
    atomic_write_text(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")
