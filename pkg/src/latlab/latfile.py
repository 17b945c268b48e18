"""Reading and writing the line-based ``.lat`` lattice format.

::

    lattice <name> <n>
    elem <i> lower: <ids left-to-right> upper: <ids left-to-right>
"""

from __future__ import annotations

import re
from pathlib import Path

from .diagram import Diagram, DiagramError
from .poset import DuplicateElement, PosetError

_HEADER = re.compile(r"^lattice\s+(\S+)\s+(\d+)$")
_ELEM = re.compile(r"^elem\s+(\d+)\s+lower:(.*?)\s*upper:(.*)$")


class LatFormatError(ValueError):
    def __init__(self, lineno, msg):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


def _ids(text, lineno):
    try:
        return [int(tok) for tok in text.split()]
    except ValueError:
        raise LatFormatError(lineno, f"bad element list {text.strip()!r}") from None


def parse_lat(text):
    header = None
    lower, upper, where = {}, {}, {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            m = _HEADER.match(line)
            if not m:
                raise LatFormatError(lineno, "expected 'lattice <name> <n>'")
            header = (m.group(1), int(m.group(2)))
            continue
        m = _ELEM.match(line)
        if not m:
            raise LatFormatError(lineno, "expected 'elem <i> lower: ... upper: ...'")
        i = int(m.group(1))
        if not 0 <= i < header[1]:
            raise LatFormatError(lineno, f"element id {i} outside 0..{header[1] - 1}")
        if i in where:
            err = DuplicateElement(f"element {i} already defined on line {where[i]}")
            raise LatFormatError(lineno, str(err)) from err
        where[i] = lineno
        lower[i] = _ids(m.group(2), lineno)
        upper[i] = _ids(m.group(3), lineno)
    if header is None:
        raise LatFormatError(1, "empty file")
    name, n = header
    missing = [i for i in range(n) if i not in where]
    if missing:
        raise LatFormatError(len(text.splitlines()), f"elements {missing} are not defined")
    for j in range(n):
        for i in lower[j]:
            if not 0 <= i < n or j not in upper[i]:
                line = where[i] if 0 <= i < n else where[j]
                raise LatFormatError(line, f"{i} is listed below {j} (line {where[j]}) "
                                           f"but {j} is not listed above {i}")
        for k in upper[j]:
            if not 0 <= k < n or j not in lower[k]:
                line = where[k] if 0 <= k < n else where[j]
                raise LatFormatError(line, f"{k} is listed above {j} (line {where[j]}) "
                                           f"but {j} is not listed below {k}")
    try:
        return Diagram.from_orders([lower[i] for i in range(n)], [upper[i] for i in range(n)], name)
    except (DiagramError, PosetError) as exc:
        raise LatFormatError(1, str(exc)) from exc


def read_lat(path):
    return parse_lat(Path(path).read_text(encoding="utf-8"))


def format_lat(D, name=None):
    name = name or D.name or "unnamed"
    lines = [f"lattice {name} {D.n}"]
    for i in range(D.n):
        lo = " ".join(map(str, D.lower[i]))
        up = " ".join(map(str, D.upper[i]))
        lines.append(f"elem {i} lower: {lo} upper: {up}".replace("  ", " "))
    return "\n".join(lines) + "\n"


def write_lat(D, path, name=None):
    Path(path).write_text(format_lat(D, name), encoding="utf-8")
