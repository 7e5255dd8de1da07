"""graph6 encoding (6-bit packing of the upper triangle, column-major) and
line-oriented streaming."""

from __future__ import annotations

import logging
from typing import IO, Iterable, Iterator

from .graph import MAX_ORDER, Graph

log = logging.getLogger(__name__)

HEADER = ">>graph6<<"


class Graph6Error(ValueError):
    def __init__(self, message: str, offset: int | None = None, line: int | None = None):
        self.offset = offset
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"byte {offset}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


def _size_prefix(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126, (n >> 12) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63])
    raise Graph6Error(f"order {n} too large")


def to_graph6(g: Graph, header: bool = False) -> str:
    if g.n > MAX_ORDER:
        raise Graph6Error(f"order {g.n} exceeds {MAX_ORDER}")
    out = bytearray(_size_prefix(g.n))
    acc = 0
    nbits = 0
    for j in range(1, g.n):
        row = g.rows[j]
        for i in range(j):
            acc = (acc << 1) | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = 0
                nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    text = out.decode("ascii")
    return HEADER + text if header else text


def from_graph6(text: str | bytes) -> Graph:
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    base = 0
    if text.startswith(HEADER):
        base = len(HEADER)
        text = text[base:]
    text = text.rstrip("\r\n")
    if not text:
        raise Graph6Error("empty graph6 string", base)
    data = []
    for i, ch in enumerate(text):
        c = ord(ch)
        if not 63 <= c <= 126:
            raise Graph6Error(f"byte {ch!r} outside printable graph6 range", base + i)
        data.append(c - 63)

    if data[0] != 63:
        n, pos = data[0], 1
    elif len(data) >= 2 and data[1] == 63:
        raise Graph6Error("orders above 258047 are not supported", base + 1)
    elif len(data) >= 4:
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        pos = 4
    else:
        raise Graph6Error("truncated size prefix", base + len(data))
    if n > MAX_ORDER:
        raise Graph6Error(f"order {n} exceeds {MAX_ORDER}", base)

    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[pos:]
    if len(body) < need:
        raise Graph6Error(f"expected {need} data bytes, found {len(body)}", base + len(data))
    if len(body) > need:
        raise Graph6Error("trailing bytes after adjacency data", base + pos + need)
    if nbits % 6 and body[-1] & ((1 << (6 - nbits % 6)) - 1):
        raise Graph6Error("nonzero padding bits", base + pos + need - 1)

    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, tuple(rows))


def read_graph6(lines: Iterable[str] | IO[str], lenient: bool = False) -> Iterator[Graph]:
    """Parse one graph per line. Blank lines are skipped.

    A malformed line raises :class:`Graph6Error` carrying its 1-based line
    number, or is logged and skipped when ``lenient`` is set.
    """
    for lineno, line in enumerate(lines, 1):
        line = line.strip()
        if not line:
            continue
        try:
            yield from_graph6(line)
        except Graph6Error as exc:
            err = Graph6Error(str(exc), line=lineno)
            if not lenient:
                raise err from exc
            log.warning("skipping: %s", err)


def ingest_graph6(path: str | None = None, lenient: bool = False) -> Iterator[Graph]:
    """Stream graphs from a file path, or stdin when ``path`` is None or '-'."""
    import sys

    if path is None or path == "-":
        yield from read_graph6(sys.stdin, lenient)
        return
    with open(path, encoding="ascii", errors="replace") as fh:
        yield from read_graph6(fh, lenient)
