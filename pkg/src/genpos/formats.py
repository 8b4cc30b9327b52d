"""Text formats: the "n m" edge-list format and standard graph6.

graph6 packs the upper triangle of the adjacency matrix column by column
into 6-bit groups offset by 63; the optional ">>graph6<<" header is
accepted and stripped.
"""

from __future__ import annotations

from .errors import FormatError, SelfLoopError, VertexOutOfRangeError
from .graph import Graph, build_graph

GRAPH6_HEADER = ">>graph6<<"


def parse_edge_list(text: str) -> Graph:
    """Parse "n m" followed by m "u v" lines; '#' starts a comment line."""
    lines = [
        (i + 1, line.strip())
        for i, line in enumerate(text.splitlines())
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise FormatError("empty input: expected a header line 'n m'")
    header_no, header = lines[0]
    parts = header.split()
    if len(parts) != 2:
        raise FormatError(f"line {header_no}: expected header 'n m', got {header!r}")
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise FormatError(f"line {header_no}: expected two integers in header, got {header!r}")
    if len(lines) - 1 != m:
        raise FormatError(f"header declares {m} edges but {len(lines) - 1} edge lines found")
    edges = []
    for line_no, line in lines[1:]:
        fields = line.split()
        if len(fields) != 2:
            raise FormatError(f"line {line_no}: expected edge 'u v', got {line!r}")
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise FormatError(f"line {line_no}: expected two integers, got {line!r}")
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRangeError(
                f"line {line_no}: vertex out of range 0..{n - 1} in edge ({u}, {v})"
            )
        if u == v:
            raise SelfLoopError(f"line {line_no}: self-loop at vertex {u}")
        edges.append((u, v))
    return build_graph(n, edges)


def serialize_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def _encode_size(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr((n >> shift & 63) + 63) for shift in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr((n >> shift & 63) + 63) for shift in (30, 24, 18, 12, 6, 0))
    raise FormatError(f"graph too large for graph6: n={n}")


def _decode_size(data: str) -> tuple[int, str]:
    if not data:
        raise FormatError("empty graph6 string")
    if data[0] != "~":
        return ord(data[0]) - 63, data[1:]
    if len(data) >= 2 and data[1] != "~":
        if len(data) < 4:
            raise FormatError("truncated graph6 size field")
        n = 0
        for ch in data[1:4]:
            n = n << 6 | (ord(ch) - 63)
        return n, data[4:]
    if len(data) < 8:
        raise FormatError("truncated graph6 size field")
    n = 0
    for ch in data[2:8]:
        n = n << 6 | (ord(ch) - 63)
    return n, data[8:]


def serialize_graph6(g: Graph) -> str:
    n = g.n
    bits = []
    for j in range(1, n):
        col = g.adj_masks[j]
        for i in range(j):
            bits.append(col >> i & 1)
    while len(bits) % 6:
        bits.append(0)
    chars = [
        chr((bits[k] << 5 | bits[k + 1] << 4 | bits[k + 2] << 3
             | bits[k + 3] << 2 | bits[k + 4] << 1 | bits[k + 5]) + 63)
        for k in range(0, len(bits), 6)
    ]
    return _encode_size(n) + "".join(chars)


def _parse_graph6_line(line: str) -> Graph:
    data = line.strip()
    if data.startswith(GRAPH6_HEADER):
        data = data[len(GRAPH6_HEADER):]
    for ch in data:
        if not 63 <= ord(ch) <= 126:
            raise FormatError(f"invalid graph6 character {ch!r}")
    n, payload = _decode_size(data)
    need = n * (n - 1) // 2
    if len(payload) * 6 < need:
        raise FormatError(f"graph6 payload too short for n={n}")
    bits = []
    for ch in payload:
        val = ord(ch) - 63
        bits.extend(val >> shift & 1 for shift in (5, 4, 3, 2, 1, 0))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return build_graph(n, edges)


def parse_graph6(text: str) -> Graph:
    """Parse a single graph6 graph (one non-empty line)."""
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise FormatError("empty graph6 input")
    if len(lines) > 1:
        raise FormatError(f"expected a single graph6 line, got {len(lines)}; use iter_graph6")
    return _parse_graph6_line(lines[0])


def iter_graph6(text: str) -> list[Graph]:
    """Parse a multi-line graph6 batch, one graph per non-empty line."""
    return [_parse_graph6_line(line) for line in text.splitlines() if line.strip()]
