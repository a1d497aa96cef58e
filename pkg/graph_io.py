"""
graph6 and row-per-vertex adjacency-list formats.

Adjacency lists use 1-based labels, one row per vertex:

    v: n1 n2 ... nk [| t]

`#` starts a comment, blank lines are ignored. The optional `| t` column
carries a claimed triangle-degree and is not part of the graph.
"""

import re

from graph_core import Graph, iter_bits
from errors import (
    AsymmetricInput,
    DuplicateNeighbour,
    GraphFormatError,
    LabelOutOfRange,
    MalformedGraph6,
    SelfLoop,
)

GRAPH6_HEADER = '>>graph6<<'
ROW_RE = re.compile(r'^\s*(\d+)\s*:\s*([\d\s]*?)\s*(?:\|\s*(\d+)\s*)?$')


# ========== ADJACENCY LISTS ==========

def parse_adjacency_list(text, first_line=1):
    """Parse one adjacency-list document into (Graph, claimed t column or None)."""
    rows = {}
    claimed = {}
    for line_number, raw in enumerate(text.splitlines(), start=first_line):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        match = ROW_RE.match(line)
        if not match:
            raise GraphFormatError(f"cannot parse row {raw.strip()!r}", line_number)

        v = int(match.group(1))
        if v < 1:
            raise LabelOutOfRange(f"vertex label {v} must be at least 1", line_number)
        if v in rows:
            raise GraphFormatError(f"vertex {v} has two rows", line_number)

        neighbours = [int(x) for x in match.group(2).split()]
        if v in neighbours:
            raise SelfLoop(f"vertex {v} lists itself", line_number)
        if len(set(neighbours)) != len(neighbours):
            raise DuplicateNeighbour(f"vertex {v} lists a neighbour twice", line_number)

        rows[v] = (neighbours, line_number)
        if match.group(3) is not None:
            claimed[v] = int(match.group(3))

    n = max(rows, default=0)
    adj = [0] * n
    for v, (neighbours, line_number) in rows.items():
        for u in neighbours:
            if not 1 <= u <= n:
                raise LabelOutOfRange(f"neighbour {u} of vertex {v} is outside 1..{n}", line_number)
            adj[v - 1] |= 1 << (u - 1)

    for v in range(n):
        for u in iter_bits(adj[v]):
            if not adj[u] >> v & 1:
                raise AsymmetricInput(f"edge {v + 1}-{u + 1} is missing from the row of vertex {u + 1}")

    graph = Graph(n, tuple(adj))
    if claimed and len(claimed) == n:
        return graph, tuple(claimed[v] for v in range(1, n + 1))
    return graph, None


def from_adjacency_list(text):
    """Build the Graph described by an adjacency-list document."""
    graph, _ = parse_adjacency_list(text)
    return graph


def to_adjacency_list(g, profile=None):
    """Render g as an adjacency list, with the `| t(v)` column when a profile is given."""
    width = len(str(g.n))
    lines = []
    for v in range(g.n):
        neighbours = ' '.join(str(u + 1) for u in iter_bits(g.adj[v]))
        line = f"{v + 1:>{width}}: {neighbours}".rstrip()
        if profile is not None:
            line += f" | {profile[v]}"
        lines.append(line)
    return '\n'.join(lines) + '\n'


# ========== GRAPH6 ==========

def encode_graph6(g):
    """Short-form graph6: header byte n+63, then the upper triangle column by column."""
    if g.n >= 63:
        raise MalformedGraph6(f"graph6 short form needs n < 63, got {g.n}")

    out = [chr(g.n + 63)]
    value = 0
    filled = 0
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            value = (value << 1) | (row >> i & 1)
            filled += 1
            if filled == 6:
                out.append(chr(value + 63))
                value = filled = 0
    if filled:
        out.append(chr((value << (6 - filled)) + 63))
    return ''.join(out)


def decode_graph6(line, line_number=None):
    s = line.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):]
    if not s:
        raise MalformedGraph6("empty graph6 line", line_number)

    codes = [ord(c) for c in s]
    bad = [c for c in codes if not 63 <= c <= 126]
    if bad:
        # surrogateescape maps an undecodable byte b to U+DC00+b
        byte = bad[0] - 0xDC00 if 0xDC80 <= bad[0] <= 0xDCFF else bad[0]
        raise MalformedGraph6(f"byte {byte} outside 63..126", line_number)
    if codes[0] == 126:
        raise MalformedGraph6("long-form graph6 header (n >= 63) is not supported", line_number)

    n = codes[0] - 63
    bits = n * (n - 1) // 2
    expected = 1 + (bits + 5) // 6
    if len(codes) != expected:
        raise MalformedGraph6(f"n={n} needs {expected} bytes, got {len(codes)}", line_number)

    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            chunk = codes[1 + k // 6] - 63
            if chunk >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    if bits % 6 and (codes[-1] - 63) & ((1 << (6 - bits % 6)) - 1):
        raise MalformedGraph6("non-zero padding bits", line_number)
    return Graph(n, tuple(adj))


def _adjacency_blocks(lines):
    """Split a document into graphs at blank lines and at comments that follow rows."""
    block, start, has_rows = [], 1, False
    for line_number, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or (stripped.startswith('#') and has_rows):
            if has_rows:
                yield start, '\n'.join(block) + '\n'
            block, has_rows = [], False
            if not stripped:
                continue
        if not block:
            start = line_number
        block.append(line)
        has_rows = has_rows or not stripped.startswith('#')
    if has_rows:
        yield start, '\n'.join(block) + '\n'


def read_graphs(text):
    """Yield (Graph, claimed t column or None) from graph6 lines or adjacency-list documents.

    Several adjacency lists in one text are separated by blank lines or by a
    `#` comment line such as `# graph 2: n=21 r=10`.
    """
    lines = text.splitlines()
    meaningful = [ln for ln in lines if ln.strip() and not ln.lstrip().startswith('#')]
    if meaningful and all(':' in ln for ln in meaningful):
        for first_line, block in _adjacency_blocks(lines):
            yield parse_adjacency_list(block, first_line)
        return
    for line_number, line in enumerate(lines, start=1):
        if line.strip():
            yield decode_graph6(line, line_number), None

