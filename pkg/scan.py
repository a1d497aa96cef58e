"""
Triangle-distinct census over graph6 streams and verification of single graphs.
"""

import logging
import multiprocessing as mp
import subprocess
from dataclasses import dataclass, field
from itertools import islice

from config import Config
from graph_core import triangle_degrees
from graph_io import decode_graph6
from objectives import f1, f2, f3, is_triangle_distinct
from errors import MalformedGraph6

logger = logging.getLogger(__name__)

SHARD_SIZE = 10000


@dataclass
class CensusCounts:
    total: int = 0
    td: int = 0
    regular_td: int = 0
    malformed: int = 0
    # n -> [total, td, regular_td]
    by_order: dict = field(default_factory=dict)

    def add(self, n, is_td, is_regular):
        row = self.by_order.setdefault(n, [0, 0, 0])
        self.total += 1
        row[0] += 1
        if is_td:
            self.td += 1
            row[1] += 1
            if is_regular:
                self.regular_td += 1
                row[2] += 1

    def merge(self, other):
        self.total += other.total
        self.td += other.td
        self.regular_td += other.regular_td
        self.malformed += other.malformed
        for n, (total, td, regular_td) in other.by_order.items():
            row = self.by_order.setdefault(n, [0, 0, 0])
            row[0] += total
            row[1] += td
            row[2] += regular_td
        return self

    def percentage(self, n=None):
        total, td = (self.total, self.td) if n is None else self.by_order[n][:2]
        return 100.0 * td / total if total else 0.0

    def format_table(self):
        lines = [f"{'Order':>5} {'Simple graphs':>15} {'TD graphs':>10} {'Regular TD':>10} {'Percentage (%)':>15}"]
        for n in sorted(self.by_order):
            total, td, regular_td = self.by_order[n]
            lines.append(f"{n:>5} {total:>15,} {td:>10,} {regular_td:>10,} {self.percentage(n):>15.3f}")
        if len(self.by_order) != 1:
            lines.append(f"{'all':>5} {self.total:>15,} {self.td:>10,} {self.regular_td:>10,} {self.percentage():>15.3f}")
        return '\n'.join(lines)

    def to_dict(self):
        return {
            'total': self.total,
            'td': self.td,
            'regular_td': self.regular_td,
            'malformed': self.malformed,
            'by_order': {str(n): dict(zip(('total', 'td', 'regular_td'), row)) for n, row in sorted(self.by_order.items())},
        }


def _scan_shard(shard, strict):
    """Count one shard of (line_number, line) pairs; returns (counts, graph6 lines of TD graphs)."""
    counts = CensusCounts()
    td_lines = []
    for line_number, line in shard:
        if not line.strip():
            continue
        try:
            g = decode_graph6(line, line_number)
        except MalformedGraph6 as e:
            if strict:
                raise
            logger.warning(f"Skipping malformed graph6: {e}")
            counts.malformed += 1
            continue
        is_td = is_triangle_distinct(triangle_degrees(g))
        counts.add(g.n, is_td, g.regular_degree() is not None)
        if is_td:
            td_lines.append(line.strip())
    return counts, td_lines


def _shards(lines):
    numbered = enumerate(lines, start=1)
    while True:
        shard = list(islice(numbered, SHARD_SIZE))
        if not shard:
            return
        yield shard


def _scan_shard_args(args):
    return _scan_shard(*args)


def scan_stream(lines, filter_td=False, strict=False, out=None, workers=1):
    """Census of a graph6 stream; TD lines are echoed to out when filter_td is set."""
    counts = CensusCounts()

    def consume(results):
        for shard_counts, td_lines in results:
            counts.merge(shard_counts)
            if filter_td and out is not None:
                for line in td_lines:
                    out.write(line + '\n')

    if workers > 1:
        with mp.get_context('spawn').Pool(processes=workers) as pool:
            consume(pool.imap(_scan_shard_args, ((shard, strict) for shard in _shards(lines))))
    else:
        consume(_scan_shard(shard, strict) for shard in _shards(lines))

    logger.info(f"Scanned {counts.total:,} graphs: {counts.td:,} TD, {counts.regular_td:,} regular TD")
    return counts


def run_geng(n, degree=None, geng_path=None):
    """Stream graph6 lines from nauty's geng (all graphs on n vertices, or the degree-regular ones)."""
    command = [geng_path or Config.GENG_PATH, '-q']
    if degree is not None:
        command += ['-d' + str(degree), '-D' + str(degree)]
    command.append(str(n))

    popen = subprocess.Popen(command, stdout=subprocess.PIPE, universal_newlines=True)
    for line in iter(popen.stdout.readline, ''):
        yield line
    popen.stdout.close()
    return_code = popen.wait()
    if return_code:
        raise subprocess.CalledProcessError(return_code, command)


# ========== VERIFICATION ==========

@dataclass
class VerificationReport:
    n: int
    edges: int
    r: object
    profile: tuple
    f1: int
    f2: int
    f3: object
    is_td: bool
    mismatches: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.mismatches

    def to_dict(self):
        return {
            'n': self.n,
            'edges': self.edges,
            'regular': self.r is not None,
            'r': self.r,
            'profile': list(self.profile),
            'f1': self.f1,
            'f2': self.f2,
            'f3': self.f3,
            'is_td': self.is_td,
            'mismatches': self.mismatches,
        }


def verify_graph(g, claimed_r=None, claimed_t=None):
    profile = triangle_degrees(g)
    r = g.regular_degree()
    mismatches = []

    if claimed_r is not None and r != claimed_r:
        found = f"{r}-regular" if r is not None else "not regular"
        mismatches.append(f"claimed {claimed_r}-regular, graph is {found}")

    if claimed_t is not None:
        if len(claimed_t) != g.n:
            mismatches.append(f"claimed profile has {len(claimed_t)} entries for {g.n} vertices")
        else:
            for v, (got, want) in enumerate(zip(profile.t, claimed_t), start=1):
                if got != want:
                    mismatches.append(f"vertex {v}: t={got}, claimed {want}")

    return VerificationReport(
        n=g.n,
        edges=g.edge_count,
        r=r,
        profile=profile.t,
        f1=f1(profile),
        f2=f2(profile),
        f3=f3(profile) if g.n >= 2 else None,
        is_td=is_triangle_distinct(profile),
        mismatches=mismatches,
    )
