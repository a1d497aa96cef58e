"""
Command-line front end: search, verify, scan, gen, complement, fixtures, results.

Exit codes: 0 success / TD found, 1 verification mismatch, 2 usage error,
3 search budget expired without a TD graph, 4 malformed or missing input.
"""

import argparse
import json
import logging
import subprocess
import sys
from dataclasses import dataclass, field, asdict
from datetime import datetime
from pathlib import Path

import pytz

from config import Config
from graph_core import complement, triangle_degrees
from graph_io import encode_graph6, read_graphs, to_adjacency_list
from generator import GeneratorParams, random_regular
from objectives import ObjectiveKind, check_necessary_condition, f3
from parallel_search import parallel_search
from results_db import ResultsDatabase
from scan import run_geng, scan_stream, verify_graph
from search import SearchConfig, suggest_degree
from fixtures import all_fixtures, load_fixture
from errors import GraphFormatError, InvalidConfig, NoFeasibleSwitching, NoSuchRegularGraph, UnknownFixture

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_INPUT = 4


def now_iso():
    return datetime.now(pytz.timezone(Config.TIMEZONE)).isoformat(timespec='seconds')


@dataclass
class RunManifest:
    subcommand: str
    config: dict
    seeds: list
    started_at: str
    finished_at: str = ''
    result: dict = field(default_factory=dict)
    artifacts: dict = field(default_factory=dict)

    def to_dict(self):
        return asdict(self)

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)


def emit_manifest(manifest, args):
    record = manifest.to_json()
    if args.json:
        print(record)
    if args.manifest:
        with open(args.manifest, 'a', encoding='utf-8') as f:
            f.write(record + '\n')
    if not args.json and not args.manifest:
        logger.info(f"manifest {record}")


def _read_text(path):
    if path in (None, '-'):
        return sys.stdin.read()
    return Path(path).read_text(encoding='utf-8')


def _first_graph(path):
    for graph, _ in read_graphs(_read_text(path)):
        return graph
    raise GraphFormatError(f"{path} contains no graph")


# ========== SUBCOMMANDS ==========

def cmd_search(args):
    start = _first_graph(args.start) if args.start else None
    if args.r is not None:
        r = args.r
    elif start is not None:
        r = start.regular_degree()
        if r is None:
            raise InvalidConfig(f"start graph {args.start} is not regular")
    else:
        r = suggest_degree(args.n)
    if not check_necessary_condition(args.n, r):
        logger.warning(
            f"⚠️  C({r},2) = {r * (r - 1) // 2} < n-1 = {args.n - 1}: "
            f"no {r}-regular triangle-distinct graph on {args.n} vertices can exist"
        )
        return EXIT_USAGE

    config = SearchConfig(
        n=args.n,
        r=r,
        objective=ObjectiveKind.parse(args.objective),
        k_max=args.kmax,
        time_limit=args.time_limit,
        seed=args.seed,
        workers=args.workers,
        stop_on_td=not args.no_stop_on_td,
        stagnation_limit=args.stagnation,
        mixing_steps=args.mix,
        record_trace=bool(args.trace),
    )
    config.validate()

    manifest = RunManifest(
        subcommand='search',
        config=config.to_dict(),
        seeds=[args.seed + i for i in range(args.workers)],
        started_at=now_iso(),
    )
    report = parallel_search(config, start=start)
    manifest.finished_at = now_iso()
    manifest.result = report.to_dict()

    if args.trace:
        with open(args.trace, 'w', encoding='utf-8') as f:
            for event in report.events:
                f.write(json.dumps(event.to_dict(), sort_keys=True) + '\n')
        manifest.artifacts['trace'] = args.trace

    if report.is_td:
        profile = triangle_degrees(report.best_graph)
        text = encode_graph6(report.best_graph) + '\n' + to_adjacency_list(report.best_graph, profile)
        if args.out:
            Path(args.out).write_text(text, encoding='utf-8')
            manifest.artifacts['graph'] = args.out
        else:
            sys.stdout.write(text)
    else:
        logger.info(f"Best graph ({report.tied_pairs} tied pairs): {encode_graph6(report.best_graph)}")

    if args.db:
        db = ResultsDatabase(args.db)
        manifest.artifacts['db'] = args.db
        if report.is_td:
            db.record_graph(config.n, config.r, encode_graph6(report.best_graph),
                            f3(triangle_degrees(report.best_graph)), report.worker_id, report.seed)
        db.record_run(manifest.to_dict())

    emit_manifest(manifest, args)
    return EXIT_OK if report.is_td else EXIT_BUDGET


def cmd_verify(args):
    results = []
    for graph, claimed_t in read_graphs(_read_text(args.file)):
        results.append(verify_graph(graph, args.r, claimed_t))

    if args.json:
        for report in results:
            print(json.dumps(report.to_dict(), sort_keys=True))
    else:
        for i, report in enumerate(results, start=1):
            regular = f"{report.r}-regular" if report.r is not None else "not regular"
            print(f"graph {i}: n={report.n}, m={report.edges}, {regular}")
            print(f"  t = {' '.join(str(x) for x in report.profile)}")
            f3_text = f"{report.f3:.6f}" if report.f3 is not None else "n/a"
            print(f"  f1={report.f1} f2={report.f2} f3={f3_text} TD={'yes' if report.is_td else 'no'}")
            for mismatch in report.mismatches:
                print(f"  ❌ {mismatch}")
            if report.passed:
                print("  ✅ all checks pass")

    return EXIT_OK if all(report.passed for report in results) else EXIT_MISMATCH


def cmd_scan(args):
    if args.geng is not None:
        lines = run_geng(args.geng, args.degree)
        counts = scan_stream(lines, args.filter_td, args.strict, sys.stdout, args.workers)
    elif args.file in (None, '-'):
        if hasattr(sys.stdin, 'reconfigure'):
            sys.stdin.reconfigure(errors='surrogateescape')
        counts = scan_stream(sys.stdin, args.filter_td, args.strict, sys.stdout, args.workers)
    else:
        # undecodable bytes reach decode_graph6 as surrogates and fail that line only
        with open(args.file, encoding='ascii', errors='surrogateescape') as f:
            counts = scan_stream(f, args.filter_td, args.strict, sys.stdout, args.workers)

    # keep stdout for the filtered graph6 stream
    report_stream = sys.stderr if args.filter_td else sys.stdout
    if args.json:
        print(json.dumps(counts.to_dict(), sort_keys=True), file=report_stream)
    else:
        print(counts.format_table(), file=report_stream)
    return EXIT_OK


def cmd_gen(args):
    graph = random_regular(GeneratorParams(args.n, args.r, args.seed, args.mix))
    print(encode_graph6(graph))
    return EXIT_OK


def cmd_complement(args):
    for graph, _ in read_graphs(_read_text(args.file)):
        other = complement(graph)
        if args.format == 'adjlist':
            print(to_adjacency_list(other, triangle_degrees(other)))
        else:
            print(encode_graph6(other))
    return EXIT_OK


def cmd_fixtures(args):
    fixtures = [load_fixture(args.id)] if args.id is not None else all_fixtures()
    for fixture in fixtures:
        if args.format == 'adjlist':
            print(fixture.text)
        else:
            print(encode_graph6(fixture.graph))
    return EXIT_OK


def cmd_results(args):
    db = ResultsDatabase(args.db)
    if args.stats:
        print(json.dumps(db.get_stats(), indent=2))
        return EXIT_OK
    for row in db.get_graphs(args.n, args.r):
        print(row['graph6'])
    return EXIT_OK


# ========== PARSER ==========

def build_parser():
    parser = argparse.ArgumentParser(prog='tdsearch', description="Search for regular, triangle-distinct graphs.")
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('search', help="VNS over r-regular graphs")
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--r', type=int, help="degree (default: nearest n/2 that can work)")
    p.add_argument('--objective', choices=['f1', 'f2', 'f3'], default='f3')
    p.add_argument('--kmax', type=int, default=Config.KMAX)
    p.add_argument('--time-limit', type=float, required=True, help="seconds")
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--workers', type=int, default=Config.WORKERS)
    p.add_argument('--stagnation', type=int, help="stop after this many non-improving shakes at k_max")
    p.add_argument('--mix', type=int, help="switchings used to randomise the start graph")
    p.add_argument('--no-stop-on-td', action='store_true')
    p.add_argument('--start', help="start graph (graph6 or adjacency list)")
    p.add_argument('--out', help="write the TD graph here instead of stdout")
    p.add_argument('--trace', help="write the VNS event trace as JSON lines")
    p.add_argument('--db', help="record the run and any TD graph in this sqlite file")
    p.add_argument('--json', action='store_true', help="print the run manifest as JSON")
    p.add_argument('--manifest', help="append the run manifest to this JSONL file")
    p.set_defaults(handler=cmd_search)

    p = sub.add_parser('verify', help="check a graph's regularity, triangle profile and objectives")
    p.add_argument('file', help="graph6 lines or an adjacency list ('-' for stdin)")
    p.add_argument('--r', type=int, help="claimed degree")
    p.add_argument('--json', action='store_true')
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser('scan', help="TD census over a graph6 stream")
    p.add_argument('file', nargs='?', help="graph6 file (default stdin)")
    p.add_argument('--filter-td', action='store_true', help="echo TD graphs to stdout")
    p.add_argument('--strict', action='store_true', help="abort on the first malformed line")
    p.add_argument('--workers', type=int, default=1)
    p.add_argument('--geng', type=int, metavar='N', help="read geng's output for order N instead of a file")
    p.add_argument('--degree', type=int, help="with --geng, only R-regular graphs")
    p.add_argument('--json', action='store_true')
    p.set_defaults(handler=cmd_scan)

    p = sub.add_parser('gen', help="random r-regular graph as graph6")
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--r', type=int, required=True)
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--mix', type=int)
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser('complement', help="complement of each input graph")
    p.add_argument('file')
    p.add_argument('--format', choices=['g6', 'adjlist'], default='g6')
    p.set_defaults(handler=cmd_complement)

    p = sub.add_parser('fixtures', help="the eleven published regular TD graphs")
    p.add_argument('--id', type=int)
    p.add_argument('--format', choices=['g6', 'adjlist'], default='g6')
    p.set_defaults(handler=cmd_fixtures)

    p = sub.add_parser('results', help="TD graphs recorded by earlier searches")
    p.add_argument('--db', default=Config.RESULTS_DB)
    p.add_argument('--n', type=int)
    p.add_argument('--r', type=int)
    p.add_argument('--stats', action='store_true')
    p.set_defaults(handler=cmd_results)

    return parser


def main(argv=None):
    logging.basicConfig(format=Config.LOG_FORMAT, level=Config.LOG_LEVEL, stream=sys.stderr)
    try:
        Config.validate()
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    except ValueError as e:
        logger.error(f"❌ Configuration error: {e}")
        return EXIT_USAGE

    try:
        return args.handler(args)
    except (InvalidConfig, NoSuchRegularGraph, UnknownFixture) as e:
        logger.error(f"❌ {e}")
        return EXIT_USAGE
    except NoFeasibleSwitching as e:
        logger.error(f"❌ Graph cannot be switched: {e}")
        return EXIT_USAGE
    except (OSError, UnicodeDecodeError, subprocess.CalledProcessError, GraphFormatError) as e:
        logger.error(f"❌ Bad input: {e}")
        return EXIT_INPUT
    except KeyboardInterrupt:
        logger.info("🛑 Interrupted by user")
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
