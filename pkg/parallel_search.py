"""
Independent VNS instances on separate cores.

Worker i runs vns with seed base+i. The first worker to reach a
triangle-distinct graph claims the winner slot and sets the shared stop
event; the others notice it between greedy steps and return their best.
"""

import logging
import multiprocessing as mp
import queue
from dataclasses import replace

from config import Config
from search import vns
from objectives import is_improvement

logger = logging.getLogger(__name__)

NO_WINNER = -1


def _worker(config, start, worker_id, stop_event, winner, results):
    # spawned interpreters start without handlers
    logging.basicConfig(format=Config.LOG_FORMAT, level=Config.LOG_LEVEL)
    try:
        report = vns(config, start=start, stop_event=stop_event, worker_id=worker_id)
    except Exception as e:
        logger.error(f"❌ Worker {worker_id} failed: {e}")
        results.put((worker_id, None))
        return

    if report.is_td:
        with winner.get_lock():
            if winner.value == NO_WINNER:
                winner.value = worker_id
        stop_event.set()
    results.put((worker_id, report))


def _pick_best(reports):
    best = None
    for report in sorted(reports, key=lambda rep: rep.worker_id):
        if best is None or is_improvement(report.best_value.kind, report.best_value.value, best.best_value.value):
            best = report
    return best


def parallel_search(config, start=None):
    config.validate()
    if config.workers == 1:
        return vns(config, start=start)

    ctx = mp.get_context('spawn')
    stop_event = ctx.Event()
    winner = ctx.Value('i', NO_WINNER)
    results = ctx.Queue()

    processes = []
    for worker_id in range(config.workers):
        worker_config = replace(config, seed=config.seed + worker_id, workers=1)
        process = ctx.Process(
            target=_worker,
            args=(worker_config, start, worker_id, stop_event, winner, results),
            daemon=True,
        )
        process.start()
        processes.append(process)
    logger.info(f"🚀 Started {config.workers} VNS workers (seeds {config.seed}..{config.seed + config.workers - 1})")

    reports = {}
    pending = set(range(config.workers))
    while pending:
        try:
            worker_id, report = results.get(timeout=1.0)
        except queue.Empty:
            if any(p.is_alive() for p in processes):
                continue
            # a report may land between the timeout and the liveness check
            try:
                worker_id, report = results.get(timeout=1.0)
            except queue.Empty:
                logger.error(f"Workers {sorted(pending)} exited without a report")
                break
        pending.discard(worker_id)
        if report is not None:
            reports[worker_id] = report

    stop_event.set()
    for process in processes:
        process.join(timeout=5)

    if not reports:
        raise RuntimeError("no worker produced a report")

    if winner.value != NO_WINNER and winner.value in reports:
        best = reports[winner.value]
    else:
        best = _pick_best(reports.values())
    logger.info(f"🏁 Worker {best.worker_id} wins ({best.best_value.kind.value}={best.best_value.value}, is_td={best.is_td})")
    return best
