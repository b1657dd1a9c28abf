"""Ordered fan-out of independent jobs.

A producer feeds ``(index, item)`` pairs into a bounded queue and a fixed
number of consumers run the jobs in a thread pool.  Results are written back
by index, so the output order never depends on scheduling.
"""
import asyncio
import logging
from concurrent.futures import ThreadPoolExecutor

logger = logging.getLogger(__name__)


class _Stop(object):
    pass


async def _pipeline(func, items, workers, queue_size):
    loop = asyncio.get_running_loop()
    queue = asyncio.Queue(maxsize=queue_size)
    results = [None] * len(items)

    with ThreadPoolExecutor(max_workers=workers) as executor:

        async def _consume():
            while True:
                obj = await queue.get()
                if isinstance(obj, _Stop):
                    break
                idx, item = obj
                results[idx] = await loop.run_in_executor(executor, func, item)

        async def _produce():
            for obj in enumerate(items):
                await queue.put(obj)
            for _ in range(workers):
                await queue.put(_Stop())

        await asyncio.gather(_produce(), *[_consume() for _ in range(workers)])

    return results


def ordered_map(func, items, workers=1, queue_size=None):
    """``[func(i) for i in items]`` evaluated by up to ``workers`` threads."""
    items = list(items)
    if workers is None or workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    workers = min(workers, len(items))
    logger.debug(f"Dispatch {len(items)} jobs to {workers} workers")
    pipeline = _pipeline(func, items, workers, queue_size or 2 * workers)
    try:
        asyncio.get_running_loop()
    except RuntimeError:
        return asyncio.run(pipeline)
    # the caller's loop is busy in this thread, run ours in another one
    with ThreadPoolExecutor(max_workers=1) as runner:
        return runner.submit(asyncio.run, pipeline).result()
