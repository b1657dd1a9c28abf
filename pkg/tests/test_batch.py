import asyncio
import threading
import time

from os_dulac.batch import ordered_map


def test_inline():
    assert ordered_map(lambda v: v * v, range(5)) == [0, 1, 4, 9, 16]
    assert ordered_map(lambda v: v, []) == []


def test_order_independent_of_completion():
    def slow_first(v):
        time.sleep(0.05 if v == 0 else 0.0)
        return v, threading.get_ident()

    results = ordered_map(slow_first, range(8), workers=4)
    assert [v for v, _ in results] == list(range(8))


def test_workers_match_inline():
    items = list(range(20))
    assert ordered_map(str, items, workers=3) == ordered_map(str, items)


def test_inside_running_loop():
    async def caller():
        return ordered_map(lambda v: v + 1, range(6), workers=3)

    assert asyncio.run(caller()) == [1, 2, 3, 4, 5, 6]
