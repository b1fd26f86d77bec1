#! /usr/bin/python3.9

"""
This module's goal is to fan independent simulations (sweep grid points, disorder seeds,
verification cases) out over processes and hand the results back in input order, no
matter in which order they finished.
`tqdm` library is required. -> https://pypi.org/project/tqdm/
Compatible with python3.9+.
"""

import os
from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import Callable, Iterable, Optional, TypeVar

from tqdm import tqdm  # type: ignore

Task = TypeVar("Task")
Result = TypeVar("Result")

BAR_FORMAT = "{desc}: {bar} {n_fmt}/{total_fmt} {percentage:3.0f}%"


def default_workers() -> Optional[int]:
    """
    "WALKMEM_WORKERS" environment variable, otherwise the executor's own default.
    """
    if workers := os.environ.get("WALKMEM_WORKERS"):
        return int(workers)
    return None


def map_ordered(
    func: Callable[[Task], Result],
    tasks: Iterable[Task],
    desc: str = "Simulating",
    workers: Optional[int] = None,
    progress: bool = False,
) -> list[Result]:
    """
    [func(task) for task in tasks], computed concurrently when workers != 1.
    `func` must be picklable (a module level function or a partial of one).
    """
    tasks = list(tasks)
    bar = tqdm(
        total=len(tasks), desc=desc, bar_format=BAR_FORMAT, disable=not progress
    )

    if workers == 1 or len(tasks) <= 1:
        results = []
        for task in tasks:
            results.append(func(task))
            bar.update()
        bar.close()
        return results

    ordered: dict[int, Result] = {}
    with ProcessPoolExecutor(max_workers=workers) as executor:
        futures = {executor.submit(func, task): i for i, task in enumerate(tasks)}
        for future in as_completed(futures):
            ordered[futures[future]] = future.result()
            bar.update()
    bar.close()
    return [ordered[i] for i in range(len(tasks))]
