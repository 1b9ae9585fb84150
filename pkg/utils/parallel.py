"""
進程池工具

任務函數必須是模組頂層函數（可 pickle）；結果順序與任務順序一致。
"""

import multiprocessing
from typing import Callable, Iterable, List, Optional

from loguru import logger

from config import Config


def run_tasks(func: Callable, tasks: Iterable, workers: Optional[int] = None) -> List:
    """workers <= 1 時在本進程依序執行，否則交給 multiprocessing.Pool"""
    tasks = list(tasks)
    workers = Config.WORKERS if workers is None else max(1, int(workers))
    if workers <= 1 or len(tasks) <= 1:
        return [func(task) for task in tasks]

    processes = min(workers, len(tasks))
    logger.debug(f"啟動 {processes} 個進程處理 {len(tasks)} 個任務")
    with multiprocessing.Pool(processes=processes) as pool:
        return pool.map(func, tasks)
