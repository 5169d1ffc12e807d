# -*- coding: utf-8 -*-

import logging
import threading
import time
from typing import Optional

import psutil

log = logging.getLogger(__name__)


class ResourceMonitor:
    """
    后台线程定期采样本进程（含工作子进程）的 RSS，记录峰值与耗时。

    用法：
        with ResourceMonitor() as monitor:
            ...
        monitor.peak_rss_mb, monitor.duration_s
    """

    def __init__(self, interval: float = 0.2):
        self.interval = interval
        self.process = psutil.Process()
        self.peak_rss_mb = 0.0
        self.duration_s = 0.0
        self._started: Optional[float] = None
        self._stop = threading.Event()
        self._thread: Optional[threading.Thread] = None

    def _sample(self) -> None:
        try:
            rss = self.process.memory_info().rss
            for child in self.process.children(recursive=True):
                try:
                    rss += child.memory_info().rss
                except psutil.Error:
                    continue
        except psutil.Error as e:
            log.debug(f"RSS 采样失败: {e}")
            return
        self.peak_rss_mb = max(self.peak_rss_mb, rss / 1024 / 1024)

    def _loop(self) -> None:
        while not self._stop.wait(self.interval):
            self._sample()

    def start(self) -> "ResourceMonitor":
        self._started = time.perf_counter()
        self._sample()
        self._thread = threading.Thread(target=self._loop, daemon=True)
        self._thread.start()
        return self

    def stop(self) -> None:
        self._stop.set()
        if self._thread:
            self._thread.join()
        self._sample()
        if self._started is not None:
            self.duration_s = time.perf_counter() - self._started

    def __enter__(self) -> "ResourceMonitor":
        return self.start()

    def __exit__(self, exc_type, exc, tb) -> None:
        self.stop()
