# coding: utf-8
"""Named wall clock timers for command runs and relation suites"""

import logging
import time

logger = logging.getLogger(__name__)


class TimerError(Exception):
    """Timer started twice or stopped while idle"""


class Timer:
    """Accumulating timer, usable as a context manager

    Named timers add their elapsed time to a shared registry so repeated
    suites of one run can be summarised at the end.
    """

    timers = dict()

    def __init__(self, name=None, level=logging.INFO):
        self._start_time = None
        self.name = name
        self.level = level
        self.elapsed = 0.
        if name:
            self.timers.setdefault(name, 0.)

    def start(self):
        if self._start_time is not None:
            raise TimerError(f'timer {self.name!r} is already running')
        self._start_time = time.perf_counter()

    def stop(self):
        """Stop, log and return the elapsed seconds"""
        if self._start_time is None:
            raise TimerError(f'timer {self.name!r} is not running')
        self.elapsed = time.perf_counter() - self._start_time
        self._start_time = None
        logger.log(self.level, f"[{self.name or 'timer'}] {self.elapsed:0.4f} s")
        if self.name:
            self.timers[self.name] += self.elapsed
        return self.elapsed

    @classmethod
    def summary(cls):
        """Accumulated seconds per timer name"""
        return dict(sorted(cls.timers.items()))

    @classmethod
    def reset(cls):
        cls.timers.clear()

    def __enter__(self):
        self.start()
        return self

    def __exit__(self, *exc_info):
        self.stop()
