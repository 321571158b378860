import sys
import threading
import time
from typing import Any, Callable, Optional


class ThrottledProgressPrinter:
    """Shows one-line progress messages on stderr, at most one per delay.

    Messages arriving faster than `min_progress_delay` replace each other and
    only the latest is printed when the delay runs out. Nothing printed here
    ends up in a report.
    """

    def __init__(self, *, enabled: bool, min_progress_delay: float = 0.5, out: Optional[Any] = None):
        self.enabled = enabled
        self.min_progress_delay = min_progress_delay
        self.out = out
        self.next_can_print_time = time.monotonic()
        self.latest_msg = ''
        self.latest_printed_msg = ''
        self.is_worker_running = False
        self.lock = threading.Lock()

    def show(self, msg: str) -> None:
        if not self.enabled:
            return
        with self.lock:
            if msg == self.latest_msg:
                return
            self.latest_msg = msg
            if not self.is_worker_running:
                dt = self._try_print_else_delay()
                if dt > 0:
                    self.is_worker_running = True
                    threading.Thread(target=self._print_worker, daemon=True).start()

    def step(self, label: str, done: int, total: int) -> None:
        self.show(f'{label}: {done}/{total}')

    def iteration_callback(self, label: str) -> Callable[[int, float], None]:
        """A `progress_callback` for the fixed point solvers."""
        def callback(iteration: int, change: float) -> None:
            self.show(f'{label}: iteration {iteration}, change {change:.3e}')
        return callback

    def flush(self) -> None:
        with self.lock:
            self._print_latest()

    def _print_latest(self) -> None:
        if self.latest_msg and self.latest_msg != self.latest_printed_msg:
            print(self.latest_msg, file=self.out or sys.stderr, flush=True)
            self.latest_printed_msg = self.latest_msg

    def _try_print_else_delay(self) -> float:
        t = time.monotonic()
        dt = self.next_can_print_time - t
        if dt <= 0:
            self.next_can_print_time = t + self.min_progress_delay
            self.is_worker_running = False
            self._print_latest()
        return max(dt, 0)

    def _print_worker(self) -> None:
        while True:
            with self.lock:
                dt = self._try_print_else_delay()
            if dt == 0:
                break
            time.sleep(dt)
