import logging
import os
import time
import uuid
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Any, Callable, TypeVar

from .config import ExperimentPlan
from .errors import StudyError
from .models import EventType, StudyEvent

logger = logging.getLogger(__name__)

T = TypeVar("T")

SampleTask = Callable[[ExperimentPlan, int], T]


class ConvergenceStudy:
    """Runs the Monte Carlo samples of an experiment plan and reports progress through events.

    Samples are independent: each derives its own random streams from (seed, sample index),
    so results do not depend on how the samples are spread over worker processes. Results are
    always returned in sample order.
    """

    def __init__(self):
        self.event_listeners: list[tuple[str, Callable[[StudyEvent], None]]] = []

        # Register debug event listener if FRACWAVE_DEBUG environment variable is set
        if os.environ.get("FRACWAVE_DEBUG"):
            from fracwave.primitives.event_listeners.debug_event_listener import register_debug_listener
            register_debug_listener(self)

    def register_event_listener(self, prefix: str, handler: Callable[[StudyEvent], None]) -> None:
        """Register an event listener for study progress.

        Args:
            prefix (str): Event name prefix to listen for, e.g. ``study.sample``. Empty string means all events.
            handler (Callable[[StudyEvent], None]): Function receiving each matching StudyEvent
        """
        self.event_listeners.append((prefix, handler))

    def _emit(self, study_id: str, event_type: EventType, **fields: Any) -> None:
        if not self.event_listeners:
            return
        event = StudyEvent(
            study_id=study_id,
            event_name=f"study.{event_type.value}",
            event_type=event_type,
            time=time.time(),
            **fields,
        )
        for prefix, handler in self.event_listeners:
            if not prefix or event.event_name.startswith(prefix):
                try:
                    handler(event)
                except Exception:
                    logger.exception(f"Exception in event listener for {event.event_name}")

    def map_samples(self, plan: ExperimentPlan, task: SampleTask) -> list[T]:
        """Evaluate `task(plan, i)` for every sample index i of the plan.

        With `plan.workers > 1` the samples are spread over a process pool; `task` must then be
        picklable (a module level function).

        Args:
            plan: The experiment plan
            task: Per-sample computation

        Returns:
            The task results, ordered by sample index

        Raises:
            StudyError: If any sample fails; the remaining samples are cancelled
        """
        study_id = uuid.uuid4().hex[:12]
        total = plan.samples
        detail = {
            "scheme": plan.scheme,
            "alpha": plan.config.alpha,
            "hurst": plan.config.hurst,
            "resolutions": list(plan.resolutions),
            "workers": plan.workers,
        }
        logger.info(
            f"Study {study_id}: {total} samples of the {plan.scheme} scheme, alpha={plan.config.alpha}, "
            f"H={plan.config.hurst}, N={list(plan.resolutions)}, workers={plan.workers}"
        )
        self._emit(study_id, EventType.STARTED, total_samples=total, detail=detail)
        started = time.perf_counter()
        results: list[T] = []
        sample_index = 0
        try:
            if plan.workers == 1:
                for sample_index in range(total):
                    results.append(task(plan, sample_index))
                    self._emit(study_id, EventType.SAMPLE, sample_index=sample_index, total_samples=total)
            else:
                with ProcessPoolExecutor(max_workers=min(plan.workers, total)) as executor:
                    futures = [executor.submit(partial(task, plan), i) for i in range(total)]
                    try:
                        for sample_index, future in enumerate(futures):
                            results.append(future.result())
                            self._emit(study_id, EventType.SAMPLE, sample_index=sample_index, total_samples=total)
                    except BaseException:
                        executor.shutdown(wait=False, cancel_futures=True)
                        raise
        except Exception as e:
            self._emit(study_id, EventType.FAILED, sample_index=sample_index, total_samples=total,
                       exception=repr(e))
            raise StudyError(f"Sample {sample_index} of study {study_id} failed: {e}") from e

        elapsed = time.perf_counter() - started
        self._emit(study_id, EventType.COMPLETED, total_samples=total, detail={**detail, "wall_time": elapsed})
        logger.info(f"Study {study_id} finished in {elapsed:.2f}s")
        return results
