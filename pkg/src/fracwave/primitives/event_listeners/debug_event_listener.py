import logging

from fracwave.core.models.events import EventType, StudyEvent


class DebugEventListener:
    """Event listener that logs all study events for debugging purposes."""

    def __init__(self, log_level: int = logging.DEBUG):
        """Initialize the debug event listener.

        Args:
            log_level: The logging level to use for event logs (default: logging.DEBUG)
        """
        self.logger = logging.getLogger("fracwave.events")
        self.logger.setLevel(log_level)
        self.log_level = log_level

    def handle_event(self, event: StudyEvent) -> None:
        """Handle an event by logging it.

        Args:
            event: The event to log
        """
        if event.event_type == EventType.SAMPLE:
            self.logger.log(
                self.log_level,
                f"SAMPLE [{event.study_id}] {event.sample_index + 1}/{event.total_samples}"
            )
        elif event.event_type == EventType.FAILED:
            self.logger.log(
                self.log_level,
                f"FAILED [{event.study_id}] sample {event.sample_index}: {event.exception}"
            )
        else:
            self.logger.log(
                self.log_level,
                f"{event.event_type.value.upper()} [{event.study_id}] {event.detail}"
            )


def register_debug_listener(study, prefix: str = "", log_level: int = logging.DEBUG) -> DebugEventListener:
    """Register a debug event listener with a study.

    Args:
        study: The ConvergenceStudy to register the listener with
        prefix: Event prefix to listen for (default: "" for all events)
        log_level: The logging level to use for event logs (default: logging.DEBUG)

    Returns:
        The registered listener
    """
    logging.basicConfig()
    listener = DebugEventListener(log_level=log_level)
    study.register_event_listener(prefix, listener.handle_event)
    return listener
