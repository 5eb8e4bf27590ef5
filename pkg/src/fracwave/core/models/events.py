from enum import Enum
from typing import Any

from pydantic import BaseModel

__all__ = ["EventType", "StudyEvent"]


class EventType(str, Enum):
    STARTED = "started"
    SAMPLE = "sample"
    COMPLETED = "completed"
    FAILED = "failed"


class StudyEvent(BaseModel):
    study_id: str
    event_name: str
    event_type: EventType
    time: float
    sample_index: int | None = None
    total_samples: int | None = None
    detail: dict[str, Any] | None = None
    exception: str | None = None
