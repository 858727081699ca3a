"""
Infrastructure shared by every lab module.

This module contains:
- Logging: LabLogger, optional Cloud Logging sink and track_performance
- Results: file-based CSV/JSON result store
"""

from src.infrastructure.logging import (
    CLOUD_LOGGING_AVAILABLE,
    LabLogger,
    get_logger,
    track_performance,
)
from src.infrastructure.results_store import ResultStore

__all__ = [
    "LabLogger",
    "get_logger",
    "track_performance",
    "CLOUD_LOGGING_AVAILABLE",
    "ResultStore",
]
