"""
Structured logging for the split-NLC lab.

This module provides:
- Central `splitnlc` logger with console output
- Optional Cloud Logging handler (enabled via settings)
- Structured records for pipeline stages, errors and metrics
- Performance tracking decorator for sweep points and CLI commands

Library modules log through `logging.getLogger('splitnlc.<module>')`, so the
handlers installed here apply to every stage of the simulator.
"""

import logging
import time
import traceback
from datetime import datetime, timezone
from functools import wraps
from typing import Any, Dict, Optional

try:
    from google.cloud import logging as cloud_logging
    from google.cloud.logging_v2.handlers import CloudLoggingHandler
    CLOUD_LOGGING_AVAILABLE = True
except ImportError:
    CLOUD_LOGGING_AVAILABLE = False


LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def _timestamp() -> str:
    return datetime.now(timezone.utc).isoformat()


class LabLogger:
    """
    Centralized logging for simulator runs.

    Provides structured logging with optional Cloud Logging integration and
    falls back to local logging when Cloud Logging is unavailable.
    """

    def __init__(
        self,
        project_id: Optional[str] = None,
        log_name: str = "splitnlc",
        enable_cloud_logging: bool = False,
        level: int = logging.INFO,
    ):
        """
        Initialize the logger.

        Args:
            project_id: Google Cloud project ID (auto-detected if not provided)
            log_name: Logger name; also the Cloud Logging log name
            enable_cloud_logging: Whether to attach the Cloud Logging handler
            level: Minimum level for the console handler
        """
        self.project_id = project_id
        self.log_name = log_name
        self.level = level
        self.enable_cloud_logging = enable_cloud_logging and CLOUD_LOGGING_AVAILABLE

        self.logger = logging.getLogger(log_name)
        self.logger.setLevel(level)

        self._setup_handlers()

    def _setup_handlers(self):
        """Setup logging handlers (Cloud + Console)."""
        self.logger.handlers.clear()

        console_handler = logging.StreamHandler()
        console_handler.setLevel(self.level)
        console_handler.setFormatter(logging.Formatter(LOG_FORMAT))
        self.logger.addHandler(console_handler)

        if self.enable_cloud_logging:
            try:
                client = cloud_logging.Client(project=self.project_id)
                cloud_handler = CloudLoggingHandler(client, name=self.log_name)
                cloud_handler.setLevel(logging.INFO)
                self.logger.addHandler(cloud_handler)
                self.logger.info("Cloud Logging enabled successfully")
            except Exception as e:
                self.logger.warning(
                    f"Failed to setup Cloud Logging: {e}. Using local logging only."
                )
                self.enable_cloud_logging = False

    def set_level(self, level: int) -> None:
        """Change the level of the logger and all of its handlers."""
        self.level = level
        self.logger.setLevel(level)
        for handler in self.logger.handlers:
            handler.setLevel(level)

    def log_stage(
        self,
        component: str,
        action: str,
        inputs: Optional[Dict[str, Any]] = None,
        outputs: Optional[Dict[str, Any]] = None,
        duration_ms: Optional[float] = None,
        run_id: Optional[str] = None,
        metadata: Optional[Dict[str, Any]] = None,
    ):
        """
        Log a structured pipeline stage.

        Args:
            component: Module performing the stage (e.g., "fiberchannel", "labharness")
            action: Stage name (e.g., "propagate_link", "sweep_power")
            inputs: Input parameters of the stage
            outputs: Results of the stage
            duration_ms: Time taken in milliseconds
            run_id: Identifier correlating all stages of one sweep
            metadata: Additional metadata
        """
        record = {
            "component": component,
            "action": action,
            "timestamp": _timestamp(),
            "run_id": run_id,
        }

        if inputs:
            record["inputs"] = inputs
        if outputs:
            record["outputs"] = outputs
        if duration_ms is not None:
            record["duration_ms"] = duration_ms
        if metadata:
            record["metadata"] = metadata

        self.logger.info(f"Stage: {component}.{action}", extra=record)

    def log_error(
        self,
        component: str,
        error: Exception,
        context: Optional[Dict[str, Any]] = None,
        run_id: Optional[str] = None,
    ):
        """
        Log an error with stack trace and context.

        Args:
            component: Module where the error occurred
            error: The exception object
            context: Additional context (sweep point, plan, power)
            run_id: Identifier correlating all stages of one sweep
        """
        record = {
            "component": component,
            "error_type": type(error).__name__,
            "error_message": str(error),
            "stack_trace": traceback.format_exc(),
            "timestamp": _timestamp(),
            "run_id": run_id,
        }

        if context:
            record["context"] = context

        self.logger.error(
            f"Error in {component}: {type(error).__name__}: {error}",
            extra=record,
            exc_info=True,
        )

    def log_metric(
        self,
        metric_name: str,
        value: float,
        unit: str = "",
        labels: Optional[Dict[str, str]] = None,
        run_id: Optional[str] = None,
    ):
        """
        Log a measured quantity.

        Args:
            metric_name: Name of the metric (e.g., "snr_db", "peak_power_dbm")
            value: Metric value
            unit: Unit of measurement (e.g., "dB", "s")
            labels: Additional labels for filtering (scheme, spans, channel)
            run_id: Identifier correlating all stages of one sweep
        """
        record = {
            "metric_name": metric_name,
            "value": value,
            "unit": unit,
            "timestamp": _timestamp(),
            "run_id": run_id,
        }

        if labels:
            record["labels"] = labels

        self.logger.info(f"Metric: {metric_name}={value}{unit}", extra=record)

    def info(self, message: str, **kwargs):
        """Log an info message."""
        self.logger.info(message, extra=kwargs)

    def warning(self, message: str, **kwargs):
        """Log a warning message."""
        self.logger.warning(message, extra=kwargs)

    def error(self, message: str, **kwargs):
        """Log an error message."""
        self.logger.error(message, extra=kwargs)

    def debug(self, message: str, **kwargs):
        """Log a debug message."""
        self.logger.debug(message, extra=kwargs)


_global_logger: Optional[LabLogger] = None


def get_logger(
    project_id: Optional[str] = None,
    enable_cloud_logging: bool = False,
    level: int = logging.INFO,
) -> LabLogger:
    """
    Get or create the global logger instance.

    Args:
        project_id: Google Cloud project ID
        enable_cloud_logging: Whether to enable Cloud Logging
        level: Console log level used when the instance is created

    Returns:
        LabLogger instance
    """
    global _global_logger

    if _global_logger is None:
        _global_logger = LabLogger(
            project_id=project_id,
            enable_cloud_logging=enable_cloud_logging,
            level=level,
        )

    return _global_logger


def track_performance(component: str, action: str):
    """
    Decorator timing a pipeline stage.

    Usage:
        @track_performance("labharness", "run_point")
        def run_point(config, n_spans, scheme, power_dbm, seed):
            ...

    Args:
        component: Module performing the stage
        action: Stage name
    """
    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            logger = get_logger()
            start_time = time.perf_counter()

            try:
                result = func(*args, **kwargs)
                duration_ms = (time.perf_counter() - start_time) * 1000

                logger.log_stage(
                    component=component,
                    action=action,
                    duration_ms=duration_ms,
                    metadata={"status": "success"},
                )

                return result

            except Exception as e:
                duration_ms = (time.perf_counter() - start_time) * 1000

                logger.log_error(
                    component=component,
                    error=e,
                    context={"action": action, "duration_ms": duration_ms},
                )
                raise

        return wrapper
    return decorator


__all__ = [
    "LabLogger",
    "get_logger",
    "track_performance",
    "CLOUD_LOGGING_AVAILABLE",
    "LOG_FORMAT",
]
