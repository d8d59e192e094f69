import os
import logging
import json
from logging.handlers import TimedRotatingFileHandler

from src.utils.env_utils import load_environment_variables


class JsonFormatter(logging.Formatter):
    def format(self, record):
        log_entry = {
            "timestamp": self.formatTime(record),
            "level": record.levelname,
            "logger": record.name,
            "function": record.funcName,
            "message": record.getMessage()
        }
        return json.dumps(log_entry, ensure_ascii=False)


def setup_logging(log_name: str):
    """
    Sets up a logger with both a rotating file handler and a JSON file handler.

    The log directory and level are read from the environment
    (``FREEWALK_LOG_DIR``, ``FREEWALK_LOG_LEVEL``). Handlers are attached only
    once per logger name, so modules may call this at import time.

    :param log_name: Name of the log file (without extension).
    :return: Configured logger instance.
    """
    logger = logging.getLogger(f"freewalk.{log_name}")
    if logger.handlers:
        return logger

    env_vars = load_environment_variables()
    log_dir = env_vars["FREEWALK_LOG_DIR"]
    level = getattr(logging, env_vars["FREEWALK_LOG_LEVEL"].upper(),
                    logging.INFO)
    os.makedirs(log_dir, exist_ok=True)

    # Standard log file
    log_filename = os.path.join(log_dir, f"{log_name}.log")
    handler = TimedRotatingFileHandler(
        log_filename, when="midnight", interval=1, backupCount=30,
        encoding="utf-8"
    )
    handler.setFormatter(logging.Formatter(
        "%(asctime)s - %(levelname)s - %(funcName)s - %(message)s"
    ))

    # JSON log file
    json_log_filename = os.path.join(log_dir, f"{log_name}.json")
    json_handler = logging.FileHandler(
        json_log_filename, mode="a", encoding="utf-8")
    json_handler.setFormatter(JsonFormatter())

    # Console only shows problems; stdout belongs to the reports
    stream_handler = logging.StreamHandler()
    stream_handler.setLevel(logging.WARNING)

    logger.setLevel(level)
    logger.addHandler(handler)
    logger.addHandler(json_handler)
    logger.addHandler(stream_handler)
    logger.propagate = False

    return logger
