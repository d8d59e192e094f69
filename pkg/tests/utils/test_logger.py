import json
import os

from src.utils.logger import setup_logging


def test_logger_writes_text_and_json():
    logger = setup_logging("logger_test")
    assert setup_logging("logger_test") is logger
    assert len(logger.handlers) == 3
    logger.info("✅ hello")
    for handler in logger.handlers:
        handler.flush()
    log_dir = os.environ["FREEWALK_LOG_DIR"]
    with open(os.path.join(log_dir, "logger_test.json"),
              encoding="utf-8") as handle:
        last = json.loads(handle.read().splitlines()[-1])
    assert last["message"] == "✅ hello"
    assert last["logger"] == "freewalk.logger_test"
