import os
from dotenv import load_dotenv

DEFAULT_CONFIG_PATH = "config/config.yaml"


def load_environment_variables(env_path="config/.env"):
    """
    Load environment variables from a .env file.

    Values already present in the process environment win over the file.

    :param env_path: Path to the .env file.
    :return: Dictionary of environment variables with defaults filled in.
    """
    load_dotenv(dotenv_path=env_path, override=False)
    return {
        "FREEWALK_CONFIG": os.getenv("FREEWALK_CONFIG", DEFAULT_CONFIG_PATH),
        "FREEWALK_LOG_DIR": os.getenv("FREEWALK_LOG_DIR", "logs"),
        "FREEWALK_LOG_LEVEL": os.getenv("FREEWALK_LOG_LEVEL", "INFO"),
    }
