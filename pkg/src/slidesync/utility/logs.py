import logging
from typing import Union

LOG_FORMAT = "%(asctime)s %(levelname)-8s %(message)s"

logger = logging.getLogger(__name__)


def parse_log_level(name: str) -> int:
    """Numeric level for a name such as 'info' or 'DEBUG'; ValueError when unknown."""
    numeric_level = getattr(logging, name.upper(), None)
    if not isinstance(numeric_level, int):
        raise ValueError(f'Invalid log level: {name}')
    return numeric_level


def configure_logging(loglevel: Union[int, str]) -> None:
    """Configure logging level."""
    if isinstance(loglevel, str):
        loglevel = parse_log_level(loglevel)
    logging.basicConfig(format=LOG_FORMAT, level=loglevel)
    logging.getLogger().setLevel(loglevel)
    logger.debug(f"Logging Level:{logging.getLevelName(loglevel)} numeric:{loglevel}")
