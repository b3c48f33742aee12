import logging


class NullHandler(logging.Handler):
    def emit(self, record: logging.LogRecord) -> None:
        pass


def get_null_logger(name: str | None = None) -> logging.Logger:
    """Return a logger that swallows every record.

    Library code falls back to this when the caller does not pass a logger, so
    importing beurlab never prints anything on its own.
    """
    logger = logging.getLogger(name or "beurlab.null")
    if not any(isinstance(handler, NullHandler) for handler in logger.handlers):
        logger.addHandler(NullHandler())
    logger.propagate = False
    return logger
