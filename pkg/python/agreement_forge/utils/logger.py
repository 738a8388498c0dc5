import collections.abc
import logging
import os
import pathlib
import pprint
import sys
from datetime import datetime

from .envs import FORGE_LABEL, FORGE_VERBOSE

default_formater = logging.Formatter(
    "%(asctime)s [%(name)8s] %(levelname)8s:" "%(pathname)s:%(lineno)d:%(funcName)s: " "%(message)s"
)

logging.VERBOSE = int((logging.INFO + logging.DEBUG) / 2)
logging.addLevelName(logging.VERBOSE, "VERBOSE")


class CustomFormatter(logging.Formatter):
    """Logging Formatter to add colors and count warning / errors"""

    grey = "\x1b[0;37m"
    blue = "\x1b[0;34m"
    brown = "\x1b[0;33m"
    red = "\x1b[0;31m"
    bold_red = "\x1b[1;31m"
    reset = "\x1b[0m"

    format_normal = "%(asctime)s [%(name)8s] %(levelname)8s: %(pathname)s:%(lineno)d:%(funcName)s: %(message)s"
    format_short = "%(asctime)s [%(name)8s] %(levelname)8s: %(message)s"

    FORMATS = {
        logging.DEBUG: grey + format_normal + reset,
        logging.VERBOSE: grey + format_short + reset,
        logging.INFO: blue + format_short + reset,
        logging.WARNING: brown + format_normal + reset,
        logging.ERROR: red + format_normal + reset,
        logging.CRITICAL: bold_red + format_normal + reset,
    }

    def __init__(self, colored: bool = True):
        super().__init__()
        self._colored = colored

    def format(self, record: logging.LogRecord):
        log_fmt = self.FORMATS.get(record.levelno, self.format_normal)
        if not self._colored:
            log_fmt = log_fmt.replace(self.grey, "").replace(self.blue, "").replace(self.brown, "")
            log_fmt = log_fmt.replace(self.bold_red, "").replace(self.red, "").replace(self.reset, "")
        formatter = logging.Formatter(log_fmt)
        if isinstance(record.msg, collections.abc.Mapping):
            record.msg = pprint.pformat(record.msg)
        return formatter.format(record)


class ForgeLogger(logging.Logger):

    def verbose(self, msg, *args, **kwargs):
        # 继承 logging.Logger ， logging.Logger.findCaller 无法正确找到调用函数位置
        if self.isEnabledFor(logging.VERBOSE):
            self._log(logging.VERBOSE, msg, args, **kwargs)


logging.setLoggerClass(ForgeLogger)


def _level_of(verbose) -> int:
    match verbose:
        case "50" | 50 | "quiet" | "critical" | "fatal" | "false" | "False" | False:
            return logging.CRITICAL
        case "40" | "error":
            return logging.ERROR
        case "30" | "warning":
            return logging.WARNING
        case "20" | "info":
            return logging.INFO
        case "15" | "verbose":
            return logging.VERBOSE
        case _:
            return logging.DEBUG


def forge_enable_logging(name, /, handler=None, prefix=None, formater=None, verbose=None) -> ForgeLogger:
    m_logger = logging.getLogger(name)

    if isinstance(handler, str) and handler == "STDERR":
        handler = logging.StreamHandler(stream=sys.stderr)
        formater = formater or CustomFormatter(colored=sys.stderr.isatty())
    elif isinstance(handler, str) and handler == "STDOUT":
        handler = logging.StreamHandler(stream=sys.stdout)
        formater = formater or CustomFormatter(colored=sys.stdout.isatty())
    elif handler is None:
        prefix = prefix or os.environ.get("AGREEMENT_FORGE_LOG_PREFIX", "/tmp/agreement_forge_log/forge_")
        path = pathlib.Path(f"{prefix}{datetime.now().strftime(r'%Y%m%d_%H%M%S')}.log")
        path = path.expanduser().resolve()
        if not path.parent.exists():
            path.parent.mkdir(mode=0o0755, parents=True, exist_ok=True)
        handler = logging.FileHandler(path)

    if issubclass(type(handler), logging.Handler):
        handler.setFormatter(formater or default_formater)
        handler.setLevel(logging.DEBUG)
        m_logger.addHandler(handler)
    else:
        raise NotImplementedError(f"Unknown log handler {handler!r}")

    m_logger.setLevel(_level_of(FORGE_VERBOSE if verbose is None else verbose))
    m_logger.propagate = False

    return m_logger


def set_verbosity(verbose) -> None:
    """运行时调整日志级别 (CLI -v/-q)"""
    logger.setLevel(_level_of(verbose))


logger: ForgeLogger = forge_enable_logging(FORGE_LABEL, handler="STDERR")


__all__ = ["logger", "set_verbosity", "forge_enable_logging"]
