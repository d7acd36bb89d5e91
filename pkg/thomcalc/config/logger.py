"""Logging configuration for thomcalc."""
import logging
import os
import sys
import fcntl
import errno
from pathlib import Path
from typing import Optional

# Global state
_file_handler = None
log_dir_override = None  # Tests point this at a temporary directory

# Module logger
logger = logging.getLogger("thomcalc")

LOG_NAME = "thomcalc.log"
FORMAT = '%(filename)s:%(lineno)d - %(levelname)s - %(message)s'


def _stderr(message: str, debug_stderr: bool) -> None:
    if debug_stderr:
        sys.stderr.write(message + "\n")
        sys.stderr.flush()


def _check_file_writable(path: Path, check_parent: bool = False) -> None:
    """Check if a file is writable, raising PermissionError if not."""
    if path.exists() and not os.access(path, os.W_OK):
        raise PermissionError(f"No write permission for file: {path}")
    if check_parent and not os.access(path.parent, os.W_OK):
        raise PermissionError(f"No write permission for directory: {path.parent}")


def _verify_file_creation(path: Path) -> None:
    """Verify we can create/write to a file, raising PermissionError if not."""
    try:
        with open(path, 'a') as f:
            f.write("")
    except (IOError, OSError) as e:
        if e.errno in (errno.EACCES, errno.EPERM):
            raise PermissionError(f"Cannot write to file: {path}")
        raise


class ImmediateFileHandler(logging.FileHandler):
    """A FileHandler that flushes immediately after each write with file locking."""

    def __init__(self, filename, mode='a', encoding=None, delay=False, debug_stderr=False):
        self.debug_stderr = debug_stderr
        _check_file_writable(Path(filename), check_parent=True)
        super().__init__(filename, mode, encoding, delay)

    def emit(self, record: logging.LogRecord) -> None:
        """Emit a record with file locking and immediate flush."""
        msg = self.format(record)
        try:
            if not self.stream:
                self.stream = self._open()
            fcntl.flock(self.stream.fileno(), fcntl.LOCK_EX)
            try:
                self.stream.write(msg + self.terminator)
                self.stream.flush()
                os.fsync(self.stream.fileno())
            finally:
                fcntl.flock(self.stream.fileno(), fcntl.LOCK_UN)
        except (IOError, OSError) as e:
            if e.errno in (errno.EACCES, errno.EPERM):
                _stderr(f"ERROR - File handler permission denied: {self.baseFilename}", self.debug_stderr)
                raise PermissionError(f"Permission denied: {self.baseFilename}")
            error_msg = f"Logging failed (File={self.baseFilename}): {str(e)}"
            _stderr(f"ERROR - File handler IO error: {error_msg}", self.debug_stderr)
            raise RuntimeError(error_msg)


def _rotate(log_file: Path, debug_stderr: bool) -> None:
    """Move an existing log aside as thomcalc.log.<n> with the next free suffix."""
    if not log_file.exists():
        return
    parent_dir = log_file.parent
    suffix = 1
    while (parent_dir / f"{LOG_NAME}.{suffix}").exists():
        suffix += 1
    backup_path = parent_dir / f"{LOG_NAME}.{suffix}"
    try:
        log_file.rename(backup_path)
    except (IOError, OSError) as e:
        if e.errno in (errno.EACCES, errno.EPERM):
            _stderr(f"ERROR - Log rotation: Permission denied for {log_file}", debug_stderr)
            raise PermissionError(f"Permission denied: {log_file}")
        raise RuntimeError(f"Failed to rotate log file: {str(e)}")
    if not backup_path.exists():
        raise RuntimeError("Failed to create backup log file")


def _select_log_file(debug_stderr: bool) -> Path:
    """Pick the configured log directory, falling back to ~/.thomcalc.log."""
    from .settings import get_log_dir

    log_dir = Path(log_dir_override) if log_dir_override else get_log_dir()
    try:
        log_dir.mkdir(parents=True, exist_ok=True)
        if not os.access(log_dir, os.W_OK):
            raise PermissionError(f"No write permission for log directory {log_dir}")
        log_file = log_dir / LOG_NAME
        _verify_file_creation(log_file)
        _stderr(f"INFO - Log setup: Using log file {log_file}", debug_stderr)
        return log_file
    except Exception as e:
        _stderr(f"WARNING - Log setup: {log_dir} failed, falling back to home directory: {str(e)}", debug_stderr)
        return Path(os.path.expanduser("~/.thomcalc.log"))


def setup_logging(test_tag: Optional[str] = None, debug_stderr: bool = False) -> logging.Logger:
    """Setup logging with full details at DEBUG level. The previous log is rotated
    to a numbered suffix on every invocation so each run starts with a clean file.

    Args:
        test_tag: Optional tag written into the first record (used by the test suite)
        debug_stderr: Mirror records to stderr

    Returns:
        Configured logger instance

    Raises:
        PermissionError: If the log file cannot be written to
        RuntimeError: If log rotation or the test write fails
    """
    global _file_handler, logger
    logger = logging.getLogger("thomcalc")
    logger.setLevel(logging.DEBUG)
    if _file_handler is not None:
        _file_handler.close()
        _file_handler = None
    logger.handlers.clear()
    logger.propagate = True

    if debug_stderr:
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(logging.DEBUG)
        console_handler.setFormatter(logging.Formatter(FORMAT))
        logger.addHandler(console_handler)

    log_file = _select_log_file(debug_stderr)
    _check_file_writable(log_file, check_parent=True)
    _rotate(log_file, debug_stderr)

    try:
        file_handler = ImmediateFileHandler(str(log_file), mode='a', debug_stderr=debug_stderr)
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(logging.Formatter(FORMAT))
        tag_info = f" [{test_tag}]" if test_tag else ""
        file_handler.emit(logging.LogRecord(
            "thomcalc", logging.INFO, __file__, 0,
            f"Logger initialized with rotation{tag_info}", (), None
        ))
        if os.path.getsize(log_file) == 0:
            raise RuntimeError(f"Log file is empty after test write: {log_file}")
    except PermissionError:
        raise
    except Exception as e:
        error_msg = f"Failed to setup/test file handler: {str(e)}"
        _stderr(f"ERROR - Log initialization: {error_msg}", debug_stderr)
        raise RuntimeError(error_msg)

    logger.addHandler(file_handler)
    _file_handler = file_handler
    return logger
