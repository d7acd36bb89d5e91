"""Configuration settings and environment handling."""
import os
import dotenv
import logging
from pathlib import Path
from typing import Optional

from sympy import isprime

from . import features
from ..core.errors import CoefficientError, UsageError

logger = logging.getLogger("thomcalc")

# Load environment variables from .env file
dotenv.load_dotenv()

DEFAULT_WORKSPACE = "thomcalc.workspace.json"
DEFAULT_PRIME = 3
DEFAULT_SERIES_ORDER = 16


def get_workspace_path(workspace_arg: Optional[str] = None) -> Path:
    """Get the workspace file path.

    Priority:
    1. Command line argument
    2. THOMCALC_WORKSPACE environment variable
    3. thomcalc.workspace.json in the current directory
    """
    if workspace_arg:
        return Path(workspace_arg)
    env_path = os.getenv("THOMCALC_WORKSPACE")
    if env_path:
        logger.debug(f"Using workspace from THOMCALC_WORKSPACE: {env_path}")
        return Path(env_path)
    return Path.cwd() / DEFAULT_WORKSPACE


def get_default_prime(prime_arg: Optional[int] = None) -> int:
    """Get the coefficient prime from the argument, THOMCALC_PRIME or the default."""
    if prime_arg is not None:
        value = prime_arg
    else:
        raw = os.getenv("THOMCALC_PRIME")
        try:
            value = int(raw) if raw else DEFAULT_PRIME
        except ValueError:
            raise UsageError(f"THOMCALC_PRIME must be an integer, got {raw!r}")
    if not isprime(value):
        raise CoefficientError(f"coefficient modulus {value} is not prime")
    return value


def get_series_order(order_arg: Optional[int] = None) -> int:
    """Get the truncation order for preset operation series."""
    if order_arg is not None:
        return order_arg
    raw = os.getenv("THOMCALC_SERIES_ORDER")
    if not raw:
        return DEFAULT_SERIES_ORDER
    try:
        order = int(raw)
    except ValueError:
        raise UsageError(f"THOMCALC_SERIES_ORDER must be an integer, got {raw!r}")
    if order < 1:
        raise UsageError(f"THOMCALC_SERIES_ORDER must be positive, got {order}")
    return order


def get_log_dir() -> Path:
    """Directory receiving thomcalc.log (THOMCALC_LOG_DIR, default ~/.thomcalc)."""
    return Path(os.path.expanduser(os.getenv("THOMCALC_LOG_DIR", "~/.thomcalc")))


# Feature flags
get_discrepancy_warnings = features.get_discrepancy_warnings
set_discrepancy_warnings = features.set_discrepancy_warnings
get_theta_flags = features.get_theta_flags
set_theta_flags = features.set_theta_flags
