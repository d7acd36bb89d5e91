"""Feature flag configuration and management."""
import logging

logger = logging.getLogger("thomcalc")

# Global feature flags
_discrepancy_warnings = True
_theta_flags = True


def get_discrepancy_warnings() -> bool:
    """Whether Wu checks compare the definitional itd with its closed product form."""
    return _discrepancy_warnings


def set_discrepancy_warnings(enabled: bool):
    """Update discrepancy warning state.

    Args:
        enabled: Whether to compute and report the closed-form comparison
    """
    global _discrepancy_warnings
    logger.info(f"Setting discrepancy warnings to: {enabled}")
    _discrepancy_warnings = enabled


def get_theta_flags() -> bool:
    """Whether results mentioning the weight unit carry the identity-action flag."""
    return _theta_flags


def set_theta_flags(enabled: bool):
    global _theta_flags
    logger.info(f"Setting theta flags to: {enabled}")
    _theta_flags = enabled
