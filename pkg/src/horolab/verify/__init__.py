"""Self-verification suites, reports, and the command line front end."""
from .checks import SUITE_RUNNERS, run_suite
from .report import (
    CHECK_REGISTRY,
    INVARIANT_KEYS,
    OP_CONTRACT_KEYS,
    SUITE_NAMES,
    CheckRegistration,
    CheckResult,
    ConfigError,
    VerifyConfig,
    VerifyReport,
    audit_registry,
)

__all__ = [
    "CHECK_REGISTRY",
    "INVARIANT_KEYS",
    "OP_CONTRACT_KEYS",
    "SUITE_NAMES",
    "SUITE_RUNNERS",
    "CheckRegistration",
    "CheckResult",
    "ConfigError",
    "VerifyConfig",
    "VerifyReport",
    "audit_registry",
    "run_suite",
]
