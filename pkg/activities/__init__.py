"""Activities package."""

from .verification_activities import merge_reports_activity, run_verification_suite_activity

__all__ = [
    "run_verification_suite_activity",
    "merge_reports_activity",
]
