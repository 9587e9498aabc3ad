"""Workflows package."""

from .verification_workflow import VerificationWorkflow

__all__ = ["VerificationWorkflow"]
