"""Service layer shared by the CLI, the API and the Temporal worker."""
