"""Services layer for run orchestration."""
