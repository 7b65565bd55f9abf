"""Verification commands; each returns an Outcome that app.main turns into a report."""
