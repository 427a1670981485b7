"""Shared exception types."""


class GuardExceeded(RuntimeError):
    """An exhaustive search was refused because its size guard was exceeded.

    Guards are configurable on every search entry point; callers that can
    degrade gracefully catch this and fall back to a flagged heuristic.
    """
