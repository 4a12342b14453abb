"""Counting and enumerating closed factors of strings with suffix trees."""

from .text import EmptyInputError, SentinelError, Text, Window, append_sentinel, ingest

__all__ = ["EmptyInputError", "SentinelError", "Text", "Window", "append_sentinel", "ingest"]
