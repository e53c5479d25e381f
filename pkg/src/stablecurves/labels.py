"""Marking labels and their canonical order.

Markings are usually small integers, but glue legs carry the string label
``"*"``; a single total order over the mix keeps canonical forms stable.
Integers sort before strings.
"""

from __future__ import annotations

from typing import Any, Iterable

STAR = "*"


def label_key(label: Any):
    """Sort key placing all integer labels before all string labels."""
    return (isinstance(label, str), label)


def sort_labels(labels: Iterable) -> list:
    return sorted(labels, key=label_key)


def parse_label(text: str):
    """Read a label back from its JSON/string form ("3" -> 3, "*" -> "*")."""
    try:
        return int(text)
    except (TypeError, ValueError):
        return text
