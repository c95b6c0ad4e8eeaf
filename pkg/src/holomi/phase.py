from __future__ import annotations

import enum


class Phase(enum.Enum):
    """Which pair of minimal curves (or min-cut routing) wins for two blocks."""

    CONNECTED = "connected"
    DISCONNECTED = "disconnected"
