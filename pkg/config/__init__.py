"""Configuration module for the D* d-separation toolkit."""

from .settings import (
    BASE_DIR,
    LOG_PATH,
    DATA_DIR,
    GRAPH_DIR,
    DEFAULT_SEED,
    DEFAULT_ALPHA,
    DEFAULT_BETA,
    DEFAULT_SCHEDULE,
    LONGEST_PATH_NODE_CAP,
    MODULE_NODE_CAP,
    DEFAULT_EDGE_PROBABILITY,
    CONCURRENT_JITTER_SECONDS,
    CONCURRENT_TIMEOUT_SECONDS,
    PER_CHANNEL_MESSAGE_CAP,
    BITS_PER_MESSAGE,
)

__all__ = [
    "BASE_DIR",
    "LOG_PATH",
    "DATA_DIR",
    "GRAPH_DIR",
    "DEFAULT_SEED",
    "DEFAULT_ALPHA",
    "DEFAULT_BETA",
    "DEFAULT_SCHEDULE",
    "LONGEST_PATH_NODE_CAP",
    "MODULE_NODE_CAP",
    "DEFAULT_EDGE_PROBABILITY",
    "CONCURRENT_JITTER_SECONDS",
    "CONCURRENT_TIMEOUT_SECONDS",
    "PER_CHANNEL_MESSAGE_CAP",
    "BITS_PER_MESSAGE",
]
