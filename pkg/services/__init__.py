from .engine_provider import ENGINE_NAMES, get_engine

__all__ = ["ENGINE_NAMES", "get_engine"]
