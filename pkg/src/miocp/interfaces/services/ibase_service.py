from abc import ABC


class IService(ABC):
    """Handles one CLI command; every public method takes a RunManifest and
    returns a ToolResponse instead of raising."""
