__version__ = "0.3.0"


def get_version() -> str:
    """
    Get the current version of oddeven.
    """
    return __version__
