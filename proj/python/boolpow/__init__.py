"""Filtered Boolean powers of finite algebras: constructions and checks."""
from ._boolpow import *  # noqa: F401,F403
from ._boolpow import BoolpowError, run as _run


def run(command, **options):
    """Run a tool subcommand and return its report as a dict."""
    return _run(command, options)
