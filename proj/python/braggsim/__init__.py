"""Two-condensate Bragg-scattering coincidence simulator.

Thin wrapper over the C++ extension module; see the project README for the
physics conventions and the CLI.
"""

try:
    from ._braggsim import *  # noqa: F401,F403 (installed layout)
    from ._braggsim import __doc__ as _core_doc
except ImportError:  # build-tree layout: extension sits next to the package
    from _braggsim import *  # noqa: F401,F403
    from _braggsim import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
