"""TR-assisted stochastic computing MAC simulator."""

try:
    from ._trsc import *  # noqa: F401,F403
    from ._trsc import __doc__ as _core_doc  # noqa: F401
except ImportError:  # running against a build tree, module is on sys.path
    from _trsc import *  # noqa: F401,F403

__all__ = [
    "encode_sn",
    "encode_un",
    "sn_bit",
    "mul_reference",
    "compress",
    "multiply",
    "dot",
    "storage_parts",
    "sweep",
    "synth_workload",
]
