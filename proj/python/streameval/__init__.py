"""Proactive streaming trajectory evaluation.

Thin Python surface over the C++ core: trajectory-level F1 scoring,
multi-grained RL rewards, class-balanced loss weights, policy simulation, and
Bradley-Terry ranking with bootstrap stability.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc

__doc__ = _core_doc if _core_doc else __doc__
