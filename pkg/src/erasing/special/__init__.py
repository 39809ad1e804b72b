"""Special points: fixed words, periodic words, chaotic families, factor counts."""

from .chaos import *  # noqa: F401,F403
from .chaos import __all__ as _chaos_all
from .complexity import *  # noqa: F401,F403
from .complexity import __all__ as _complexity_all
from .fixed import *  # noqa: F401,F403
from .fixed import __all__ as _fixed_all

__all__ = list(_fixed_all) + list(_chaos_all) + list(_complexity_all)
