from ._qtomo import *  # noqa: F401,F403
from ._qtomo import __doc__  # noqa: F401
