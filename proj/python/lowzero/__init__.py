"""Low-lying zeros of quadratic Dirichlet L-functions.

The heavy lifting lives in the compiled `_lowzero` module; this package re-exports it.
"""

from ._lowzero import *  # noqa: F401,F403
from ._lowzero import __version__, CACHE_VERSION  # noqa: F401
