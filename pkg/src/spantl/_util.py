import sys
from contextlib import contextmanager


@contextmanager
def recursion_headroom(depth):
    """Make room for a recursion roughly ``depth`` levels deep."""
    old = sys.getrecursionlimit()
    needed = 4 * depth + 500
    if needed > old:
        sys.setrecursionlimit(needed)
    try:
        yield
    finally:
        sys.setrecursionlimit(old)
