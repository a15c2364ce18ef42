import os

HARD_MAX_N = 8


def max_n() -> int:
    """Combinatorial guard on n; CTCONFIG_MAX_N may lower it, never raise it."""
    env = os.environ.get("CTCONFIG_MAX_N")
    if env:
        try:
            return min(HARD_MAX_N, int(env))
        except ValueError:
            pass
    return HARD_MAX_N


def check_n(n: int) -> None:
    if n > max_n():
        raise ValueError(f"n={n} exceeds the combinatorial guard n <= {max_n()}")
