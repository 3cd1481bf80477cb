import os
import re

from ldgdiffusion.constants import (
    BOUNDARY_KINDS,
    MAX_POLY_ORDER,
    POLY_ORDER_MESSAGE,
    THREADS_ENV,
)
from ldgdiffusion.exceptions import ConfigError, UnsupportedOrderError


def n_local_from_order(p):
    """
    Number of local basis functions of the complete space P_p.
    :param p: polynomial order, 0..4
    :return: (p + 1)(p + 2) / 2
    """
    if not isinstance(p, int) or isinstance(p, bool) or not 0 <= p <= MAX_POLY_ORDER:
        raise UnsupportedOrderError(POLY_ORDER_MESSAGE)
    return (p + 1) * (p + 2) // 2


def order_from_n_local(n_local):
    for p in range(MAX_POLY_ORDER + 1):
        if (p + 1) * (p + 2) // 2 == n_local:
            return p
    raise UnsupportedOrderError(
        f"{n_local} local basis functions do not match any supported order"
    )


def parse_boundary_map(s):
    """
    Parses "ID: kind, ID: kind" into a dict of int -> kind.
    :param s: e.g. "1: neumann, 3: neumann, 2: dirichlet"
    :return: dict mapping boundary IDs to boundary kinds
    """
    if not s or not isinstance(s, str) or not s.strip():
        return {}

    result = {}
    for item in re.split(r"[,;]", s):
        item = item.strip()
        if not item:
            continue
        parts = item.split(":")
        if len(parts) != 2:
            raise ConfigError("boundary.map", f"expected 'ID: kind', got '{item}'")
        key, kind = parts[0].strip(), parts[1].strip().lower()
        if not key.isdigit() or int(key) <= 0:
            raise ConfigError(
                "boundary.map", f"boundary ID must be a positive integer, got '{key}'"
            )
        if kind not in BOUNDARY_KINDS:
            raise ConfigError(
                "boundary.map",
                f"unknown boundary kind '{kind}', expected one of {BOUNDARY_KINDS}",
            )
        result[int(key)] = kind
    return result


def format_boundary_map(boundary_map):
    return ", ".join(f"{k}: {v}" for k, v in sorted(boundary_map.items()))


def parse_int_list(field, s):
    """Parses "0, 1, 2" or the range form "0-4"."""
    s = str(s).strip()
    try:
        if re.fullmatch(r"\d+\s*-\s*\d+", s):
            lo, hi = (int(v) for v in s.split("-"))
            return list(range(lo, hi + 1))
        return [int(v) for v in re.split(r"[,\s]+", s) if v]
    except ValueError:
        raise ConfigError(field, f"expected a list of integers, got '{s}'")


def get_thread_count(default=1):
    value = os.environ.get(THREADS_ENV)
    if value is None or not value.strip():
        return default
    if not value.strip().isdigit() or int(value) < 1:
        raise ConfigError(THREADS_ENV, f"expected a positive integer, got '{value}'")
    return int(value)


def get_next_filename(prefix, folder="."):
    prefix = prefix + "_"
    if not os.path.exists(folder):
        return prefix[:-1]
    files = [file for file in os.listdir(folder) if file.startswith(prefix)]

    numbers = [
        int(file[len(prefix) :])
        for file in files
        if file[len(prefix) :].isdigit()
    ]
    next_number = max(numbers, default=0) + 1
    return f"{prefix}{next_number}"
