"""Shared grid enumerators and small helpers for the test suite."""

from __future__ import annotations

import pytest

from knpair.intarith import factor_int, is_prime


def prime_powers_upto(limit: int) -> list[int]:
    out = []
    for q in range(2, limit + 1):
        f = factor_int(q)
        if len(f.factors) == 1:
            out.append(q)
    return out


def field_grid(max_order: int, min_n: int = 1) -> list[tuple[int, int]]:
    """All (q, n) with q a prime power, n >= min_n and q^n <= max_order."""
    out = []
    for q in prime_powers_upto(max_order):
        n = min_n
        while q**n <= max_order:
            out.append((q, n))
            n += 1
    return out


def pt_of(q: int) -> tuple[int, int]:
    (p, t), = factor_int(q).factors
    return p, t


@pytest.fixture(scope="session")
def f8():
    from knpair import make_field

    return make_field(2, 1, 3)
