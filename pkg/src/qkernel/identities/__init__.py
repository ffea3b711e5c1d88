"""Registry of identity cases."""

from __future__ import annotations

from functools import lru_cache

from .base import IdentityCase, ResidualRecord, audit_sampler, run_case

__all__ = ["IdentityCase", "ResidualRecord", "audit_sampler", "run_case",
           "register_all", "get_case", "case_ids"]


@lru_cache(maxsize=1)
def _registry() -> tuple[IdentityCase, ...]:
    from . import polynomials, qbeta, representations, theorems

    out: list[IdentityCase] = []
    for module in (theorems, qbeta, representations, polynomials):
        out.extend(module.cases())
    return tuple(out)


def register_all() -> list[IdentityCase]:
    return list(_registry())


def case_ids() -> list[str]:
    return [c.id for c in _registry()]


def get_case(case_id: str) -> IdentityCase:
    for c in _registry():
        if c.id == case_id:
            return c
    raise KeyError(f"unknown case id {case_id!r}")
