"""GF(2^n) arithmetic, Walsh spectra, bent monomials and APN family certificates."""

from ._apnlab import (
    CapError,
    Field,
    PowerMapInfo,
    bent_scan,
    build_family,
    count_subspaces,
    differential_spectrum,
    is_apn,
    is_bent,
    power_table,
    search_family,
    set_worker_count,
    verify_certificate,
    walsh,
    walsh_monomial,
)

__all__ = [
    "CapError",
    "Field",
    "PowerMapInfo",
    "bent_scan",
    "build_family",
    "count_subspaces",
    "differential_spectrum",
    "is_apn",
    "is_bent",
    "power_table",
    "search_family",
    "set_worker_count",
    "verify_certificate",
    "walsh",
    "walsh_monomial",
]
