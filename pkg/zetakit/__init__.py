"""
zetakit

Exact and high-precision evaluation of multiple zeta(-star) values with
2-3-1 indices, and checkers for the identities they satisfy.

Usage:
    # Import from the package
    from zetakit import Index, zeta_star_trunc, mzsv_numeric, run_checker

    # Or run via CLI
    zetakit                                          # Command table
    zetakit compute --star --index 2,1 --trunc 2 --mode exact-p
    zetakit verify main3 --m 1 --n 1
    zetakit scan thm31 --n 2 --jmax 1
"""

_EXPORTS = {
    "zetakit.indices": (
        "Index", "Pattern", "EMPTY_INDEX", "EMPTY_PATTERN", "pattern_to_index", "mzv_dual",
        "CompositionError", "NotAdmissibleError", "PatternError",
    ),
    "zetakit.truncated": ("zeta_trunc", "zeta_star_trunc", "c_kernel", "telescope_residual"),
    "zetakit.halg": ("NCPoly", "WordError", "harmonic_product", "d_map", "zp_eval"),
    "zetakit.numeric": (
        "NumericValue", "PrecisionContext", "PrecisionError", "mzv_numeric", "mzsv_numeric",
        "recognize_rational",
    ),
    "zetakit.identities": ("IdentityReport", "DivergentIdentityError", "CHECKERS", "run_checker"),
}


def __getattr__(name):
    """Lazy import so `python -m zetakit` does not pull in every module."""
    import importlib

    for module_name, names in _EXPORTS.items():
        if name in names:
            return getattr(importlib.import_module(module_name), name)
    raise AttributeError(f"module 'zetakit' has no attribute '{name}'")


__all__ = [name for names in _EXPORTS.values() for name in names]
