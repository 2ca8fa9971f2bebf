"""Finite-field matrix-product codes with locality and quantum derivation.

The heavy lifting happens in the compiled `_native` extension (the
qlrc-py Rust crate). `Field`, `Code`, and `ProductSpec` wrap the core
types; `matrix`, `construct`, and `table` return dictionaries with the
same shape as the `qlrc` CLI JSON output.
"""

from ._native import (
    DEFAULT_BUDGET,
    Code,
    Field,
    ProductSpec,
    construct,
    matrix,
    quantum_defect,
    singleton_defect,
    table,
)

__all__ = [
    "DEFAULT_BUDGET",
    "Code",
    "Field",
    "ProductSpec",
    "construct",
    "matrix",
    "quantum_defect",
    "singleton_defect",
    "table",
]
