"""Table and curve reproduction."""

from abcprop.core.research.reproduction import (
    CURVE_KINDS,
    REFERENCE_COEFFICIENTS,
    TABLE_KINDS,
    CurveSettings,
    curve,
    parse_k_range,
    render_frame,
    seqpav_table,
    write_artifacts,
)

__all__ = [
    "CURVE_KINDS",
    "REFERENCE_COEFFICIENTS",
    "TABLE_KINDS",
    "CurveSettings",
    "curve",
    "parse_k_range",
    "render_frame",
    "seqpav_table",
    "write_artifacts",
]
