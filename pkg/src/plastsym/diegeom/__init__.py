"""Flow-line, limit-curve and slip-line geometry for extrusion dies."""
from .trace import (Polyline, flowline_tangency_error, limit_tangency_error,
                    trace_flow_line, trace_plasticity_limit, trace_slip_line)
from .assemble import AssemblyError, DieGeometry, DiePlan, assemble_die
from .export import export_geometry, load_polylines_csv
from .figures import FIGURE_IDS, figure_parameters, reproduce_figure

__all__ = [
    "Polyline", "flowline_tangency_error", "limit_tangency_error",
    "trace_flow_line", "trace_plasticity_limit", "trace_slip_line",
    "AssemblyError", "DieGeometry", "DiePlan", "assemble_die",
    "export_geometry", "load_polylines_csv",
    "FIGURE_IDS", "figure_parameters", "reproduce_figure",
]
