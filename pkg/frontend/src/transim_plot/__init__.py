"""Figure renderer for scenario CSV/JSON outputs.

Consumes only the documented CSV and JSON sidecar formats of the
simulation package; it never imports it.
"""

from .render import PlotSpec, SchemaError, render

__all__ = ["PlotSpec", "SchemaError", "render"]

__version__ = "1.0.0"
