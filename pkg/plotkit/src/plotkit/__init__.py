"""Batch renderer turning horotube CSV outputs into static figures."""

from .spec import FigureSpec, SchemaError, SpecError
from .render import RenderResult, render

__all__ = ["FigureSpec", "RenderResult", "SchemaError", "SpecError", "render"]
