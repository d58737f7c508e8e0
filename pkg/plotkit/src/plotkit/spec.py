"""Figure specification and CSV schema validation."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, fields


class SpecError(ValueError):
    """The figure spec itself is malformed (unknown kind, missing field)."""


class SchemaError(ValueError):
    """The input CSV does not match the documented column schema."""


KINDS = ("ratio_curve", "growth_heatmap", "b0_heatmap", "nodal_overlay")

#: Columns each figure kind requires in its input CSV.
REQUIRED_COLUMNS = {
    "ratio_curve": ("eta", "tau", "route", "ratio_to_laplace"),
    "growth_heatmap": ("t", "theta", "normalized"),
    "b0_heatmap": ("t", "theta", "B0"),
    "nodal_overlay": ("w_re", "w_im", "multiplicity"),
}


@dataclass(frozen=True)
class FigureSpec:
    input_csv: str
    kind: str
    output_image: str
    title: str | None = None
    xlabel: str | None = None
    ylabel: str | None = None
    logx: bool = False
    logy: bool = False
    log_color: bool = False
    dpi: int = 110

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise SpecError(
                f"unknown figure kind {self.kind!r}; expected one of {KINDS}")
        if not self.input_csv:
            raise SpecError("input_csv must be a non-empty path")
        if not self.output_image:
            raise SpecError("output_image must be a non-empty path")
        if self.dpi <= 0:
            raise SpecError("dpi must be positive")

    @classmethod
    def from_dict(cls, payload: dict) -> "FigureSpec":
        if not isinstance(payload, dict):
            raise SpecError("figure spec must be a JSON object")
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(payload) - known)
        if unknown:
            raise SpecError(f"unknown figure spec fields: {', '.join(unknown)}")
        missing = sorted(
            name for name in ("input_csv", "kind", "output_image")
            if name not in payload)
        if missing:
            raise SpecError(f"missing figure spec fields: {', '.join(missing)}")
        return cls(**payload)


def load_table(path: str, kind: str) -> list[dict[str, str]]:
    """Read a horotube CSV (leading ``#`` comment lines skipped) and check
    that every column the figure kind needs is present."""
    try:
        text = open(path, encoding="utf-8").read()
    except OSError as exc:
        raise SchemaError(f"cannot read input_csv {path!r}: {exc}") from exc
    body = "\n".join(
        ln for ln in text.splitlines() if ln and not ln.startswith("#"))
    reader = csv.DictReader(io.StringIO(body))
    header = reader.fieldnames or []
    missing = [c for c in REQUIRED_COLUMNS[kind] if c not in header]
    if missing:
        raise SchemaError(
            f"{path}: missing column(s) {', '.join(missing)} required by "
            f"kind {kind!r} (found: {', '.join(header) or 'no header'})")
    return list(reader)
