"""``plotkit --spec <json>``: batch-render figures from CSV outputs.

Exit codes: 0 all figures rendered; 2 spec or input-schema error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .render import render
from .spec import FigureSpec, SchemaError, SpecError

EXIT_OK = 0
EXIT_CONFIG_ERROR = 2


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="plotkit", description="render figures from horotube CSV outputs")
    parser.add_argument("--spec", required=True,
                        help="JSON file: one figure spec object or a list")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG_ERROR if exc.code else EXIT_OK

    try:
        payload = json.loads(open(args.spec, encoding="utf-8").read())
    except (OSError, json.JSONDecodeError) as exc:
        print(f"plotkit: cannot load spec: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR

    entries = payload if isinstance(payload, list) else [payload]
    try:
        specs = [FigureSpec.from_dict(e) for e in entries]
        for spec in specs:
            result = render(spec)
            print(f"wrote {result.output_image} ({result.kind}, "
                  f"{result.n_rows} rows)")
    except (SpecError, SchemaError, OSError) as exc:
        print(f"plotkit: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
