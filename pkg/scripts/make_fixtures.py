#!/usr/bin/env python3
"""Regenerate the bundled fixture JSON files under src/monocat/fixtures/."""

import json
from pathlib import Path

from monocat.fixtures import all_bundled_fixtures, fixture_to_json

OUT = Path(__file__).resolve().parent.parent / "src" / "monocat" / "fixtures"


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, fx in sorted(all_bundled_fixtures().items()):
        path = OUT / f"{name}.json"
        payload = json.dumps(fixture_to_json(fx), indent=2, sort_keys=True,
                             ensure_ascii=False) + "\n"
        path.write_text(payload, encoding="utf-8")
        print(f"wrote {path.relative_to(OUT.parent.parent.parent)}")


if __name__ == "__main__":
    main()
