#!/usr/bin/env python3
"""
Export the embedded datasets with their preset effect specs and points

Usage:
    python scripts/export_fixtures.py [OUTPUT_DIR]

Or with a different simulation seed:
    COLLINEAR_SEED=1 python scripts/export_fixtures.py fixtures/
"""
import json
import os
import sys
from pathlib import Path

# Add parent to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from app.fixtures import EFFECT_PRESETS, FIXTURES, POINT_PRESETS, load_fixture  # noqa: E402
from app.services.data import to_frame  # noqa: E402
from config.settings import get_settings  # noqa: E402


def main():
    out = Path(sys.argv[1] if len(sys.argv) > 1 else "fixtures")
    out.mkdir(parents=True, exist_ok=True)
    seed = get_settings().seed

    for name in sorted(FIXTURES):
        frame = to_frame(load_fixture(name, seed))
        frame.to_csv(out / f"{name}.csv", index=False, float_format="%.10g")
        print(f"✅ {name}.csv ({frame.shape[0]} rows)")

        if name in EFFECT_PRESETS:
            effects = [e.model_dump(exclude_none=True) for e in EFFECT_PRESETS[name]]
            (out / f"{name}.effects.json").write_text(json.dumps({"effects": effects}, indent=2) + "\n")
            print(f"✅ {name}.effects.json ({len(effects)} effects)")

        if name in POINT_PRESETS:
            points = [{"label": label, "values": list(values)} for label, values in POINT_PRESETS[name]]
            (out / f"{name}.points.json").write_text(json.dumps({"points": points}, indent=2) + "\n")
            print(f"✅ {name}.points.json ({len(points)} points)")

    print(f"\nTry:\n  collinear effects --input {out / 'hald-renamed.csv'} --spec {out / 'hald-renamed.effects.json'}")


if __name__ == "__main__":
    main()
