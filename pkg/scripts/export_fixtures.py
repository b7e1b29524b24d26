"""Tulis semua fixture katalog ke ``fixtures/<name>.json`` (schema cvk/1).

Usage:
    uv run python scripts/export_fixtures.py [--out fixtures]
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from cvk.catalog import FIXTURES  # noqa: E402
from cvk.io import dumps, polytope_to_dict, system_to_dict  # noqa: E402
from cvk.polytope import MirrorPolytope  # noqa: E402
from cvk.render import write_atomic  # noqa: E402
from utils.mlogger import LogConfig, LoggerManager, logger  # noqa: E402


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path("fixtures"))
    args = parser.parse_args()
    LoggerManager(LogConfig(level="INFO", bind_context={"app": "export-fixtures"})).setup()

    for name, entry in FIXTURES.items():
        built = entry.build()
        if isinstance(built, MirrorPolytope):
            payload = polytope_to_dict(built)
        else:
            payload = system_to_dict(built, entry.peripherals)
        payload["description"] = entry.description
        write_atomic(args.out / f"{name}.json", dumps(payload))
        logger.info(f"fixture {name} ditulis")
    return 0


if __name__ == "__main__":
    sys.exit(main())
