"""Regenerate the frontend contract fixtures from the live test service."""

import json
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "tests"))

from fastapi.testclient import TestClient

from flowrank.service import create_app
from test_snapshot import ecosystem_snapshot


def main() -> None:
    client = TestClient(create_app(ecosystem_snapshot()))
    out_dir = os.path.join(os.path.dirname(__file__), "..", "frontend", "tests", "fixtures")
    os.makedirs(out_dir, exist_ok=True)

    payloads = {
        "healthz": client.get("/healthz").json(),
        "search": client.get("/api/v1/companies", params={"q": "o"}).json(),
        "detail": client.get("/api/v1/companies/B").json(),
        "rankings": client.post("/api/v1/rankings", json={"ids": ["T", "B", "A"]}).json(),
        "whitespace": client.get("/api/v1/companies/A/whitespace").json(),
        "subgraph": client.get(
            "/api/v1/companies/T/subgraph", params={"maxPaths": 2}
        ).json(),
        "neighbors": client.get("/api/v1/nodes/B/neighbors").json(),
        "unknown_id": client.get("/api/v1/companies/ghost").json(),
    }
    for name, payload in payloads.items():
        path = os.path.join(out_dir, f"{name}.json")
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
