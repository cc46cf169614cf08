"""Rewrite the checksum of src/polyknots/data/corpus.json after a deliberate edit."""

import json
from pathlib import Path

from polyknots.corpus import payload_checksum

PATH = Path(__file__).resolve().parents[1] / "src" / "polyknots" / "data" / "corpus.json"


def main():
    data = json.loads(PATH.read_text())
    data["sha256"] = payload_checksum(data)
    PATH.write_text(json.dumps(data, indent=1, ensure_ascii=False) + "\n")
    print(f"{PATH.name}: {len(data['entries'])} entries, sha256 {data['sha256']}")


if __name__ == "__main__":
    main()
