"""Run manifests: every output file gets a reproducibility record.

The manifest captures the command, the full effective configuration, the
backend identity from its health check, and 64-bit content digests of
every input and output file. The manifest's own digest is computed over
everything except the timestamp, so a rerun with equal config and inputs
produces an equal digest.
"""

from __future__ import annotations

import json
from datetime import datetime, timezone
from pathlib import Path

from .hashing import digest_hex, fnv1a64, fnv1a64_file

MANIFEST_VERSION = 1


def file_digest(path) -> str:
    return digest_hex(fnv1a64_file(path))


def build_manifest(
    command: str,
    config: dict,
    seed: int,
    backend: dict | None,
    inputs: dict[str, str | Path],
    outputs: dict[str, str | Path],
) -> dict:
    body = {
        "version": MANIFEST_VERSION,
        "command": command,
        "config": dict(config),
        "seed": seed,
        "backend": dict(backend) if backend else None,
        "inputs": {name: {"path": str(p), "digest": file_digest(p)} for name, p in sorted(inputs.items())},
        "outputs": {name: {"path": str(p), "digest": file_digest(p)} for name, p in sorted(outputs.items())},
    }
    # the manifest digest covers content digests but not filesystem paths
    # or the timestamp, so reruns in different directories compare equal
    hashed = {
        "version": body["version"],
        "command": body["command"],
        "config": body["config"],
        "seed": body["seed"],
        "backend": body["backend"],
        "inputs": {name: entry["digest"] for name, entry in body["inputs"].items()},
        "outputs": {name: entry["digest"] for name, entry in body["outputs"].items()},
    }
    canonical = json.dumps(hashed, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    body["digest"] = digest_hex(fnv1a64(canonical))
    body["timestamp"] = datetime.now(timezone.utc).isoformat()
    return body


def write_manifest(manifest: dict, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(manifest, fh, indent=2, ensure_ascii=False)
        fh.write("\n")


def manifest_path_for(output_path) -> Path:
    return Path(str(output_path) + ".manifest.json")
