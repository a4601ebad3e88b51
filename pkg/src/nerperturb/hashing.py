"""Stable 64-bit hashing and seed derivation.

Everything random or content-addressed in this toolkit flows through the
two functions here, so runs are reproducible across processes, platforms
and worker counts. The hash is FNV-1a (64-bit) over UTF-8 bytes; derived
seeds feed numpy's PCG64 generator, whose streams numpy guarantees stable.
"""

from __future__ import annotations

from typing import Iterable

FNV64_OFFSET = 0xCBF29CE484222325
FNV64_PRIME = 0x100000001B3
_MASK64 = 0xFFFFFFFFFFFFFFFF

# Separator between the parts of a derived-seed key. Chosen as a control
# character so it cannot collide with sentence ids or numbers.
_SEP = b"\x1f"


def fnv1a64(data: bytes | str) -> int:
    """64-bit FNV-1a over raw bytes (strings are UTF-8 encoded)."""
    if isinstance(data, str):
        data = data.encode("utf-8")
    h = FNV64_OFFSET
    for byte in data:
        h ^= byte
        h = (h * FNV64_PRIME) & _MASK64
    return h


def fnv1a64_file(path) -> int:
    """FNV-1a digest of a file's bytes, streamed."""
    h = FNV64_OFFSET
    with open(path, "rb") as fh:
        while chunk := fh.read(65536):
            for byte in chunk:
                h ^= byte
                h = (h * FNV64_PRIME) & _MASK64
    return h


def derive_seed(*parts: int | str) -> int:
    """Collapse (seed, sentence_id, ...) into one 64-bit PCG64 seed.

    Parts are stringified, joined with a 0x1F separator and FNV-1a hashed,
    so ("1", "2x") and ("12", "x") derive different seeds.
    """
    payload = _SEP.join(str(p).encode("utf-8") for p in parts)
    return fnv1a64(payload)


def digest_hex(value: int) -> str:
    """Render a 64-bit digest the way manifests store it."""
    return f"{value:016x}"


def fnv1a64_lines(lines: Iterable[str]) -> int:
    """Digest an iterable of text lines as one LF-joined document."""
    h = FNV64_OFFSET
    for line in lines:
        for byte in line.encode("utf-8") + b"\n":
            h ^= byte
            h = (h * FNV64_PRIME) & _MASK64
    return h
