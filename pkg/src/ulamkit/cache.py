"""Binary on-disk format for computed prefixes.

Layout: 5-byte magic "ULAM1", then a, b, term_count, horizon as unsigned
64-bit little-endian, then the first term and the successive gaps as
unsigned LEB128 varints, then a CRC-32 of everything preceding it as
unsigned 32-bit little-endian. Gaps rather than terms keep typical files
near one byte per term. The checksum is verified before any other field
is read.
"""

from __future__ import annotations

import struct
import zlib
from pathlib import Path

import numpy as np

from .engine import UlamParams, UlamPrefix, validate_params
from .errors import CorruptCache, InvalidParameters, VersionMismatch
from .fsutil import atomic_write_bytes

MAGIC = b"ULAM1"
_HEADER = struct.Struct("<4Q")
_CRC = struct.Struct("<I")


def _append_varint(buf: bytearray, value: int) -> None:
    while True:
        byte = value & 0x7F
        value >>= 7
        if value:
            buf.append(byte | 0x80)
        else:
            buf.append(byte)
            return


def _read_varint(data: bytes, pos: int, end: int) -> tuple[int, int]:
    value = 0
    shift = 0
    while True:
        if pos >= end:
            raise CorruptCache("varint runs past payload end")
        if shift > 63:
            raise CorruptCache("varint exceeds 64 bits")
        byte = data[pos]
        pos += 1
        value |= (byte & 0x7F) << shift
        if not byte & 0x80:
            return value, pos
        shift += 7


def encode_prefix(prefix: UlamPrefix) -> bytes:
    terms = prefix.terms
    buf = bytearray(MAGIC)
    buf += _HEADER.pack(prefix.params.a, prefix.params.b,
                        len(terms), prefix.horizon)
    _append_varint(buf, int(terms[0]))
    for gap in np.diff(terms):
        _append_varint(buf, int(gap))
    buf += _CRC.pack(zlib.crc32(buf))
    return bytes(buf)


def decode_prefix(data: bytes) -> UlamPrefix:
    if len(data) < len(MAGIC) + _HEADER.size + _CRC.size:
        raise CorruptCache(f"file too short ({len(data)} bytes)")
    (stored_crc,) = _CRC.unpack_from(data, len(data) - _CRC.size)
    if zlib.crc32(data[:-_CRC.size]) != stored_crc:
        raise CorruptCache("checksum mismatch")
    magic = data[:len(MAGIC)]
    if magic != MAGIC:
        if magic[:4] == MAGIC[:4]:
            raise VersionMismatch(
                f"unsupported cache version {magic[4:5]!r}; expected "
                f"{MAGIC[4:5]!r}")
        raise CorruptCache(f"bad magic {magic!r}")
    a, b, term_count, horizon = _HEADER.unpack_from(data, len(MAGIC))
    try:
        params = validate_params(a, b)
    except InvalidParameters as exc:
        raise CorruptCache(f"invalid parameters in header: {exc}") from exc
    if term_count < 2:
        raise CorruptCache(f"term count {term_count} below the two seeds")
    pos = len(MAGIC) + _HEADER.size
    end = len(data) - _CRC.size
    value, pos = _read_varint(data, pos, end)
    terms = np.empty(term_count, dtype=np.int64)
    terms[0] = value
    for i in range(1, term_count):
        gap, pos = _read_varint(data, pos, end)
        if gap < 1:
            raise CorruptCache(f"non-increasing gap at term {i}")
        value += gap
        terms[i] = value
    if pos != end:
        raise CorruptCache(f"{end - pos} unread payload bytes")
    if int(terms[0]) != a or int(terms[1]) != b:
        raise CorruptCache("payload does not start with a, b")
    if horizon < int(terms[-1]):
        raise CorruptCache(
            f"horizon {horizon} below last term {int(terms[-1])}")
    return UlamPrefix(params, terms, int(horizon))


def cache_write(prefix: UlamPrefix, path) -> None:
    atomic_write_bytes(Path(path), encode_prefix(prefix))


def cache_read(path) -> UlamPrefix:
    with open(path, "rb") as fh:
        return decode_prefix(fh.read())


def cache_path(cache_dir, params: UlamParams) -> Path:
    return Path(cache_dir) / f"u{params.a}_{params.b}.ulam"
