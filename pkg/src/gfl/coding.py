"""Block codec built on the 2x2 matrix M_n = [[g_{n+1}, g_n], [g_n, g_{n-1}]].

A 2x2 block B of residues mod m is sent as C = B M_n mod m together with the
check residue det(B) mod m. The receiver recovers B = C M_n^{-1} and flags
the block as corrupt when det(B) disagrees with the check residue. Only
detection is provided.

Frame layout (little-endian)::

    b"GFLC" | u8 version=1 | i64 p | i64 q | i64 n | i64 m | u64 payload_len
    then per block: 5 x u32 (c00, c01, c10, c11, check), each < m

The payload is read as one bit string and cut into digits of
floor(log2 m) bits, four digits per block, zero-padded at the end.
"""
from __future__ import annotations

import struct
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .sequences import IdentityReport, PreconditionError, gfl

MAGIC = b"GFLC"
VERSION = 1
HEADER = struct.Struct("<4sBqqqqQ")
BLOCK = struct.Struct("<5I")
DEFAULT_MODULUS = 65521

Matrix2 = tuple[tuple[int, int], tuple[int, int]]


class CodecConfigError(ValueError):
    pass


class FrameError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte offset {offset})")
        self.offset = offset


def build_Mn(p: int, q: int, n: int) -> Matrix2:
    if n < 2:
        raise PreconditionError("M_n needs n >= 2")
    g_prev, g, g_next = gfl(p, q, n - 1), gfl(p, q, n), gfl(p, q, n + 1)
    return ((g_next, g), (g, g_prev))


def det2(m) -> int:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def matmul2(x, y, mod: int | None = None) -> Matrix2:
    out = (
        (x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]),
        (x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]),
    )
    if mod is None:
        return out
    return tuple(tuple(c % mod for c in row) for row in out)


@dataclass(frozen=True)
class CodecConfig:
    p: int = 1
    q: int = 0
    n: int = 2
    m: int = DEFAULT_MODULUS
    matrix: Matrix2 = field(init=False, repr=False, compare=False)
    inverse: Matrix2 = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 2:
            raise CodecConfigError("n must be >= 2")
        if not (2 <= self.m < 2 ** 32):
            raise CodecConfigError("modulus must satisfy 2 <= m < 2**32")
        M = build_Mn(self.p, self.q, self.n)
        d = det2(M)
        if gcd(d, self.m) != 1:
            raise CodecConfigError(f"det M_n = {d} is not invertible mod {self.m}")
        d_inv = pow(d, -1, self.m)
        # inverse via adjugate
        inv = ((M[1][1] * d_inv % self.m, -M[0][1] * d_inv % self.m),
               (-M[1][0] * d_inv % self.m, M[0][0] * d_inv % self.m))
        object.__setattr__(self, "matrix", tuple(tuple(c % self.m for c in row) for row in M))
        object.__setattr__(self, "inverse", inv)

    @property
    def bits_per_digit(self) -> int:
        """Payload bits carried by one residue: the largest k with 2^k <= m."""
        return self.m.bit_length() - 1


def encode_block(block, cfg: CodecConfig) -> tuple[Matrix2, int]:
    for row in block:
        for c in row:
            if not 0 <= c < cfg.m:
                raise ValueError(f"block entry {c} outside [0, {cfg.m})")
    return matmul2(block, cfg.matrix, cfg.m), det2(block) % cfg.m


@dataclass
class DecodedBlock:
    block: Matrix2
    corrupt: bool


def decode_block(cipher, check: int, cfg: CodecConfig) -> DecodedBlock:
    block = matmul2(cipher, cfg.inverse, cfg.m)
    return DecodedBlock(block, det2(block) % cfg.m != check % cfg.m)


# ---------------------------------------------------------------------------
# vectorized blocks; exact while every product fits in int64


def _fits_int64(m: int) -> bool:
    return 2 * (m - 1) ** 2 < 2 ** 63


def _encode_blocks(digits: np.ndarray, cfg: CodecConfig) -> np.ndarray:
    """digits: (k, 4) residues -> (k, 5) cipher + check."""
    m = cfg.m
    if not _fits_int64(m):
        out = []
        for b in digits.tolist():
            c, chk = encode_block(((b[0], b[1]), (b[2], b[3])), cfg)
            out.append([c[0][0], c[0][1], c[1][0], c[1][1], chk])
        return np.array(out, dtype=np.uint64).reshape(-1, 5)
    d = digits.astype(np.int64)
    M = np.array(cfg.matrix, dtype=np.int64)
    out = np.empty((len(d), 5), dtype=np.int64)
    out[:, 0] = (d[:, 0] * M[0, 0] % m + d[:, 1] * M[1, 0] % m) % m
    out[:, 1] = (d[:, 0] * M[0, 1] % m + d[:, 1] * M[1, 1] % m) % m
    out[:, 2] = (d[:, 2] * M[0, 0] % m + d[:, 3] * M[1, 0] % m) % m
    out[:, 3] = (d[:, 2] * M[0, 1] % m + d[:, 3] * M[1, 1] % m) % m
    out[:, 4] = (d[:, 0] * d[:, 3] % m - d[:, 1] * d[:, 2] % m) % m
    return out


def _decode_blocks(cipher: np.ndarray, cfg: CodecConfig) -> tuple[np.ndarray, np.ndarray]:
    """cipher: (k, 5) -> (digits (k, 4), corrupt mask (k,))."""
    m = cfg.m
    if not _fits_int64(m):
        digits, bad = [], []
        for c in cipher.tolist():
            r = decode_block(((c[0], c[1]), (c[2], c[3])), c[4], cfg)
            digits.append([r.block[0][0], r.block[0][1], r.block[1][0], r.block[1][1]])
            bad.append(r.corrupt)
        return np.array(digits, dtype=np.uint64).reshape(-1, 4), np.array(bad, dtype=bool)
    c = cipher.astype(np.int64)
    V = np.array(cfg.inverse, dtype=np.int64)
    d = np.empty((len(c), 4), dtype=np.int64)
    d[:, 0] = (c[:, 0] * V[0, 0] % m + c[:, 1] * V[1, 0] % m) % m
    d[:, 1] = (c[:, 0] * V[0, 1] % m + c[:, 1] * V[1, 1] % m) % m
    d[:, 2] = (c[:, 2] * V[0, 0] % m + c[:, 3] * V[1, 0] % m) % m
    d[:, 3] = (c[:, 2] * V[0, 1] % m + c[:, 3] * V[1, 1] % m) % m
    det = (d[:, 0] * d[:, 3] % m - d[:, 1] * d[:, 2] % m) % m
    return d, det != c[:, 4]


# ---------------------------------------------------------------------------
# streams


def _pack_digits(payload: bytes, bits: int) -> np.ndarray:
    """Split the payload bit string into ``bits``-wide big-endian digits, zero-padded to whole blocks."""
    stream = np.unpackbits(np.frombuffer(payload, dtype=np.uint8))
    stream = np.concatenate([stream, np.zeros(-len(stream) % (4 * bits), dtype=np.uint8)])
    weights = np.int64(1) << np.arange(bits - 1, -1, -1, dtype=np.int64)
    return (stream.reshape(-1, bits).astype(np.int64) @ weights).reshape(-1, 4)


def _unpack_digits(digits: np.ndarray, bits: int, length: int) -> bytes:
    flat = digits.reshape(-1).astype(np.int64)
    if len(flat) and (flat >> bits).any():
        raise ValueError("decoded digit does not fit the bit packing")
    shifts = np.arange(bits - 1, -1, -1, dtype=np.int64)
    stream = ((flat[:, None] >> shifts) & 1).astype(np.uint8).reshape(-1)
    return np.packbits(stream).tobytes()[:length]


def _block_count(length: int, bits: int) -> int:
    return -(-8 * length // (4 * bits))


def encode_stream(payload: bytes, cfg: CodecConfig) -> bytes:
    if cfg.m < 257:
        raise CodecConfigError("byte-level packing needs m >= 257")
    header = HEADER.pack(MAGIC, VERSION, cfg.p, cfg.q, cfg.n, cfg.m, len(payload))
    if not payload:
        return header
    blocks = _encode_blocks(_pack_digits(payload, cfg.bits_per_digit), cfg)
    return header + blocks.astype("<u4").tobytes()


def read_header(data: bytes) -> tuple[CodecConfig, int]:
    if len(data) < HEADER.size:
        raise FrameError("truncated header", len(data))
    magic, version, p, q, n, m, length = HEADER.unpack_from(data, 0)
    if magic != MAGIC:
        raise FrameError(f"bad magic {magic!r}", 0)
    if version != VERSION:
        raise FrameError(f"unsupported version {version}", 4)
    try:
        cfg = CodecConfig(p, q, n, m)
    except CodecConfigError as exc:
        raise FrameError(f"invalid configuration in header: {exc}", 5) from exc
    return cfg, length


@dataclass
class StreamResult:
    payload: bytes | None
    corrupt_blocks: list[int]
    config: CodecConfig

    @property
    def clean(self) -> bool:
        return not self.corrupt_blocks


def decode_stream(data: bytes, cfg: CodecConfig | None = None) -> StreamResult:
    """Inverse of :func:`encode_stream`; ``payload`` is None when any block is corrupt."""
    header_cfg, length = read_header(data)
    if cfg is not None and cfg != header_cfg:
        raise FrameError(f"header configuration {header_cfg} differs from expected {cfg}", 5)
    cfg = header_cfg
    bits = cfg.bits_per_digit
    n_blocks = _block_count(length, bits)
    body = data[HEADER.size:]
    expected = n_blocks * BLOCK.size
    if len(body) != expected:
        raise FrameError(f"expected {n_blocks} blocks ({expected} bytes) of body, found {len(body)} bytes",
                         HEADER.size + min(len(body), expected))
    if n_blocks == 0:
        return StreamResult(b"", [], cfg)
    cipher = np.frombuffer(body, dtype="<u4").astype(np.int64).reshape(-1, 5)
    out_of_range = np.argwhere(cipher >= cfg.m)
    if len(out_of_range):
        b, j = out_of_range[0]
        raise FrameError(f"residue {cipher[b, j]} is not below m = {cfg.m}", HEADER.size + int(b) * BLOCK.size + 4 * int(j))
    digits, bad = _decode_blocks(cipher, cfg)
    # a clean block can still decode to a digit that is too wide for the packing
    too_wide = (digits >> bits).any(axis=1)
    corrupt = np.flatnonzero(bad | too_wide).tolist()
    if corrupt:
        return StreamResult(None, corrupt, cfg)
    return StreamResult(_unpack_digits(digits, bits, length), [], cfg)


def detection_rate(cfg: CodecConfig, trials: int, seed: int = 0) -> dict:
    """Corrupt one random residue of a random block per trial and count detections.

    Also counts how many corruptions changed the block determinant mod m;
    every one of those must be detected.
    """
    rng = np.random.default_rng(seed)
    m = cfg.m
    detected = det_changed = missed_with_det_change = 0
    for _ in range(trials):
        block = tuple(tuple(int(v) for v in row) for row in rng.integers(0, m, size=(2, 2)))
        cipher, check = encode_block(block, cfg)
        words = [cipher[0][0], cipher[0][1], cipher[1][0], cipher[1][1], check]
        pos = int(rng.integers(0, 5))
        new = int(rng.integers(0, m - 1))
        words[pos] = new if new < words[pos] else new + 1  # always a different residue
        c2 = ((words[0], words[1]), (words[2], words[3]))
        res = decode_block(c2, words[4], cfg)
        # independent route: det(cipher) = det(block) det(M_n), so compare cipher determinants
        changed = pos == 4 or det2(c2) % m != det2(cipher) % m
        det_changed += changed
        detected += res.corrupt
        missed_with_det_change += changed and not res.corrupt
    return {
        "trials": trials,
        "detected": detected,
        "rate": detected / trials if trials else 0.0,
        "determinant_changed": det_changed,
        "missed_with_determinant_change": missed_with_det_change,
        "expected_rate_approx": 1 - 1 / m,
    }


def check_prop34(p: int, q: int, n: int) -> IdentityReport:
    """det M_n = (-1)^{n-1}(p^2 + 5q^2 + 5pq); details carry M_n = M_{n-1} + M_{n-2} for n >= 4."""
    M = build_Mn(p, q, n)
    rep = IdentityReport("prop34", {"p": p, "q": q, "n": n}, det2(M), (-1) ** (n - 1) * (p * p + 5 * q * q + 5 * p * q))
    if n >= 4:
        A, B = build_Mn(p, q, n - 1), build_Mn(p, q, n - 2)
        rep.details["matrix_recurrence"] = M == tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))
    return rep
