import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gfl import coding as C
from gfl.coding import CodecConfig, build_Mn, decode_block, decode_stream, det2, encode_block, encode_stream
from gfl.sequences import fib, luc


def test_build_mn_examples():
    assert build_Mn(1, 0, 2) == ((1, 1), (1, 0))
    M = build_Mn(1, 1, 2)
    assert M == ((5, 4), (4, 1)) and det2(M) == -11
    assert build_Mn(0, 0, 7) == ((0, 0), (0, 0))


@given(st.integers(-10, 10), st.integers(-10, 10), st.integers(2, 120))
def test_determinant_formula(p, q, n):
    rep = C.check_prop34(p, q, n)
    assert rep.passed
    assert rep.details.get("matrix_recurrence", True)


def test_matrix_entries_follow_fibonacci_and_lucas():
    for n in range(2, 30):
        assert build_Mn(1, 0, n) == ((fib(n), fib(n - 1)), (fib(n - 1), fib(n - 2)))
        assert build_Mn(0, 1, n) == ((luc(n + 1), luc(n)), (luc(n), luc(n - 1)))


def test_encode_block_examples():
    cfg = CodecConfig(1, 0, 2, 251)
    assert encode_block(((1, 2), (3, 4)), cfg) == (((3, 1), (7, 3)), 249)
    assert encode_block(((0, 0), (0, 0)), cfg) == (((0, 0), (0, 0)), 0)
    cfg = CodecConfig(2, 3, 6, 65521)
    assert encode_block(((1, 0), (0, 1)), cfg)[0] == cfg.matrix


def test_decode_block_examples():
    cfg = CodecConfig(1, 0, 2, 251)
    assert cfg.inverse == ((0, 1), (1, 250))
    r = decode_block(((3, 1), (7, 3)), 249, cfg)
    assert r.block == ((1, 2), (3, 4)) and not r.corrupt
    assert decode_block(((3, 1), (8, 3)), 249, cfg).corrupt
    r = decode_block(((0, 0), (0, 0)), 0, cfg)
    assert r.block == ((0, 0), (0, 0)) and not r.corrupt


def test_non_invertible_configuration_rejected():
    # det M_2^{1,1} = -11
    with pytest.raises(C.CodecConfigError):
        CodecConfig(1, 1, 2, 11)
    with pytest.raises(C.CodecConfigError):
        CodecConfig(0, 0, 2, 65521)
    with pytest.raises(C.CodecConfigError):
        CodecConfig(1, 0, 1, 65521)


def test_small_modulus_rejected_for_streams():
    with pytest.raises(C.CodecConfigError):
        encode_stream(b"abc", CodecConfig(1, 0, 2, 251))


def test_stream_examples():
    cfg = CodecConfig()
    empty = encode_stream(b"", cfg)
    assert len(empty) == C.HEADER.size and decode_stream(empty).payload == b""
    framed = encode_stream(bytes(8), cfg)
    body = np.frombuffer(framed[C.HEADER.size:], dtype="<u4")
    # 64 bits at 15 bits per residue need 5 digits, so two blocks
    assert len(body) == 10 and not body.any()
    assert decode_stream(encode_stream(b"\x01\x02\x03\x04\x05\x06\x07\x08", cfg)).payload == b"\x01\x02\x03\x04\x05\x06\x07\x08"


def test_header_layout():
    framed = encode_stream(b"xyz", CodecConfig(2, -1, 5, 65521))
    magic, version, p, q, n, m, length = C.HEADER.unpack_from(framed)
    assert (magic, version, p, q, n, m, length) == (b"GFLC", 1, 2, -1, 5, 65521, 3)


@settings(deadline=None, max_examples=60)
@given(st.binary(max_size=4096), st.sampled_from([(1, 0, 2, 65521), (2, 3, 7, 65521), (1, 1, 9, 257),
                                                  (3, -2, 4, 2 ** 31 - 1), (1, 0, 3, 4294967291)]))
def test_stream_round_trip(payload, params):
    cfg = CodecConfig(*params)
    res = decode_stream(encode_stream(payload, cfg), cfg)
    assert res.clean and res.payload == payload


def test_truncated_and_malformed_frames():
    framed = encode_stream(b"hello world", CodecConfig())
    with pytest.raises(C.FrameError) as err:
        decode_stream(framed[:10])
    assert err.value.offset == 10
    with pytest.raises(C.FrameError):
        decode_stream(framed[:-1])
    with pytest.raises(C.FrameError):
        decode_stream(b"XXXX" + framed[4:])
    with pytest.raises(C.FrameError):
        decode_stream(framed, CodecConfig(1, 0, 3, 65521))


def test_residue_not_below_modulus_is_a_frame_error():
    framed = bytearray(encode_stream(b"hello world", CodecConfig()))
    framed[C.HEADER.size:C.HEADER.size + 4] = (70000).to_bytes(4, "little")
    with pytest.raises(C.FrameError) as err:
        decode_stream(bytes(framed))
    assert err.value.offset == C.HEADER.size


@settings(deadline=None, max_examples=80)
@given(st.binary(min_size=1, max_size=600), st.data())
def test_single_flipped_residue_reported(payload, data):
    cfg = CodecConfig()
    framed = bytearray(encode_stream(payload, cfg))
    n_blocks = (len(framed) - C.HEADER.size) // C.BLOCK.size
    b = data.draw(st.integers(0, n_blocks - 1))
    j = data.draw(st.integers(0, 4))
    off = C.HEADER.size + b * C.BLOCK.size + 4 * j
    words = list(C.BLOCK.unpack_from(framed, C.HEADER.size + b * C.BLOCK.size))
    old = words[j]
    new = data.draw(st.integers(0, cfg.m - 1).filter(lambda v: v != old))
    framed[off:off + 4] = new.to_bytes(4, "little")
    words[j] = new
    cipher = ((words[0], words[1]), (words[2], words[3]))
    orig = list(C.BLOCK.unpack_from(encode_stream(payload, cfg), C.HEADER.size + b * C.BLOCK.size))
    det_changed = j == 4 or det2(cipher) % cfg.m != det2(((orig[0], orig[1]), (orig[2], orig[3]))) % cfg.m
    res = decode_stream(bytes(framed))
    if det_changed:
        assert res.corrupt_blocks == [b] and res.payload is None


def test_detection_rate_report():
    rep = C.detection_rate(CodecConfig(), 2000, seed=3)
    assert rep["trials"] == 2000
    assert rep["missed_with_determinant_change"] == 0
    assert rep["detected"] >= rep["determinant_changed"]
