"""Instruction encoding, decoding, and trace round trips."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sisa import isa
from sisa.errors import EncodingError, TraceFormatError
from sisa.isa import SisaInstruction, decode, encode

regs = st.integers(min_value=0, max_value=31)
opcodes = st.sampled_from(sorted(isa.MNEMONICS))


def test_encode_examples():
    assert encode(SisaInstruction(0x4, rs1=1, rs2=2, rd=3)) == 0x08208196
    assert encode(SisaInstruction(0x0, 0, 0, 0)) == 0x00000016
    assert encode(SisaInstruction(0x7F, 31, 31, 31)) == 0xFFFF8F96


def test_decode_examples():
    assert decode(0x08208196) == SisaInstruction(0x4, rs1=1, rs2=2, rd=3)
    with pytest.raises(EncodingError, match="not a set instruction"):
        decode(0x00000000)


def test_decode_unknown_opcode_lists_valid_ones():
    word = encode(SisaInstruction(0x7F, 0, 0, 0))
    with pytest.raises(EncodingError, match="valid opcodes"):
        decode(word)


def test_decode_rejects_reserved_funct3():
    with pytest.raises(EncodingError, match="funct3"):
        decode(0x00000016 | 1 << 12)


def test_field_overflow_rejected():
    with pytest.raises(EncodingError):
        encode(SisaInstruction(0x100, 0, 0, 0))
    with pytest.raises(EncodingError):
        encode(SisaInstruction(0x0, rs1=32))


@given(op=opcodes, rs1=regs, rs2=regs, rd=regs)
@settings(max_examples=300, deadline=None)
def test_roundtrip_identity(op, rs1, rs2, rd):
    instr = SisaInstruction(op, rs1, rs2, rd)
    word = encode(instr)
    assert word & 0x7F == isa.CUSTOM_MARKER
    assert decode(word) == instr


def test_encode_injective_over_all_fields():
    seen = set()
    for op in sorted(isa.MNEMONICS):
        for rs1 in (0, 31):
            for rs2 in (0, 17):
                for rd in (0, 5):
                    seen.add(encode(SisaInstruction(op, rs1, rs2, rd)))
    assert len(seen) == len(isa.MNEMONICS) * 8


def test_pack_trace_examples():
    i1 = SisaInstruction(0x4, 1, 2, 3)
    i2 = SisaInstruction(0x0, 0, 0, 0)
    data = isa.pack_trace([i1, i2])
    assert len(data) == 8
    assert isa.unpack_trace(data) == [i1, i2]
    assert isa.pack_trace([]) == b""
    assert isa.unpack_trace(b"") == []


def test_partial_word_rejected():
    with pytest.raises(TraceFormatError, match="partial word"):
        isa.unpack_trace(b"\x16\x00\x00")


def test_trace_file_roundtrip(tmp_path):
    rng = np.random.default_rng(7)
    ops = sorted(isa.MNEMONICS)
    instrs = [
        SisaInstruction(
            int(rng.choice(ops)), int(rng.integers(32)),
            int(rng.integers(32)), int(rng.integers(32)),
        )
        for _ in range(2000)
    ]
    path = tmp_path / "t.trace"
    isa.write_trace_file(path, instrs)
    raw = path.read_bytes()
    assert raw[:4] == b"SISA" and raw[4] == 1
    assert isa.read_trace_file(path) == instrs


def test_trace_file_bad_magic(tmp_path):
    path = tmp_path / "bad.trace"
    path.write_bytes(b"NOPE\x01")
    with pytest.raises(TraceFormatError, match="magic"):
        isa.read_trace_file(path)
