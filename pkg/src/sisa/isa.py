"""32-bit instruction encoding for the set-operation ISA.

Layout (RISC-V R-type shaped): opcode in bits [31..25], rs2 [24..20],
rs1 [19..15], funct3 [14..12] fixed to zero, rd [11..7], and the custom
marker 0x16 in bits [6..0].  rs1/rs2 name input set registers, rd the
destination.

Opcode table:

    0x0  intersect, merge             (SA, SA)
    0x1  intersect, galloping         (SA, SA)
    0x2  intersect, auto-selected     (SA, SA)
    0x3  intersect, probe bitvector   (SA, DB)
    0x4  intersect, bitwise AND       (DB, DB)
    0x5  add element (set bit)
    0x6  remove element (clear bit)
    0x7  union
    0x8  difference
    0x9  cardinality of intersection
    0xA  cardinality of union
    0xB  cardinality of difference
    0xC  membership probe
"""
from __future__ import annotations

import struct
from dataclasses import dataclass

from .errors import EncodingError, TraceFormatError

CUSTOM_MARKER = 0x16

OP_INTERSECT_MERGE = 0x0
OP_INTERSECT_GALLOP = 0x1
OP_INTERSECT_AUTO = 0x2
OP_INTERSECT_SA_DB = 0x3
OP_INTERSECT_DB_DB = 0x4
OP_ADD = 0x5
OP_REMOVE = 0x6
OP_UNION = 0x7
OP_DIFFERENCE = 0x8
OP_CARD_INTERSECT = 0x9
OP_CARD_UNION = 0xA
OP_CARD_DIFFERENCE = 0xB
OP_MEMBERSHIP = 0xC

MNEMONICS = {
    OP_INTERSECT_MERGE: "and.merge",
    OP_INTERSECT_GALLOP: "and.gallop",
    OP_INTERSECT_AUTO: "and.auto",
    OP_INTERSECT_SA_DB: "and.sadb",
    OP_INTERSECT_DB_DB: "and.dbdb",
    OP_ADD: "eladd",
    OP_REMOVE: "elrem",
    OP_UNION: "or",
    OP_DIFFERENCE: "diff",
    OP_CARD_INTERSECT: "card.and",
    OP_CARD_UNION: "card.or",
    OP_CARD_DIFFERENCE: "card.diff",
    OP_MEMBERSHIP: "member",
}
OPCODES = dict((name, op) for op, name in MNEMONICS.items())

TRACE_MAGIC = b"SISA"
TRACE_VERSION = 1


@dataclass(frozen=True)
class SisaInstruction:
    opcode: int
    rs1: int = 0
    rs2: int = 0
    rd: int = 0

    @property
    def mnemonic(self) -> str:
        return MNEMONICS.get(self.opcode, f"op{self.opcode:#04x}")


def encode(instr: SisaInstruction) -> int:
    if not 0 <= instr.opcode < 0x80:
        raise EncodingError(f"opcode {instr.opcode:#x} does not fit in 7 bits")
    for name, val in (("rs1", instr.rs1), ("rs2", instr.rs2), ("rd", instr.rd)):
        if not 0 <= val < 32:
            raise EncodingError(f"{name}={val} does not fit in 5 bits")
    return (
        instr.opcode << 25
        | instr.rs2 << 20
        | instr.rs1 << 15
        | instr.rd << 7
        | CUSTOM_MARKER
    )


def decode(word: int) -> SisaInstruction:
    if not 0 <= word < 1 << 32:
        raise EncodingError(f"word {word:#x} is not a 32-bit value")
    if word & 0x7F != CUSTOM_MARKER:
        raise EncodingError(
            f"word {word:#010x}: bits [6..0] are {word & 0x7F:#04x}, "
            f"expected {CUSTOM_MARKER:#04x} (not a set instruction)"
        )
    if (word >> 12) & 0x7 != 0:
        raise EncodingError(f"word {word:#010x}: reserved funct3 bits set")
    opcode = word >> 25
    if opcode not in MNEMONICS:
        valid = ", ".join(f"{op:#x}" for op in sorted(MNEMONICS))
        raise EncodingError(f"unknown opcode {opcode:#x}; valid opcodes: {valid}")
    return SisaInstruction(
        opcode=opcode,
        rs1=(word >> 15) & 0x1F,
        rs2=(word >> 20) & 0x1F,
        rd=(word >> 7) & 0x1F,
    )


def pack_trace(instrs) -> bytes:
    """Instructions to raw little-endian 32-bit words."""
    return struct.pack(f"<{len(instrs)}I", *(encode(i) for i in instrs))


def unpack_trace(data: bytes) -> list[SisaInstruction]:
    if len(data) % 4 != 0:
        raise TraceFormatError(
            f"trace payload of {len(data)} bytes ends in a partial word"
        )
    words = struct.unpack(f"<{len(data) // 4}I", data)
    return [decode(w) for w in words]


def write_trace_file(path, instrs) -> None:
    with open(path, "wb") as f:
        f.write(TRACE_MAGIC)
        f.write(bytes([TRACE_VERSION]))
        f.write(pack_trace(instrs))


def read_trace_file(path) -> list[SisaInstruction]:
    with open(path, "rb") as f:
        data = f.read()
    if data[:4] != TRACE_MAGIC:
        raise TraceFormatError("missing SISA trace magic")
    if len(data) < 5 or data[4] != TRACE_VERSION:
        raise TraceFormatError("unsupported trace version")
    return unpack_trace(data[5:])
