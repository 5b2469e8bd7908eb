import struct

import msgpack
import numpy as np

from schurpress.serialization.abc import JSONSerializable

COMPLEX = struct.Struct(">dd")


def msgpack_encode(obj):
    match obj:
        case c if isinstance(c, (complex, np.complexfloating)):
            return msgpack.ExtType(1, COMPLEX.pack(float(c.real), float(c.imag)))
        case scalar if isinstance(scalar, (np.integer, np.floating, np.bool_)):
            return scalar.item()
        case array if isinstance(array, np.ndarray):
            return [msgpack_encode(item) for item in array.tolist()]
        case record if isinstance(record, JSONSerializable):
            return msgpack_encode(record.__json__())
        case mapping if isinstance(obj, dict):
            return {msgpack_encode(k): msgpack_encode(v) for k, v in mapping.items()}
        case array if isinstance(obj, (list, tuple)):
            return [msgpack_encode(item) for item in array]
        case _:
            return obj


def msgpack_decode(code, data):
    match code:
        case 1:  # complex
            return complex(*COMPLEX.unpack(data))
        case _:
            raise ValueError(f"Unknown msgpack extension code: {code}")


def packb(obj) -> bytes:
    return msgpack.packb(msgpack_encode(obj))


def unpackb(data: bytes):
    return msgpack.unpackb(data, ext_hook=msgpack_decode)
