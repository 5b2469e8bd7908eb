import json

import msgpack
import numpy as np
import pytest

from schurpress.estimation import ThetaState, average_variance
from schurpress.qstate import QubitState
from schurpress.schur import symmetric_encode
from schurpress.serialization.json import SchurpressJSONEncoder
from schurpress.serialization.msgpack import packb, unpackb


def dumps(obj) -> str:
    return json.dumps(obj, cls=SchurpressJSONEncoder)


@pytest.mark.unit
class TestJSONEncoder:
    def test_complex(self):
        assert json.loads(dumps(1 - 2j)) == {"re": 1.0, "im": -2.0}
        assert json.loads(dumps(np.complex128(0.5j))) == {"re": 0.0, "im": 0.5}

    def test_numpy(self):
        assert dumps(np.int64(3)) == "3"
        assert dumps(np.bool_(True)) == "true"
        assert json.loads(dumps(np.arange(3))) == [0, 1, 2]

    def test_serializable(self):
        record = json.loads(dumps(symmetric_encode(QubitState(0, 1), 1)))
        assert record == {
            "n_copies": 1,
            "packed_qubits": 1,
            "coefficients": [{"re": 0.0, "im": 0.0}, {"re": 1.0, "im": 0.0}],
        }

    def test_nested(self):
        record = json.loads(dumps({"average": average_variance(ThetaState(0.0))}))
        assert record["average"]["mean"] == pytest.approx(1 / 6)

    def test_unknown(self):
        with pytest.raises(TypeError):
            dumps(object())


@pytest.mark.unit
class TestMsgPack:
    def test_complex(self):
        assert unpackb(packb(0.25 - 1j)) == 0.25 - 1j
        assert unpackb(packb([np.complex128(1j), 2])) == [1j, 2]

    def test_serializable(self):
        record = unpackb(packb(symmetric_encode(QubitState(0, 1), 1)))
        assert record["coefficients"] == [0j, 1 + 0j]
        assert record["packed_qubits"] == 1

    def test_numpy(self):
        assert unpackb(packb({"counts": np.array([4, 5])})) == {"counts": [4, 5]}
        assert unpackb(packb(np.float64(0.5))) == 0.5

    def test_unknown_extension(self):
        with pytest.raises(ValueError, match="extension code"):
            unpackb(msgpack.packb(msgpack.ExtType(7, b"")))
