import json

import numpy as np

from schurpress.serialization.abc import JSONSerializable


class SchurpressJSONEncoder(json.JSONEncoder):
    def default(self, o):
        match o:
            case c if isinstance(c, (complex, np.complexfloating)):
                return {"re": float(c.real), "im": float(c.imag)}
            case scalar if isinstance(scalar, (np.integer, np.floating, np.bool_)):
                return scalar.item()
            case array if isinstance(array, np.ndarray):
                return array.tolist()
            case record if isinstance(record, JSONSerializable):
                return record.__json__()
            case _:
                return super().default(o)
