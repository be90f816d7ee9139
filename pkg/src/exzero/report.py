"""JSON encoding of p-adic and cyclotomic values, and the report envelope."""
import dataclasses
import json
from fractions import Fraction

from .cyclotomic import CycloElt
from .padic import PadicInt
from .unramified import UnramifiedElt


def encode(obj):
    if isinstance(obj, PadicInt):
        return {"p": obj.p, "precision": obj.k, "digits": obj.digits()}
    if isinstance(obj, UnramifiedElt):
        if obj.f == 1:
            return {"p": obj.p, "precision": obj.k, "digits": obj.coefficients()[0].digits()}
        return {
            "p": obj.p,
            "precision": obj.k,
            "f": obj.f,
            "poly": list(obj.ring.poly),
            "digits": obj.digits(),
        }
    if isinstance(obj, CycloElt):
        return {"level": obj.M, "coefficients": [str(c) for c in obj.coeffs()]}
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return obj
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: encode(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    raise TypeError(f"cannot encode {type(obj).__name__}")


def envelope(command, params, results, counters=None, embedding=None):
    out = {"command": command, "params": params, "results": results}
    if counters is not None:
        out["counters"] = counters
    if embedding is not None:
        out["embedding"] = embedding
    return encode(out)


def dumps(report):
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=True) + "\n"
