"""Reading bound quivers, slices and tubes from files.

A slice or tube file is JSON.  Module entries are one of::

    {"projective": "4", "kill": [["β", "μ"]]}   # P_4 / <βμ>
    {"projective": "1", "radical": true}          # rad P_1
    {"injective": "2"}
    {"simple": "4"}
    {"dims": {...}, "matrices": {...}}            # raw representation

An optional ``"expect"`` key holds the Loewy label the entry must produce.
Slice files are ``{"modules": [...]}``; tube files add ``"knit": depth``.
"""

import json

from .errors import ClusterTiltError, ParseError
from .modules import (Representation, cyclic_quotient, injective, projective,
                      radical, simple)
from .quiver import parse_bound_quiver


def read_quiver(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None
    return parse_bound_quiver(text)


def read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: {e.msg}", e.lineno, e.colno) from None


def module_from_entry(A, entry):
    """Build one C-module from a JSON entry.

    Args:
        A: path basis of C.
        entry: dict as described in the module docstring.
    """
    if not isinstance(entry, dict):
        raise ParseError(f"module entry must be an object, got {entry!r}")
    C = A.quiver
    if "projective" in entry:
        x = str(entry["projective"])
        C.check_vertex(x)
        kill = entry.get("kill", [])
        M = cyclic_quotient(A, x, [tuple(p) for p in kill]) if kill else projective(A, x)
        if entry.get("radical"):
            M = radical(M)
    elif "injective" in entry:
        x = str(entry["injective"])
        C.check_vertex(x)
        M = injective(A, x)
    elif "simple" in entry:
        x = str(entry["simple"])
        C.check_vertex(x)
        M = simple(C, x)
    elif "dims" in entry:
        M = Representation.from_json(C, entry)
    else:
        raise ParseError(f"module entry needs projective, injective, simple or dims: {entry!r}")
    want = entry.get("expect")
    if want is not None and M.loewy_label() != want:
        raise ParseError(f"entry {entry!r} gives {M.loewy_label()}, expected {want}")
    return M


def modules_from_file(A, data):
    if isinstance(data, list):
        data = {"modules": data}
    if not isinstance(data, dict) or not isinstance(data.get("modules"), list):
        raise ParseError("expected an object with a 'modules' list")
    out = []
    for k, e in enumerate(data["modules"]):
        try:
            out.append(module_from_entry(A, e))
        except ParseError:
            raise
        except ClusterTiltError as err:
            raise ParseError(f"module {k}: {err}") from None
    return out
