"""JSON formats for states and channels.

Dense state form:
    { "d": d, "n": n, "matrix": { "re": [[..]], "im": [[..]] } }   (row-major)
Sparse characteristic form:
    { "d": d, "n": n, "char": [ { "p": [..], "q": [..], "re": r, "im": i }, .. ] }
Channel files mirror the state format on the Choi matrix with
"kind": "choi" and "n_doubled" = 2n.  Readers accept either form.
"""

from __future__ import annotations

import json

import numpy as np

from .channels import Channel, channel_from_choi
from .config import config
from .errors import IncompatibleError
from .states import CharTable, State, char_function, from_char, make_state


def _matrix_to_json(mat: np.ndarray) -> dict:
    return {"re": mat.real.tolist(), "im": mat.imag.tolist()}


def _matrix_from_json(obj: dict) -> np.ndarray:
    return np.array(obj["re"], dtype=float) + 1j * np.array(obj["im"], dtype=float)


def _char_entries(state: State) -> list:
    table = char_function(state)
    n = state.n
    entries = []
    for idx in np.argwhere(np.abs(table.values) > config.tol_supp):
        v = table.values[tuple(idx)]
        entries.append(
            {
                "p": [int(x) for x in idx[:n]],
                "q": [int(x) for x in idx[n:]],
                "re": float(v.real),
                "im": float(v.imag),
            }
        )
    return entries


def state_to_json(state: State, form: str = "dense") -> dict:
    if form == "dense":
        return {"d": state.d, "n": state.n, "matrix": _matrix_to_json(state.mat)}
    if form == "char":
        return {"d": state.d, "n": state.n, "char": _char_entries(state)}
    raise IncompatibleError(f"unknown state form {form!r}")


def state_from_json(obj: dict) -> State:
    d, n = int(obj["d"]), int(obj["n"])
    if "matrix" in obj:
        return make_state(_matrix_from_json(obj["matrix"]), d, n)
    if "char" in obj:
        values = np.zeros((d,) * (2 * n), dtype=complex)
        for entry in obj["char"]:
            idx = tuple(int(v) % d for v in entry["p"]) + tuple(int(v) % d for v in entry["q"])
            values[idx] = entry["re"] + 1j * entry["im"]
        return make_state(from_char(CharTable(d=d, n=n, values=values)), d, n)
    raise IncompatibleError("state JSON needs a 'matrix' or 'char' field")


def write_state(state: State, path: str, form: str = "dense") -> None:
    with open(path, "w") as fh:
        json.dump(state_to_json(state, form), fh, sort_keys=True)
        fh.write("\n")


def read_state(path: str) -> State:
    with open(path) as fh:
        return state_from_json(json.load(fh))


def channel_to_json(channel: Channel, form: str = "dense") -> dict:
    obj = state_to_json(channel.choi, form)
    return {
        "kind": "choi",
        "d": channel.d,
        "n": channel.n,
        "n_doubled": 2 * channel.n,
        **{k: v for k, v in obj.items() if k not in ("d", "n")},
    }


def channel_from_json(obj: dict) -> Channel:
    if obj.get("kind") != "choi":
        raise IncompatibleError("channel JSON needs kind = 'choi'")
    d, n = int(obj["d"]), int(obj["n"])
    body = {"d": d, "n": int(obj.get("n_doubled", 2 * n))}
    for key in ("matrix", "char"):
        if key in obj:
            body[key] = obj[key]
    choi = state_from_json(body)
    return channel_from_choi(choi)


def write_channel(channel: Channel, path: str, form: str = "dense") -> None:
    with open(path, "w") as fh:
        json.dump(channel_to_json(channel, form), fh, sort_keys=True)
        fh.write("\n")


def read_channel(path: str) -> Channel:
    with open(path) as fh:
        return channel_from_json(json.load(fh))
