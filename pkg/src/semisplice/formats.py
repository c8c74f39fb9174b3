"""Line-oriented and JSON serializations of DFAs.

Text layout::

    # comment
    alphabet: a b c
    states: 4
    start: 0
    finals: 3
    trans: 0 a 1
    ...

Edges that are not listed go to a sink, which :func:`complete` adds on load.
:func:`dumps_dfa` writes every edge of a complete DFA, so
``loads_dfa(dumps_dfa(d)) == d`` and dumping is byte-stable.
"""

from __future__ import annotations

import json
import os
import tempfile

from .automata import AutomatonError, Dfa, complete


class FormatError(AutomatonError):
    pass


def dumps_dfa(dfa: Dfa) -> str:
    lines = [
        "alphabet: " + " ".join(dfa.alphabet),
        f"states: {dfa.n}",
        f"start: {dfa.start}",
        "finals: " + " ".join(str(q) for q in sorted(dfa.finals)),
    ]
    for q, a, r in dfa.edges():
        lines.append(f"trans: {q} {a} {r}")
    return "\n".join(lines) + "\n"


def loads_dfa(text: str, *, complete_missing: bool = True) -> Dfa:
    fields: dict[str, list[str]] = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep:
            raise FormatError(f"line {lineno}: expected 'key: value'")
        parts = rest.split()
        if key == "trans":
            if len(parts) != 3:
                raise FormatError(f"line {lineno}: expected 'trans: q symbol q2'")
            try:
                edges.append((int(parts[0]), parts[1], int(parts[2])))
            except ValueError:
                raise FormatError(f"line {lineno}: bad state number") from None
        elif key in ("alphabet", "states", "start", "finals"):
            if key in fields:
                raise FormatError(f"line {lineno}: duplicate '{key}'")
            fields[key] = parts
        else:
            raise FormatError(f"line {lineno}: unknown key '{key}'")
    for key in ("alphabet", "states", "start"):
        if key not in fields:
            raise FormatError(f"missing '{key}:' line")
    try:
        n = int(fields["states"][0])
        start = int(fields["start"][0])
        finals = [int(x) for x in fields.get("finals", [])]
    except (ValueError, IndexError):
        raise FormatError("bad number in header") from None
    for q, _, r in edges:
        if not (0 <= q < n and 0 <= r < n):
            raise FormatError(f"transition {q}->{r} out of range for {n} states")
    dfa = Dfa.from_edges(fields["alphabet"], n, start, finals, edges)
    return complete(dfa) if complete_missing else dfa


def dfa_to_json(dfa: Dfa) -> dict:
    return {
        "alphabet": list(dfa.alphabet),
        "states": dfa.n,
        "start": dfa.start,
        "finals": sorted(dfa.finals),
        "transitions": [[q, a, r] for q, a, r in dfa.edges()],
    }


def dfa_from_json(obj: dict, *, complete_missing: bool = True) -> Dfa:
    try:
        n = int(obj["states"])
        edges = [(int(q), str(a), int(r)) for q, a, r in obj.get("transitions", [])]
        dfa = Dfa.from_edges(obj["alphabet"], n, int(obj["start"]),
                             [int(q) for q in obj.get("finals", [])], edges)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed DFA object: {exc}") from None
    return complete(dfa) if complete_missing else dfa


def dumps_json(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"


def write_atomic(path: str, data: str) -> None:
    """Write ``data`` to a temp file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save_dfa(dfa: Dfa, path: str) -> None:
    if path.endswith(".json"):
        write_atomic(path, dumps_json(dfa_to_json(dfa)))
    else:
        write_atomic(path, dumps_dfa(dfa))


def load_dfa(path: str) -> Dfa:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if path.endswith(".json"):
        try:
            return dfa_from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: {exc}") from None
    return loads_dfa(text)


# ---------------------------------------------------------------------------
# system bundles: {"variant", "markers", "initial", "metadata", "construction"?}

def bundle_to_json(system, metadata: dict | None = None, construction: Dfa | None = None) -> dict:
    obj = {
        "variant": system.variant.value,
        "markers": [str(m) for m in system.markers],
        "initial": dfa_to_json(system.initial),
        "metadata": dict(metadata or {}),
    }
    if construction is not None:
        obj["construction"] = dfa_to_json(construction)
    return obj


def bundle_from_json(obj: dict):
    """Return ``(system, metadata, construction_or_None)``; the system is
    validated before it is returned."""
    from .splicing import SplicingSystem, parse_markers, require_valid
    if not isinstance(obj, dict):
        raise FormatError("bundle must be a JSON object")
    try:
        markers = obj.get("markers", [])
        if isinstance(markers, str):
            markers = parse_markers(markers)
        else:
            markers = [m for item in markers for m in parse_markers(item)]
        system = SplicingSystem(obj["variant"], dfa_from_json(obj["initial"]), markers)
    except KeyError as exc:
        raise FormatError(f"bundle is missing {exc}") from None
    except (TypeError, ValueError) as exc:
        raise FormatError(f"malformed bundle: {exc}") from None
    require_valid(system)
    construction = obj.get("construction")
    if construction is not None:
        construction = dfa_from_json(construction)
    return system, dict(obj.get("metadata", {})), construction


def save_bundle(path: str, system, metadata=None, construction=None) -> None:
    write_atomic(path, dumps_json(bundle_to_json(system, metadata, construction)))


def load_bundle(path: str):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from None
    return bundle_from_json(obj)
