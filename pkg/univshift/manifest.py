"""JSON manifests of subshifts and persisted universal bundles."""
import json
import logging
import re
from typing import Any, Dict, List, NamedTuple, Optional, Union

from univshift.codecs.nat import nat_stream
from univshift.codecs.subshift_code import code_to_spec
from univshift.errors import ManifestError
from univshift.layers.skeleton import skeleton
from univshift.symbolic.subshift import (
    forbid_words,
    fullshift,
    fullshift_sft,
    golden_mean,
    no00no11,
    subshift,
)
from univshift.types import partial_pattern
from univshift.universal.builder import (
    build_layered,
    build_universal_1d,
    universal_bundle,
)

log = logging.getLogger(__name__)

CAP_KEYS = ["enumeration_cap", "step_budget", "max_modulus_i", "max_windows"]

Entry = Union[str, Dict[str, Any]]


class manifest(NamedTuple):
    """Targets and global options read from a manifest file."""

    targets: List[subshift]
    entries: List[Entry]
    layers: Dict[int, subshift]
    k: Optional[int]
    caps: Dict[str, int]


def load_json(path: str) -> Any:
    """Read a JSON file.

    Args:
        path (str): file path

    Returns:
        Any: decoded document

    Raises:
        ManifestError: If the file is missing or not JSON
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except OSError as err:
        raise ManifestError(f"cannot read {path}: {err}")
    except json.JSONDecodeError as err:
        raise ManifestError(f"{path} is not valid JSON: {err}")


def builtin_spec(name: str) -> subshift:
    """Built-in subshift from its manifest name.

    Names: ``golden_mean``, ``no00no11``, ``fullshift:<s>``,
    ``fullshift_sft:<s>``, ``forbid:<word>`` and ``skeleton:<k>``, with or
    without the ``builtin:`` prefix.

    Args:
        name (str): name

    Returns:
        subshift: built-in subshift

    Raises:
        ManifestError: If the name is unknown
    """
    key = name[len("builtin:") :] if name.startswith("builtin:") else name
    if key == "golden_mean":
        return golden_mean()
    if key == "no00no11":
        return no00no11()
    sized = re.fullmatch(r"(fullshift|fullshift_sft):(\d+)", key)
    if sized:
        size = int(sized.group(2))
        if size < 1:
            raise ManifestError(f"{name}: alphabet must not be empty")
        return fullshift(size) if sized.group(1) == "fullshift" else fullshift_sft(size)
    word = re.fullmatch(r"forbid:([01]+)", key)
    if word:
        return forbid_words([word.group(1)], 2, key)
    layered = re.fullmatch(r"skeleton:(\d+)", key)
    if layered:
        try:
            return skeleton(int(layered.group(1))).spec()
        except Exception as err:
            raise ManifestError(f"{name}: {err}")
    raise ManifestError(f"unknown builtin subshift {name}")


def _record(record: Any, size: int, dimension: int) -> partial_pattern:
    if isinstance(record, dict) and "word" in record:
        if dimension != 1:
            raise ManifestError("word records need dimension 1")
        return partial_pattern.from_word(str(record["word"]), size)
    if isinstance(record, dict) and "cells" in record:
        cells = {tuple(coord): int(letter) for coord, letter in record["cells"]}
        return partial_pattern(cells, size, dimension)
    raise ManifestError(f"pattern record {record} has neither word nor cells")


def parse_entry(entry: Entry, name: Optional[str] = None) -> subshift:
    """Subshift of one manifest entry.

    An entry is a builtin name, an inline spec ``{"alphabet", "dimension",
    "forbidden", "sft"}`` or a code prefix ``{"code": [...], "sft"}``.

    Args:
        entry (str, Dict): manifest entry
        name (str): display name for inline entries

    Returns:
        subshift: subshift

    Raises:
        ManifestError: If the entry is malformed
    """
    if isinstance(entry, str):
        return builtin_spec(entry)
    if not isinstance(entry, dict):
        raise ManifestError(f"manifest entry {entry!r} is not a name or object")
    name = entry.get("name", name or "manifest")
    try:
        if "code" in entry:
            values = [int(v) for v in entry["code"]]
            if len(values) < 3:
                raise ManifestError("a code prefix needs a header and one pattern")
            bound = len(values) - 2 if entry.get("sft", True) else None
            return code_to_spec(nat_stream.from_values(values), bound, name)
        size = int(entry["alphabet"])
        dimension = int(entry.get("dimension", 1))
        patterns = [_record(r, size, dimension) for r in entry.get("forbidden", [])]
        return subshift(
            size, dimension, patterns, sft=bool(entry.get("sft", True)), name=name
        )
    except KeyError as err:
        raise ManifestError(f"manifest entry {name} misses {err}")
    except ManifestError:
        raise
    except Exception as err:
        raise ManifestError(f"manifest entry {name}: {err}")


def _caps(options: Dict[str, Any]) -> Dict[str, int]:
    caps = options.get("caps", {})
    unknown = sorted(set(caps) - set(CAP_KEYS))
    if unknown:
        raise ManifestError(f"unknown caps {unknown}")
    return {key: int(value) for key, value in caps.items()}


def parse_manifest(doc: Any) -> manifest:
    """Manifest from a decoded JSON document.

    A document is a list of entries, a single inline spec, or an object
    with ``targets`` (list) or ``layers`` (layer to entry) and the optional
    ``k`` and ``caps``.

    Args:
        doc (Any): decoded JSON

    Returns:
        manifest: parsed manifest

    Raises:
        ManifestError: If the document is malformed
    """
    if isinstance(doc, list):
        doc = {"targets": doc}
    elif isinstance(doc, str) or (
        isinstance(doc, dict) and ("alphabet" in doc or "code" in doc)
    ):
        doc = {"targets": [doc]}
    if not isinstance(doc, dict):
        raise ManifestError("manifest must be a list or an object")
    entries = list(doc.get("targets", []))
    targets = [parse_entry(e, f"target{i}") for i, e in enumerate(entries, start=1)]
    try:
        layers = {
            int(n): parse_entry(e, f"layer{n}")
            for n, e in doc.get("layers", {}).items()
        }
    except ValueError as err:
        raise ManifestError(f"layer keys must be integers: {err}")
    if not targets and not layers:
        raise ManifestError("manifest names no subshift")
    k = doc.get("k")
    log.debug("manifest with %d targets and %d layers", len(targets), len(layers))
    return manifest(targets, entries, layers, None if k is None else int(k), _caps(doc))


def read_manifest(path: str) -> manifest:
    """Read a manifest file.

    Args:
        path (str): JSON file

    Returns:
        manifest: parsed manifest
    """
    return parse_manifest(load_json(path))


def read_spec(path: str) -> subshift:
    """Read a single subshift, the first target of a manifest.

    Args:
        path (str): JSON file

    Returns:
        subshift: first target
    """
    found = read_manifest(path)
    if found.targets:
        return found.targets[0]
    return found.layers[min(found.layers)]


def read_bounds(path: str) -> Dict[int, int]:
    """Precision bounds from a JSON list (b_1, b_2, ...) or an index map.

    Args:
        path (str): JSON file

    Returns:
        Dict[int, int]: target index to b

    Raises:
        ManifestError: If the document is malformed
    """
    doc = load_json(path)
    try:
        if isinstance(doc, list):
            return {i: int(b) for i, b in enumerate(doc, start=1)}
        return {int(i): int(b) for i, b in doc.items()}
    except (AttributeError, TypeError, ValueError):
        raise ManifestError(f"{path} is not a list or map of precision bounds")


def bundle_record(
    bundle: universal_bundle,
    source: Dict[str, Any],
    max_layer: int = 8,
    prefix: int = 0,
) -> Dict[str, Any]:
    """JSON record of a bundle, with what is needed to rebuild it.

    Args:
        bundle (universal_bundle): bundle
        source (Dict): manifest document the bundle was built from
        max_layer (int): layers described
        prefix (int): forbidden patterns included

    Returns:
        Dict: bundle record
    """
    record = bundle.to_json(max_layer, prefix)
    record["source"] = source
    record["max_layer"] = bundle.max_layer
    record["caps"] = {key: getattr(bundle, key) for key in CAP_KEYS}
    return record


def build_bundle(
    found: manifest, k: Optional[int] = None, max_layer: Optional[int] = None
) -> universal_bundle:
    """Bundle of a manifest: explicit layers, or a universal over its targets.

    Args:
        found (manifest): manifest
        k (int): skeleton k, default the manifest's or 4
        max_layer (int): last constrained layer

    Returns:
        universal_bundle: bundle
    """
    params = skeleton(k or found.k or 4)
    if found.layers:
        return build_layered(params, found.layers, **found.caps)
    return build_universal_1d(found.targets, params, max_layer, **found.caps)


def save_bundle(
    bundle: universal_bundle,
    source: Dict[str, Any],
    path: str,
    max_layer: int = 8,
    prefix: int = 0,
) -> Dict[str, Any]:
    """Write a bundle record.

    Args:
        bundle (universal_bundle): bundle
        source (Dict): manifest document
        path (str): output file
        max_layer (int): layers described
        prefix (int): forbidden patterns included

    Returns:
        Dict: the record written
    """
    record = bundle_record(bundle, source, max_layer, prefix)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(record, f, indent=2, sort_keys=True)
        f.write("\n")
    log.info("bundle written to %s", path)
    return record


def load_bundle(path: str) -> universal_bundle:
    """Rebuild a bundle from its record.

    Args:
        path (str): bundle file

    Returns:
        universal_bundle: bundle

    Raises:
        ManifestError: If the file is not a bundle record
    """
    doc = load_json(path)
    if not isinstance(doc, dict) or "source" not in doc or "k" not in doc:
        raise ManifestError(f"{path} is not a bundle")
    found = parse_manifest(doc["source"])
    found.caps.update({key: int(v) for key, v in doc.get("caps", {}).items()})
    return build_bundle(found, int(doc["k"]), doc.get("max_layer"))


def is_bundle(path: str) -> bool:
    """Whether a JSON file holds a bundle record.

    Args:
        path (str): file

    Returns:
        bool: True for bundle records
    """
    doc = load_json(path)
    return isinstance(doc, dict) and "source" in doc and "assignment" in doc
