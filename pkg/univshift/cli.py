"""Console script for univshift."""
import json
import logging
import sys
from typing import Any, Dict, List, Optional

import click
import toml

from univshift.certify.certifier import certifier
from univshift.codecs.nat import encode_config, z_coords
from univshift.codecs.patterns import decode_pattern, encode_pattern
from univshift.codecs.subshift_code import spec_to_code
from univshift.common import core
from univshift.errors import UnivShiftError
from univshift.layers.decode import resolve_operator
from univshift.layers.skeleton import format_letters, parse_letters, skeleton
from univshift.manifest import (
    build_bundle,
    bundle_record,
    is_bundle,
    load_bundle,
    load_json,
    parse_manifest,
    read_bounds,
    read_manifest,
    read_spec,
    save_bundle,
)
from univshift.operators.machine import oracle_machine
from univshift.operators.modulus import modulus_of_continuity
from univshift.operators.registry import operator_registry
from univshift.symbolic.configuration import periodic
from univshift.symbolic.words import admissible_words, sft_language
from univshift.types import partial_pattern, words_as_strings

log = logging.getLogger(__name__)


def _emit(doc: Any) -> None:
    click.echo(json.dumps(doc, sort_keys=True))


def _config_map(doc: Dict[str, Any], command: click.Group) -> Dict[str, Any]:
    top = {k: v for k, v in doc.items() if not isinstance(v, dict)}
    out: Dict[str, Any] = {}
    for name, sub in command.commands.items():
        section = doc.get(name, {})
        flat = {k: v for k, v in section.items() if not isinstance(v, dict)}
        out[name] = {**top, **flat}
        if isinstance(sub, click.Group):
            for inner in sub.commands:
                out[name][inner] = {**top, **flat, **section.get(inner, {})}
    return out


def _load_config(
    ctx: click.Context, param: click.Parameter, value: Optional[str]
) -> None:
    if value is None:
        return
    try:
        doc = toml.load(value)
    except (OSError, toml.TomlDecodeError) as err:
        raise click.BadParameter(str(err))
    assert isinstance(ctx.command, click.Group)
    ctx.default_map = _config_map(doc, ctx.command)


def _letters(text: str) -> List[int]:
    try:
        return list(parse_letters(text))
    except Exception as err:
        raise click.BadParameter(str(err))


class _domain_group(click.Group):
    """Group reporting domain errors as JSON on stderr with exit code 1."""

    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except UnivShiftError as err:
            click.echo(json.dumps(err.to_json(), sort_keys=True), err=True)
            ctx.exit(1)


@click.group(cls=_domain_group)
@click.option("-v", "--verbose", count=True, help="-v for INFO, -vv for DEBUG.")
@click.option(
    "--config",
    type=click.Path(exists=True, dir_okay=False),
    callback=_load_config,
    is_eager=True,
    expose_value=False,
    help="TOML file of option defaults.",
)
def cli(verbose: int) -> None:
    """Universal subshifts, layered skeletons and simulation certificates."""
    level = [logging.WARNING, logging.INFO, logging.DEBUG][min(verbose, 2)]
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    root = logging.getLogger("univshift")
    root.handlers = [handler]
    root.setLevel(level)


# skeleton


@cli.group("skeleton")
def skeleton_group() -> None:
    """Generate and check layered skeleton words."""


@skeleton_group.command("gen")
@click.option("--k", default=4, show_default=True, help="Coding cells per group.")
@click.option("--depth", required=True, type=int, help="Number of layers.")
@click.option("--bits", default=None, help="Hex bits, layer 1 first.")
@click.option("--fill", default="0", show_default=True, help="Letter of free cells.")
def skeleton_gen(k: int, depth: int, bits: Optional[str], fill: str) -> None:
    """Print one period of a depth N skeleton."""
    params = skeleton(k)
    fill_letter = _letters(fill)
    if len(fill_letter) != 1:
        raise click.BadParameter("fill must be one letter")
    tables = None if bits is None else params.bits_from_hex(bits, depth)
    click.echo(format_letters(params.generate(depth, tables, fill_letter[0])))


@skeleton_group.command("check")
@click.option("--k", default=4, show_default=True, help="Coding cells per group.")
@click.option("--word", "text", required=True, help="Word over L, R, 0, 1.")
@click.option("--depth", default=None, type=int, help="Layers to check.")
def skeleton_check(k: int, text: str, depth: Optional[int]) -> None:
    """Check a word against the skeleton rules."""
    params = skeleton(k)
    w = _letters(text)
    found = params.check(w, params.depth_for_length(len(w)) if depth is None else depth)
    _emit(found.to_json())


# universal


@cli.group("universal")
def universal_group() -> None:
    """Build universal bundles and read their layers."""


@universal_group.command("build")
@click.option("--targets", required=True, type=click.Path(dir_okay=False))
@click.option("--k", default=None, type=int, help="Coding cells per group.")
@click.option("--max-layer", default=None, type=int, help="Last constrained layer.")
@click.option("--prefix", default=0, show_default=True, help="Patterns to include.")
@click.option("--out", default=None, type=click.Path(dir_okay=False))
def universal_build(
    targets: str,
    k: Optional[int],
    max_layer: Optional[int],
    prefix: int,
    out: Optional[str],
) -> None:
    """Build a universal bundle from a manifest."""
    doc = load_json(targets)
    found = parse_manifest(doc)
    bundle = build_bundle(found, k, max_layer)
    described = 8 if max_layer is None else max_layer
    if out is None:
        _emit(bundle_record(bundle, doc, described, prefix))
        return
    save_bundle(bundle, doc, out, described, prefix)
    click.echo(out)


@universal_group.command("decode")
@click.option("--bundle", "path", required=True, type=click.Path(dir_okay=False))
@click.option("--layer", required=True, type=int, help="Layer n.")
@click.option("--len", "length", required=True, type=int, help="Word length.")
@click.option("--depth", default=64, show_default=True, help="Patterns avoided.")
def universal_decode(path: str, layer: int, length: int, depth: int) -> None:
    """Print the locally admissible language read by L_n."""
    bundle = load_bundle(path)
    for w in words_as_strings(bundle.decoded_language(layer, length, depth)):
        click.echo(w)


# certify


def _operator(name: str, params: skeleton) -> oracle_machine:
    try:
        return resolve_operator(name.strip(), params)
    except UnivShiftError:
        raise
    except Exception as err:
        raise click.BadParameter(str(err))


def _registry(names: str, params: skeleton) -> operator_registry:
    return operator_registry.from_list(
        [_operator(name, params) for name in names.split(",")]
    )


@cli.command("certify")
@click.option("--x", "x_path", required=True, type=click.Path(dir_okay=False))
@click.option("--registry", "names", default="auto", show_default=True)
@click.option("--g", "g_path", required=True, type=click.Path(dir_okay=False))
@click.option("--b", "b_path", default="auto", show_default=True)
@click.option("--budget", default=1000, show_default=True, help="Tuples examined.")
@click.option("--k", default=4, show_default=True, help="k of L<n> names.")
@click.option(
    "--emit", type=click.Choice(["jsonl", "json"]), default="jsonl", show_default=True
)
def certify(
    x_path: str, names: str, g_path: str, b_path: str, budget: int, k: int, emit: str
) -> None:
    """Certify the targets simulated by X."""
    G = read_manifest(g_path).targets
    B = None if b_path == "auto" else read_bounds(b_path)
    if is_bundle(x_path):
        bundle = load_bundle(x_path)
        registry = None if names == "auto" else _registry(names, bundle.params)
        found = certifier.from_bundle(bundle, G, B, registry)
    else:
        if names == "auto":
            raise click.BadParameter("--registry auto needs a bundle for --x")
        found = certifier(read_spec(x_path), _registry(names, skeleton(k)), G, B)
    claims = [c.to_json() for c in found.run(budget)]
    if emit == "json":
        _emit(claims)
        return
    for c in claims:
        _emit(c)


# codec


@cli.group("codec")
def codec_group() -> None:
    """Godel codes of patterns, subshifts and configurations."""


@codec_group.command("pattern-encode")
@click.option("--word", "text", required=True, help="Odd length word, centered.")
@click.option("--alphabet", required=True, type=int)
def pattern_encode(text: str, alphabet: int) -> None:
    """Print the code of a centered 1-D full pattern."""
    if len(text) % 2 == 0:
        raise click.BadParameter("word length must be odd")
    p = partial_pattern.from_word(text, alphabet, -(len(text) // 2))
    click.echo(encode_pattern(p).code)


@codec_group.command("pattern-decode")
@click.option("--code", required=True, type=int)
@click.option("--alphabet", required=True, type=int)
@click.option("--dimension", default=1, show_default=True)
def pattern_decode(code: int, alphabet: int, dimension: int) -> None:
    """Print the full square pattern of a code."""
    _emit(decode_pattern(code, alphabet, dimension).to_record())


@codec_group.command("z")
@click.option("--index", required=True, type=int)
@click.option("--dimension", default=1, show_default=True)
def codec_z(index: int, dimension: int) -> None:
    """Print the coordinate enumerated at an index."""
    _emit(list(z_coords(index, dimension)))


@codec_group.command("spec")
@click.option("--spec", "path", required=True, type=click.Path(dir_okay=False))
@click.option("--prefix", default=16, show_default=True)
def codec_spec(path: str, prefix: int) -> None:
    """Print a prefix of the code stream of a subshift."""
    _emit(spec_to_code(read_spec(path)).prefix(prefix))


@codec_group.command("config")
@click.option("--word", "text", required=True, help="Period of the configuration.")
@click.option("--alphabet", required=True, type=int)
@click.option("--prefix", default=16, show_default=True)
def codec_config(text: str, alphabet: int, prefix: int) -> None:
    """Print a prefix of the code stream of a periodic configuration."""
    letters = [int(ch, 36) for ch in text]
    _emit(encode_config(periodic(letters, alphabet)).prefix(prefix))


# modulus and languages


@cli.command("modulus")
@click.option("--spec", "path", required=True, type=click.Path(dir_okay=False))
@click.option("--op", required=True, help="Operator name, L<n> included.")
@click.option("--r", required=True, type=int, help="Last input.")
@click.option("--max-i", default=64, show_default=True, help="Largest level.")
@click.option("--k", default=4, show_default=True, help="k of L<n> names.")
def modulus(path: str, op: str, r: int, max_i: int, k: int) -> None:
    """Print the modulus of continuity of an operator on a subshift."""
    machine = _operator(op, skeleton(k))
    caps = core(max_modulus_i=max_i)
    found = modulus_of_continuity(machine, r, read_spec(path), caps)
    _emit(found.to_json())


@cli.command("lang")
@click.option("--spec", "path", required=True, type=click.Path(dir_okay=False))
@click.option("--len", "length", required=True, type=int, help="Word length.")
@click.option("--depth", default=None, type=int, help="Patterns avoided.")
@click.option("--exact", is_flag=True, help="Globally admissible words of an SFT.")
def lang(path: str, length: int, depth: Optional[int], exact: bool) -> None:
    """Print the words of a length of a 1-D subshift."""
    spec = read_spec(path)
    if exact:
        words = sft_language(spec, length)
    else:
        default = spec.sft_bound if spec.sft_bound is not None else 32
        words = admissible_words(spec, length, default if depth is None else depth)
    for w in words_as_strings(words):
        click.echo(w)


if __name__ == "__main__":
    sys.exit(cli())  # pragma: no cover
