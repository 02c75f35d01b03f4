"""Command-line entry point: thin argument parsing over the core package."""

from __future__ import annotations

import json
import sys

import click

from .colorspace import default_partition, load_partition
from .corpus import CorpusConfig, generate_corpus, iter_image_dir, write_corpus
from .descriptor import extract_descriptor, load_image
from .errors import ColorHarmonyError, DataValidationError, InvalidStateError, NotFoundError
from .evaluation import (difference_report, format_report_table, load_pair_fixtures,
                         load_query_fixtures, precision_recall_report)
from .miner import MinerConfig, load_kb, mine, save_convergence_csv, save_kb
from .preference import load_look, load_profile, predict_preference, rank_catalog
from .preference import ApparelItem
from .similarity import ColorDistanceTable
from .store import load_catalog_file


def _dump(obj) -> None:
    click.echo(json.dumps(obj, indent=2, sort_keys=True))


def _partition_from(path):
    return load_partition(path) if path else default_partition()


@click.group()
def cli():
    """Fuzzy color palettes, harmony mining, and look preference scoring."""


@cli.command()
@click.argument("image", type=click.Path(exists=True, dir_okay=False))
@click.option("--partition", "partition_path", type=click.Path(exists=True, dir_okay=False),
              help="Partition JSON; defaults to the built-in 92-color partition.")
def extract(image, partition_path):
    """Print the fuzzy dominant color descriptor of IMAGE."""
    partition = _partition_from(partition_path)
    descriptor = extract_descriptor(load_image(image), partition)
    _dump(descriptor.to_json_dict())


@cli.command("mine")
@click.argument("corpus_dir", type=click.Path(exists=True, file_okay=False))
@click.option("--threshold", type=float, default=0.25, show_default=True,
              help="Difference threshold for founding a new group.")
@click.option("--min-size", type=int, default=10, show_default=True,
              help="Members needed to promote a group to a palette.")
@click.option("--min-weight", type=float, default=0.1, show_default=True,
              help="Mean weight below which a color is dropped from a palette.")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default="kb.json",
              show_default=True, help="Where to write the palette knowledge base.")
@click.option("--curve", "curve_path", type=click.Path(dir_okay=False),
              help="Optional CSV of the group-founding convergence curve.")
@click.option("--curve-bucket", type=int, default=1000, show_default=True)
@click.option("--partition", "partition_path", type=click.Path(exists=True, dir_okay=False))
def mine_command(corpus_dir, threshold, min_size, min_weight, out_path,
                 curve_path, curve_bucket, partition_path):
    """Mine harmonious palettes from the images in CORPUS_DIR."""
    partition = _partition_from(partition_path)
    cfg = MinerConfig(threshold=threshold, min_group_size=min_size,
                      min_palette_weight=min_weight)
    _groups, palettes, stats = mine(iter_image_dir(corpus_dir), partition, cfg)
    save_kb(palettes, out_path)
    if curve_path:
        save_convergence_csv(stats, curve_path, bucket=curve_bucket)
    _dump(stats.to_json_dict())


@cli.command()
@click.option("--look", "look_path", type=click.Path(exists=True, dir_okay=False),
              required=True, help="Look JSON file.")
@click.option("--user", "user_path", type=click.Path(exists=True, dir_okay=False),
              help="Profile JSON file; mutually exclusive with --guest.")
@click.option("--guest", is_flag=True, help="Score without a profile.")
@click.option("--kb", "kb_path", type=click.Path(exists=True, dir_okay=False),
              required=True, help="Palette knowledge base JSON.")
@click.option("--partition", "partition_path", type=click.Path(exists=True, dir_okay=False))
def score(look_path, user_path, guest, kb_path, partition_path):
    """Predict the preference score of a look."""
    if user_path and guest:
        raise click.UsageError("--user and --guest are mutually exclusive")
    if not user_path and not guest:
        raise click.UsageError("provide --user PROFILE or --guest")
    partition = _partition_from(partition_path)
    table = ColorDistanceTable.from_partition(partition)
    look = load_look(look_path)
    user = load_profile(user_path) if user_path else None
    kb = load_kb(kb_path)
    result = predict_preference(look, user, kb, table)
    _dump(result.to_json_dict())


@cli.command()
@click.option("--anchor", "anchor_path", type=click.Path(exists=True, dir_okay=False),
              required=True, help="Anchor look JSON file.")
@click.option("--catalog", "catalog_path", type=click.Path(exists=True, dir_okay=False),
              required=True, help="Catalog JSON file.")
@click.option("--user", "user_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--kb", "kb_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--role", type=str, help="Only rank candidates with this role.")
@click.option("--label", type=str, help="Only rank candidates with this label.")
@click.option("--partition", "partition_path", type=click.Path(exists=True, dir_okay=False))
def rank(anchor_path, catalog_path, user_path, kb_path, role, label, partition_path):
    """Rank catalog items by how well they complete the anchor look."""
    partition = _partition_from(partition_path)
    table = ColorDistanceTable.from_partition(partition)
    anchor = load_look(anchor_path)
    user = load_profile(user_path) if user_path else None
    kb = load_kb(kb_path)
    items = load_catalog_file(catalog_path)
    if role:
        items = [i for i in items if i.role.value == role]
    if label:
        items = [i for i in items if i.label == label]
    if not items:
        raise DataValidationError("no catalog items match the filter")
    candidates = [ApparelItem(role=i.role, color=i.descriptor) for i in items]
    ranked = rank_catalog(anchor, candidates, user, kb, table)
    by_candidate = {id(c): i for c, i in zip(candidates, items)}
    _dump([{"item_id": by_candidate[id(c)].item_id,
            "name": by_candidate[id(c)].name,
            "role": by_candidate[id(c)].role.value,
            "score": s.to_json_dict()} for c, s in ranked])


@cli.group("eval")
def eval_group():
    """Retrieval and prediction quality metrics."""


@eval_group.command("pr")
@click.option("--fixtures", "fixtures_path", type=click.Path(exists=True, dir_okay=False),
              required=True, help="Query fixtures JSON.")
@click.option("--table", "as_table", is_flag=True, help="Plain-text table instead of JSON.")
def eval_pr(fixtures_path, as_table):
    """Averaged precision/recall and their ratio."""
    report = precision_recall_report(load_query_fixtures(fixtures_path))
    click.echo(format_report_table(report) if as_table
               else json.dumps(report, indent=2, sort_keys=True))


@eval_group.command("diff")
@click.option("--pairs", "pairs_path", type=click.Path(exists=True, dir_okay=False),
              required=True, help="Preference pair fixtures JSON.")
@click.option("--table", "as_table", is_flag=True, help="Plain-text table instead of JSON.")
def eval_diff(pairs_path, as_table):
    """Mean absolute difference between real and predicted preference."""
    report = difference_report(load_pair_fixtures(pairs_path))
    click.echo(format_report_table(report) if as_table
               else json.dumps(report, indent=2, sort_keys=True))


@cli.command("gen-corpus")
@click.option("--palettes", type=int, default=8, show_default=True)
@click.option("--images", type=int, default=500, show_default=True)
@click.option("--noise", type=float, default=0.05, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--size", type=int, default=48, show_default=True,
              help="Side length in pixels of each generated image.")
@click.option("--out", "out_dir", type=click.Path(file_okay=False), required=True)
@click.option("--partition", "partition_path", type=click.Path(exists=True, dir_okay=False))
def gen_corpus(palettes, images, noise, seed, size, out_dir, partition_path):
    """Generate a synthetic planted-palette corpus with a ground-truth manifest."""
    partition = _partition_from(partition_path)
    cfg = CorpusConfig(palettes=palettes, images=images, noise=noise,
                       seed=seed, image_size=size)
    corpus = generate_corpus(partition, cfg)
    manifest = write_corpus(corpus, out_dir)
    _dump({"out_dir": out_dir, "manifest": str(manifest),
           "images": len(corpus.images), "palettes": len(corpus.palettes)})


@cli.command()
@click.option("--store", "store_dir", type=click.Path(file_okay=False), required=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--partition", "partition_path", type=click.Path(exists=True, dir_okay=False))
def serve(store_dir, host, port, partition_path):
    """Run the HTTP service over a store directory."""
    import uvicorn

    from .service import create_app

    app = create_app(store_dir, partition=_partition_from(partition_path))
    uvicorn.run(app, host=host, port=port)


def _fail(code: str, message: str) -> None:
    sys.stderr.write(json.dumps({"error": {"code": code, "message": message}}) + "\n")


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.exceptions.Abort:
        _fail("usage", "aborted")
        return 1
    except click.ClickException as exc:
        _fail("usage", exc.format_message())
        return 1
    except (DataValidationError, NotFoundError, InvalidStateError) as exc:
        _fail("data", str(exc))
        return 2
    except ColorHarmonyError as exc:
        _fail("internal", str(exc))
        return 3
    except Exception as exc:  # pragma: no cover - defensive
        _fail("internal", f"{type(exc).__name__}: {exc}")
        return 3


if __name__ == "__main__":
    sys.exit(main())
