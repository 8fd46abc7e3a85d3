"""Command line: `gnn-eval train` fits a classifier to a benchmark file,
`gnn-eval explain` loads it back and writes importance-mask files."""

from __future__ import annotations

import logging
import sys
from pathlib import Path

import click
import torch

from gnn_eval.data import load_benchmark
from gnn_eval.masks import export_masks
from gnn_eval.model import Gin
from gnn_eval.train import full_grid, reduced_grid, train_and_select

log = logging.getLogger("gnn_eval")


@click.group()
def cli():
    """Train classifiers on benchmark files and export explainer masks."""


@cli.command()
@click.option("--benchmark", required=True, type=click.Path(exists=True))
@click.option("--out", required=True, type=click.Path(),
              help="Where to save the selected model (.pt).")
@click.option("--grid", type=click.Choice(["full", "reduced"]),
              default="reduced", show_default=True)
@click.option("--seed", default=0, show_default=True)
def train(benchmark, out, grid, seed):
    """Grid-search a classifier and keep the best validation-F1 model."""
    data = load_benchmark(benchmark)
    configs = full_grid() if grid == "full" else reduced_grid()
    best = train_and_select(data, grid=configs, seed=seed)
    log.info("selected %s: train F1 %.3f, valid F1 %.3f, test F1 %.3f",
             best.config, best.train_f1, best.valid_f1, best.test_f1)
    if not best.converged:
        log.warning("best validation F1 below 0.6; model saved anyway")
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    torch.save({
        "state_dict": best.model.state_dict(),
        "config": {
            "learning_rate": best.config.learning_rate,
            "layers": best.config.layers,
            "hidden": best.config.hidden,
            "weight_decay": best.config.weight_decay,
        },
        "feature_dim": data.feature_dim,
        "benchmark_fingerprint": data.fingerprint,
        "scores": {"train_f1": best.train_f1, "valid_f1": best.valid_f1,
                   "test_f1": best.test_f1},
    }, out)
    log.info("model saved to %s", out)


def load_model(path):
    payload = torch.load(path, weights_only=True)
    config = payload["config"]
    model = Gin(payload["feature_dim"], config["hidden"], config["layers"])
    model.load_state_dict(payload["state_dict"])
    model.eval()
    return model, payload


@cli.command()
@click.option("--benchmark", required=True, type=click.Path(exists=True))
@click.option("--model", "model_path", required=True,
              type=click.Path(exists=True))
@click.option("--methods", default="random,saliency,intgrad,cam,gnnexplainer",
              show_default=True, help="Comma-separated explainer names.")
@click.option("--out", required=True, type=click.Path(),
              help="Directory for the mask files.")
@click.option("--seed", default=0, show_default=True)
@click.option("--ig-steps", default=64, show_default=True)
@click.option("--gnnexplainer-epochs", default=200, show_default=True)
def explain(benchmark, model_path, methods, out, seed, ig_steps,
            gnnexplainer_epochs):
    """Write one importance-mask file per explainer over the test split."""
    data = load_benchmark(benchmark)
    model, payload = load_model(model_path)
    if payload.get("benchmark_fingerprint") not in (None, data.fingerprint):
        raise click.ClickException(
            "model was trained on a different benchmark file "
            f"({payload['benchmark_fingerprint']} != {data.fingerprint})"
        )
    names = [m.strip() for m in methods.split(",") if m.strip()]
    written = export_masks(model, data, names, out, seed=seed,
                           ig_steps=ig_steps,
                           gnnexplainer_epochs=gnnexplainer_epochs)
    for path in written:
        log.info("wrote %s", path)


def main(argv=None):
    logging.basicConfig(stream=sys.stderr, level=logging.INFO,
                        format="%(levelname)s %(message)s")
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.UsageError as e:
        e.show(file=sys.stderr)
        return 2
    except click.ClickException as e:
        log.error("%s", e.message)
        return 3
    except (ValueError, OSError) as e:
        log.error("%s", e)
        return 2
    except Exception as e:  # pragma: no cover - defensive
        log.exception("internal error: %s", e)
        return 1


if __name__ == "__main__":
    sys.exit(main())
