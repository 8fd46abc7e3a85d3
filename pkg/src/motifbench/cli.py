"""Command-line interface.

Subcommands: `generate` (dataset -> benchmark files + summary), `split`
(re-split an existing benchmark), `evaluate` (benchmarks + mask files ->
plausibility tables, rank statistics, figures), `rank` (precomputed score
matrix -> rank statistics + critical difference diagram).

Exit codes: 0 success, 1 internal error, 2 input error, 3 integrity error.
Data goes to files; logs go to stderr.
"""

from __future__ import annotations

import json
import logging
import sys
from pathlib import Path

import click

from motifbench import bench_io, report
from motifbench.errors import (
    InputError,
    IntegrityError,
    MotifBenchError,
    SchemaVersionError,
)
from motifbench.generate import enumerate_benchmarks, rank_candidates
from motifbench.metrics import friedman_curve, plausibility, rank_report
from motifbench.split import stratified_split
from motifbench.tu import parse_tudataset

log = logging.getLogger("motifbench")


def _parse_class_map(text):
    if not text:
        return None
    mapping = {}
    for part in text.split(","):
        try:
            raw, cls = part.split(":")
            mapping[int(raw)] = int(cls)
        except ValueError:
            raise InputError(
                f"bad class-map entry {part!r}; expected RAW:CLASS pairs "
                "like '-1:0,1:1'"
            ) from None
    return mapping


@click.group()
def cli():
    """Build and evaluate graph-classification explainability benchmarks."""


@cli.command()
@click.option("--dataset", required=True, help="Path prefix of the TU-format files.")
@click.option("--wl-iters", "-L", default=3, show_default=True,
              help="Color-refinement iterations.")
@click.option("--top-k", "-K", default=10, show_default=True,
              help="Candidate colors per class.")
@click.option("--seed", default=0, show_default=True, help="Split seed.")
@click.option("--min-size", default=10, show_default=True,
              help="Smallest benchmark kept (total samples).")
@click.option("--min-balance", default=0.0, show_default=True,
              help="Smallest minority/majority ratio kept.")
@click.option("--max-benchmarks", default=10, show_default=True,
              help="How many top-ranked benchmarks to write.")
@click.option("--class-map", default=None,
              help="Raw-to-binary label mapping, e.g. '-1:0,1:1'.")
@click.option("--update", type=click.Choice(["standard", "neighbors_only"]),
              default="standard", show_default=True,
              help="Refinement key rule (own color + neighbors, or neighbors only).")
@click.option("--out", required=True, type=click.Path(), help="Output directory.")
def generate(dataset, wl_iters, top_k, seed, min_size, min_balance,
             max_benchmarks, class_map, update, out):
    """Mine candidate patterns and write ground-truth benchmarks."""
    config = {
        "command": "generate",
        "dataset": str(dataset),
        "wl_iters": wl_iters,
        "top_k": top_k,
        "seed": seed,
        "min_size": min_size,
        "min_balance": min_balance,
        "max_benchmarks": max_benchmarks,
        "class_map": class_map,
        "update": update,
    }
    data = parse_tudataset(dataset, class_map=_parse_class_map(class_map))
    log.info("parsed %s: %d graphs, %d node labels", data.name, len(data),
             data.label_alphabet_size)
    rejections = []
    candidates = list(enumerate_benchmarks(data, wl_iters, top_k,
                                           update=update,
                                           rejections=rejections))
    log.info("%d candidate benchmarks, %d rejected", len(candidates),
             len(rejections))
    ranked = rank_candidates(candidates, min_size=min_size,
                             min_balance=min_balance)
    selected = ranked[:max_benchmarks]
    if not selected:
        log.warning("no benchmark passed the size/balance thresholds")

    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)
    entries = []
    for i, bench in enumerate(selected):
        split = stratified_split(bench, seed)
        filename = f"benchmark_{i:03d}.json"
        bench_io.write_benchmark(bench, split, out_dir / filename,
                                 label_alphabet=data.label_alphabet,
                                 run_config=config)
        entries.append({"file": filename, "benchmark": bench})
        n0, n1 = bench.class_counts
        log.info("wrote %s: %s, counts (%d, %d), balance %.2f", filename,
                 bench.mode, n0, n1, bench.balance)
    summary_path = out_dir / "summary.tsv"
    header = ("file", "mode", "wl_iter_class0", "wl_iter_class1",
              "n_class0", "n_class1", "total", "balance")
    rows = report.summary_rows(entries)
    lines = ["# config: " + json.dumps(config, sort_keys=True)]
    lines.append("\t".join(header))
    lines += ["\t".join(str(v) for v in row) for row in rows]
    summary_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    log.info("summary written to %s", summary_path)


@cli.command("split")
@click.option("--benchmark", "benchmark_path", required=True,
              type=click.Path(), help="Benchmark file to re-split.")
@click.option("--seed", default=0, show_default=True)
@click.option("--out", required=True, type=click.Path(),
              help="Output benchmark file.")
def split_cmd(benchmark_path, seed, out):
    """Re-assign train/valid/test with a new seed."""
    bench, _ = bench_io.read_benchmark(benchmark_path)
    doc = json.loads(Path(benchmark_path).read_text(encoding="utf-8"))
    meta = doc.get("metadata", {})
    new_split = stratified_split(bench, seed)
    bench_io.write_benchmark(bench, new_split, out,
                             label_alphabet=meta.get("label_alphabet"),
                             run_config=meta.get("run_config"))
    log.info("re-split %s with seed %d -> %s", benchmark_path, seed, out)


def _collect_mask_files(paths):
    files = []
    for p in paths:
        path = Path(p)
        if path.is_dir():
            files.extend(sorted(path.glob("*.json")))
        elif path.is_file():
            files.append(path)
        else:
            raise InputError(f"no such file or directory: {path}")
    if not files:
        raise InputError("no mask files found")
    return files


@cli.command()
@click.option("--benchmark", "benchmarks", required=True, multiple=True,
              type=click.Path(), help="Benchmark file (repeatable).")
@click.option("--masks", required=True, multiple=True, type=click.Path(),
              help="Mask file or directory of mask files (repeatable).")
@click.option("--alpha", default=0.05, show_default=True, type=float,
              help="Significance level for the critical difference (0.05 or 0.10).")
@click.option("--orderings", default=100, show_default=True,
              help="Random row subsets per curve point (0 disables).")
@click.option("--curve-seed", default=0, show_default=True)
@click.option("--out", required=True, type=click.Path(),
              help="Output directory.")
def evaluate(benchmarks, masks, alpha, orderings, curve_seed, out):
    """Score mask files against benchmarks and rank the methods."""
    bench_entries = []
    for path in benchmarks:
        bench, split = bench_io.read_benchmark(path)
        fingerprint = bench_io.fingerprint_file(path)
        bench_entries.append({
            "label": Path(path).stem,
            "bench": bench,
            "split": split,
            "fingerprint": fingerprint,
            "masks": {},
        })
    by_fingerprint = {e["fingerprint"]: e for e in bench_entries}
    for mask_path in _collect_mask_files(masks):
        mask_set = bench_io.read_masks(mask_path)
        entry = by_fingerprint.get(mask_set.benchmark_fingerprint)
        if entry is None:
            raise IntegrityError(
                f"{mask_path}: fingerprint {mask_set.benchmark_fingerprint} "
                "matches none of the given benchmarks"
            )
        if mask_set.method in entry["masks"]:
            raise InputError(
                f"duplicate mask file for method {mask_set.method!r} on "
                f"benchmark {entry['label']}"
            )
        entry["masks"][mask_set.method] = mask_set

    method_sets = [frozenset(e["masks"]) for e in bench_entries]
    if not all(method_sets):
        missing = [e["label"] for e in bench_entries if not e["masks"]]
        raise InputError(f"no mask files for benchmark(s): {missing}")
    methods = sorted(set.union(*(set(s) for s in method_sets)))
    if any(set(s) != set(methods) for s in method_sets):
        raise InputError(
            "all benchmarks must be scored by the same set of methods; got "
            + ", ".join(f"{e['label']}: {sorted(e['masks'])}" for e in bench_entries)
        )

    reports = {}
    for entry in bench_entries:
        for method in methods:
            reports[(entry["label"], method)] = plausibility(
                entry["bench"], entry["split"],
                entry["masks"][method].masks, method=method,
            )

    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)
    report.write_tsv(out_dir / "plausibility.tsv",
                     ("benchmark", "class", "method", "mean", "std",
                      "n_evaluated", "n_skipped"),
                     report.plausibility_rows(reports))
    (out_dir / "plausibility.txt").write_text(
        report.plausibility_table_text(reports, methods), encoding="utf-8"
    )

    # rank matrix: one row per (benchmark, ground-truth class) where every
    # method produced a defined mean
    row_labels, matrix = [], []
    for entry in bench_entries:
        for cls in entry["bench"].gt_classes():
            row = []
            for method in methods:
                stats = reports[(entry["label"], method)].rows.get(cls)
                if stats is None or stats.mean is None:
                    row = None
                    break
                row.append(stats.mean)
            if row is not None:
                row_labels.append(f"{entry['label']}:class{cls}")
                matrix.append(row)
            else:
                log.warning("dropping row %s:class%d (undefined means)",
                            entry["label"], cls)

    if len(matrix) >= 2 and len(methods) >= 2:
        ranking = rank_report(matrix, methods, alpha=alpha,
                              row_labels=row_labels)
        (out_dir / "rank_report.json").write_text(
            json.dumps(report.rank_report_dict(ranking), indent=2,
                       sort_keys=True) + "\n",
            encoding="utf-8",
        )
        curve = friedman_curve(matrix, orderings=orderings, seed=curve_seed)
        report.write_tsv(out_dir / "friedman_curve.tsv",
                         ("n", "p_prefix", "p_min", "p_median", "p_max"),
                         report.curve_rows(curve))
        report.fig_friedman_curve(curve, out_dir / "friedman_curve.png")
        report.fig_cd_diagram(ranking, out_dir / "cd_diagram.png")
        log.info("Friedman p = %.3e over %d rows; CD = %.3f",
                 ranking.p_value, ranking.n_rows, ranking.cd)
    else:
        log.warning("not enough rows for rank statistics (%d)", len(matrix))
    log.info("evaluation written to %s", out_dir)


@cli.command()
@click.option("--scores", required=True, type=click.Path(),
              help="TSV matrix: header 'row<TAB>method...', one row per benchmark.")
@click.option("--alpha", default=0.05, show_default=True, type=float)
@click.option("--orderings", default=100, show_default=True)
@click.option("--curve-seed", default=0, show_default=True)
@click.option("--out", required=True, type=click.Path())
def rank(scores, alpha, orderings, curve_seed, out):
    """Rank methods from a precomputed score matrix."""
    path = Path(scores)
    if not path.is_file():
        raise InputError(f"no such file: {path}")
    lines = [ln for ln in path.read_text(encoding="utf-8").splitlines()
             if ln.strip() and not ln.startswith("#")]
    if len(lines) < 3:
        raise InputError("score matrix needs a header and at least two rows")
    header = lines[0].split("\t")
    methods = header[1:]
    if len(methods) < 2:
        raise InputError("score matrix needs at least two method columns")
    row_labels, matrix = [], []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split("\t")
        if len(parts) != len(header):
            raise InputError(f"{path}:{lineno}: expected {len(header)} columns")
        row_labels.append(parts[0])
        try:
            matrix.append([float(x) for x in parts[1:]])
        except ValueError as e:
            raise InputError(f"{path}:{lineno}: {e}") from None

    ranking = rank_report(matrix, methods, alpha=alpha, row_labels=row_labels)
    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "rank_report.json").write_text(
        json.dumps(report.rank_report_dict(ranking), indent=2,
                   sort_keys=True) + "\n",
        encoding="utf-8",
    )
    report.write_tsv(out_dir / "avg_ranks.tsv", ("method", "avg_rank"),
                     sorted(ranking.avg_ranks.items(), key=lambda kv: kv[1]))
    curve = friedman_curve(matrix, orderings=orderings, seed=curve_seed)
    report.write_tsv(out_dir / "friedman_curve.tsv",
                     ("n", "p_prefix", "p_min", "p_median", "p_max"),
                     report.curve_rows(curve))
    report.fig_friedman_curve(curve, out_dir / "friedman_curve.png")
    report.fig_cd_diagram(ranking, out_dir / "cd_diagram.png")
    log.info("rank report written to %s", out_dir)


def main(argv=None):
    logging.basicConfig(stream=sys.stderr, level=logging.INFO,
                        format="%(levelname)s %(message)s")
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.exceptions.Abort:
        return 1
    except click.UsageError as e:
        e.show(file=sys.stderr)
        return 2
    except IntegrityError as e:
        log.error("%s", e)
        return 3
    except (InputError, SchemaVersionError) as e:
        log.error("%s", e)
        return 2
    except MotifBenchError as e:
        log.error("%s", e)
        return 1
    except Exception as e:  # pragma: no cover - defensive
        log.exception("internal error: %s", e)
        return 1


if __name__ == "__main__":
    sys.exit(main())
