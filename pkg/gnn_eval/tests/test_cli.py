import json

from gnn_eval.cli import main

from test_train import write_tiny_benchmark


def test_train_then_explain_round_trip(tmp_path):
    bench = write_tiny_benchmark(tmp_path / "tiny.json", n_samples=20)
    model_path = tmp_path / "model.pt"
    assert main(["train", "--benchmark", str(bench), "--out", str(model_path),
                 "--grid", "reduced", "--seed", "0"]) == 0
    assert model_path.exists()

    mask_dir = tmp_path / "masks"
    assert main(["explain", "--benchmark", str(bench),
                 "--model", str(model_path),
                 "--methods", "random,cam,intgrad",
                 "--gnnexplainer-epochs", "10",
                 "--out", str(mask_dir)]) == 0
    files = sorted(mask_dir.glob("*.json"))
    assert len(files) == 3
    data = json.loads(bench.read_text())
    n_test = sum(1 for s in data["samples"] if s["split"] == "test")
    for path in files:
        doc = json.loads(path.read_text())
        assert doc["kind"] == "importance_masks"
        assert doc["schema_version"].startswith("1.")
        assert len(doc["masks"]) == n_test
        for entry in doc["masks"]:
            sample = next(s for s in data["samples"]
                          if s["graph_id"] == entry["graph_id"])
            assert len(entry["scores"]) == sample["num_nodes"]


def test_explain_rejects_model_from_other_benchmark(tmp_path):
    bench_a = write_tiny_benchmark(tmp_path / "a.json", n_samples=16)
    bench_b = write_tiny_benchmark(tmp_path / "b.json", n_samples=20)
    model_path = tmp_path / "model.pt"
    assert main(["train", "--benchmark", str(bench_a),
                 "--out", str(model_path), "--grid", "reduced"]) == 0
    code = main(["explain", "--benchmark", str(bench_b),
                 "--model", str(model_path), "--methods", "random",
                 "--out", str(tmp_path / "m")])
    assert code == 3


def test_unknown_method_rejected(tmp_path):
    bench = write_tiny_benchmark(tmp_path / "tiny.json")
    model_path = tmp_path / "model.pt"
    assert main(["train", "--benchmark", str(bench),
                 "--out", str(model_path), "--grid", "reduced"]) == 0
    code = main(["explain", "--benchmark", str(bench),
                 "--model", str(model_path), "--methods", "nope",
                 "--out", str(tmp_path / "m")])
    assert code == 2
