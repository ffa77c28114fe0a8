import json

from helpers import write_planted_corpus
from satdkit.cli import main


def test_ingest_prints_stats(tmp_path, capsys):
    manifest = write_planted_corpus(tmp_path, n_total=80, n_satd=8)
    code = main(["ingest", "--manifest", str(manifest), "--collection-name", "Demo"])
    out = capsys.readouterr().out
    assert code == 0
    assert "Planted" in out
    assert "10.00" in out  # 8 of 80
    assert "Demo" in out


def test_missing_manifest_is_config_error(capsys):
    assert main(["ingest"]) == 1
    assert "config error" in capsys.readouterr().err


def test_nonexistent_manifest_is_data_error(tmp_path, capsys):
    assert main(["ingest", "--manifest", str(tmp_path / "nope.tsv")]) == 2
    assert "data error" in capsys.readouterr().err


def test_unknown_subcommand_is_config_error(capsys):
    assert main(["frobnicate"]) == 1


def test_run_writes_outputs_and_exit_zero(tmp_path, capsys):
    manifest = write_planted_corpus(tmp_path / "data", n_total=120, n_satd=12, seed=4)
    outdir = tmp_path / "runs"
    code = main([
        "run", "--manifest", str(manifest), "--scenario", "intra",
        "--classifier", "mat_strict", "--k", "4", "--seed", "3",
        "--outdir", str(outdir),
    ])
    out = capsys.readouterr().out
    assert code == 0
    assert "run complete" in out
    assert "Average" in out
    run_dirs = list(outdir.iterdir())
    assert len(run_dirs) == 1
    assert (run_dirs[0] / "report.json").exists()


def test_run_failure_exit_code(tmp_path, capsys):
    manifest = write_planted_corpus(tmp_path / "data", n_total=40, n_satd=4, seed=4)
    blocker = tmp_path / "blocker"
    blocker.write_text("not a directory", encoding="utf-8")
    code = main([
        "run", "--manifest", str(manifest), "--scenario", "intra",
        "--classifier", "mat_strict", "--k", "4",
        "--outdir", str(blocker / "nested"),
    ])
    assert code == 3
    assert "run failed" in capsys.readouterr().err


def test_vocab_build_and_inspect(tmp_path, capsys):
    manifest = write_planted_corpus(tmp_path / "data", n_total=60, n_satd=6, seed=2)
    vocab_path = tmp_path / "vocab.txt"
    csv_path = tmp_path / "candidates.csv"
    code = main([
        "vocab", "build", "--manifest", str(manifest),
        "--out", str(vocab_path), "--candidates-csv", str(csv_path),
    ])
    assert code == 0
    assert vocab_path.exists()
    assert csv_path.read_text(encoding="utf-8").startswith("token,project_count")
    capsys.readouterr()
    assert main(["vocab", "inspect", "--vocab", str(vocab_path)]) == 0
    out = capsys.readouterr().out
    assert "size:" in out
    assert "[UNK]=0" in out


def test_export_and_import_commands(tmp_path, capsys):
    manifest = write_planted_corpus(tmp_path / "data", n_total=80, n_satd=8, seed=6)
    export_dir = tmp_path / "export"
    code = main([
        "export-batches", "--manifest", str(manifest), "--scenario", "intra",
        "--k", "4", "--epochs", "1", "--out", str(export_dir),
    ])
    assert code == 0
    assert (export_dir / "export.json").exists()

    # perfect oracle predictions: score = label
    collection_pairs = []
    manifest_data = json.loads((export_dir / "export.json").read_text(encoding="utf-8"))
    for unit in manifest_data["units"]:
        collection_pairs.extend((p, i) for p, i in unit["test"])
    from satdkit.corpus import Label, LabelMapping, load_collection

    collection = load_collection(manifest, LabelMapping.standard())
    preds_path = tmp_path / "preds.jsonl"
    with preds_path.open("w", encoding="utf-8") as fh:
        for project, cid in collection_pairs:
            comment = next(c for c in collection.get(project).comments if c.id == cid)
            score = 1.0 if comment.label is Label.SATD else 0.0
            fh.write(json.dumps({"project": project, "id": cid, "score": score}) + "\n")
    code = main([
        "import-predictions", "--manifest", str(manifest), "--scenario", "intra",
        "--k", "4", "--epochs", "1", "--predictions", str(preds_path),
    ])
    out = capsys.readouterr().out
    assert code == 0
    assert "cover all" in out


def test_report_rerender(tmp_path, capsys):
    manifest = write_planted_corpus(tmp_path / "data", n_total=120, n_satd=12, seed=4)
    outdir = tmp_path / "runs"
    main([
        "run", "--manifest", str(manifest), "--scenario", "intra",
        "--classifier", "mat_strict", "--k", "4", "--outdir", str(outdir),
    ])
    run_dir = next(outdir.iterdir())
    capsys.readouterr()
    target = tmp_path / "again.csv"
    code = main([
        "report", "--report", str(run_dir / "report.json"),
        "--format", "csv", "--out", str(target),
    ])
    assert code == 0
    assert target.read_text(encoding="utf-8") == (run_dir / "report.csv").read_text(encoding="utf-8")
