import json
from pathlib import Path

from desingkit.acceptance import CORPUS_DIR, CorpusConfig, build_corpus, load_corpus


def test_bundled_corpus_regenerates_from_seed():
    assert build_corpus(CorpusConfig()) == load_corpus()


def test_corpus_sizes():
    cfg = CorpusConfig()
    corpus = load_corpus()
    assert [len(corpus[n]) for n in (1, 2, 3, 5, 6, 7)] == [
        cfg.n_hilbert, cfg.n_resolve, cfg.n_projective, cfg.n_belyi, cfg.n_separation, cfg.n_matrices
    ]


def test_manifest_files_exist():
    base = Path(str(CORPUS_DIR))
    for item in json.loads((base / "manifest.json").read_text()):
        assert (base / item["file"]).is_file(), item["name"]
