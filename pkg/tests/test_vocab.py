import random

import pytest

from helpers import (
    coverage_base_vocab,
    coverage_collection,
    coverage_random_comment,
    make_comment,
)
from satdkit.corpus import CorpusCollection, Label, ProjectDataset
from satdkit.errors import DataError
from satdkit.preprocess import split_identifiers
from satdkit.vocab import (
    CandidateToken,
    Vocabulary,
    apply_denylist,
    augment_vocabulary,
    char_base_vocabulary,
    discover_candidate_tokens,
    load_base_vocabulary,
    save_vocabulary,
    tokenize,
    unk_count,
    write_candidate_report,
)

SPECIALS = ["[UNK]", "[PAD]", "[CLS]", "[SEP]"]


def toy_vocab(*extra):
    return Vocabulary.from_tokens(SPECIALS + list(extra))


def _project(name, texts):
    comments = [make_comment(i, t, Label.NON_SATD, project=name) for i, t in enumerate(texts)]
    return ProjectDataset.from_comments(name, comments)


def test_load_base_vocabulary(tmp_path):
    path = tmp_path / "vocab.txt"
    tokens = SPECIALS + ["the", "fix", "##me", "##s", "todo", "hack"]
    path.write_text("\n".join(tokens) + "\n", encoding="utf-8")
    vocab = load_base_vocabulary(path)
    assert vocab.size == 10
    assert vocab.tokens == tuple(tokens)
    assert vocab.index["todo"] == 8
    assert vocab.unk_id == 0


def test_load_base_vocabulary_duplicate(tmp_path):
    path = tmp_path / "vocab.txt"
    path.write_text("\n".join(SPECIALS + ["dup", "dup"]), encoding="utf-8")
    with pytest.raises(DataError, match="duplicate token"):
        load_base_vocabulary(path)


def test_load_base_vocabulary_missing_specials(tmp_path):
    path = tmp_path / "vocab.txt"
    path.write_text("just\nwords\n", encoding="utf-8")
    with pytest.raises(DataError, match="special"):
        load_base_vocabulary(path)


def test_save_load_round_trip(tmp_path):
    vocab = toy_vocab("alpha", "##beta")
    path = tmp_path / "v.txt"
    save_vocabulary(vocab, path)
    assert load_base_vocabulary(path) == vocab


def test_discovery_threshold_and_base_exclusion():
    base = toy_vocab("the")
    # "grak" in 3 of 8 projects (0.375 > 0.25); "bler" in exactly 2 (0.25, out);
    # "the" is a base token and stays out however often it appears.
    projects = tuple(
        _project(f"p{i}", [
            "the " + ("grak" if i < 3 else "mip") + (" bler" if i < 2 else ""),
        ])
        for i in range(8)
    )
    collection = CorpusCollection("eight", projects)
    candidates = discover_candidate_tokens(collection, base, threshold=0.25)
    by_token = {c.token: c for c in candidates}
    assert "grak" in by_token
    assert by_token["grak"].project_count == 3
    assert by_token["grak"].project_fraction == pytest.approx(0.375)
    assert "bler" not in by_token
    assert "the" not in by_token
    assert "mip" in by_token  # 5 of 8


def test_discovery_counts_projects_not_occurrences():
    base = toy_vocab()
    collection = CorpusCollection("two", (
        _project("a", ["dup dup dup dup dup dup"]),
        _project("b", ["other words entirely"]),
    ))
    candidates = discover_candidate_tokens(collection, base, threshold=0.25)
    dup = next(c for c in candidates if c.token == "dup")
    assert dup.project_count == 1
    assert dup.project_fraction == pytest.approx(0.5)


def test_discovery_sees_split_identifiers_and_symbols():
    base = toy_vocab()
    collection = CorpusCollection("one", (
        _project("a", ["// getHTTPResponseCode()"]),
        _project("b", ["// Response()"]),
    ))
    tokens = {c.token for c in discover_candidate_tokens(collection, base, threshold=0.25)}
    assert {"//", "()", "Response"} <= tokens
    assert "getHTTPResponseCode" not in tokens  # split before counting


def test_discovery_sorting():
    base = toy_vocab()
    collection = CorpusCollection("three", (
        _project("a", ["zz aa bb"]),
        _project("b", ["zz aa"]),
        _project("c", ["zz"]),
    ))
    candidates = discover_candidate_tokens(collection, base, threshold=0.0)
    assert [c.token for c in candidates] == ["zz", "aa", "bb"]


def test_discovery_order_independent():
    base = coverage_base_vocab()
    collection = coverage_collection(seed=5)
    reversed_projects = CorpusCollection("coverage-rev", tuple(reversed(collection.projects)))
    forward = {c.token for c in discover_candidate_tokens(collection, base)}
    backward = {c.token for c in discover_candidate_tokens(reversed_projects, base)}
    assert forward == backward


def test_apply_denylist(tmp_path):
    candidates = [
        CandidateToken("ns", 10, 0.5),
        CandidateToken("li", 8, 0.4),
        CandidateToken("hack", 6, 0.3),
    ]
    deny = tmp_path / "deny.txt"
    deny.write_text("ns\nli\n", encoding="utf-8")
    assert [c.token for c in apply_denylist(candidates, deny)] == ["hack"]
    empty = tmp_path / "empty.txt"
    empty.write_text("", encoding="utf-8")
    assert apply_denylist(candidates, empty) == candidates
    unrelated = tmp_path / "unrelated.txt"
    unrelated.write_text("absent\n", encoding="utf-8")
    assert apply_denylist(candidates, unrelated) == candidates
    with pytest.raises(DataError, match="denylist"):
        apply_denylist(candidates, tmp_path / "missing.txt")


def test_augment_vocabulary():
    base = toy_vocab("fix")
    finals = [CandidateToken("todo", 5, 0.5), CandidateToken("hack", 4, 0.4)]
    grown = augment_vocabulary(base, finals)
    assert grown.size == base.size + 2
    assert grown.tokens[: base.size] == base.tokens
    assert grown.index["todo"] == base.size
    assert augment_vocabulary(base, []).tokens == base.tokens
    with pytest.raises(DataError, match="collides"):
        augment_vocabulary(base, [CandidateToken("fix", 1, 0.9)])


def test_tokenize_greedy_longest_match():
    vocab = toy_vocab("fix", "##me")
    seq = tokenize(vocab, split_identifiers("fixme"))
    assert [vocab.tokens[i] for i in seq.ids] == ["[CLS]", "fix", "##me", "[SEP]"]
    assert not seq.truncated


def test_tokenize_unknown_word():
    vocab = toy_vocab("fix", "##me")
    seq = tokenize(vocab, split_identifiers("zzz"))
    assert [vocab.tokens[i] for i in seq.ids] == ["[CLS]", "[UNK]", "[SEP]"]


def test_tokenize_long_word_is_unk():
    vocab = char_base_vocabulary("x")
    seq = tokenize(vocab, split_identifiers("x" * 200))
    assert [i for i in seq.ids] == [vocab.cls_id, vocab.unk_id, vocab.sep_id]
    assert unk_count(vocab, tokenize(vocab, split_identifiers("x" * 100))) == 0


def test_tokenize_dead_end_is_whole_word_unk():
    # "ab" matches greedily but "##c" does not exist -> the whole word is UNK
    vocab = toy_vocab("ab", "a", "##b")
    seq = tokenize(vocab, split_identifiers("abc"))
    assert [vocab.tokens[i] for i in seq.ids] == ["[CLS]", "[UNK]", "[SEP]"]


def test_tokenize_truncation_keeps_cls_sep():
    vocab = char_base_vocabulary("ab")
    text = split_identifiers("ab ab ab ab ab")
    seq = tokenize(vocab, text, max_seq_len=6)
    assert len(seq.ids) == 6
    assert seq.ids[0] == vocab.cls_id
    assert seq.ids[-1] == vocab.sep_id
    assert seq.truncated
    assert tokenize(vocab, text, max_seq_len=128).truncated is False
    with pytest.raises(ValueError):
        tokenize(vocab, text, max_seq_len=1)


def test_tokenize_deterministic():
    vocab = toy_vocab("fix", "##me")
    text = split_identifiers("fixme zzz fix")
    assert tokenize(vocab, text, 16) == tokenize(vocab, text, 16)


def test_detokenization_round_trip():
    base = coverage_base_vocab()
    collection = coverage_collection(seed=6)
    grown = augment_vocabulary(base, discover_candidate_tokens(collection, base))
    words = set()
    for comment in collection.all_comments():
        words.update(comment.text.split())
    covered = []
    for vocab in (base, grown):
        n_covered = 0
        for word in words:
            seq = tokenize(vocab, split_identifiers(word), max_seq_len=128)
            piece_ids = seq.ids[1:-1]
            if vocab.unk_id in piece_ids:
                continue
            rebuilt = "".join(
                vocab.tokens[i][2:] if vocab.tokens[i].startswith("##") else vocab.tokens[i]
                for i in piece_ids
            )
            assert rebuilt == word
            n_covered += 1
        covered.append(n_covered)
    assert covered[0] > 0
    assert covered[1] > covered[0]  # discovery made more words coverable


def test_augmentation_monotonicity():
    base = coverage_base_vocab()
    collection = coverage_collection(seed=7)
    grown = augment_vocabulary(base, discover_candidate_tokens(collection, base))
    rng = random.Random(99)
    improved = 0
    for _ in range(1000):
        text = split_identifiers(coverage_random_comment(rng))
        before = unk_count(base, tokenize(base, text))
        after = unk_count(grown, tokenize(grown, text))
        assert after <= before
        if after < before:
            improved += 1
    assert improved > 0


def test_candidate_report(tmp_path):
    path = tmp_path / "report.csv"
    write_candidate_report([CandidateToken("todo", 5, 0.25)], path)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "token,project_count,project_fraction"
    assert lines[1].startswith("todo,5,0.25")


def test_vocabulary_validation():
    with pytest.raises(DataError, match="whitespace"):
        Vocabulary.from_tokens(SPECIALS + ["bad token"])
    with pytest.raises(DataError, match="empty"):
        Vocabulary.from_tokens(SPECIALS + [""])


def test_is_whole_word():
    vocab = toy_vocab("fix", "##me")
    assert vocab.is_whole_word("fix")
    assert not vocab.is_whole_word("me")
    assert not vocab.is_whole_word("##me")
