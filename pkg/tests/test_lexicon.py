import random

import pytest

from helpers import make_comment
from satdkit.corpus import Label
from satdkit.errors import DataError
from satdkit.lexicon import (
    FUZZY,
    STRICT,
    TriggerLexicon,
    dup_lexicon,
    find_triggers,
    is_marker_only,
    load_lexicon,
    mat_classify,
    mat_lexicon,
    remove_triggers,
)

MAT = mat_lexicon()
DUP = dup_lexicon()


def test_find_triggers_whole_word():
    text = "// TODO: nothing appears to read this"
    spans = find_triggers(MAT, text)
    assert spans == [(3, 7)]
    assert text[3:7] == "TODO"


def test_strict_ignores_substrings():
    assert find_triggers(MAT, "methodology") == []
    assert find_triggers(TriggerLexicon(frozenset({"todo"}), STRICT), "xtodox") == []


def test_fuzzy_matches_inside_runs():
    lex = TriggerLexicon(frozenset({"todo"}), FUZZY)
    assert find_triggers(lex, "methodology") == []
    assert find_triggers(lex, "xtodox") == [(1, 5)]


def test_spans_left_to_right_non_overlapping():
    lex = TriggerLexicon(frozenset({"todo"}), FUZZY)
    assert find_triggers(lex, "todotodo") == [(0, 4), (4, 8)]


def test_longest_trigger_first_at_equal_start():
    lex = TriggerLexicon(frozenset({"todo", "todofixme"}), FUZZY)
    assert find_triggers(lex, "todofixme") == [(0, 9)]


def test_case_insensitive():
    assert find_triggers(MAT, "// fixme now") == find_triggers(MAT, "// FIXME now")
    assert find_triggers(MAT, "// HaCk") == [(3, 7)]


def test_underscore_is_a_delimiter():
    assert find_triggers(MAT, "do_todo_now") == [(3, 7)]


def test_remove_triggers_paper_example():
    assert (
        remove_triggers(DUP, "// FIXME: This should probably...")
        == "// This should probably..."
    )


def test_remove_triggers_no_triggers_identical():
    text = "// perfectly  fine comment "
    assert remove_triggers(DUP, text) == text


def test_remove_triggers_multiple_spans():
    assert remove_triggers(DUP, "// TODO TODO fix") == "// fix"


def test_remove_triggers_single_colon_only():
    assert remove_triggers(DUP, "// TODO:: later") == "// : later"


def test_remove_triggers_without_surrounding_spaces():
    assert remove_triggers(DUP, "(TODO)") == "()"
    assert remove_triggers(DUP, "hack:athon") == "athon"


def test_remove_triggers_edges():
    assert remove_triggers(DUP, "TODO fix it") == "fix it"
    assert remove_triggers(DUP, "fix it TODO") == "fix it"
    assert remove_triggers(DUP, "// TODO") == "//"


def test_remove_uses_strict_spans_even_in_fuzzy_mode():
    fuzzy = TriggerLexicon(frozenset({"hack"}), FUZZY)
    assert remove_triggers(fuzzy, "the hackathon was fun") == "the hackathon was fun"
    assert remove_triggers(fuzzy, "ugly hack here") == "ugly here"


def test_remove_triggers_leaves_no_strict_spans():
    rng = random.Random(4)
    words = ["todo", "fixme", "hack", "xxx", "ugly", "fix", "the", "parser", "//", "a:b"]
    for _ in range(500):
        text = " ".join(rng.choice(words) for _ in range(rng.randint(0, 10)))
        cleaned = remove_triggers(DUP, text)
        strict = TriggerLexicon(DUP.triggers, STRICT)
        assert find_triggers(strict, cleaned) == []
        assert remove_triggers(DUP, cleaned) == cleaned  # idempotent after one pass


def test_strict_subset_of_fuzzy():
    rng = random.Random(9)
    triggers = frozenset({"todo", "fixme", "xxx"})
    strict = TriggerLexicon(triggers, STRICT)
    fuzzy = TriggerLexicon(triggers, FUZZY)
    pieces = ["todo", "fixme", "xxx", "xtodox", "todofixme", "ok", "a", "//", ";"]
    for _ in range(500):
        text = "".join(
            rng.choice(pieces) + rng.choice([" ", "", ":", ") "])
            for _ in range(rng.randint(0, 6))
        )
        strict_spans = set(find_triggers(strict, text))
        fuzzy_spans = set(find_triggers(fuzzy, text))
        assert strict_spans <= fuzzy_spans


def test_mat_classify_examples():
    easy = make_comment(0, "//TODO: I have no idea how to get it...", Label.SATD)
    hard = make_comment(
        1, "// sorry - otherwise we will get a ClassCastException", Label.NON_SATD
    )
    vague = make_comment(2, "// refactor later", Label.NON_SATD)
    assert mat_classify(MAT, easy) is Label.SATD
    assert mat_classify(MAT, hard) is Label.NON_SATD
    assert mat_classify(MAT, vague) is Label.NON_SATD


def test_mat_classify_case_invariant():
    for text in ("// Fixme now", "// FIXME NOW", "// fixme now"):
        assert mat_classify(MAT, make_comment(0, text, Label.SATD)) is Label.SATD


def test_lexicon_validation():
    with pytest.raises(ValueError):
        TriggerLexicon(frozenset(), STRICT)
    with pytest.raises(ValueError):
        TriggerLexicon(frozenset({"two words"}), STRICT)
    with pytest.raises(ValueError):
        TriggerLexicon(frozenset({"todo"}), "sloppy")
    lex = TriggerLexicon(frozenset({"ToDo"}), STRICT)
    assert lex.triggers == frozenset({"todo"})


def test_default_lexicons():
    assert MAT.triggers == frozenset({"todo", "fixme", "xxx", "hack"})
    assert DUP.triggers == MAT.triggers | {"ugly"}
    assert MAT.mode == STRICT


def test_load_lexicon(tmp_path):
    path = tmp_path / "lex.txt"
    path.write_text("# triggers\nTODO\nfixme\n\nhack  # inline\n", encoding="utf-8")
    lex = load_lexicon(path, mode=FUZZY)
    assert lex.triggers == frozenset({"todo", "fixme", "hack"})
    assert lex.mode == FUZZY
    empty = tmp_path / "empty.txt"
    empty.write_text("# nothing\n", encoding="utf-8")
    with pytest.raises(DataError, match="no triggers"):
        load_lexicon(empty)


def test_is_marker_only():
    assert is_marker_only("")
    assert is_marker_only("   ")
    assert is_marker_only("//")
    assert is_marker_only("/* */")
    assert not is_marker_only("// words")
