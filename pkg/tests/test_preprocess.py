import random

from satdkit.preprocess import segment_words, split_identifiers

_ALPHABET = (
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789"
    " \t\n();/*#_-.:," + "éΩ中"
)


def _random_strings(seed, count, max_len=80):
    rng = random.Random(seed)
    for _ in range(count):
        yield "".join(rng.choice(_ALPHABET) for _ in range(rng.randint(0, max_len)))


def test_java_identifier_example():
    out = split_identifiers("new CharParserForJavaOrSomething();")
    assert out.text == "new Char Parser For Java Or Something();"
    assert out.original == "new CharParserForJavaOrSomething();"


def test_no_camel_boundaries_unchanged():
    assert split_identifiers("hello world;").text == "hello world;"


def test_acronym_boundary():
    assert split_identifiers("getHTTPResponseCode").text == "get HTTP Response Code"


def test_digits_do_not_split():
    assert split_identifiers("utf8To16").text == "utf8To16"


def test_existing_whitespace_preserved():
    assert split_identifiers("a  b\tcD").text == "a  b\tc D"


def test_space_erasure_property():
    for s in _random_strings(101, 1000):
        out = split_identifiers(s)
        assert out.text.replace(" ", "") == s.replace(" ", "")


def test_idempotence_property():
    for s in _random_strings(202, 1000):
        once = split_identifiers(s).text
        assert split_identifiers(once).text == once


def test_segment_words_examples():
    assert segment_words("// TODO fix()") == ["//", "TODO", "fix", "()"]
    assert segment_words("") == []
    assert segment_words("/* hack */") == ["/*", "hack", "*/"]


def test_segment_reserved_runs():
    assert segment_words("fix();") == ["fix", "();"]
    assert segment_words("/*hack*/") == ["/*", "hack", "*/"]
    assert segment_words("//TODO:") == ["//", "TODO:"]
    assert segment_words("a[]b") == ["a", "[]", "b"]


def test_segment_other_punctuation_stays_attached():
    assert segment_words("don't, stop.") == ["don't,", "stop."]
    assert segment_words("(x)") == ["(x)"]
    assert segment_words("and/or") == ["and/or"]


def test_segment_splits_all_whitespace():
    assert segment_words("a\tb\nc  d") == ["a", "b", "c", "d"]


def test_segment_never_yields_empty_words():
    for s in _random_strings(303, 500):
        words = segment_words(split_identifiers(s).text)
        assert all(words)
        assert all(not any(ch.isspace() for ch in w) for w in words)
